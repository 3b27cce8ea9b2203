#include <iostream>

#include "slicestem/commands.hpp"

int main(int argc, char** argv) {
  return slicestem::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
