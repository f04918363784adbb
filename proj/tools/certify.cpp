#include <iostream>
#include <string>
#include <vector>

#include "polycert/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return polycert::cli::run(args, std::cout, std::cerr);
}
