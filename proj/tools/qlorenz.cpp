#include <iostream>
#include <string>
#include <vector>

#include "qlorenz/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qlorenz::run_cli(args, std::cout, std::cerr);
}
