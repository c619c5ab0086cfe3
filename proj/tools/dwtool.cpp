#include <iostream>

#include "dw/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dw::cli::run(args, std::cout, std::cerr);
}
