#include <iostream>
#include <string>
#include <vector>

#include "calabi/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return calabi::cli::run(args, std::cout, std::cerr);
}
