#include <iostream>
#include <string>
#include <vector>

#include "zdcolor/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return zdcolor::cli::run(args, std::cout, std::cerr);
}
