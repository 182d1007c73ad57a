#include <iostream>
#include <string>
#include <vector>

#include "merge_lab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return merge_lab::run_cli(args, std::cout, std::cerr);
}
