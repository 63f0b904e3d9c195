#include <iostream>
#include <string>
#include <vector>

#include "hysnet_cli/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return hysnet::cli::run(args, std::cout, std::cerr);
}
