#include <unistd.h>

#include <cstdio>
#include <iostream>

#include "troplin/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return troplin::cli::run(args, std::cout, std::cerr, isatty(fileno(stdout)) != 0);
}
