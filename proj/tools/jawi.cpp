#include <unistd.h>

#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return jawi::cli::run(argc, argv, {std::cin, std::cout, std::cerr, isatty(STDIN_FILENO) != 0});
}
