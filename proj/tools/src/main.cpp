#include <iostream>

#include "singfront_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return singfront::cli::run(args, std::cout, std::cerr);
}
