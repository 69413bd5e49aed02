#include <iostream>

#include "schwarzian/cli.hpp"

int main(int argc, char** argv) {
  return schwarzian::cli::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
