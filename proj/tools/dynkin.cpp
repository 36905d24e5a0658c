#include <iostream>

#include "dynkin/cli/app.hpp"

int main(int argc, char** argv) {
  return dynkin::cli::run_app(argc, argv, std::cout, std::cerr);
}
