#include <iostream>

#include "loewy/cli.hpp"

int main(int argc, char** argv) {
  return loewy::cli::main_entry(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
