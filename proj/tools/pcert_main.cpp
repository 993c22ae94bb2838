#include <iostream>

#include "pcert/cli.hpp"

int main(int argc, char** argv) {
  return pcert::run_command(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
