#include <iostream>

#include "triwave/cli/app.hpp"

int main(int argc, char** argv) {
  return triwave::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
