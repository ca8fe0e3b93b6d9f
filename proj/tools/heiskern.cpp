#include <iostream>
#include <string>
#include <vector>

#include "heiskern/cli.hpp"

int main(int argc, char** argv) {
  return heiskern::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
