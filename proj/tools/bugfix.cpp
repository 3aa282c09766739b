#include <iostream>

#include "bugfix/cli.hpp"

int main(int argc, char** argv) {
  return bugfix::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
