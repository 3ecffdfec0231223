#include <iostream>
#include <string>
#include <vector>

#include "hangchain/cli.hpp"

int main(int argc, char** argv) {
  return hangchain::run(std::vector<std::string>(argv, argv + argc), std::cout,
                        std::cerr);
}
