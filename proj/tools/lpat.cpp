// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "lpat/cli/app.hpp"

int main(int argc, char **argv) {
  return lpat::cli::run(argc, argv, std::cout, std::cerr);
}
