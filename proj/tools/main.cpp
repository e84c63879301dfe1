// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "rimnull/cli.hpp"

int main(int argc, char** argv) { return rimnull::run_cli(argc, argv, std::cout, std::cerr); }
