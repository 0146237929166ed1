// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "beamdt/cli.hpp"

int main(int argc, char** argv) { return beamdt::cli::run(argc, argv, std::cout, std::cerr); }
