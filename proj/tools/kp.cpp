// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "kp/cli.hpp"

int main(int argc, char** argv) { return kp::run(argc, argv, std::cout, std::cerr); }
