// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The simullat Authors

#include <iostream>
#include <string>
#include <vector>

#include "simullat/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  const std::vector<std::string> args(argv, argv + argc);
  return simullat::cli::run(args, std::cout, std::cerr);
}
