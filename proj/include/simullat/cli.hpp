// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The simullat Authors

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace simullat::cli {

enum ExitCode : int {
  kOk = 0,
  kUsageError = 1,
  kDataError = 2,
  kIoError = 3,
};

/// Runs the command line `args` (args[0] is the program name). Report
/// payloads go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace simullat::cli
