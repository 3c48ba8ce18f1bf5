// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The simullat Authors

#include "simullat/trace.hpp"

#include <cmath>
#include <string>

namespace simullat {

void validate(const UtteranceTrace& trace) {
  if (!std::isfinite(trace.source_duration) || trace.source_duration <= 0.0) {
    throw InvalidTrace("source duration must be positive");
  }
  if (trace.delays.size() != trace.hypothesis.size()) {
    throw InvalidTrace("delay count " + std::to_string(trace.delays.size()) +
                       " does not match hypothesis length " +
                       std::to_string(trace.hypothesis.size()));
  }
  if (trace.reference.empty()) {
    throw InvalidTrace("empty reference");
  }
  for (std::size_t i = 0; i < trace.delays.size(); ++i) {
    const double d = trace.delays[i];
    if (!std::isfinite(d) || d < 0.0 || d > trace.source_duration) {
      throw InvalidTrace("delay " + std::to_string(i + 1) + " outside [0, source duration]");
    }
    if (i > 0 && d < trace.delays[i - 1]) {
      throw InvalidTrace("non-monotone delays");
    }
  }
}

}  // namespace simullat
