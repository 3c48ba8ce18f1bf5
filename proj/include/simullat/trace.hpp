// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The simullat Authors

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace simullat {

/// Raised when a trace violates the invariants required for metric
/// computation (empty reference, non-monotone delays, ...).
class InvalidTrace : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a latency metric has no value for an otherwise valid trace.
/// The only such case is an empty hypothesis.
class UndefinedMetric : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/**
 * Decoding record of one utterance.
 *
 * All times are milliseconds of source audio. delays[i] is the amount of
 * source consumed when hypothesis token i (0-based) was emitted.
 */
struct UtteranceTrace {
  std::size_t index = 0;  // position in the originating corpus
  double source_duration = 0.0;
  std::vector<double> delays;
  std::vector<std::string> hypothesis;
  std::vector<std::string> reference;

  std::size_t hyp_length() const { return hypothesis.size(); }
  std::size_t ref_length() const { return reference.size(); }

  friend bool operator==(const UtteranceTrace&, const UtteranceTrace&) = default;
};

// Throws InvalidTrace describing the first violated invariant.
void validate(const UtteranceTrace& trace);

}  // namespace simullat
