// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The simullat Authors

#pragma once

/**
 * @file metrics.hpp
 * @brief Sentence-level latency metrics for simultaneous translation.
 *
 * Average Lagging (AL) compares each emitted token's delay against an ideal
 * translator that starts speaking at time zero and emits words at a uniform
 * rate. The rate is source_duration / denominator where the denominator is
 *
 *   - the reference length for AL,
 *   - max(hypothesis length, reference length) for LAAL.
 *
 * Only tokens up to and including the first one emitted after the whole
 * source was consumed (the cutoff) contribute. Using the larger of the two
 * lengths removes the discount AL grants to hypotheses that are longer than
 * their reference.
 *
 * Every function here is pure and thread-safe.
 */

#include <cstddef>
#include <span>
#include <vector>

#include "simullat/trace.hpp"

namespace simullat {

/// A delay within this distance of the source duration counts as having
/// reached the end of the source.
inline constexpr double kEndOfSourceEpsilonMs = 1e-6;

struct OracleSchedule {
  double word_duration = 0.0;
  std::size_t denominator_length = 0;
  std::vector<double> delays;
};

/// Sentence-level result of one lagging metric.
struct LaggingResult {
  double value = 0.0;
  std::vector<double> lagging;  // d_i - d*_i for i = 1..cutoff
  std::size_t cutoff = 0;
};

struct SentenceLatency {
  double al = 0.0;
  double laal = 0.0;
  std::size_t cutoff_index = 0;
  std::vector<double> lagging_al;
  std::vector<double> lagging_laal;
  std::size_t hyp_length = 0;
  std::size_t ref_length = 0;
  long long length_diff = 0;
};

/// One hypothesis token paired with the reference word it translates.
struct AlignmentPair {
  double system_delay = 0.0;
  std::size_t oracle_word_index = 1;  // 1-based
};

/// 1-based index of the first delay that reaches the end of the source, or
/// delays.size() when the source end is never reached.
std::size_t cutoff_index(std::span<const double> delays, double source_duration);

/// Oracle delays d*_i = (i-1) * source_duration / denominator_length for
/// i = 1..count. Not capped at source_duration.
OracleSchedule oracle_schedule(double source_duration, std::size_t denominator_length,
                               std::size_t count);

/// Mean lagging up to the cutoff against an oracle paced by `denominator_length`.
LaggingResult average_lagging(const UtteranceTrace& trace, std::size_t denominator_length);

LaggingResult sentence_al(const UtteranceTrace& trace);
LaggingResult sentence_laal(const UtteranceTrace& trace);

SentenceLatency sentence_metrics(const UtteranceTrace& trace);

/// Mean lagging over a manual token alignment, with exact (unrounded)
/// oracle delays paced by the reference length.
double aligned_lagging(std::span<const AlignmentPair> pairs, double source_duration,
                       std::size_t ref_length);

}  // namespace simullat
