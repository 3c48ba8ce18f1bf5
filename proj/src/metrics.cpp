// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The simullat Authors

#include "simullat/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace simullat {

std::size_t cutoff_index(std::span<const double> delays, double source_duration) {
  if (delays.empty()) {
    throw InvalidTrace("cannot compute cutoff of an empty delay sequence");
  }
  const double end = source_duration - kEndOfSourceEpsilonMs;
  const auto it = std::find_if(delays.begin(), delays.end(), [end](double d) { return d >= end; });
  if (it == delays.end()) {
    return delays.size();
  }
  return static_cast<std::size_t>(it - delays.begin()) + 1;
}

OracleSchedule oracle_schedule(double source_duration, std::size_t denominator_length,
                               std::size_t count) {
  if (denominator_length == 0) {
    throw std::invalid_argument("oracle denominator length must be positive");
  }
  if (!(source_duration > 0.0)) {
    throw std::invalid_argument("source duration must be positive");
  }
  if (count == 0) {
    throw std::invalid_argument("oracle schedule needs at least one word");
  }
  OracleSchedule schedule;
  schedule.denominator_length = denominator_length;
  schedule.word_duration = source_duration / static_cast<double>(denominator_length);
  schedule.delays.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    // Multiply before dividing so integral inputs stay exact.
    schedule.delays[i] =
        static_cast<double>(i) * source_duration / static_cast<double>(denominator_length);
  }
  return schedule;
}

LaggingResult average_lagging(const UtteranceTrace& trace, std::size_t denominator_length) {
  validate(trace);
  if (trace.hypothesis.empty()) {
    throw UndefinedMetric("lagging is undefined for an empty hypothesis");
  }
  LaggingResult result;
  result.cutoff = cutoff_index(trace.delays, trace.source_duration);
  const auto oracle = oracle_schedule(trace.source_duration, denominator_length, result.cutoff);

  result.lagging.reserve(result.cutoff);
  double sum = 0.0;
  for (std::size_t i = 0; i < result.cutoff; ++i) {
    const double lag = trace.delays[i] - oracle.delays[i];
    result.lagging.push_back(lag);
    sum += lag;
  }
  result.value = sum / static_cast<double>(result.cutoff);
  return result;
}

LaggingResult sentence_al(const UtteranceTrace& trace) {
  return average_lagging(trace, trace.ref_length());
}

LaggingResult sentence_laal(const UtteranceTrace& trace) {
  return average_lagging(trace, std::max(trace.hyp_length(), trace.ref_length()));
}

SentenceLatency sentence_metrics(const UtteranceTrace& trace) {
  auto al = sentence_al(trace);
  auto laal = sentence_laal(trace);

  SentenceLatency out;
  out.al = al.value;
  out.laal = laal.value;
  out.cutoff_index = al.cutoff;
  out.lagging_al = std::move(al.lagging);
  out.lagging_laal = std::move(laal.lagging);
  out.hyp_length = trace.hyp_length();
  out.ref_length = trace.ref_length();
  out.length_diff =
      static_cast<long long>(trace.hyp_length()) - static_cast<long long>(trace.ref_length());
  return out;
}

double aligned_lagging(std::span<const AlignmentPair> pairs, double source_duration,
                       std::size_t ref_length) {
  if (pairs.empty()) {
    throw std::invalid_argument("aligned lagging needs at least one pair");
  }
  if (ref_length == 0) {
    throw std::invalid_argument("reference length must be positive");
  }
  if (!(source_duration > 0.0)) {
    throw std::invalid_argument("source duration must be positive");
  }
  double sum = 0.0;
  for (const auto& pair : pairs) {
    if (pair.oracle_word_index < 1 || pair.oracle_word_index > ref_length) {
      throw std::out_of_range("oracle word index " + std::to_string(pair.oracle_word_index) +
                              " outside [1, " + std::to_string(ref_length) + "]");
    }
    const double oracle = static_cast<double>(pair.oracle_word_index - 1) * source_duration /
                          static_cast<double>(ref_length);
    sum += pair.system_delay - oracle;
  }
  return sum / static_cast<double>(pairs.size());
}

}  // namespace simullat
