// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The simullat Authors

// Test-only helpers: random valid traces and a brute-force transliteration
// of the lagging definition that shares no code with src/.

#pragma once

#include <algorithm>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "simullat/trace.hpp"

namespace simullat::testing {

inline UtteranceTrace make_trace(double source_duration, std::vector<double> delays,
                                 std::size_t ref_length) {
  UtteranceTrace t;
  t.source_duration = source_duration;
  t.delays = std::move(delays);
  for (std::size_t i = 0; i < t.delays.size(); ++i) t.hypothesis.push_back("h" + std::to_string(i));
  for (std::size_t i = 0; i < ref_length; ++i) t.reference.push_back("r" + std::to_string(i));
  return t;
}

/// Random trace satisfying every UtteranceTrace invariant, with |Y| >= 1.
/// Roughly half the traces reach the source end (some with trailing tokens).
inline UtteranceTrace random_trace(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> duration(200.0, 30000.0);
  std::uniform_int_distribution<int> ref_len(1, 40);
  std::uniform_int_distribution<int> hyp_len(1, 60);
  std::bernoulli_distribution reaches_end(0.6);

  const double T = duration(rng);
  const int n_hyp = hyp_len(rng);
  std::uniform_real_distribution<double> delay(0.0, T);
  std::vector<double> delays(static_cast<std::size_t>(n_hyp));
  for (auto& d : delays) d = delay(rng);
  std::sort(delays.begin(), delays.end());
  if (reaches_end(rng)) {
    std::uniform_int_distribution<int> first_end(0, n_hyp - 1);
    for (int i = first_end(rng); i < n_hyp; ++i) delays[static_cast<std::size_t>(i)] = T;
  }
  return make_trace(T, std::move(delays), static_cast<std::size_t>(ref_len(rng)));
}

/// Average lagging written straight from the definition:
///   tau = min{ i : d_i = T } (or |Y|),  AL = 1/tau * sum_{i<=tau} d_i - (i-1) T / denom
/// Long double throughout; the oracle delay is rebuilt by an inner loop.
inline long double brute_force_lagging(const UtteranceTrace& t, std::size_t denom) {
  const long double T = t.source_duration;
  const std::size_t n = t.delays.size();
  std::size_t tau = n;
  for (std::size_t i = n; i >= 1; --i) {
    if (static_cast<long double>(t.delays[i - 1]) >= T - 1e-6L) tau = i;
  }
  long double total = 0.0L;
  for (std::size_t i = 1; i <= tau; ++i) {
    std::size_t words_before = 0;
    for (std::size_t j = 1; j < i; ++j) ++words_before;
    const long double oracle = static_cast<long double>(words_before) * T / static_cast<long double>(denom);
    total += static_cast<long double>(t.delays[i - 1]) - oracle;
  }
  return total / static_cast<long double>(tau);
}

inline long double brute_force_al(const UtteranceTrace& t) {
  return brute_force_lagging(t, t.reference.size());
}

inline long double brute_force_laal(const UtteranceTrace& t) {
  return brute_force_lagging(t, std::max(t.reference.size(), t.hypothesis.size()));
}

}  // namespace simullat::testing
