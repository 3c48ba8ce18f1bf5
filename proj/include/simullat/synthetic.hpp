// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The simullat Authors

#pragma once

/**
 * @file synthetic.hpp
 * @brief Seeded wait-k decoding traces with controllable over-generation.
 *
 * A wait-k policy reads k source words, then emits one target word per
 * newly read source word; once the source is exhausted the remaining
 * target words are emitted at the source end. Target token i therefore has
 * delay sum(D_1 .. D_min(k+i-1, n)).
 *
 * Over-generation is synthesized by duplicating tokens emitted up to the
 * cutoff, which is exactly the situation where AL is biased low.
 */

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "simullat/trace.hpp"

namespace simullat {

template <typename T>
struct Interval {
  T min{};
  T max{};

  bool empty() const { return max < min; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct SynthConfig {
  int k = 3;
  Interval<int> source_words{10, 30};
  Interval<double> word_duration_ms{250.0, 450.0};
  Interval<int> target_length_offset{0, 0};  // |Y| - n
  double overgen_insert_prob = 0.0;
  std::uint64_t seed = 0;
  int num_sentences = 100;

  friend bool operator==(const SynthConfig&, const SynthConfig&) = default;
};

/// Throws std::invalid_argument on empty ranges or out-of-range values.
void validate(const SynthConfig& config);

/// 64-bit Mersenne Twister; all draws below consume raw engine output so a
/// seed yields the same corpus on every standard library.
using SynthRng = std::mt19937_64;
inline constexpr const char* kSynthRngName = "mt19937_64";

std::uint64_t uniform_int(SynthRng& rng, std::uint64_t lo, std::uint64_t hi);
double uniform_unit(SynthRng& rng);  // [0, 1)

/// One wait-k trace. Does not apply over-generation.
UtteranceTrace gen_waitk_trace(const SynthConfig& config, SynthRng& rng);

/// Duplicates each token at positions 1..cutoff with probability `prob`.
/// Exactly one draw is consumed per eligible position.
UtteranceTrace inject_overgeneration(const UtteranceTrace& trace, double prob, SynthRng& rng);

/// num_sentences traces, indexed from 0, with over-generation applied.
std::vector<UtteranceTrace> generate_corpus(const SynthConfig& config);

/// JSON object recording the full config and generator identity.
std::string synth_metadata_json(const SynthConfig& config);

}  // namespace simullat
