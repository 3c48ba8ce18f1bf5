// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The simullat Authors

#include "simullat/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "simullat/metrics.hpp"

namespace simullat {

void validate(const SynthConfig& config) {
  if (config.k < 1) {
    throw std::invalid_argument("k must be positive");
  }
  if (config.source_words.empty() || config.source_words.min < 1) {
    throw std::invalid_argument("source word range must be non-empty and positive");
  }
  if (config.word_duration_ms.empty() || !(config.word_duration_ms.min > 0.0) ||
      !std::isfinite(config.word_duration_ms.max)) {
    throw std::invalid_argument("word duration range must be non-empty and positive");
  }
  if (config.target_length_offset.empty()) {
    throw std::invalid_argument("target length offset range is empty");
  }
  if (!(config.overgen_insert_prob >= 0.0 && config.overgen_insert_prob <= 1.0)) {
    throw std::invalid_argument("over-generation probability must be in [0, 1]");
  }
  if (config.num_sentences < 1) {
    throw std::invalid_argument("number of sentences must be positive");
  }
}

std::uint64_t uniform_int(SynthRng& rng, std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t span = hi - lo;
  if (span == std::numeric_limits<std::uint64_t>::max()) {
    return rng();
  }
  const std::uint64_t range = span + 1;
  // Reject the tail so every value is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return lo + x % range;
}

double uniform_unit(SynthRng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

namespace {

int draw_int(SynthRng& rng, Interval<int> range) {
  const auto lo = static_cast<std::int64_t>(range.min);
  const auto hi = static_cast<std::int64_t>(range.max);
  return static_cast<int>(lo + static_cast<std::int64_t>(
                                   uniform_int(rng, 0, static_cast<std::uint64_t>(hi - lo))));
}

double draw_real(SynthRng& rng, Interval<double> range) {
  if (range.min == range.max) {
    rng.discard(1);
    return range.min;
  }
  return range.min + (range.max - range.min) * uniform_unit(rng);
}

}  // namespace

UtteranceTrace gen_waitk_trace(const SynthConfig& config, SynthRng& rng) {
  validate(config);
  const int n = draw_int(rng, config.source_words);

  std::vector<double> elapsed(static_cast<std::size_t>(n) + 1, 0.0);
  for (int j = 1; j <= n; ++j) {
    elapsed[j] = elapsed[j - 1] + draw_real(rng, config.word_duration_ms);
  }
  const int target_len = std::max(1, n + draw_int(rng, config.target_length_offset));

  UtteranceTrace trace;
  trace.source_duration = elapsed[n];
  trace.delays.reserve(target_len);
  trace.hypothesis.reserve(target_len);
  for (int i = 1; i <= target_len; ++i) {
    // k + i - 1 computed in 64 bits; k may be large.
    const auto read = std::min<std::int64_t>(static_cast<std::int64_t>(config.k) + i - 1, n);
    trace.delays.push_back(elapsed[static_cast<std::size_t>(read)]);
    trace.hypothesis.push_back("w" + std::to_string(i));
  }
  trace.reference.reserve(n);
  for (int j = 1; j <= n; ++j) {
    trace.reference.push_back("r" + std::to_string(j));
  }
  return trace;
}

UtteranceTrace inject_overgeneration(const UtteranceTrace& trace, double prob, SynthRng& rng) {
  if (trace.delays.empty()) {
    return trace;
  }
  const std::size_t cutoff = cutoff_index(trace.delays, trace.source_duration);

  UtteranceTrace out;
  out.index = trace.index;
  out.source_duration = trace.source_duration;
  out.reference = trace.reference;
  out.delays.reserve(trace.delays.size() * 2);
  out.hypothesis.reserve(trace.delays.size() * 2);
  for (std::size_t i = 0; i < trace.delays.size(); ++i) {
    out.delays.push_back(trace.delays[i]);
    out.hypothesis.push_back(trace.hypothesis[i]);
    if (i < cutoff && uniform_unit(rng) < prob) {
      out.delays.push_back(trace.delays[i]);
      out.hypothesis.push_back(trace.hypothesis[i] + "+dup");
    }
  }
  return out;
}

std::vector<UtteranceTrace> generate_corpus(const SynthConfig& config) {
  validate(config);
  SynthRng rng(config.seed);
  std::vector<UtteranceTrace> corpus;
  corpus.reserve(static_cast<std::size_t>(config.num_sentences));
  for (int s = 0; s < config.num_sentences; ++s) {
    auto trace = gen_waitk_trace(config, rng);
    trace.index = static_cast<std::size_t>(s);
    corpus.push_back(inject_overgeneration(trace, config.overgen_insert_prob, rng));
  }
  return corpus;
}

std::string synth_metadata_json(const SynthConfig& config) {
  nlohmann::ordered_json meta;
  meta["generator"] = "wait-k";
  meta["rng"] = kSynthRngName;
  meta["seed"] = config.seed;
  meta["k"] = config.k;
  meta["source_words"] = {config.source_words.min, config.source_words.max};
  meta["word_duration_ms"] = {config.word_duration_ms.min, config.word_duration_ms.max};
  meta["target_length_offset"] = {config.target_length_offset.min,
                                  config.target_length_offset.max};
  meta["overgen_insert_prob"] = config.overgen_insert_prob;
  meta["num_sentences"] = config.num_sentences;
  return meta.dump(2);
}

}  // namespace simullat
