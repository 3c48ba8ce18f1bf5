// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The simullat Authors

#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "simullat/metrics.hpp"
#include "simullat/trace.hpp"

namespace simullat {

struct MetricSelection {
  bool al = true;
  bool laal = true;
  bool awld = true;

  static MetricSelection parse(std::string_view comma_list);
  std::vector<std::string> names() const;
  friend bool operator==(const MetricSelection&, const MetricSelection&) = default;
};

/// Score of one sentence; `latency` is empty when the metric is undefined.
struct SentenceRecord {
  std::size_t index = 0;
  std::size_t hyp_length = 0;
  std::size_t ref_length = 0;
  std::optional<SentenceLatency> latency;
  std::string skip_reason;
};

SentenceRecord score_sentence(const UtteranceTrace& trace);
std::vector<SentenceRecord> score_corpus(std::span<const UtteranceTrace> traces);

/// Latency regimes: value < thresholds[i] falls in bin i, otherwise the last bin.
class RegimeBins {
 public:
  static constexpr double kDefaultThresholds[] = {1000.0, 2000.0, 4000.0};

  RegimeBins();
  explicit RegimeBins(std::vector<double> thresholds);

  std::size_t classify(double value) const;
  const std::vector<double>& thresholds() const { return thresholds_; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<double> thresholds_;
  std::vector<std::string> labels_;
};

struct SkippedSentence {
  std::size_t index = 0;
  std::string reason;
  friend bool operator==(const SkippedSentence&, const SkippedSentence&) = default;
};

struct SentenceEntry {
  std::size_t index = 0;
  SentenceLatency latency;
  std::string regime;
};

struct RegimeCount {
  std::string label;
  std::size_t count = 0;
  friend bool operator==(const RegimeCount&, const RegimeCount&) = default;
};

struct CorpusReport {
  double corpus_al = 0.0;
  double corpus_laal = 0.0;
  double awld = 0.0;
  std::size_t sentence_count = 0;
  std::size_t skipped_count = 0;
  std::vector<SkippedSentence> skipped;
  std::vector<RegimeCount> regime_counts;
  std::vector<double> regime_thresholds;
  std::optional<std::vector<SentenceEntry>> per_sentence;
  MetricSelection metrics;
};

/// Mean of |Y| - |Y*|; positive means the system over-generates.
double awld(std::span<const UtteranceTrace> traces);

/// Unweighted means over defined sentences; awld over every record.
/// Throws std::domain_error when no sentence has a defined metric.
CorpusReport aggregate(std::span<const SentenceRecord> records, const RegimeBins& bins = {},
                       bool keep_per_sentence = false, MetricSelection metrics = {});

struct Comparison {
  double delta_al = 0.0;  // b - a
  double delta_laal = 0.0;
  double delta_awld = 0.0;
  bool corpus_ranking_disagrees = false;
  std::optional<std::vector<std::size_t>> flagged_sentences;
  std::vector<std::string> warnings;
};

Comparison compare(const CorpusReport& a, const CorpusReport& b);
std::string comparison_json(const Comparison& comparison);

enum class ReportFormat { kJson, kCsv, kTable };
ReportFormat parse_report_format(std::string_view name);

void write_report(std::ostream& out, const CorpusReport& report, ReportFormat format);
std::string report_json(const CorpusReport& report);
CorpusReport read_report_json(std::string_view text);

/// Shortest decimal string that parses back to the same double.
std::string format_exact(double value);

}  // namespace simullat
