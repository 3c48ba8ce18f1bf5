// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The simullat Authors

#include "simullat/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "simullat/trace_io.hpp"

namespace simullat {
namespace {

using ojson = nlohmann::ordered_json;

constexpr const char* kAggregation = "unweighted-mean";

// Summing in sorted order makes the mean independent of input order.
double order_independent_mean(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

int sign(double x) { return (x > 0.0) - (x < 0.0); }

long long round_ms(double value) { return std::llround(value); }

}  // namespace

MetricSelection MetricSelection::parse(std::string_view comma_list) {
  MetricSelection sel{false, false, false};
  std::size_t start = 0;
  while (start <= comma_list.size()) {
    const std::size_t end = std::min(comma_list.find(',', start), comma_list.size());
    const std::string_view name = comma_list.substr(start, end - start);
    if (name == "al") {
      sel.al = true;
    } else if (name == "laal") {
      sel.laal = true;
    } else if (name == "awld") {
      sel.awld = true;
    } else {
      throw std::invalid_argument("unknown metric '" + std::string(name) + "'");
    }
    start = end + 1;
  }
  return sel;
}

std::vector<std::string> MetricSelection::names() const {
  std::vector<std::string> out;
  if (al) out.emplace_back("al");
  if (laal) out.emplace_back("laal");
  if (awld) out.emplace_back("awld");
  return out;
}

SentenceRecord score_sentence(const UtteranceTrace& trace) {
  SentenceRecord record;
  record.index = trace.index;
  record.hyp_length = trace.hyp_length();
  record.ref_length = trace.ref_length();
  try {
    record.latency = sentence_metrics(trace);
  } catch (const UndefinedMetric&) {
    record.skip_reason = "empty hypothesis";
  }
  return record;
}

std::vector<SentenceRecord> score_corpus(std::span<const UtteranceTrace> traces) {
  std::vector<SentenceRecord> records;
  records.reserve(traces.size());
  for (const auto& trace : traces) {
    records.push_back(score_sentence(trace));
  }
  return records;
}

RegimeBins::RegimeBins()
    : RegimeBins(std::vector<double>(std::begin(kDefaultThresholds), std::end(kDefaultThresholds))) {}

RegimeBins::RegimeBins(std::vector<double> thresholds) : thresholds_(std::move(thresholds)) {
  for (std::size_t i = 0; i < thresholds_.size(); ++i) {
    if (!std::isfinite(thresholds_[i])) {
      throw std::invalid_argument("regime thresholds must be finite");
    }
    if (i > 0 && !(thresholds_[i] > thresholds_[i - 1])) {
      throw std::invalid_argument("regime thresholds must be strictly increasing");
    }
  }
  if (thresholds_.size() == 3) {
    labels_ = {"low", "medium", "high", "ultra-high"};
  } else {
    for (std::size_t i = 0; i <= thresholds_.size(); ++i) {
      labels_.push_back("regime-" + std::to_string(i));
    }
  }
}

std::size_t RegimeBins::classify(double value) const {
  const auto it = std::upper_bound(thresholds_.begin(), thresholds_.end(), value);
  return static_cast<std::size_t>(it - thresholds_.begin());
}

double awld(std::span<const UtteranceTrace> traces) {
  if (traces.empty()) {
    throw std::invalid_argument("AWLD of an empty corpus is undefined");
  }
  long long sum = 0;
  for (const auto& trace : traces) {
    sum += static_cast<long long>(trace.hyp_length()) - static_cast<long long>(trace.ref_length());
  }
  return static_cast<double>(sum) / static_cast<double>(traces.size());
}

CorpusReport aggregate(std::span<const SentenceRecord> records, const RegimeBins& bins,
                       bool keep_per_sentence, MetricSelection metrics) {
  CorpusReport report;
  report.metrics = metrics;
  report.sentence_count = records.size();
  report.regime_thresholds = bins.thresholds();
  for (const auto& label : bins.labels()) {
    report.regime_counts.push_back({label, 0});
  }
  if (keep_per_sentence) {
    report.per_sentence.emplace();
  }

  std::vector<double> al_values;
  std::vector<double> laal_values;
  long long length_diff_sum = 0;
  for (const auto& record : records) {
    length_diff_sum +=
        static_cast<long long>(record.hyp_length) - static_cast<long long>(record.ref_length);
    if (!record.latency) {
      report.skipped.push_back({record.index, record.skip_reason});
      continue;
    }
    const auto& latency = *record.latency;
    al_values.push_back(latency.al);
    laal_values.push_back(latency.laal);
    const std::size_t bin = bins.classify(latency.laal);
    ++report.regime_counts[bin].count;
    if (keep_per_sentence) {
      report.per_sentence->push_back({record.index, latency, bins.labels()[bin]});
    }
  }
  report.skipped_count = report.skipped.size();
  if (al_values.empty()) {
    throw std::domain_error("no sentence has a defined latency metric");
  }
  report.corpus_al = order_independent_mean(std::move(al_values));
  report.corpus_laal = order_independent_mean(std::move(laal_values));
  report.awld = static_cast<double>(length_diff_sum) / static_cast<double>(records.size());
  return report;
}

Comparison compare(const CorpusReport& a, const CorpusReport& b) {
  Comparison out;
  out.delta_al = b.corpus_al - a.corpus_al;
  out.delta_laal = b.corpus_laal - a.corpus_laal;
  out.delta_awld = b.awld - a.awld;
  out.corpus_ranking_disagrees = sign(out.delta_al) != sign(out.delta_laal);

  if (!a.per_sentence || !b.per_sentence) {
    return out;
  }
  if (a.per_sentence->size() != b.per_sentence->size()) {
    out.warnings.push_back("sentence counts differ (" + std::to_string(a.per_sentence->size()) +
                           " vs " + std::to_string(b.per_sentence->size()) +
                           "); per-sentence flags suppressed");
    return out;
  }
  out.flagged_sentences.emplace();
  for (std::size_t s = 0; s < a.per_sentence->size(); ++s) {
    const auto& lhs = (*a.per_sentence)[s];
    const auto& rhs = (*b.per_sentence)[s];
    if (lhs.index != rhs.index) {
      out.warnings.push_back("sentence " + std::to_string(s) + " has index " +
                             std::to_string(lhs.index) + " vs " + std::to_string(rhs.index));
    }
    if (sign(lhs.latency.al - rhs.latency.al) != sign(lhs.latency.laal - rhs.latency.laal)) {
      out.flagged_sentences->push_back(lhs.index);
    }
  }
  return out;
}

std::string comparison_json(const Comparison& comparison) {
  ojson j;
  j["delta_al"] = comparison.delta_al;
  j["delta_laal"] = comparison.delta_laal;
  j["delta_awld"] = comparison.delta_awld;
  j["corpus_ranking_disagrees"] = comparison.corpus_ranking_disagrees;
  if (comparison.flagged_sentences) {
    j["flagged_sentences"] = *comparison.flagged_sentences;
  } else {
    j["flagged_sentences"] = nullptr;
  }
  j["warnings"] = comparison.warnings;
  return j.dump(2);
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "table" || name == "pretty-table") return ReportFormat::kTable;
  throw std::invalid_argument("unknown report format '" + std::string(name) + "'");
}

std::string format_exact(double value) {
  char buf[64];
  const auto result = std::to_chars(std::begin(buf), std::end(buf), value);
  return std::string(buf, result.ptr);
}

std::string report_json(const CorpusReport& report) {
  const auto& m = report.metrics;
  ojson summary;
  summary["metrics"] = m.names();
  summary["aggregation"] = kAggregation;
  summary["sentence_count"] = report.sentence_count;
  summary["skipped_count"] = report.skipped_count;
  if (m.al) summary["corpus_al"] = report.corpus_al;
  if (m.laal) summary["corpus_laal"] = report.corpus_laal;
  if (m.awld) summary["awld"] = report.awld;
  summary["regime_thresholds"] = report.regime_thresholds;
  ojson regimes = ojson::object();
  for (const auto& rc : report.regime_counts) {
    regimes[rc.label] = rc.count;
  }
  summary["regime_counts"] = regimes;
  ojson skipped = ojson::array();
  for (const auto& s : report.skipped) {
    skipped.push_back({{"index", s.index}, {"reason", s.reason}});
  }
  summary["skipped"] = skipped;

  ojson root;
  root["summary"] = summary;
  if (report.per_sentence) {
    ojson rows = ojson::array();
    for (const auto& entry : *report.per_sentence) {
      const auto& lat = entry.latency;
      ojson row;
      row["index"] = entry.index;
      if (m.al) row["al"] = lat.al;
      if (m.laal) row["laal"] = lat.laal;
      row["cutoff_index"] = lat.cutoff_index;
      row["hyp_length"] = lat.hyp_length;
      row["ref_length"] = lat.ref_length;
      row["length_diff"] = lat.length_diff;
      row["regime"] = entry.regime;
      if (m.al) row["lagging_al"] = lat.lagging_al;
      if (m.laal) row["lagging_laal"] = lat.lagging_laal;
      rows.push_back(std::move(row));
    }
    root["per_sentence"] = rows;
  }
  return root.dump(2);
}

CorpusReport read_report_json(std::string_view text) {
  const auto root = ojson::parse(text);
  const auto& summary = root.at("summary");

  CorpusReport report;
  report.metrics = MetricSelection{false, false, false};
  for (const auto& name : summary.at("metrics")) {
    const auto s = name.get<std::string>();
    if (s == "al") report.metrics.al = true;
    if (s == "laal") report.metrics.laal = true;
    if (s == "awld") report.metrics.awld = true;
  }
  if (summary.value("aggregation", std::string(kAggregation)) != kAggregation) {
    throw std::invalid_argument("unsupported aggregation in report");
  }
  report.sentence_count = summary.at("sentence_count").get<std::size_t>();
  report.skipped_count = summary.at("skipped_count").get<std::size_t>();
  report.corpus_al = summary.value("corpus_al", 0.0);
  report.corpus_laal = summary.value("corpus_laal", 0.0);
  report.awld = summary.value("awld", 0.0);
  report.regime_thresholds = summary.at("regime_thresholds").get<std::vector<double>>();
  for (const auto& [label, count] : summary.at("regime_counts").items()) {
    report.regime_counts.push_back({label, count.get<std::size_t>()});
  }
  for (const auto& s : summary.at("skipped")) {
    report.skipped.push_back({s.at("index").get<std::size_t>(), s.at("reason").get<std::string>()});
  }

  if (root.contains("per_sentence")) {
    report.per_sentence.emplace();
    for (const auto& row : root.at("per_sentence")) {
      SentenceEntry entry;
      entry.index = row.at("index").get<std::size_t>();
      entry.regime = row.at("regime").get<std::string>();
      auto& lat = entry.latency;
      lat.al = row.value("al", 0.0);
      lat.laal = row.value("laal", 0.0);
      lat.cutoff_index = row.at("cutoff_index").get<std::size_t>();
      lat.hyp_length = row.at("hyp_length").get<std::size_t>();
      lat.ref_length = row.at("ref_length").get<std::size_t>();
      lat.length_diff = row.at("length_diff").get<long long>();
      lat.lagging_al = row.value("lagging_al", std::vector<double>{});
      lat.lagging_laal = row.value("lagging_laal", std::vector<double>{});
      report.per_sentence->push_back(std::move(entry));
    }
  }
  return report;
}

namespace {

void write_csv(std::ostream& out, const CorpusReport& report) {
  const auto& m = report.metrics;
  out << "index,al,laal,cutoff_index,hyp_length,ref_length,length_diff,regime\n";
  if (report.per_sentence) {
    for (const auto& entry : *report.per_sentence) {
      const auto& lat = entry.latency;
      out << entry.index << ',' << (m.al ? format_exact(lat.al) : "") << ','
          << (m.laal ? format_exact(lat.laal) : "") << ',' << lat.cutoff_index << ','
          << lat.hyp_length << ',' << lat.ref_length << ',' << lat.length_diff << ','
          << entry.regime << '\n';
    }
  }
  out << "summary," << (m.al ? format_exact(report.corpus_al) : "") << ','
      << (m.laal ? format_exact(report.corpus_laal) : "") << ",,,,"
      << (m.awld ? format_exact(report.awld) : "") << ",\n";
}

void write_table(std::ostream& out, const CorpusReport& report) {
  const auto& m = report.metrics;
  const auto row = [&out](std::string_view label, const std::string& value) {
    out << std::left << std::setw(16) << label << value << '\n';
  };
  row("sentences", std::to_string(report.sentence_count));
  row("skipped", std::to_string(report.skipped_count));
  if (m.al) row("AL (ms)", std::to_string(round_ms(report.corpus_al)));
  if (m.laal) row("LAAL (ms)", std::to_string(round_ms(report.corpus_laal)));
  if (m.awld) {
    std::ostringstream awld;
    awld << std::fixed << std::setprecision(2) << report.awld;
    row("AWLD (words)", awld.str());
  }
  std::string regimes;
  for (const auto& rc : report.regime_counts) {
    if (!regimes.empty()) regimes += ' ';
    regimes += rc.label + '=' + std::to_string(rc.count);
  }
  row("regimes", regimes);

  if (!report.per_sentence || report.per_sentence->empty()) {
    return;
  }
  out << '\n'
      << std::right << std::setw(8) << "index" << std::setw(9) << "AL" << std::setw(9) << "LAAL"
      << std::setw(8) << "cutoff" << std::setw(6) << "|Y|" << std::setw(6) << "|Y*|"
      << std::setw(6) << "diff" << "  regime\n";
  for (const auto& entry : *report.per_sentence) {
    const auto& lat = entry.latency;
    out << std::setw(8) << entry.index << std::setw(9)
        << (m.al ? std::to_string(round_ms(lat.al)) : "-") << std::setw(9)
        << (m.laal ? std::to_string(round_ms(lat.laal)) : "-") << std::setw(8)
        << lat.cutoff_index << std::setw(6) << lat.hyp_length << std::setw(6) << lat.ref_length
        << std::setw(6) << lat.length_diff << "  " << entry.regime << '\n';
  }
}

}  // namespace

void write_report(std::ostream& out, const CorpusReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::kJson:
      out << report_json(report) << '\n';
      break;
    case ReportFormat::kCsv:
      write_csv(out, report);
      break;
    case ReportFormat::kTable:
      write_table(out, report);
      break;
  }
  if (!out) {
    throw IoError("failed to write report");
  }
}

}  // namespace simullat
