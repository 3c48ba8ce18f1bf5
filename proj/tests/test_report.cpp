// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The simullat Authors

#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "simullat/report.hpp"
#include "simullat/synthetic.hpp"
#include "support.hpp"

using namespace simullat;
using simullat::testing::make_trace;

namespace {

SentenceRecord defined(std::size_t index, double al, double laal, std::size_t hyp = 3,
                       std::size_t ref = 3) {
  SentenceRecord r;
  r.index = index;
  r.hyp_length = hyp;
  r.ref_length = ref;
  SentenceLatency lat;
  lat.al = al;
  lat.laal = laal;
  lat.cutoff_index = 1;
  lat.hyp_length = hyp;
  lat.ref_length = ref;
  lat.length_diff = static_cast<long long>(hyp) - static_cast<long long>(ref);
  r.latency = lat;
  return r;
}

SentenceRecord undefined(std::size_t index, std::size_t ref) {
  SentenceRecord r;
  r.index = index;
  r.ref_length = ref;
  r.skip_reason = "empty hypothesis";
  return r;
}

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> lines;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

}  // namespace

TEST_CASE("awld") {
  const std::vector<UtteranceTrace> traces{make_trace(1000, {1, 2, 3}, 2),
                                           make_trace(1000, {1, 2, 3, 4, 5}, 4)};
  CHECK(awld(traces) == 1.0);
  const std::vector<UtteranceTrace> same{make_trace(1000, {1, 2}, 2)};
  CHECK(awld(same) == 0.0);
  const std::vector<UtteranceTrace> shorter{make_trace(1000, {1}, 4), make_trace(1000, {1}, 2)};
  CHECK(awld(shorter) == -2.0);
  CHECK_THROWS_AS(awld(std::vector<UtteranceTrace>{}), std::invalid_argument);
}

TEST_CASE("aggregate means and skips") {
  const std::vector<SentenceRecord> two{defined(0, 100, 100), defined(1, 300, 500)};
  const auto report = aggregate(two);
  CHECK(report.corpus_al == 200.0);
  CHECK(report.corpus_laal == 300.0);
  CHECK(report.sentence_count == 2);
  CHECK(report.skipped_count == 0);

  const std::vector<SentenceRecord> mixed{defined(0, 700, 900, 3, 3), undefined(1, 4)};
  const auto skipped = aggregate(mixed);
  CHECK(skipped.sentence_count == 2);
  CHECK(skipped.skipped_count == 1);
  CHECK(skipped.skipped[0] == SkippedSentence{1, "empty hypothesis"});
  CHECK(skipped.corpus_al == 700.0);
  // awld includes the skipped sentence: (0 + (0 - 4)) / 2
  CHECK(skipped.awld == -2.0);

  const std::vector<SentenceRecord> none{undefined(0, 2)};
  CHECK_THROWS_AS(aggregate(none), std::domain_error);
}

TEST_CASE("regime bins") {
  const RegimeBins bins;
  CHECK(bins.labels() == std::vector<std::string>{"low", "medium", "high", "ultra-high"});
  CHECK(bins.classify(1500) == 1);
  CHECK(bins.classify(999.9) == 0);
  CHECK(bins.classify(1000) == 1);
  CHECK(bins.classify(4000) == 3);
  CHECK(bins.classify(-50) == 0);

  const RegimeBins two({500, 800});
  CHECK(two.labels().size() == 3);
  CHECK(two.classify(900) == 2);
  CHECK_THROWS_AS(RegimeBins({1000, 1000}), std::invalid_argument);
  CHECK_THROWS_AS(RegimeBins({2000, 1000}), std::invalid_argument);

  const std::vector<SentenceRecord> recs{defined(0, 100, 1500), defined(1, 100, 200),
                                         defined(2, 100, 5000)};
  const auto report = aggregate(recs);
  CHECK(report.regime_counts == std::vector<RegimeCount>{{"low", 1}, {"medium", 1}, {"high", 0},
                                                         {"ultra-high", 1}});
}

TEST_CASE("aggregation is permutation invariant") {
  std::mt19937_64 rng(8);
  std::vector<UtteranceTrace> traces;
  for (int i = 0; i < 300; ++i) traces.push_back(simullat::testing::random_trace(rng));
  auto records = score_corpus(traces);
  const auto base = aggregate(records);
  for (int round = 0; round < 20; ++round) {
    std::shuffle(records.begin(), records.end(), rng);
    const auto shuffled = aggregate(records);
    CHECK(shuffled.corpus_al == base.corpus_al);
    CHECK(shuffled.corpus_laal == base.corpus_laal);
    CHECK(shuffled.awld == base.awld);
    CHECK(shuffled.regime_counts == base.regime_counts);
  }
  CHECK(base.corpus_laal >= base.corpus_al);
}

TEST_CASE("compare") {
  CorpusReport a;
  a.corpus_al = 735;
  a.corpus_laal = 1018;
  CorpusReport b;
  b.corpus_al = 1522;
  b.corpus_laal = 1682;
  const auto c = compare(a, b);
  CHECK(c.delta_al == 787.0);
  CHECK(c.delta_laal == 664.0);
  CHECK_FALSE(c.corpus_ranking_disagrees);
  CHECK_FALSE(c.flagged_sentences.has_value());

  const auto same = compare(a, a);
  CHECK(same.delta_al == 0.0);
  CHECK(same.delta_laal == 0.0);
  CHECK(same.delta_awld == 0.0);
}

TEST_CASE("compare flags AL/LAAL ranking disagreement") {
  SynthConfig cfg;
  cfg.source_words = {10, 10};
  cfg.word_duration_ms = {300.0, 300.0};
  SynthRng rng(1);
  cfg.k = 3;
  auto steady = gen_waitk_trace(cfg, rng);
  cfg.k = 4;
  auto chatty = inject_overgeneration(gen_waitk_trace(cfg, rng), 1.0, rng);
  auto steady2 = steady;
  steady.index = chatty.index = steady2.index = 0;

  const std::vector<UtteranceTrace> sys_a{steady};
  const std::vector<UtteranceTrace> sys_b{chatty};
  const auto ra = aggregate(score_corpus(sys_a), {}, true);
  const auto rb = aggregate(score_corpus(sys_b), {}, true);
  // B looks faster under AL but slower under LAAL
  REQUIRE(rb.corpus_al < ra.corpus_al);
  REQUIRE(rb.corpus_laal > ra.corpus_laal);
  const auto c = compare(ra, rb);
  CHECK(c.corpus_ranking_disagrees);
  REQUIRE(c.flagged_sentences.has_value());
  CHECK(*c.flagged_sentences == std::vector<std::size_t>{0});

  const std::vector<UtteranceTrace> two{steady, steady2};
  const auto rc = aggregate(score_corpus(two), {}, true);
  const auto mismatch = compare(ra, rc);
  CHECK_FALSE(mismatch.flagged_sentences.has_value());
  CHECK(mismatch.warnings.size() == 1);
}

TEST_CASE("report formats") {
  std::vector<SentenceRecord> recs{defined(0, 845.27, 845.27)};
  const auto report = aggregate(recs);

  std::ostringstream table;
  write_report(table, report, ReportFormat::kTable);
  CHECK(table.str().find("LAAL (ms)       845\n") != std::string::npos);

  const auto json = report_json(report);
  CHECK(json.find("845.27") != std::string::npos);

  std::ostringstream csv;
  write_report(csv, report, ReportFormat::kCsv);
  const auto lines = split_lines(csv.str());
  REQUIRE(lines.size() == 2);  // header + summary, no per-sentence rows
  CHECK(lines[1].rfind("summary,", 0) == 0);

  CHECK(parse_report_format("pretty-table") == ReportFormat::kTable);
  CHECK_THROWS_AS(parse_report_format("xlsx"), std::invalid_argument);
}

TEST_CASE("metric selection") {
  const auto sel = MetricSelection::parse("awld");
  CHECK_FALSE(sel.al);
  CHECK_FALSE(sel.laal);
  CHECK(sel.awld);
  CHECK_THROWS_AS(MetricSelection::parse("al,bleu"), std::invalid_argument);

  std::vector<SentenceRecord> recs{defined(0, 1, 2)};
  const auto json = report_json(aggregate(recs, {}, true, sel));
  CHECK(json.find("corpus_al") == std::string::npos);
  CHECK(json.find("\"laal\"") == std::string::npos);
  CHECK(json.find("\"awld\"") != std::string::npos);
}

TEST_CASE("json round trip and csv mean consistency") {
  std::mt19937_64 rng(64);
  std::vector<UtteranceTrace> traces;
  for (int i = 0; i < 120; ++i) {
    auto t = simullat::testing::random_trace(rng);
    t.index = static_cast<std::size_t>(i);
    traces.push_back(std::move(t));
  }
  traces.push_back(make_trace(1000, {}, 3));
  traces.back().index = 120;
  const auto report = aggregate(score_corpus(traces), {}, true);

  const auto json = report_json(report);
  CHECK(report_json(read_report_json(json)) == json);

  std::ostringstream csv;
  write_report(csv, report, ReportFormat::kCsv);
  const auto lines = split_lines(csv.str());
  REQUIRE(lines.size() == 1 + 120 + 1);
  double sum_al = 0.0;
  double sum_laal = 0.0;
  for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
    const auto cells = split_csv(lines[i]);
    sum_al += std::stod(cells[1]);
    sum_laal += std::stod(cells[2]);
  }
  const auto summary = split_csv(lines.back());
  CHECK(std::abs(sum_al / 120 - std::stod(summary[1])) <= 1e-6);
  CHECK(std::abs(sum_laal / 120 - std::stod(summary[2])) <= 1e-6);
}
