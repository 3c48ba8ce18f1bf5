// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The simullat Authors

#include "simullat/cli.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>
#include <string_view>

#include <CLI11.hpp>

#include "simullat/metrics.hpp"
#include "simullat/report.hpp"
#include "simullat/synthetic.hpp"
#include "simullat/trace_io.hpp"

namespace simullat::cli {
namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw UsageError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

// "5" or "5:20".
template <typename T>
Interval<T> parse_interval(std::string_view text, std::string_view what) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    const T v = parse_number<T>(text, what);
    return {v, v};
  }
  Interval<T> range{parse_number<T>(text.substr(0, colon), what),
                    parse_number<T>(text.substr(colon + 1), what)};
  if (range.empty()) {
    throw UsageError("empty " + std::string(what) + " range '" + std::string(text) + "'");
  }
  return range;
}

std::vector<double> parse_thresholds(std::string_view text) {
  std::vector<double> out;
  if (text.empty()) {
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    out.push_back(parse_number<double>(text.substr(start, end - start), "threshold"));
    start = end + 1;
  }
  return out;
}

void echo_ingestion(std::ostream& err, const std::string& path, const IngestionReport& report) {
  err << path << ": accepted " << report.accepted << ", repaired " << report.repaired
      << ", rejected " << report.rejected << '\n';
  for (const auto& r : report.rejections) {
    err << "  line " << r.line << ": " << r.reason << '\n';
  }
}

std::vector<UtteranceTrace> load(const std::vector<std::string>& paths, TraceFormat format,
                                 std::ostream& err) {
  std::vector<UtteranceTrace> traces;
  for (const auto& path : paths) {
    auto parsed = parse_trace_file(path, format);
    echo_ingestion(err, path, parsed.report);
    for (auto& t : parsed.traces) traces.push_back(std::move(t));
  }
  if (traces.empty()) {
    throw DataError("no valid traces");
  }
  return traces;
}

CorpusReport build_report(const std::vector<UtteranceTrace>& traces, const RegimeBins& bins,
                          bool per_sentence, MetricSelection metrics) {
  const auto records = score_corpus(traces);
  try {
    return aggregate(records, bins, per_sentence, metrics);
  } catch (const std::domain_error&) {
    throw DataError("no sentence has a defined latency metric (all hypotheses empty)");
  }
}

// Writes to the file at `path`, or to `out` when path is empty or "-".
template <typename Fn>
void emit(const std::string& path, std::ostream& out, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(out);
    if (!out) throw IoError("failed to write output");
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw IoError("cannot open " + path + " for writing");
  }
  fn(file);
  file.flush();
  if (!file) {
    throw IoError("failed to write " + path);
  }
}

std::string fixed2(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << v;
  return s.str();
}

void explain_trace(std::ostream& out, const UtteranceTrace& trace) {
  const auto al = sentence_al(trace);
  const auto laal = sentence_laal(trace);
  const std::size_t laal_denom = std::max(trace.hyp_length(), trace.ref_length());
  const auto oracle_al = oracle_schedule(trace.source_duration, trace.ref_length(), al.cutoff);
  const auto oracle_laal = oracle_schedule(trace.source_duration, laal_denom, al.cutoff);

  out << "sentence " << trace.index << ": source " << fixed2(trace.source_duration)
      << " ms, |Y| " << trace.hyp_length() << ", |Y*| " << trace.ref_length() << ", cutoff "
      << al.cutoff << '\n';
  out << "oracle step: AL " << fixed2(oracle_al.word_duration) << " ms (/" << trace.ref_length()
      << "), LAAL " << fixed2(oracle_laal.word_duration) << " ms (/" << laal_denom << ")\n";

  std::size_t token_width = 5;
  for (const auto& tok : trace.hypothesis) token_width = std::max(token_width, tok.size());
  const auto w = static_cast<int>(token_width) + 2;
  out << std::right << std::setw(4) << "i" << "  " << std::left << std::setw(w) << "token"
      << std::right << std::setw(10) << "delay" << std::setw(12) << "oracle_al" << std::setw(12)
      << "oracle_laal" << std::setw(10) << "lag_al" << std::setw(10) << "lag_laal" << '\n';

  double sum_al = 0.0;
  double sum_laal = 0.0;
  for (std::size_t i = 0; i < trace.hyp_length(); ++i) {
    out << std::right << std::setw(4) << (i + 1) << "  " << std::left << std::setw(w)
        << trace.hypothesis[i] << std::right << std::setw(10) << fixed2(trace.delays[i]);
    if (i < al.cutoff) {
      sum_al += al.lagging[i];
      sum_laal += laal.lagging[i];
      out << std::setw(12) << fixed2(oracle_al.delays[i]) << std::setw(12)
          << fixed2(oracle_laal.delays[i]) << std::setw(10) << fixed2(al.lagging[i])
          << std::setw(10) << fixed2(laal.lagging[i]) << '\n';
    } else {
      out << "  ignored\n";
    }
  }
  out << "sum     al " << fixed2(sum_al) << "  laal " << fixed2(sum_laal) << '\n';
  out << "count   " << al.cutoff;
  if (trace.hyp_length() > al.cutoff) {
    out << " (" << (trace.hyp_length() - al.cutoff) << " ignored)";
  }
  out << '\n';
  out << "al      " << fixed2(al.value) << '\n';
  out << "laal    " << fixed2(laal.value) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Latency metrics (AL, LAAL, AWLD) for simultaneous translation traces", "simullat"};
  app.set_config("--config", "", "Read options from a TOML/INI config file");
  app.require_subcommand(1, 1);

  std::string format_name = "canonical";
  std::string output_path;
  std::string thresholds_text = "1000,2000,4000";
  std::string metrics_text = "al,laal,awld";

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "Score trace files and write a corpus report");
  std::vector<std::string> eval_inputs;
  std::string report_format_name = "json";
  bool per_sentence = false;
  evaluate->add_option("inputs", eval_inputs, "Trace files (JSONL)")->required();
  evaluate->add_option("--format", format_name, "Input format: canonical | simuleval");
  evaluate->add_option("--metrics", metrics_text, "Comma-separated subset of al,laal,awld");
  evaluate->add_option("-o,--output", output_path, "Report path (default stdout)");
  evaluate->add_option("--output-format", report_format_name, "json | csv | table");
  evaluate->add_flag("--per-sentence", per_sentence, "Include per-sentence rows");
  evaluate->add_option("--thresholds", thresholds_text, "Regime thresholds in ms, increasing");

  // explain
  auto* explain = app.add_subcommand("explain", "Token-by-token lagging breakdown of one sentence");
  std::string explain_input;
  std::size_t explain_index = 0;
  explain->add_option("input", explain_input, "Trace file (JSONL)")->required();
  explain->add_option("--index", explain_index, "Sentence index")->required();
  explain->add_option("--format", format_name, "Input format: canonical | simuleval");

  // generate
  auto* generate = app.add_subcommand("generate", "Write a synthetic wait-k trace corpus");
  SynthConfig synth;
  std::string src_words = "10:30";
  std::string word_ms = "250:450";
  std::string target_offset = "0";
  std::string meta_path;
  generate->add_option("--num", synth.num_sentences, "Number of sentences");
  generate->add_option("--k", synth.k, "Wait-k lag in source words");
  generate->add_option("--src-words", src_words, "Source words per sentence, N or MIN:MAX");
  generate->add_option("--word-ms", word_ms, "Source word duration in ms, D or MIN:MAX");
  generate->add_option("--target-offset", target_offset, "|Y| - n, N or MIN:MAX");
  generate->add_option("--overgen-prob", synth.overgen_insert_prob,
                       "Probability of duplicating each pre-cutoff token");
  generate->add_option("--seed", synth.seed, "RNG seed");
  generate->add_option("-o,--output", output_path, "JSONL path (default stdout)");
  generate->add_option("--meta", meta_path, "Metadata path (default <output>.meta.json)");

  // compare
  auto* compare_cmd = app.add_subcommand("compare", "Compare two systems' corpus metrics");
  std::vector<std::string> compare_inputs;
  compare_cmd->add_option("inputs", compare_inputs, "Baseline and candidate trace files")
      ->required()
      ->expected(2);
  compare_cmd->add_option("--format", format_name, "Input format: canonical | simuleval");
  compare_cmd->add_option("-o,--output", output_path, "Comparison path (default stdout)");
  compare_cmd->add_option("--thresholds", thresholds_text, "Regime thresholds in ms, increasing");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kUsageError;
  }

  try {
    if (*evaluate) {
      const auto format = parse_trace_format(format_name);
      const auto metrics = MetricSelection::parse(metrics_text);
      const auto report_format = parse_report_format(report_format_name);
      const RegimeBins bins(parse_thresholds(thresholds_text));
      const auto traces = load(eval_inputs, format, err);
      const auto report = build_report(traces, bins, per_sentence, metrics);
      if (report.skipped_count > 0) {
        err << "skipped " << report.skipped_count << " sentence(s) with undefined metrics\n";
      }
      emit(output_path, out, [&](std::ostream& os) { write_report(os, report, report_format); });
    } else if (*explain) {
      const auto traces = load({explain_input}, parse_trace_format(format_name), err);
      const auto it = std::find_if(traces.begin(), traces.end(),
                                   [&](const UtteranceTrace& t) { return t.index == explain_index; });
      if (it == traces.end()) {
        throw DataError("no sentence with index " + std::to_string(explain_index));
      }
      if (it->hypothesis.empty()) {
        throw DataError("sentence " + std::to_string(explain_index) +
                        ": metrics undefined for an empty hypothesis");
      }
      explain_trace(out, *it);
    } else if (*generate) {
      synth.source_words = parse_interval<int>(src_words, "source word count");
      synth.word_duration_ms = parse_interval<double>(word_ms, "word duration");
      synth.target_length_offset = parse_interval<int>(target_offset, "target offset");
      validate(synth);
      const auto corpus = generate_corpus(synth);
      emit(output_path, out, [&](std::ostream& os) { write_traces(os, corpus); });
      std::string meta = meta_path;
      if (meta.empty() && !output_path.empty() && output_path != "-") {
        meta = output_path + ".meta.json";
      }
      if (!meta.empty()) {
        emit(meta, out, [&](std::ostream& os) { os << synth_metadata_json(synth) << '\n'; });
      } else {
        err << synth_metadata_json(synth) << '\n';
      }
    } else if (*compare_cmd) {
      const auto format = parse_trace_format(format_name);
      const RegimeBins bins(parse_thresholds(thresholds_text));
      const auto a = build_report(load({compare_inputs[0]}, format, err), bins, true, {});
      const auto b = build_report(load({compare_inputs[1]}, format, err), bins, true, {});
      const auto comparison = compare(a, b);
      for (const auto& w : comparison.warnings) err << "warning: " << w << '\n';
      emit(output_path, out, [&](std::ostream& os) { os << comparison_json(comparison) << '\n'; });
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const InvalidTrace& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kOk;
}

}  // namespace simullat::cli
