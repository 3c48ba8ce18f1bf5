// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The simullat Authors

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "simullat/metrics.hpp"
#include "simullat/report.hpp"
#include "simullat/synthetic.hpp"
#include "simullat/trace_io.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace simullat;

namespace {

UtteranceTrace make_trace(double source_duration, std::vector<double> delays,
                          std::vector<std::string> hypothesis, std::vector<std::string> reference,
                          std::size_t index) {
  UtteranceTrace trace;
  trace.index = index;
  trace.source_duration = source_duration;
  trace.delays = std::move(delays);
  trace.hypothesis = std::move(hypothesis);
  trace.reference = std::move(reference);
  return trace;
}

// Hypothesis and reference given as counts get placeholder tokens.
UtteranceTrace trace_from_counts(double source_duration, std::vector<double> delays,
                                 std::size_t ref_length) {
  std::vector<std::string> hyp(delays.size(), "w");
  std::vector<std::string> ref(ref_length, "r");
  return make_trace(source_duration, std::move(delays), std::move(hyp), std::move(ref), 0);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Latency metrics (AL, LAAL, AWLD) for simultaneous translation traces";

  py::register_exception<InvalidTrace>(m, "InvalidTrace", PyExc_ValueError);
  py::register_exception<UndefinedMetric>(m, "UndefinedMetric", PyExc_ArithmeticError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<UtteranceTrace>(m, "UtteranceTrace")
      .def(py::init(&make_trace), py::arg("source_duration"), py::arg("delays"),
           py::arg("hypothesis"), py::arg("reference"), py::arg("index") = 0)
      .def_readwrite("index", &UtteranceTrace::index)
      .def_readwrite("source_duration", &UtteranceTrace::source_duration)
      .def_readwrite("delays", &UtteranceTrace::delays)
      .def_readwrite("hypothesis", &UtteranceTrace::hypothesis)
      .def_readwrite("reference", &UtteranceTrace::reference)
      .def("__eq__", [](const UtteranceTrace& a, const UtteranceTrace& b) { return a == b; })
      .def("__repr__", [](const UtteranceTrace& t) {
        std::ostringstream s;
        s << "UtteranceTrace(index=" << t.index << ", source_duration=" << t.source_duration
          << ", |Y|=" << t.hyp_length() << ", |Y*|=" << t.ref_length() << ")";
        return s.str();
      });
  m.def("trace_from_counts", &trace_from_counts, py::arg("source_duration"), py::arg("delays"),
        py::arg("ref_length"));

  py::class_<OracleSchedule>(m, "OracleSchedule")
      .def_readonly("word_duration", &OracleSchedule::word_duration)
      .def_readonly("denominator_length", &OracleSchedule::denominator_length)
      .def_readonly("delays", &OracleSchedule::delays);

  py::class_<LaggingResult>(m, "LaggingResult")
      .def_readonly("value", &LaggingResult::value)
      .def_readonly("lagging", &LaggingResult::lagging)
      .def_readonly("cutoff", &LaggingResult::cutoff);

  py::class_<SentenceLatency>(m, "SentenceLatency")
      .def_readonly("al", &SentenceLatency::al)
      .def_readonly("laal", &SentenceLatency::laal)
      .def_readonly("cutoff_index", &SentenceLatency::cutoff_index)
      .def_readonly("lagging_al", &SentenceLatency::lagging_al)
      .def_readonly("lagging_laal", &SentenceLatency::lagging_laal)
      .def_readonly("hyp_length", &SentenceLatency::hyp_length)
      .def_readonly("ref_length", &SentenceLatency::ref_length)
      .def_readonly("length_diff", &SentenceLatency::length_diff);

  m.def("cutoff_index", [](const std::vector<double>& d, double t) { return cutoff_index(d, t); },
        py::arg("delays"), py::arg("source_duration"));
  m.def("oracle_schedule", &oracle_schedule, py::arg("source_duration"),
        py::arg("denominator_length"), py::arg("count"));
  m.def("sentence_al", &sentence_al, py::arg("trace"));
  m.def("sentence_laal", &sentence_laal, py::arg("trace"));
  m.def("sentence_metrics", &sentence_metrics, py::arg("trace"));
  m.def(
      "aligned_lagging",
      [](const std::vector<std::pair<double, std::size_t>>& pairs, double source_duration,
         std::size_t ref_length) {
        std::vector<AlignmentPair> aligned;
        for (const auto& [delay, idx] : pairs) aligned.push_back({delay, idx});
        return aligned_lagging(aligned, source_duration, ref_length);
      },
      py::arg("pairs"), py::arg("source_duration"), py::arg("ref_length"),
      "Mean lagging over (system_delay, 1-based oracle word index) pairs.");

  m.def("tokenize", &tokenize, py::arg("text"));
  m.def(
      "parse_traces",
      [](const std::string& text, const std::string& format) {
        std::istringstream in(text);
        auto parsed = parse_traces(in, parse_trace_format(format));
        py::dict report;
        report["accepted"] = parsed.report.accepted;
        report["repaired"] = parsed.report.repaired;
        report["rejected"] = parsed.report.rejected;
        py::list reasons;
        for (const auto& r : parsed.report.rejections) reasons.append(py::make_tuple(r.line, r.reason));
        report["rejections"] = reasons;
        return py::make_tuple(std::move(parsed.traces), report);
      },
      py::arg("text"), py::arg("format") = "canonical");
  m.def("to_canonical_json", &to_canonical_json, py::arg("trace"));

  m.def("awld", [](const std::vector<UtteranceTrace>& t) { return awld(t); }, py::arg("traces"));
  m.def(
      "evaluate_json",
      [](const std::vector<UtteranceTrace>& traces, std::vector<double> thresholds,
         bool per_sentence) {
        const auto records = score_corpus(traces);
        return report_json(aggregate(records, RegimeBins(std::move(thresholds)), per_sentence));
      },
      py::arg("traces"), py::arg("thresholds") = std::vector<double>{1000.0, 2000.0, 4000.0},
      py::arg("per_sentence") = false, "Corpus report as a JSON string.");

  py::class_<SynthConfig>(m, "SynthConfig")
      .def(py::init<>())
      .def_readwrite("k", &SynthConfig::k)
      .def_property(
          "source_words",
          [](const SynthConfig& c) { return std::make_pair(c.source_words.min, c.source_words.max); },
          [](SynthConfig& c, std::pair<int, int> r) { c.source_words = {r.first, r.second}; })
      .def_property(
          "word_duration_ms",
          [](const SynthConfig& c) {
            return std::make_pair(c.word_duration_ms.min, c.word_duration_ms.max);
          },
          [](SynthConfig& c, std::pair<double, double> r) {
            c.word_duration_ms = {r.first, r.second};
          })
      .def_property(
          "target_length_offset",
          [](const SynthConfig& c) {
            return std::make_pair(c.target_length_offset.min, c.target_length_offset.max);
          },
          [](SynthConfig& c, std::pair<int, int> r) { c.target_length_offset = {r.first, r.second}; })
      .def_readwrite("overgen_insert_prob", &SynthConfig::overgen_insert_prob)
      .def_readwrite("seed", &SynthConfig::seed)
      .def_readwrite("num_sentences", &SynthConfig::num_sentences);
  m.def("generate_corpus", &generate_corpus, py::arg("config"));

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
