// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The simullat Authors

#include "simullat/trace_io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>

#include <json.hpp>

namespace simullat {
namespace {

using json = nlohmann::json;

// Length in bytes of the UTF-8 whitespace sequence starting at pos, or 0.
std::size_t whitespace_length(std::string_view s, std::size_t pos) {
  const auto byte = [&](std::size_t i) -> unsigned {
    return i < s.size() ? static_cast<unsigned char>(s[i]) : 0u;
  };
  const unsigned b0 = byte(pos);
  switch (b0) {
    case ' ': case '\t': case '\n': case '\v': case '\f': case '\r':
      return 1;
    default:
      break;
  }
  const unsigned b1 = byte(pos + 1);
  const unsigned b2 = byte(pos + 2);
  if (b0 == 0xC2 && (b1 == 0x85 || b1 == 0xA0)) return 2;  // NEL, NBSP
  if (b0 == 0xE1 && b1 == 0x9A && b2 == 0x80) return 3;     // U+1680
  if (b0 == 0xE2 && b1 == 0x80 &&
      ((b2 >= 0x80 && b2 <= 0x8A) || b2 == 0xA8 || b2 == 0xA9 || b2 == 0xAF)) {
    return 3;  // U+2000..U+200A, U+2028, U+2029, U+202F
  }
  if (b0 == 0xE2 && b1 == 0x81 && b2 == 0x9F) return 3;  // U+205F
  if (b0 == 0xE3 && b1 == 0x80 && b2 == 0x80) return 3;  // U+3000
  return 0;
}

struct RecordError {
  std::string reason;
};

const json& require(const json& record, const char* key) {
  const auto it = record.find(key);
  if (it == record.end() || it->is_null()) {
    throw RecordError{std::string("missing field '") + key + "'"};
  }
  return *it;
}

double require_number(const json& record, const char* key) {
  const auto& value = require(record, key);
  if (!value.is_number()) {
    throw RecordError{std::string("field '") + key + "' is not a number"};
  }
  return value.get<double>();
}

std::string require_string(const json& record, const char* key) {
  const auto& value = require(record, key);
  if (!value.is_string()) {
    throw RecordError{std::string("field '") + key + "' is not a string"};
  }
  return value.get<std::string>();
}

std::vector<double> require_number_array(const json& record, const char* key) {
  const auto& value = require(record, key);
  if (!value.is_array()) {
    throw RecordError{std::string("field '") + key + "' is not an array"};
  }
  std::vector<double> out;
  out.reserve(value.size());
  for (const auto& item : value) {
    if (!item.is_number()) {
      throw RecordError{std::string("field '") + key + "' contains a non-number"};
    }
    out.push_back(item.get<double>());
  }
  return out;
}

std::optional<std::size_t> optional_index(const json& record) {
  const auto it = record.find("index");
  if (it == record.end() || it->is_null()) {
    return std::nullopt;
  }
  if (it->is_number_unsigned()) {
    return it->get<std::size_t>();
  }
  if (it->is_number_integer() && it->get<std::int64_t>() >= 0) {
    return static_cast<std::size_t>(it->get<std::int64_t>());
  }
  throw RecordError{"field 'index' is not a non-negative integer"};
}

std::vector<std::string> hypothesis_tokens(const json& record) {
  const auto text_it = record.find("prediction");
  const auto tokens_it = record.find("prediction_tokens");
  const bool has_text = text_it != record.end() && !text_it->is_null();
  const bool has_tokens = tokens_it != record.end() && !tokens_it->is_null();
  if (!has_text && !has_tokens) {
    throw RecordError{"missing field 'prediction'"};
  }

  std::optional<std::vector<std::string>> from_tokens;
  if (has_tokens) {
    if (!tokens_it->is_array()) {
      throw RecordError{"field 'prediction_tokens' is not an array"};
    }
    from_tokens.emplace();
    for (const auto& item : *tokens_it) {
      if (!item.is_string()) {
        throw RecordError{"field 'prediction_tokens' contains a non-string"};
      }
      from_tokens->push_back(item.get<std::string>());
    }
  }
  if (has_text) {
    if (!text_it->is_string()) {
      throw RecordError{"field 'prediction' is not a string"};
    }
    auto from_text = tokenize(text_it->get_ref<const std::string&>());
    if (from_tokens && from_tokens->size() != from_text.size()) {
      throw RecordError{"prediction and prediction_tokens disagree on token count"};
    }
    if (!from_tokens) {
      return from_text;
    }
  }
  return std::move(*from_tokens);
}

// Clamps small overshoots and reports whether anything changed.
bool normalize_delays(std::vector<double>& delays, double source_duration) {
  bool repaired = false;
  for (double& d : delays) {
    if (!std::isfinite(d)) {
      throw RecordError{"non-finite delay"};
    }
    if (d < 0.0) {
      if (d < -kClampToleranceMs) {
        throw RecordError{"delay below zero beyond tolerance"};
      }
      d = 0.0;
      repaired = true;
    } else if (d > source_duration) {
      if (d > source_duration + kClampToleranceMs) {
        throw RecordError{"delay exceeds source duration beyond tolerance"};
      }
      d = source_duration;
      repaired = true;
    }
  }
  for (std::size_t i = 1; i < delays.size(); ++i) {
    if (delays[i] < delays[i - 1]) {
      throw RecordError{"non-monotone delays"};
    }
  }
  return repaired;
}

UtteranceTrace decode_record(const json& record, TraceFormat format, bool& repaired) {
  if (!record.is_object()) {
    throw RecordError{"record is not a JSON object"};
  }
  UtteranceTrace trace;
  const bool canonical = format == TraceFormat::kCanonical;
  trace.source_duration = require_number(record, canonical ? "source_duration_ms" : "source_length");
  if (!std::isfinite(trace.source_duration) || trace.source_duration <= 0.0) {
    throw RecordError{"source duration must be positive"};
  }
  trace.delays = require_number_array(record, canonical ? "delays_ms" : "delays");
  if (canonical) {
    trace.hypothesis = hypothesis_tokens(record);
  } else {
    trace.hypothesis = tokenize(require_string(record, "prediction"));
  }
  trace.reference = tokenize(require_string(record, "reference"));

  if (trace.delays.size() != trace.hypothesis.size()) {
    throw RecordError{"token/delay count mismatch (" + std::to_string(trace.hypothesis.size()) +
                      " tokens, " + std::to_string(trace.delays.size()) + " delays)"};
  }
  if (trace.reference.empty()) {
    throw RecordError{"empty reference"};
  }
  repaired = normalize_delays(trace.delays, trace.source_duration);
  return trace;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t pos = 0;
  std::size_t start = std::string_view::npos;
  while (pos < text.size()) {
    const std::size_t ws = whitespace_length(text, pos);
    if (ws > 0) {
      if (start != std::string_view::npos) {
        tokens.emplace_back(text.substr(start, pos - start));
        start = std::string_view::npos;
      }
      pos += ws;
    } else {
      if (start == std::string_view::npos) {
        start = pos;
      }
      ++pos;
    }
  }
  if (start != std::string_view::npos) {
    tokens.emplace_back(text.substr(start));
  }
  return tokens;
}

ParsedTraces parse_traces(std::istream& in, TraceFormat format) {
  if (!in.good()) {
    throw IoError("trace stream is not readable");
  }
  ParsedTraces out;
  std::string line;
  std::size_t line_no = 0;
  std::size_t ordinal = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (tokenize(line).empty()) {
      continue;
    }
    const std::size_t record_no = ordinal++;
    try {
      const json record = json::parse(line);
      bool repaired = false;
      UtteranceTrace trace = decode_record(record, format, repaired);
      trace.index = optional_index(record).value_or(record_no);
      validate(trace);
      out.traces.push_back(std::move(trace));
      ++out.report.accepted;
      if (repaired) {
        ++out.report.repaired;
      }
    } catch (const RecordError& e) {
      ++out.report.rejected;
      out.report.rejections.push_back({line_no, e.reason});
    } catch (const json::exception& e) {
      ++out.report.rejected;
      out.report.rejections.push_back({line_no, std::string("malformed JSON: ") + e.what()});
    } catch (const std::exception& e) {
      ++out.report.rejected;
      out.report.rejections.push_back({line_no, e.what()});
    }
  }
  if (in.bad()) {
    throw IoError("read error after line " + std::to_string(line_no));
  }
  return out;
}

ParsedTraces parse_trace_file(const std::filesystem::path& path, TraceFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  return parse_traces(in, format);
}

TraceFormat parse_trace_format(std::string_view name) {
  if (name == "canonical" || name == "canonical-jsonl" || name == "jsonl") {
    return TraceFormat::kCanonical;
  }
  if (name == "simuleval" || name == "simuleval-log") {
    return TraceFormat::kSimulEvalLog;
  }
  throw std::invalid_argument("unknown trace format '" + std::string(name) + "'");
}

std::string to_canonical_json(const UtteranceTrace& trace) {
  nlohmann::ordered_json record;
  record["index"] = trace.index;
  record["source_duration_ms"] = trace.source_duration;
  record["delays_ms"] = trace.delays;
  record["prediction_tokens"] = trace.hypothesis;
  std::string reference;
  for (std::size_t i = 0; i < trace.reference.size(); ++i) {
    if (i > 0) reference += ' ';
    reference += trace.reference[i];
  }
  record["reference"] = reference;
  return record.dump();
}

void write_traces(std::ostream& out, std::span<const UtteranceTrace> traces) {
  for (const auto& trace : traces) {
    out << to_canonical_json(trace) << '\n';
  }
  if (!out) {
    throw IoError("failed to write traces");
  }
}

}  // namespace simullat
