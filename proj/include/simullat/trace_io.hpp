// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The simullat Authors

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "simullat/trace.hpp"

namespace simullat {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TraceFormat {
  kCanonical,     // one RawTraceRecord JSON object per line
  kSimulEvalLog,  // instance log: delays / prediction / reference / source_length
};

/// Delays overshooting [0, source_duration] by at most this much are clamped.
inline constexpr double kClampToleranceMs = 0.5;

struct Rejection {
  std::size_t line = 0;  // 1-based line number in the input
  std::string reason;
};

struct IngestionReport {
  std::size_t accepted = 0;
  std::size_t repaired = 0;  // subset of accepted
  std::size_t rejected = 0;
  std::vector<Rejection> rejections;

  std::size_t total() const { return accepted + rejected; }
};

struct ParsedTraces {
  std::vector<UtteranceTrace> traces;
  IngestionReport report;
};

/// Splits on runs of Unicode whitespace; punctuation stays attached to words.
/// Input is UTF-8.
std::vector<std::string> tokenize(std::string_view text);

/// Reads one record per non-blank line. Malformed records are rejected
/// individually; only an unreadable stream throws IoError.
ParsedTraces parse_traces(std::istream& in, TraceFormat format);
ParsedTraces parse_trace_file(const std::filesystem::path& path, TraceFormat format);

TraceFormat parse_trace_format(std::string_view name);

/// Canonical JSONL line (no trailing newline) for a trace.
std::string to_canonical_json(const UtteranceTrace& trace);
void write_traces(std::ostream& out, std::span<const UtteranceTrace> traces);

}  // namespace simullat
