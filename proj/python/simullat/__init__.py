# SPDX-License-Identifier: Apache-2.0
# Copyright 2026 The simullat Authors
"""Latency metrics (AL, LAAL, AWLD) for simultaneous translation traces."""

import json as _json

from ._core import (
    InvalidTrace,
    IoError,
    SynthConfig,
    UndefinedMetric,
    UtteranceTrace,
    __version__,
    aligned_lagging,
    awld,
    cutoff_index,
    evaluate_json,
    generate_corpus,
    oracle_schedule,
    parse_traces,
    sentence_al,
    sentence_laal,
    sentence_metrics,
    to_canonical_json,
    tokenize,
    trace_from_counts,
)


def evaluate(traces, thresholds=(1000.0, 2000.0, 4000.0), per_sentence=False):
    """Corpus report for ``traces`` as a dict (same schema as the CLI's JSON)."""
    return _json.loads(evaluate_json(list(traces), list(thresholds), per_sentence))


__all__ = [
    "InvalidTrace",
    "IoError",
    "SynthConfig",
    "UndefinedMetric",
    "UtteranceTrace",
    "aligned_lagging",
    "awld",
    "cutoff_index",
    "evaluate",
    "generate_corpus",
    "oracle_schedule",
    "parse_traces",
    "sentence_al",
    "sentence_laal",
    "sentence_metrics",
    "to_canonical_json",
    "tokenize",
    "trace_from_counts",
]
