"""Query answering over prioritized, possibly inconsistent DL-Lite knowledge bases."""

from pathlib import Path

from ._core import (
    KB,
    LiteRepairError,
    Query,
    answer_profile,
    bench,
    cns_rank,
    conflicts,
    free_set,
    generate,
    is_consistent,
    metrics,
    nd_prefix_table,
    parse_kb,
    parse_query,
    repair,
)


def load_kb(path):
    return parse_kb(Path(path).read_text())


def load_query(path):
    return parse_query(Path(path).read_text())


__all__ = [
    "KB",
    "LiteRepairError",
    "Query",
    "answer_profile",
    "bench",
    "cns_rank",
    "conflicts",
    "free_set",
    "generate",
    "is_consistent",
    "load_kb",
    "load_query",
    "metrics",
    "nd_prefix_table",
    "parse_kb",
    "parse_query",
    "repair",
]
