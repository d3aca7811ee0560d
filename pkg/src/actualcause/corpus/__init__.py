"""The worked-example corpus.

Four small models ship with the package, each as a canonical .scm file
paired with a golden JSON file freezing every report payload the tools
produce for it.  Loading re-parses, re-validates, and round-trips each
model; any discrepancy is a hard error, because a corrupted corpus
silently invalidates everything downstream that leans on it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from ..dsl import parse_formula, parse_model
from ..errors import CausalError
from ..meta import check_empirical, check_presumption, check_similarity
from ..meta import find_empirical_fixed_points
from ..printer import format_model
from ..reports import (
    causes_payload,
    check_payload,
    classify_payload,
    eval_payload,
    fixedpoints_payload,
    solve_payload,
)

NAMES = ("m1", "m2", "suzy", "antidote")


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    source: str
    model: object
    query: object
    golden: dict


def _read(filename: str) -> str:
    return (
        resources.files(__package__).joinpath(filename).read_text("utf-8")
    )


def _corrupt(name: str, problem: str) -> CausalError:
    return CausalError(f"corpus entry {name!r} is corrupted: {problem}")


def load_entry(name: str) -> CorpusEntry:
    if name not in NAMES:
        raise CausalError(f"no corpus entry named {name!r}")
    source = _read(f"{name}.scm")
    result = parse_model(source)
    if not result.ok:
        raise _corrupt(
            name,
            "; ".join(d.render(result.source) for d in result.diagnostics),
        )
    model = result.model
    if model.name != name:
        raise _corrupt(name, f"file declares model {model.name!r}")
    if format_model(model) != source:
        raise _corrupt(name, "source is not in canonical form")
    golden = json.loads(_read(f"{name}.golden.json"))
    if golden.get("model") != name:
        raise _corrupt(name, "golden file names a different model")
    query_result = parse_formula(golden["query"], model.signature)
    if not query_result.ok:
        raise _corrupt(name, "golden query does not parse")
    query = query_result.formula.matrix
    return CorpusEntry(name, source, model, query, golden)


def load_corpus() -> tuple:
    return tuple(load_entry(name) for name in NAMES)


def compute_payloads(entry: CorpusEntry) -> dict:
    """Recompute every golden payload from scratch."""
    model, query = entry.model, entry.query
    eval_result = parse_formula(
        entry.golden["payloads"]["eval"]["query"], model.signature
    )
    if not eval_result.ok:
        raise _corrupt(entry.name, "golden eval query does not parse")
    cause_set = entry.golden["payloads"]["empirical"]["cause-set"]
    return {
        "solve": solve_payload(model),
        "eval": eval_payload(model, eval_result.formula),
        "butfor": causes_payload(model, query, "butfor"),
        "hp": causes_payload(model, query, "hp"),
        "classify": classify_payload(model, query, "hp"),
        "presumption": check_payload(
            query, check_presumption(model, query, "hp"), theory="hp"
        ),
        "similarity": check_payload(
            query, check_similarity(model, query, "hp"), theory="hp"
        ),
        "empirical": check_payload(
            query,
            check_empirical(model, query, cause_set),
            causes=cause_set,
        ),
        "fixedpoints": fixedpoints_payload(
            model, find_empirical_fixed_points(model, query)
        ),
    }


def _diff(path: str, expected, actual, out: list):
    if isinstance(expected, dict) and isinstance(actual, dict):
        for key in expected.keys() | actual.keys():
            here = f"{path}.{key}" if path else key
            if key not in actual:
                out.append(f"{here}: missing")
            elif key not in expected:
                out.append(f"{here}: unexpected")
            else:
                _diff(here, expected[key], actual[key], out)
    elif isinstance(expected, list) and isinstance(actual, list):
        if len(expected) != len(actual):
            out.append(
                f"{path}: length {len(actual)} != {len(expected)}"
            )
        for i, (e, a) in enumerate(zip(expected, actual)):
            _diff(f"{path}[{i}]", e, a, out)
    elif expected != actual:
        out.append(f"{path}: {actual!r} != {expected!r}")


def run_golden(entry: CorpusEntry) -> list:
    """Differences between the stored and recomputed payloads."""
    differences = []
    _diff(
        "payloads",
        entry.golden["payloads"],
        compute_payloads(entry),
        differences,
    )
    return differences
