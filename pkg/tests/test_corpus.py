from __future__ import annotations

import pytest

from actualcause import CausalError, format_model
from actualcause import corpus as corpus_module
from actualcause.corpus import (
    NAMES,
    compute_payloads,
    load_corpus,
    load_entry,
    run_golden,
)

PAYLOAD_KEYS = (
    "solve", "eval", "butfor", "hp", "classify",
    "presumption", "similarity", "empirical", "fixedpoints",
)


def test_corpus_loads_in_declared_order():
    entries = load_corpus()
    assert tuple(e.name for e in entries) == NAMES
    for entry in entries:
        assert entry.model.name == entry.name
        assert format_model(entry.model) == entry.source


def test_unknown_entry_name():
    with pytest.raises(CausalError, match="no corpus entry"):
        load_entry("mary")


def test_goldens_freeze_every_payload(corpus):
    for entry in corpus.values():
        assert tuple(entry.golden["payloads"].keys()) == PAYLOAD_KEYS


def test_goldens_carry_provenance_tags(corpus):
    for entry in corpus.values():
        tags = entry.golden["provenance"]
        assert set(tags) == set(PAYLOAD_KEYS)
        for payload, stamped in tags.items():
            assert "oracle:brute-force" in stamped
            assert "cross-check:optimized" in stamped
            # similarity verdicts and the fixed-point collections are
            # derived findings, not published worked examples
            derived = payload in ("similarity", "fixedpoints")
            assert ("worked-example" in stamped) == (not derived)


def test_run_golden_is_clean(corpus):
    for entry in corpus.values():
        assert run_golden(entry) == []


def test_compute_payloads_matches_storage(corpus):
    entry = corpus["antidote"]
    assert compute_payloads(entry) == entry.golden["payloads"]


def _reads(overrides):
    original = corpus_module._read

    def fake(filename):
        if filename in overrides:
            return overrides[filename]
        return original(filename)

    return fake


def test_corrupted_source_detected(monkeypatch):
    monkeypatch.setattr(
        corpus_module, "_read", _reads({"m1.scm": "model m1\nvar ???\n"})
    )
    with pytest.raises(CausalError, match="corrupted"):
        load_entry("m1")


def test_wrong_model_name_detected(monkeypatch):
    source = corpus_module._read("m1.scm").replace("model m1", "model mx")
    monkeypatch.setattr(corpus_module, "_read", _reads({"m1.scm": source}))
    with pytest.raises(CausalError, match="declares model 'mx'"):
        load_entry("m1")


def test_non_canonical_source_detected(monkeypatch):
    source = corpus_module._read("m1.scm").replace(" := ", "  :=  ", 1)
    monkeypatch.setattr(corpus_module, "_read", _reads({"m1.scm": source}))
    with pytest.raises(CausalError, match="canonical"):
        load_entry("m1")


def test_mislabeled_golden_detected(monkeypatch):
    golden = corpus_module._read("m2.golden.json").replace(
        '"model": "m2"', '"model": "m1"', 1
    )
    monkeypatch.setattr(
        corpus_module, "_read", _reads({"m2.golden.json": golden})
    )
    with pytest.raises(CausalError, match="different model"):
        load_entry("m2")


def test_bad_golden_query_detected(monkeypatch):
    golden = corpus_module._read("suzy.golden.json").replace(
        '"query": "(G = 1)"', '"query": "(Z = 1)"', 1
    )
    monkeypatch.setattr(
        corpus_module, "_read", _reads({"suzy.golden.json": golden})
    )
    with pytest.raises(CausalError, match="query does not parse"):
        load_entry("suzy")


def test_drifted_payload_reported_pathwise(monkeypatch):
    golden = corpus_module._read("m1.golden.json").replace(
        '"B": "0"', '"B": "1"', 1
    )
    monkeypatch.setattr(
        corpus_module, "_read", _reads({"m1.golden.json": golden})
    )
    differences = run_golden(load_entry("m1"))
    assert differences
    assert any("payloads.solve" in d for d in differences)
