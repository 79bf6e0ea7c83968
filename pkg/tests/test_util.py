"""Tests for the shared helpers: canonical JSON, the sweep pool, windows."""

from __future__ import annotations

import json

import pytest

from gtl.util import canonical_json, parse_int_keys, sweep, window_pairs, worker_count


def test_canonical_json_is_sorted_and_newline_terminated():
    text = canonical_json({"b": 1, "a": [2, 3]})
    assert text == '{"a":[2,3],"b":1}\n'
    assert json.loads(text) == {"a": [2, 3], "b": 1}


def test_worker_count_defaults_to_sequential(monkeypatch):
    monkeypatch.delenv("GTL_THREADS", raising=False)
    assert worker_count() == 1
    monkeypatch.setenv("GTL_THREADS", "4")
    assert worker_count() == 4
    monkeypatch.setenv("GTL_THREADS", "-2")
    assert worker_count() == 1
    monkeypatch.setenv("GTL_THREADS", "lots")
    with pytest.raises(ValueError):
        worker_count()


def test_sweep_results_keep_input_order(monkeypatch):
    items = list(range(40))
    expected = [i * i for i in items]
    monkeypatch.setenv("GTL_THREADS", "1")
    assert sweep(lambda i: i * i, items) == expected
    monkeypatch.setenv("GTL_THREADS", "4")
    assert sweep(lambda i: i * i, items) == expected


def test_threaded_reports_match_sequential(monkeypatch, laurent):
    sequential = laurent.validate().to_json_dict()
    monkeypatch.setenv("GTL_THREADS", "4")
    assert laurent.validate().to_json_dict() == sequential


def test_parse_int_keys():
    assert parse_int_keys({"-2": 5, "0": 1}, "dims") == {-2: 5, 0: 1}
    with pytest.raises(ValueError):
        parse_int_keys({"x": 1}, "dims")


def test_window_pairs_stay_inside():
    pairs = window_pairs((-1, 1))
    assert (1, -1) in pairs and (-1, 1) in pairs
    assert (1, 1) not in pairs
    assert all(-1 <= i + j <= 1 for i, j in pairs)
    assert len(pairs) == len(set(pairs))
