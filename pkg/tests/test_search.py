import io
import itertools
import json

import pytest
from conftest import brute_force_witnesses

from permutiple import (
    ContinuedFraction,
    Permutation,
    SearchConfig,
    Witness,
    check_conjectures,
    classify,
    exhaustive_search,
    export,
    witness_record,
)

CF = ContinuedFraction


def run(config):
    return list(exhaustive_search(config))


class TestSearchConfig:
    def test_lengths(self):
        assert SearchConfig(length=3, max_digit=5).lengths() == (3,)
        assert SearchConfig(length=(2, 5), max_digit=5).lengths() == (2, 3, 4, 5)

    def test_validation(self):
        with pytest.raises(ValueError):
            SearchConfig(length=1, max_digit=5)
        with pytest.raises(ValueError):
            SearchConfig(length=2, max_digit=1)
        with pytest.raises(ValueError):
            SearchConfig(length=2, max_digit=5, k_min=1)
        with pytest.raises(ValueError):
            SearchConfig(length=2, max_digit=5, workers=0)


class TestExhaustiveSearch:
    def test_two_digit_family_at_bound_10(self):
        found = {(w.cf.digits, w.k) for w in run(SearchConfig(length=2, max_digit=10))}
        assert found == {
            ((4, 2), 2),
            ((6, 2), 3),
            ((8, 2), 4),
            ((10, 2), 5),
            ((6, 3), 2),
            ((9, 3), 3),
            ((8, 4), 2),
            ((10, 5), 2),
        }

    def test_three_digit_needs_room(self):
        assert run(SearchConfig(length=3, max_digit=2)) == []

    def test_five_digit_scan_contains_asymmetric_example(self):
        found = {
            (w.cf.digits, w.k) for w in run(SearchConfig(length=5, max_digit=9))
        }
        assert ((9, 3, 2, 8, 2), 4) in found

    def test_matches_unpruned_oracle_at_tiny_bounds(self):
        config = SearchConfig(length=(2, 3), max_digit=6)
        found = {(w.cf.digits, w.permuted.digits, w.k) for w in run(config)}
        expected = set()
        for n in (2, 3):
            for ds in itertools.product(range(1, 7), repeat=n):
                if ds[-1] == 1:
                    continue
                for permuted, k in brute_force_witnesses(ds).items():
                    expected.add((ds, permuted, k))
        assert found == expected

    def test_order_is_lexicographic_and_by_length(self):
        ws = run(SearchConfig(length=(2, 3), max_digit=6))
        keys = [(len(w.cf), w.cf.digits, w.permuted.digits) for w in ws]
        assert keys == sorted(keys)

    def test_multiplier_bounds(self):
        base = {(w.cf.digits, w.k) for w in run(SearchConfig(length=2, max_digit=12))}
        low = {(w.cf.digits, w.k) for w in run(SearchConfig(length=2, max_digit=12, k_min=3))}
        high = {(w.cf.digits, w.k) for w in run(SearchConfig(length=2, max_digit=12, k_max=2))}
        assert low == {item for item in base if item[1] >= 3}
        assert high == {item for item in base if item[1] == 2}
        assert low | high == base

    def test_worker_counts_agree(self):
        serial = run(SearchConfig(length=3, max_digit=8))
        parallel = run(SearchConfig(length=3, max_digit=8, workers=3))
        assert serial == parallel

    def test_dedupe_toggle(self):
        deduped = run(SearchConfig(length=4, max_digit=6))
        expanded = run(SearchConfig(length=4, max_digit=6, dedupe=False))
        target = CF((6, 2, 6, 2))
        assert [w.sigma.images for w in deduped if w.cf == target] == [(1, 0, 3, 2)]
        assert [w.sigma.images for w in expanded if w.cf == target] == [
            (1, 0, 3, 2),
            (1, 2, 3, 0),
            (3, 0, 1, 2),
            (3, 2, 1, 0),
        ]
        assert {(w.cf.digits, w.permuted.digits, w.k) for w in expanded} == {
            (w.cf.digits, w.permuted.digits, w.k) for w in deduped
        }

    def test_noncanonical_bases_when_requested(self):
        loose = run(SearchConfig(length=3, max_digit=6, canonical_only=False))
        strict = run(SearchConfig(length=3, max_digit=6))
        extras = {w.cf.digits for w in loose} - {w.cf.digits for w in strict}
        assert all(ds[-1] == 1 for ds in extras)
        assert (5, 3, 1) in extras

    def test_every_witness_reverifies(self):
        for w in run(SearchConfig(length=(2, 4), max_digit=5)):
            assert w.value == w.k * w.permuted_value
            assert w.cf.digits[0] > w.permuted.digits[0]


class TestConjectures:
    def test_reports_hold_at_tiny_bounds(self):
        stream = run(SearchConfig(length=(2, 4), max_digit=6))
        reports = check_conjectures(stream, ["c1", "c2", "c3", "c4"], bounds="tiny")
        for conjecture, report in reports.items():
            assert report.holds_within_bounds, conjecture
            assert report.examined == len(stream)
            assert report.bounds == "tiny"
            assert "0 counterexamples" in report.summary()

    def test_unknown_id_rejected(self):
        with pytest.raises(ValueError):
            check_conjectures([], ["c9"])

    def test_counterexamples_are_collected(self):
        # feed c3 a symmetric witness whose landess flag is forced off by a
        # hand-built flags object is impossible (lattice allows it), so check
        # the predicate wiring with c1 on a non-4-digit stream instead
        stream = run(SearchConfig(length=3, max_digit=8))
        report = check_conjectures(stream, ["c1"])["c1"]
        assert report.holds_within_bounds  # vacuous: no 4-digit witnesses


class TestExport:
    def witness(self):
        return classify(CF((7, 1, 3)), Permutation((2, 1, 0)))

    def test_jsonl_schema_line(self):
        buffer = io.StringIO()
        export([self.witness()], "jsonl", buffer)
        line = buffer.getvalue()
        assert line == (
            '{"digits":"7;1,3","sigma":"2,1,0","k":2,'
            '"value":{"p":"31","q":"4"},'
            '"flags":{"continuant_preserving":true,"perfect":false,'
            '"symmetric":true,"landess":true,"reverse_multiple":true}}\n'
        )
        record = json.loads(line)
        assert list(record) == ["digits", "sigma", "k", "value", "flags"]

    def test_csv_header_once(self, tmp_path):
        target = tmp_path / "out.csv"
        ws = run(SearchConfig(length=2, max_digit=8))
        export(ws, "csv", target)
        lines = target.read_text().splitlines()
        assert lines[0] == "digits,sigma,k,p,q,flags"
        assert sum(1 for line in lines if line.startswith("digits")) == 1
        assert len(lines) == 1 + len(ws)
        assert lines[1].split(",")[0] == "4;2"

    def test_empty_stream_gives_empty_file(self, tmp_path):
        target = tmp_path / "empty.jsonl"
        export([], "jsonl", target)
        assert target.read_text() == ""

    def test_unknown_format_rejected(self):
        with pytest.raises(ValueError):
            export([], "xml", io.StringIO())

    def test_corrupted_witness_cannot_be_exported(self):
        w = self.witness()
        object.__setattr__(w, "k", 3)
        with pytest.raises(ValueError):
            export([w], "jsonl", io.StringIO())

    def test_determinism_across_worker_counts(self, tmp_path):
        paths = []
        for workers in (1, 2, 4):
            path = tmp_path / f"w{workers}.jsonl"
            export(
                exhaustive_search(SearchConfig(length=(2, 3), max_digit=9, workers=workers)),
                "jsonl",
                path,
            )
            paths.append(path.read_bytes())
        assert paths[0] == paths[1] == paths[2]

    def test_record_round_trip(self):
        record = witness_record(self.witness())
        assert record["digits"] == "7;1,3"
        assert record["value"] == {"p": "31", "q": "4"}
        assert list(record["flags"]) == [
            "continuant_preserving",
            "perfect",
            "symmetric",
            "landess",
            "reverse_multiple",
        ]
