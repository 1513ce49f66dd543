"""Exhaustive permutiple search over bounded digit tuples.

Digit tuples are enumerated in lexicographic order (shorter lengths first
when a range is searched); for each tuple the distinct permuted strings are
tested by exact integer divisibility.  Work is partitioned across worker
processes by leading-digit blocks and merged back in enumeration order, so
the output stream is identical for any worker count.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from .cf import ContinuedFraction, format_cf
from .classify import (
    FLAG_ORDER,
    Permutation,
    Witness,
    classify,
    canonical_sigma,
    format_permutation,
)


@dataclass(frozen=True)
class SearchConfig:
    """Bounds and execution knobs for one exhaustive scan.

    ``length`` is a digit count (n+1) or an inclusive (low, high) range;
    ``max_digit`` bounds every digit.  With ``dedupe`` (the default) one
    witness is emitted per distinct permuted string, carrying the canonical
    sigma; without it every realizing permutation is emitted.
    """

    length: int | tuple[int, int]
    max_digit: int
    k_min: int | None = None
    k_max: int | None = None
    canonical_only: bool = True
    workers: int = 1
    dedupe: bool = True

    def __post_init__(self) -> None:
        low = min(self.lengths())
        if low < 2:
            raise ValueError("searched lengths must be >= 2")
        if self.max_digit < 2:
            raise ValueError("max_digit must be >= 2")
        if self.k_min is not None and self.k_min < 2:
            raise ValueError("k_min must be >= 2 when given")
        if self.workers < 1:
            raise ValueError("workers must be a positive integer")

    def lengths(self) -> tuple[int, ...]:
        if isinstance(self.length, int):
            return (self.length,)
        low, high = self.length
        return tuple(range(low, high + 1))


# permutations of 0..m-1 grouped by first image, cached per length
_BUCKET_CACHE: dict[int, dict[int, list[tuple[int, ...]]]] = {}


def _perm_buckets(m: int) -> dict[int, list[tuple[int, ...]]]:
    buckets = _BUCKET_CACHE.get(m)
    if buckets is None:
        buckets = {i: [] for i in range(m)}
        for perm in itertools.permutations(range(m)):
            buckets[perm[0]].append(perm)
        _BUCKET_CACHE[m] = buckets
    return buckets


def _top_continuant(t: tuple[int, ...]) -> int:
    prev, cur = 0, 1
    for x in t:
        prev, cur = cur, x * cur + prev
    return cur


def _value_pair(t: tuple[int, ...]) -> tuple[int, int]:
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    for a in t:
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
    return p, q


def _hits_for_tuple(
    t: tuple[int, ...], config: SearchConfig
) -> list[tuple[tuple[int, ...], tuple[int, ...] | None, int]]:
    """(permuted, sigma-images-or-None, k) for every witness on tuple t.

    Candidates whose first digit is not below a_0 are pruned: a permutiple
    value is at least twice the permuted value, which forces a_0 above the
    permuted leading digit.
    """
    m = len(t)
    p, q = _value_pair(t)
    a0 = t[0]
    distinct = len(set(t)) == m
    seen: set[tuple[int, ...]] | None = None if (distinct or not config.dedupe) else {t}
    hits = []
    for i, perms in _perm_buckets(m).items():
        if t[i] >= a0:
            continue
        for perm in perms:
            tp = tuple(t[j] for j in perm)
            if seen is not None:
                if tp in seen:
                    continue
                seen.add(tp)
            elif not config.dedupe and tp == t:
                continue
            pp = _top_continuant(tp)
            if p % pp:
                continue
            qp = _top_continuant(tp[1:])
            num, den = p * qp, pp * q
            if num % den:
                continue
            k = num // den
            if k < 2:
                continue
            if config.k_min is not None and k < config.k_min:
                continue
            if config.k_max is not None and k > config.k_max:
                continue
            hits.append((tp, None if config.dedupe else perm, k))
    hits.sort(key=lambda h: (h[0], h[1] or ()))
    return hits


def _scan_args(args: tuple[SearchConfig, int, int]) -> list[Witness]:
    config, m, first = args
    out: list[Witness] = []
    rest = m - 1
    span = range(1, config.max_digit + 1)
    for tail in itertools.product(span, repeat=rest):
        t = (first,) + tail
        if config.canonical_only and m > 1 and t[-1] < 2:
            continue
        for tp, perm, k in _hits_for_tuple(t, config):
            cf = ContinuedFraction(t)
            sigma = Permutation(perm) if perm is not None else canonical_sigma(t, tp)
            out.append(classify(cf, sigma, k, allow_noncanonical=not config.canonical_only))
    return out


def exhaustive_search(config: SearchConfig) -> Iterator[Witness]:
    """Stream every witness within the configured bounds.

    Output order is (length, digit string, permuted string) lexicographic,
    with the image list as a final tie-break when dedupe is off; the order
    does not depend on the worker count.
    """
    first_digits = range(2, config.max_digit + 1)  # a_0 >= 2: a_0 > a_sigma(0) >= 1
    tasks = [(config, m, first) for m in config.lengths() for first in first_digits]
    if config.workers == 1:
        for task in tasks:
            yield from _scan_args(task)
        return
    with ProcessPoolExecutor(max_workers=config.workers) as pool:
        for block in pool.map(_scan_args, tasks):
            yield from block


CONJECTURE_IDS = ("c1", "c2", "c3", "c4")

_CONJECTURE_TEXT = {
    "c1": "every 4-digit permutiple is symmetric",
    "c2": "every permutiple is continuant-preserving",
    "c3": "every symmetric permutiple is a landess permutiple",
    "c4": "every 4-digit permutiple is perfect or a reverse multiple",
}


def _holds(conjecture: str, w: Witness) -> bool:
    if conjecture == "c1":
        return len(w.cf) != 4 or w.flags.symmetric
    if conjecture == "c2":
        return w.flags.continuant_preserving
    if conjecture == "c3":
        return (not w.flags.symmetric) or w.flags.landess
    if conjecture == "c4":
        return len(w.cf) != 4 or w.flags.perfect or w.flags.reverse_multiple
    raise ValueError(f"unknown conjecture id {conjecture!r}")


@dataclass
class ConjectureReport:
    """Outcome of scanning one conjecture over a witness stream.

    An empty counterexample list means the conjecture held within the
    searched bounds; it is never a proof.
    """

    conjecture: str
    bounds: str
    examined: int = 0
    counterexamples: list[Witness] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def holds_within_bounds(self) -> bool:
        return not self.counterexamples

    def summary(self) -> str:
        status = (
            "0 counterexamples"
            if self.holds_within_bounds
            else f"{len(self.counterexamples)} COUNTEREXAMPLES"
        )
        return (
            f"conjecture {self.conjecture} ({_CONJECTURE_TEXT[self.conjecture]}): "
            f"{status} among {self.examined} witnesses"
            f" [{self.bounds}] in {self.wall_time:.2f}s"
        )


def check_conjectures(
    stream: Iterable[Witness], which: Iterable[str], bounds: str = ""
) -> dict[str, ConjectureReport]:
    """Evaluate the requested conjecture predicates over one witness stream."""
    ids = list(which)
    for conjecture in ids:
        if conjecture not in CONJECTURE_IDS:
            raise ValueError(f"unknown conjecture id {conjecture!r}")
    reports = {c: ConjectureReport(conjecture=c, bounds=bounds) for c in ids}
    start = time.perf_counter()
    for w in stream:
        for c in ids:
            reports[c].examined += 1
            if not _holds(c, w):
                reports[c].counterexamples.append(w)
    elapsed = time.perf_counter() - start
    for c in ids:
        reports[c].wall_time = elapsed
    return reports


def witness_record(w: Witness) -> dict:
    """Fixed-schema JSON object for one witness; p and q are decimal strings
    so consumers with bounded integers cannot truncate them."""
    return {
        "digits": format_cf(w.cf),
        "sigma": format_permutation(w.sigma),
        "k": w.k,
        "value": {"p": str(w.value.numerator), "q": str(w.value.denominator)},
        "flags": {name: getattr(w.flags, name) for name in FLAG_ORDER},
    }


def _write_jsonl(witnesses: Iterable[Witness], handle: io.TextIOBase) -> None:
    for w in witnesses:
        handle.write(json.dumps(witness_record(w), separators=(",", ":")) + "\n")


def _write_csv(witnesses: Iterable[Witness], handle: io.TextIOBase) -> None:
    writer = csv.writer(handle)
    writer.writerow(["digits", "sigma", "k", "p", "q", "flags"])
    for w in witnesses:
        writer.writerow(
            [
                format_cf(w.cf),
                format_permutation(w.sigma),
                w.k,
                str(w.value.numerator),
                str(w.value.denominator),
                "|".join(w.flags.true_names()),
            ]
        )


def export(witnesses: Iterable[Witness], fmt: str = "jsonl", destination="-") -> None:
    """Write witnesses to a path, an open handle, or '-' for stdout.

    Every witness is re-verified on the way out (the Witness constructor
    enforces value == k * permuted_value, so a corrupted record cannot be
    serialized silently).
    """
    checked = (
        Witness(w.cf, w.sigma, w.k, w.value, w.permuted_value, w.flags) for w in witnesses
    )
    if fmt == "jsonl":
        writer = _write_jsonl
    elif fmt == "csv":
        writer = _write_csv
    else:
        raise ValueError(f"unknown export format {fmt!r}")
    if hasattr(destination, "write"):
        writer(checked, destination)
    elif destination == "-":
        writer(checked, sys.stdout)
    else:
        with open(Path(destination), "w", newline="") as handle:
            writer(checked, handle)
