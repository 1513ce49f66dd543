"""Quadratic surds, periodic expansions, and infinite perfect digit streams.

All comparisons against square roots are decided by exact integer sign
analysis on squared quantities; no floating point enters any decision.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import isqrt
from typing import Callable

from .cf import ContinuedFraction


def _is_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def _sqrt_gt(b: int, t: int) -> bool:
    """sqrt(b) > t for non-square b (never equal)."""
    return t < 0 or b > t * t


def _sqrt_lt(b: int, t: int) -> bool:
    """sqrt(b) < t for non-square b."""
    return t > 0 and b < t * t


@dataclass(frozen=True)
class QuadraticSurd:
    """The irrational value (a + sqrt(b)) / c with b a positive non-square."""

    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        if self.b < 1 or _is_square(self.b):
            raise ValueError(f"b must be a positive non-square, got {self.b}")
        if self.c == 0:
            raise ValueError("c must be nonzero")

    def __str__(self) -> str:
        return f"({self.a}+sqrt({self.b}))/{self.c}"


def surd_multiplier(s: QuadraticSurd) -> int | None:
    """(b - a*a)/c when that quotient is an integer >= 2, else None."""
    num = s.b - s.a * s.a
    if num % s.c:
        return None
    k = num // s.c
    return k if k >= 2 else None


def is_reduced(s: QuadraticSurd) -> bool:
    """Value > 1 with algebraic conjugate (a - sqrt(b))/c in (-1, 0)."""
    a, b, c = s.a, s.b, s.c
    if c > 0:
        value_gt_1 = _sqrt_gt(b, c - a)
        conj_neg = _sqrt_gt(b, a)
        conj_gt_minus_1 = _sqrt_lt(b, a + c)
    else:
        value_gt_1 = _sqrt_lt(b, c - a)
        conj_neg = _sqrt_lt(b, a)
        conj_gt_minus_1 = _sqrt_gt(b, a + c)
    return value_gt_1 and conj_neg and conj_gt_minus_1


def _floor_quad(P: int, D: int, Q: int) -> int:
    """floor((P + sqrt(D)) / Q) for non-square D and Q != 0, exactly."""
    s = isqrt(D)
    return (P + s) // Q if Q > 0 else (P + s + 1) // Q


def periodic_expansion(
    s: QuadraticSurd, max_states: int = 10_000
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(preperiod, period) of the digit expansion of a quadratic surd.

    Runs the integer state recurrence P' = a*Q - P, Q' = (D - P'*P')/Q with
    cycle detection on (P, Q) states.  The state is normalized first so Q
    divides D - P*P.  Reduced surds come back with an empty preperiod.
    Every expansion is eventually periodic, so exceeding ``max_states``
    indicates a bug or a malformed input and raises.
    """
    P, D, Q = s.a, s.b, s.c
    if (D - P * P) % Q:
        scale = abs(Q)
        P, D, Q = P * scale, D * scale * scale, Q * scale
    digits: list[int] = []
    seen: dict[tuple[int, int], int] = {}
    for index in range(max_states):
        state = (P, Q)
        if state in seen:
            start = seen[state]
            return tuple(digits[:start]), tuple(digits[start:])
        seen[state] = index
        a = _floor_quad(P, D, Q)
        digits.append(a)
        P = a * Q - P
        Q = (D - P * P) // Q
    raise RuntimeError(f"no cycle within {max_states} states for {s}")


def expansion_digits(s: QuadraticSurd, depth: int) -> tuple[int, ...]:
    """First ``depth`` digits of the expansion, unrolling the period."""
    preperiod, period = periodic_expansion(s)
    digits = list(preperiod)
    while len(digits) < depth:
        digits.extend(period)
    return tuple(digits[:depth])


def _adjacent_swap_matches(base: tuple[int, ...], scaled: tuple[int, ...]) -> bool:
    d = len(base)
    for j in range(d):
        jj = j + 1 if j % 2 == 0 else j - 1
        if jj >= d:
            continue
        if scaled[j] != base[jj]:
            return False
    return True


def _find_alignment(base: tuple[int, ...], scaled: tuple[int, ...]) -> str | None:
    d = len(base)
    if d >= 2 and _adjacent_swap_matches(base, scaled):
        return "adjacent-swap"
    for t in range(1, d // 2 + 1):
        for shift in (t, -t):
            window = range(max(0, -shift), min(d, d - shift))
            if window and all(scaled[j] == base[j + shift] for j in window):
                return f"shift:{shift:+d}"
    return None


@dataclass(frozen=True)
class SurdProbeReport:
    """Empirical comparison of a surd's digits with those of its k-th part.

    The verdict is a finite-window observation, never a proof: it says
    whether the two expansions line up under the adjacent-swap permutation
    or a constant shift within the inspected depth.
    """

    surd: QuadraticSurd
    k: int
    depth: int
    digits: tuple[int, ...]
    scaled_digits: tuple[int, ...]
    multiset_agree: bool
    alignment: str | None
    verdict: str

    @property
    def consistent(self) -> bool:
        return self.alignment is not None


def verify_surd_permutiple(s: QuadraticSurd, depth: int = 20) -> SurdProbeReport:
    """Expand s and s/k to ``depth`` digits and compare them.

    Requires surd_multiplier(s) to be an integer >= 2.  Reports whether the
    digit multisets over the matched (even-length) window agree, and the
    first position alignment found, if any.
    """
    k = surd_multiplier(s)
    if k is None:
        raise ValueError(f"(b - a^2)/c is not an integer >= 2 for {s}")
    digits = expansion_digits(s, depth)
    scaled = expansion_digits(QuadraticSurd(s.a, s.b, s.c * k), depth)
    alignment = _find_alignment(digits, scaled)
    window = 2 * (depth // 2)
    multiset_agree = Counter(digits[:window]) == Counter(scaled[:window])
    verdict = f"consistent to depth {depth}" if alignment else f"inconsistent at depth {depth}"
    return SurdProbeReport(
        surd=s,
        k=k,
        depth=depth,
        digits=digits,
        scaled_digits=scaled,
        multiset_agree=multiset_agree,
        alignment=alignment,
        verdict=verdict,
    )


class DigitStream:
    """Lazily produced infinite digit sequence with a position-indexed
    permutation family.  Single consumer; the digit cache is not locked."""

    def __init__(
        self,
        digit_fn: Callable[[int], int],
        sigma_fn: Callable[[int], int],
        k: int | None = None,
    ):
        self._digit_fn = digit_fn
        self._sigma_fn = sigma_fn
        self._cache: list[int] = []
        self.k = k

    def digit(self, j: int) -> int:
        while len(self._cache) <= j:
            value = int(self._digit_fn(len(self._cache)))
            if value < 1:
                raise ValueError(f"stream digit {value} at index {len(self._cache)} is not >= 1")
            self._cache.append(value)
        return self._cache[j]

    def sigma(self, j: int) -> int:
        image = self._sigma_fn(j)
        if image < 0:
            raise ValueError(f"permutation image {image} at index {j} is negative")
        return image

    def prefix(self, n: int) -> tuple[int, ...]:
        return tuple(self.digit(j) for j in range(n))

    def permuted_prefix(self, n: int) -> tuple[int, ...]:
        return tuple(self.digit(self.sigma(j)) for j in range(n))


def infinite_perfect_stream(k: int, params) -> DigitStream:
    """Stream with digit pattern k*s0, s0, k*s1, s1, ... under the
    adjacent-pair-swap permutation j -> j + (-1)**j.

    ``params`` supplies s0, s1, ...: either a callable on indices, or a
    sequence/iterable (finite ones raise once exhausted).  Every truncation
    to even length is a perfect k-permutiple.
    """
    if k < 2:
        raise ValueError("multiplier k must be an integer greater than 1")
    if callable(params):
        source = params
    else:
        buffer: list[int] = []
        iterator = iter(params)

        def source(i: int) -> int:
            while len(buffer) <= i:
                try:
                    buffer.append(next(iterator))
                except StopIteration:
                    raise ValueError(f"parameter stream exhausted at index {i}") from None
            return buffer[i]

    def digit_fn(j: int) -> int:
        i, odd = divmod(j, 2)
        s = int(source(i))
        if s < 1:
            raise ValueError(f"parameter s_{i} = {s} is not >= 1")
        return s if odd else k * s

    def sigma_fn(j: int) -> int:
        return j - 1 if j % 2 else j + 1

    return DigitStream(digit_fn, sigma_fn, k=k)


def asymptotic_continuant_gap(stream: DigitStream, limit: int) -> tuple[int, ...]:
    """|top continuant difference| between the stream and its permuted
    stream at truncation lengths 2..limit+1 (one entry per n = 1..limit)."""
    base = stream.prefix(limit + 1)
    permuted = stream.permuted_prefix(limit + 1)
    gaps = []
    b_prev, b_cur = 1, base[0]
    p_prev, p_cur = 1, permuted[0]
    for n in range(1, limit + 1):
        b_prev, b_cur = b_cur, base[n] * b_cur + b_prev
        p_prev, p_cur = p_cur, permuted[n] * p_cur + p_prev
        gaps.append(abs(b_cur - p_cur))
    return tuple(gaps)


def truncation(stream: DigitStream, length: int) -> ContinuedFraction:
    """Finite digit string holding the first ``length`` stream digits."""
    return ContinuedFraction(stream.prefix(length))
