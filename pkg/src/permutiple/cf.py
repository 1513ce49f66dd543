"""Exact arithmetic for finite simple continued fractions.

A digit string [a0; a1, ..., an] is stored as a tuple of integers, every
digit at least 1.  Values are `fractions.Fraction`, which keeps numerator
and denominator reduced, so every identity checked downstream is exact no
matter how large the continuants grow.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

Rational = Fraction


@dataclass(frozen=True)
class ContinuedFraction:
    """Digit string of a finite simple continued fraction."""

    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "digits", tuple(self.digits))
        if not self.digits:
            raise ValueError("a continued fraction needs at least one digit")
        for a in self.digits:
            if not isinstance(a, int) or a < 1:
                raise ValueError(f"invalid digit {a!r}: digits are integers >= 1")

    @classmethod
    def parse(cls, text: str) -> ContinuedFraction:
        """Parse ``a0;a1,a2,...,an`` (spaces tolerated); a bare ``a0`` is allowed."""
        compact = "".join(text.split())
        head, _, tail = compact.partition(";")
        digits = [int(head)]
        if tail:
            digits.extend(int(part) for part in tail.split(","))
        return cls(tuple(digits))

    @property
    def is_canonical(self) -> bool:
        """True when the string is the unique representation of its value.

        Only the last digit matters: a trailing 1 folds into its
        predecessor.  Length-1 strings are canonical by convention,
        including [1].
        """
        return len(self.digits) == 1 or self.digits[-1] >= 2

    def reverse(self) -> ContinuedFraction:
        return ContinuedFraction(self.digits[::-1])

    def __len__(self) -> int:
        return len(self.digits)

    def __str__(self) -> str:
        return format_cf(self)


def format_cf(cf: ContinuedFraction) -> str:
    ds = cf.digits
    if len(ds) == 1:
        return str(ds[0])
    return str(ds[0]) + ";" + ",".join(str(a) for a in ds[1:])


def parse_rational(text: str) -> Fraction:
    compact = "".join(text.split())
    num, slash, den = compact.partition("/")
    return Fraction(int(num), int(den)) if slash else Fraction(int(num))


def format_rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def continuant(xs: Iterable[int]) -> int:
    """Continuant K(x0, ..., x_{m-1}): K() = 1, K(x0) = x0, and each new
    entry x extends via K -> x*K + K_previous."""
    prev, cur = 0, 1
    for x in xs:
        prev, cur = cur, x * cur + prev
    return cur


def convergents(cf: ContinuedFraction) -> tuple[tuple[int, int], ...]:
    """All convergent pairs (p_j, q_j), j = 0..n; the last pair is the value.

    Seeds: p(-1)=1, p(-2)=0, q(-1)=0, q(-2)=1.  Each pair is already in
    lowest terms (p_j q_{j-1} - p_{j-1} q_j = +-1).
    """
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    out = []
    for a in cf.digits:
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        out.append((p, q))
    return tuple(out)


def evaluate(cf: ContinuedFraction) -> Fraction:
    """Exact value of the digit string, evaluated as written (canonical or not)."""
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    for a in cf.digits:
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
    return Fraction(p, q)


def gauss_step(x: Fraction) -> Fraction:
    """One step of the digit left-shift map on [0,1): 0 -> 0, else frac(1/x)."""
    if not 0 <= x < 1:
        raise ValueError(f"{x} is outside [0, 1)")
    if x == 0:
        return Fraction(0)
    inv = 1 / x
    return inv - (inv.numerator // inv.denominator)


def tails(cf: ContinuedFraction) -> tuple[Fraction, ...]:
    """Tail values g_0, ..., g_{n-1}, where g_j is the value of the suffix
    string [0; a_{j+1}, ..., an].

    For a canonical string this is exactly the left-shift orbit of the
    fractional part (each step is ``gauss_step`` and the digits are
    recovered by a_{j+1} = floor(1/g_j)).  The shift is driven by the
    stored digits, so the product identity g_0 * ... * g_{n-1} == 1/q_n
    also holds for non-canonical strings, where the raw orbit would stray
    from the written digits.
    """
    ds = cf.digits
    n = len(ds) - 1
    if n == 0:
        return ()
    out = [evaluate(cf) - ds[0]]
    for j in range(1, n):
        out.append(1 / out[-1] - ds[j])
    return tuple(out)


def canonicalize(cf: ContinuedFraction) -> ContinuedFraction:
    """Fold a trailing 1 into its predecessor; value is preserved."""
    ds = cf.digits
    if len(ds) >= 2 and ds[-1] == 1:
        return ContinuedFraction(ds[:-2] + (ds[-2] + 1,))
    return cf


def from_rational(value: Fraction) -> ContinuedFraction:
    """Canonical digit string of a rational value >= 1 (Euclidean expansion)."""
    if value < 1:
        raise ValueError(f"{value} < 1 has no all-positive digit string")
    num, den = value.numerator, value.denominator
    digits = []
    while den:
        a, rem = divmod(num, den)
        digits.append(a)
        num, den = den, rem
    return ContinuedFraction(tuple(digits))
