"""Digit-string concatenation calculus.

Concatenating a Landess witness with a continuant-preserving witness of the
same multiplier yields another continuant-preserving permutiple under the
block permutation; palindromic lists of reverse multiples concatenate to a
reverse multiple.  The bracket views expose the four continuants of a digit
string used by these closure arguments.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .cf import ContinuedFraction, continuant
from .classify import Permutation, Witness, classify


class _EmptyWord:
    """Identity element for concatenation; never evaluated or emitted."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "EMPTY"


EMPTY = _EmptyWord()


@dataclass(frozen=True)
class BracketViews:
    """Continuants of a digit string and of its one-sided truncations."""

    full: int
    drop_first: int
    drop_last: int
    drop_both: int


def bracket_views(cf: ContinuedFraction) -> BracketViews:
    ds = cf.digits
    return BracketViews(
        full=continuant(ds),
        drop_first=continuant(ds[1:]),
        drop_last=continuant(ds[:-1]),
        drop_both=continuant(ds[1:-1]) if len(ds) >= 2 else 0,
    )


def concat(c1, c2):
    """Concatenate digit strings; EMPTY acts as the identity.

    Interior digits may be anything >= 1, so c1's canonicality is
    irrelevant; the result is canonical exactly when c2 is.
    """
    if c1 is EMPTY:
        return c2
    if c2 is EMPTY:
        return c1
    return ContinuedFraction(c1.digits + c2.digits)


def concat_witness(w1: Witness, w2: Witness) -> Witness:
    """Witness for w1 concatenated with w2 under the block permutation.

    Requires w1 to be Landess and w2 continuant-preserving, with equal
    multipliers.  The value equation is re-verified by exact evaluation
    even though closure guarantees it; a failure here would be an
    implementation bug, not bad data.
    """
    if w1.k != w2.k:
        raise ValueError(f"multiplier mismatch: {w1.k} != {w2.k}")
    if not w1.flags.landess:
        raise ValueError("left factor must carry the landess flag")
    if not w2.flags.continuant_preserving:
        raise ValueError("right factor must be continuant-preserving")
    joined = concat(w1.cf, w2.cf)
    offset = len(w1.cf)
    rho = Permutation(w1.sigma.images + tuple(offset + i for i in w2.sigma.images))
    witness = classify(joined, rho, w1.k, allow_noncanonical=True)
    if not witness.flags.continuant_preserving:
        raise AssertionError("concatenation lost continuant preservation")
    return witness


def palindromic_concat(witnesses: Sequence[Witness], k: int) -> Witness:
    """Reverse multiple formed by concatenating a palindromic list of
    k-reverse multiples (w_j and w_{m-j} must have equal digit strings)."""
    pieces = list(witnesses)
    if not pieces:
        raise ValueError("at least one witness is required")
    for w in pieces:
        if w.k != k:
            raise ValueError(f"mixed multipliers: expected {k}, found {w.k}")
        if not w.flags.reverse_multiple:
            raise ValueError(f"{w.cf} is not a reverse multiple")
    m = len(pieces) - 1
    for j in range(len(pieces)):
        if pieces[j].cf.digits != pieces[m - j].cf.digits:
            raise ValueError("witness list is not palindromic")
    digits: tuple[int, ...] = ()
    for w in pieces:
        digits = digits + w.cf.digits
    joined = ContinuedFraction(digits)
    witness = classify(
        joined, Permutation.reversal(len(digits)), k, allow_noncanonical=True
    )
    if not witness.flags.reverse_multiple:
        raise AssertionError("palindromic concatenation is not a reverse multiple")
    return witness
