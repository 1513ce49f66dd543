"""Shared independent oracles for the test suite.

These deliberately avoid the library's code paths: evaluation nests the
fraction directly, continuants come from 2x2 matrix products, and the
witness oracle tries every permutation with Fraction arithmetic and no
pruning.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def nested_eval(digits) -> Fraction:
    """Evaluate a digit string by literally nesting a0 + 1/(a1 + 1/(...))."""
    acc = Fraction(digits[-1])
    for a in reversed(digits[:-1]):
        acc = a + 1 / acc
    return acc


def matrix_continuant(xs) -> int:
    """Continuant as the top-left entry of the product of [[x,1],[1,0]] matrices."""
    a, b, c, d = 1, 0, 0, 1
    for x in xs:
        a, b, c, d = a * x + b, a, c * x + d, c
    return a


def brute_force_witnesses(digits, k_min=2, k_max=None) -> dict[tuple[int, ...], int]:
    """Unpruned oracle: permuted string -> k over every distinct rearrangement."""
    digits = tuple(digits)
    base_value = nested_eval(digits)
    out: dict[tuple[int, ...], int] = {}
    for perm in set(itertools.permutations(digits)):
        if perm == digits:
            continue
        ratio = base_value / nested_eval(perm)
        if ratio.denominator != 1:
            continue
        k = ratio.numerator
        if k >= k_min and (k_max is None or k <= k_max):
            out[perm] = k
    return out
