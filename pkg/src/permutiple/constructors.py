"""Closed-form permutiple families.

Every constructor returns a fully classified Witness, verified by exact
evaluation; outputs whose last digit is 1 are returned as written (the
witness's string is simply non-canonical), never silently folded.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .cf import ContinuedFraction
from .classify import (
    Permutation,
    Witness,
    classify,
    witness_from_permuted,
)


def two_digit(k: int, s: int) -> Witness:
    """The swap family [k*s; s] = k * [s; k*s].

    Both parameters must exceed 1; s == 1 would make the string
    non-canonical and k == 1 is not a multiple.
    """
    if k < 2:
        raise ValueError("multiplier k must be an integer greater than 1")
    if s < 2:
        raise ValueError("parameter s must be an integer greater than 1")
    cf = ContinuedFraction((k * s, s))
    return classify(cf, Permutation((1, 0)), k)


def three_digit_reverse(k: int, a0: int) -> Witness | None:
    """Reverse multiple [a0; a1, a2] = k * [a2; a1, a0] with leading digit a0.

    a1 is forced by a0*a1 = -1 (mod k): with alpha the inverse of a0 mod k,
    a1 = k - alpha.  Writing q = (a0*a1 + 1)/k (exact), a2 is forced by
    a1*a2 = -1 (mod q): with beta the inverse of a1 mod q, a2 = q - beta.
    The product identity a0*a1 + 1 == k*(a1*a2 + 1) is then verified; some
    leading digits admit no solution (the identity fails), in which case
    None is returned.
    """
    if k < 2:
        raise ValueError("multiplier k must be an integer greater than 1")
    if a0 <= k:
        raise ValueError(f"leading digit must exceed k={k}")
    if gcd(a0, k) != 1:
        raise ValueError(f"leading digit {a0} must be relatively prime to k={k}")
    alpha = pow(a0, -1, k)
    a1 = k - alpha
    q, rem = divmod(a0 * a1 + 1, k)
    if rem:  # unreachable: a0*a1 = -1 (mod k) by choice of a1
        raise AssertionError("a0*a1 + 1 is not divisible by k")
    beta = pow(a1, -1, q)
    a2 = q - beta
    if a0 * a1 + 1 != k * (a1 * a2 + 1):
        return None
    cf = ContinuedFraction((a0, a1, a2))
    return witness_from_permuted(cf, (a2, a1, a0), k, allow_noncanonical=True)


def enumerate_three_digit_reverse(k: int, a0_max: int) -> list[Witness]:
    """All three-digit k-reverse multiples with leading digit up to a0_max."""
    if k < 2:
        raise ValueError("multiplier k must be an integer greater than 1")
    out = []
    for a0 in range(k + 1, a0_max + 1):
        if gcd(a0, k) != 1:
            continue
        witness = three_digit_reverse(k, a0)
        if witness is not None:
            out.append(witness)
    return out


def validate_perfect_permutation(sigma: Permutation) -> bool:
    """Whether sigma can carry a perfect permutiple.

    Requires a derangement of even order on an even number of symbols whose
    every cycle holds equally many even and odd positions; the per-cycle
    parity balance is exactly the solvability condition for the digit
    parameters.  The alternating-sign sum over each full power orbit is
    asserted as well.
    """
    if len(sigma) % 2:
        return False
    if not sigma.is_derangement:
        return False
    if sigma.order % 2:
        return False
    for cycle in sigma.cycles:
        evens = sum(1 for j in cycle if j % 2 == 0)
        if 2 * evens != len(cycle):
            return False
    for j in range(len(sigma)):
        total = 0
        t = j
        for _ in range(sigma.order):
            total += 1 if t % 2 == 0 else -1
            t = sigma(t)
        if total:
            return False
    return True


@dataclass(frozen=True)
class PerfectParameters:
    """One free positive parameter per cycle of a perfect-capable sigma."""

    sigma: Permutation
    k: int
    orbit_params: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "orbit_params", tuple(self.orbit_params))
        if self.k < 2:
            raise ValueError("multiplier k must be an integer greater than 1")
        if not validate_perfect_permutation(self.sigma):
            raise ValueError(f"{self.sigma} cannot carry a perfect permutiple")
        if len(self.orbit_params) != len(self.sigma.cycles):
            raise ValueError(
                f"need {len(self.sigma.cycles)} parameters (one per cycle), "
                f"got {len(self.orbit_params)}"
            )
        if any(p < 1 for p in self.orbit_params):
            raise ValueError("cycle parameters must be positive integers")


def perfect_from_parameters(params: PerfectParameters) -> Witness:
    """Perfect permutiple built from one free parameter per cycle of sigma.

    The parameter relation ties s_j to s_sigma(j) by a factor k**e(j) with
    e(j) = ((-1)**j + (-1)**sigma(j)) / 2, so walking each cycle fixes all
    exponents up to a common shift; the shift is normalized so the smallest
    exponent is 0, making the cycle parameter the smallest s in its cycle
    and every digit an integer for any positive parameter.  Digits are then
    a_j = k*s_j at even j and a_j = s_j at odd j.
    """
    sigma, k = params.sigma, params.k
    size = len(sigma)
    s = [0] * size
    for cycle, param in zip(sigma.cycles, params.orbit_params):
        exponents = {cycle[0]: 0}
        j = cycle[0]
        for _ in range(len(cycle) - 1):
            e = ((-1) ** j + (-1) ** sigma(j)) // 2
            exponents[sigma(j)] = exponents[j] - e
            j = sigma(j)
        e = ((-1) ** j + (-1) ** sigma(j)) // 2
        if exponents[j] - e != exponents[cycle[0]]:  # parity balance guarantees closure
            raise AssertionError("parameter exponents do not close around the cycle")
        shift = -min(exponents.values())
        for position in cycle:
            s[position] = param * k ** (exponents[position] + shift)
    digits = tuple(k * s[j] if j % 2 == 0 else s[j] for j in range(size))
    witness = classify(ContinuedFraction(digits), sigma, k, allow_noncanonical=True)
    if not witness.flags.perfect:  # construction guarantees the ratio pattern
        raise AssertionError(f"constructed digits {digits} are not perfect")
    return witness


def perfect_reverse(k: int, half_params: tuple[int, ...]) -> Witness:
    """Perfect reverse multiple from the mirrored parameter list.

    With m = len(half_params) the string has 2*m digits, s_j = s_{n-j}, and
    digits alternate k*s_j / s_j.  The last digit is half_params[0], so a
    leading parameter of 1 yields a non-canonical string (flagged via the
    witness, not rejected).
    """
    if k < 2:
        raise ValueError("multiplier k must be an integer greater than 1")
    half = tuple(half_params)
    if not half:
        raise ValueError("at least one parameter is required")
    if any(p < 1 for p in half):
        raise ValueError("parameters must be positive integers")
    size = 2 * len(half)
    n = size - 1
    s = [half[j] if j < len(half) else half[n - j] for j in range(size)]
    digits = tuple(k * s[j] if j % 2 == 0 else s[j] for j in range(size))
    witness = classify(
        ContinuedFraction(digits), Permutation.reversal(size), k, allow_noncanonical=True
    )
    if not witness.flags.perfect or not witness.flags.reverse_multiple:
        raise AssertionError(f"constructed digits {digits} are not a perfect reverse multiple")
    return witness


def perfect_cyclic(k: int, length: int, ell: int, params: tuple[int, ...]) -> Witness:
    """Perfect cyclic permutiple for sigma = (rotation by ell), ell odd.

    Even rotations admit no perfect permutiples (every power orbit would
    stay in one parity class), so even ell is rejected.  The parameters are
    constant on each rotation orbit; there are gcd(ell, length) orbits,
    which are the residue classes of position mod gcd.
    """
    if k < 2:
        raise ValueError("multiplier k must be an integer greater than 1")
    if length < 2 or length % 2:
        raise ValueError("length must be an even integer >= 2")
    if not 0 < ell < length:
        raise ValueError(f"shift ell must satisfy 0 < ell < {length}")
    if ell % 2 == 0:
        raise ValueError("no perfect cyclic permutiple exists for an even shift")
    g = gcd(ell, length)
    orbit_params = tuple(params)
    if len(orbit_params) != g:
        raise ValueError(f"need {g} parameters (one per rotation orbit), got {len(orbit_params)}")
    if any(p < 1 for p in orbit_params):
        raise ValueError("parameters must be positive integers")
    s = [orbit_params[j % g] for j in range(length)]
    digits = tuple(k * s[j] if j % 2 == 0 else s[j] for j in range(length))
    sigma = Permutation(tuple((j + ell) % length for j in range(length)))
    witness = classify(ContinuedFraction(digits), sigma, k, allow_noncanonical=True)
    if not witness.flags.perfect:
        raise AssertionError(f"constructed digits {digits} are not perfect")
    return witness
