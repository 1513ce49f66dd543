"""Permutiple detection and classification.

A digit string r = [a0; a1, ..., an] together with a permutation sigma of
the positions and an integer k >= 2 is a permutiple when r equals k times
the string [a_sigma(0); a_sigma(1), ..., a_sigma(n)] evaluated as written.
This module decides that relation exactly and computes the classification
flags (continuant-preserving, perfect, symmetric, landess, reverse
multiple) for a verified triple.
"""

from __future__ import annotations

import itertools
from collections import defaultdict, deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm

from .cf import ContinuedFraction, continuant, evaluate

FLAG_ORDER = (
    "continuant_preserving",
    "perfect",
    "symmetric",
    "landess",
    "reverse_multiple",
)


class NotAPermutipleError(ValueError):
    """The digit string is not an integer multiple (k >= 2) of the permuted string."""


@dataclass(frozen=True)
class Permutation:
    """Bijection on positions {0, ..., n}, stored as the image list."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "images", tuple(self.images))
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"{self.images!r} is not a permutation of 0..{len(self.images) - 1}")

    @classmethod
    def parse(cls, text: str) -> Permutation:
        compact = "".join(text.split())
        return cls(tuple(int(part) for part in compact.split(",")))

    @classmethod
    def identity(cls, size: int) -> Permutation:
        return cls(tuple(range(size)))

    @classmethod
    def reversal(cls, size: int) -> Permutation:
        return cls(tuple(range(size - 1, -1, -1)))

    def __call__(self, j: int) -> int:
        return self.images[j]

    def __len__(self) -> int:
        return len(self.images)

    def __str__(self) -> str:
        return format_permutation(self)

    @cached_property
    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Cycle decomposition; each cycle starts at its smallest member and
        cycles are listed by smallest member."""
        seen = [False] * len(self.images)
        cycles = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cycle = []
            j = start
            while not seen[j]:
                seen[j] = True
                cycle.append(j)
                j = self.images[j]
            cycles.append(tuple(cycle))
        return tuple(cycles)

    @cached_property
    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles))

    @property
    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted(len(c) for c in self.cycles))

    @property
    def is_identity(self) -> bool:
        return all(img == j for j, img in enumerate(self.images))

    @property
    def is_reversal(self) -> bool:
        n = len(self.images) - 1
        return all(img == n - j for j, img in enumerate(self.images))

    @property
    def is_derangement(self) -> bool:
        return all(img != j for j, img in enumerate(self.images))


def format_permutation(sigma: Permutation) -> str:
    return ",".join(str(i) for i in sigma.images)


@dataclass(frozen=True)
class ClassificationFlags:
    is_permutiple: bool
    continuant_preserving: bool
    perfect: bool
    symmetric: bool
    landess: bool
    reverse_multiple: bool

    def __post_init__(self) -> None:
        # Lattice sanity: these implications always hold for genuine
        # permutiples, so violating combinations signal a bug upstream.
        if self.perfect and not self.symmetric:
            raise ValueError("flag lattice violated: perfect requires symmetric")
        if self.perfect and not self.landess:
            raise ValueError("flag lattice violated: perfect requires landess")
        if self.landess and not self.continuant_preserving:
            raise ValueError("flag lattice violated: landess requires continuant preservation")

    def true_names(self) -> tuple[str, ...]:
        return tuple(name for name in FLAG_ORDER if getattr(self, name))


@dataclass(frozen=True)
class Witness:
    """A verified permutiple triple plus its classification."""

    cf: ContinuedFraction
    sigma: Permutation
    k: int
    value: Fraction
    permuted_value: Fraction
    flags: ClassificationFlags

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError("multiplier must be an integer >= 2")
        if len(self.sigma) != len(self.cf):
            raise ValueError("permutation length does not match digit count")
        if self.value != self.k * self.permuted_value:
            raise ValueError("witness does not satisfy value == k * permuted_value")

    @cached_property
    def permuted(self) -> ContinuedFraction:
        return permute_digits(self.cf, self.sigma)


def _check_lengths(cf: ContinuedFraction, sigma: Permutation) -> None:
    if len(sigma) != len(cf):
        raise ValueError(
            f"permutation on {len(sigma)} symbols does not fit {len(cf)} digits"
        )


def permute_digits(cf: ContinuedFraction, sigma: Permutation) -> ContinuedFraction:
    """Digit string whose j-th digit is a_sigma(j); may be non-canonical."""
    _check_lengths(cf, sigma)
    return ContinuedFraction(tuple(cf.digits[i] for i in sigma.images))


def permutiple_multiplier(cf: ContinuedFraction, sigma: Permutation) -> int | None:
    """The integer k >= 2 with value(cf) == k * value(permuted), if any.

    Both values are reduced fractions, so the ratio (p*q')/(p'*q) is
    checked by exact integer divisibility; k == 1 is excluded.
    """
    _check_lengths(cf, sigma)
    p, q = evaluate(cf).as_integer_ratio()
    pp, qp = evaluate(permute_digits(cf, sigma)).as_integer_ratio()
    num, den = p * qp, pp * q
    if num % den:
        return None
    k = num // den
    return k if k >= 2 else None


def is_continuant_preserving(cf: ContinuedFraction, sigma: Permutation) -> bool:
    """True when the base and permuted strings have the same top continuant."""
    _check_lengths(cf, sigma)
    return continuant(cf.digits) == continuant(cf.digits[i] for i in sigma.images)


def is_perfect(cf: ContinuedFraction, sigma: Permutation, k: int) -> bool:
    """Alternating exact-ratio pattern: a_j = k*a_sigma(j) at even j and
    a_sigma(j) = k*a_j at odd j."""
    _check_lengths(cf, sigma)
    ds = cf.digits
    for j, image in enumerate(sigma.images):
        if j % 2 == 0:
            if ds[j] != k * ds[image]:
                return False
        elif ds[image] != k * ds[j]:
            return False
    return True


def is_symmetric(cf: ContinuedFraction, sigma: Permutation) -> bool:
    """Symmetric digit products are preserved: a_j*a_{n-j} == a_sigma(j)*a_sigma(n-j)."""
    _check_lengths(cf, sigma)
    ds = cf.digits
    n = len(ds) - 1
    img = sigma.images
    return all(ds[j] * ds[n - j] == ds[img[j]] * ds[img[n - j]] for j in range(n + 1))


def is_landess(cf: ContinuedFraction, sigma: Permutation, k: int) -> bool:
    """Continuant preservation plus the second-to-last convergent relations
    p_{n-1} == k*p'_{n-1} and q_{n-1} == q'_{n-1}."""
    _check_lengths(cf, sigma)
    ds = cf.digits
    ps = tuple(ds[i] for i in sigma.images)
    return (
        continuant(ds) == continuant(ps)
        and continuant(ds[:-1]) == k * continuant(ps[:-1])
        and continuant(ds[1:-1]) == continuant(ps[1:-1])
    )


def is_reverse_multiple(cf: ContinuedFraction, k: int) -> bool:
    """Value-level check against the reversed digit string.  Independent of
    any particular sigma: with repeated digits several permutations realize
    the reversed string."""
    return evaluate(cf) == k * evaluate(cf.reverse())


def classify(
    cf: ContinuedFraction,
    sigma: Permutation,
    k: int | None = None,
    allow_noncanonical: bool = False,
) -> Witness:
    """Verify the triple and bundle all classification flags into a Witness.

    Raises NotAPermutipleError when the multiplier check fails (including
    ratio 1 and non-integer ratios), and ValueError for a non-canonical
    base unless ``allow_noncanonical`` is set.  The permuted side is always
    evaluated as written.
    """
    _check_lengths(cf, sigma)
    if not cf.is_canonical and not allow_noncanonical:
        raise ValueError(
            f"base string {cf} is not canonical; pass allow_noncanonical=True to accept it"
        )
    found = permutiple_multiplier(cf, sigma)
    if found is None:
        raise NotAPermutipleError(
            f"{cf} is not an integer multiple (k >= 2) of {permute_digits(cf, sigma)}"
        )
    if k is not None and k != found:
        raise NotAPermutipleError(f"multiplier of {cf} under {sigma} is {found}, not {k}")
    k = found
    flags = ClassificationFlags(
        is_permutiple=True,
        continuant_preserving=is_continuant_preserving(cf, sigma),
        perfect=is_perfect(cf, sigma, k),
        symmetric=is_symmetric(cf, sigma),
        landess=is_landess(cf, sigma, k),
        reverse_multiple=is_reverse_multiple(cf, k),
    )
    return Witness(
        cf=cf,
        sigma=sigma,
        k=k,
        value=evaluate(cf),
        permuted_value=evaluate(permute_digits(cf, sigma)),
        flags=flags,
    )


def canonical_sigma(base: tuple[int, ...], permuted: tuple[int, ...]) -> Permutation:
    """Lexicographically smallest image list realizing ``permuted`` from ``base``.

    Greedy per digit value: each position takes the smallest unused source
    index holding the required digit.
    """
    positions: dict[int, deque[int]] = defaultdict(deque)
    for i, d in enumerate(base):
        positions[d].append(i)
    try:
        images = tuple(positions[d].popleft() for d in permuted)
    except IndexError:
        raise ValueError(f"{permuted!r} is not a rearrangement of {base!r}") from None
    return Permutation(images)


def witness_from_permuted(
    cf: ContinuedFraction,
    permuted: tuple[int, ...],
    k: int | None = None,
    allow_noncanonical: bool = False,
) -> Witness:
    """Witness for a permuted digit string, using the canonical representative
    sigma (smallest image list) for that string."""
    return classify(cf, canonical_sigma(cf.digits, permuted), k, allow_noncanonical)


def find_witnesses(
    cf: ContinuedFraction,
    allow_noncanonical: bool = False,
    all_sigmas: bool = False,
) -> list[Witness]:
    """All (sigma, k) witnesses for a digit string, by brute force.

    By default the result holds one Witness per distinct permuted digit
    string (ordered by that string), carrying the canonical sigma.  With
    ``all_sigmas`` every realizing permutation gets its own Witness,
    ordered by permuted string then image list.
    """
    if not cf.is_canonical and not allow_noncanonical:
        raise ValueError(f"base string {cf} is not canonical")
    base = cf.digits
    out: list[Witness] = []
    if all_sigmas:
        hits = []
        for images in itertools.permutations(range(len(base))):
            permuted = tuple(base[i] for i in images)
            if permuted == base:
                continue
            hits.append((permuted, images))
        for permuted, images in sorted(hits):
            sigma = Permutation(images)
            if permutiple_multiplier(cf, sigma) is not None:
                out.append(classify(cf, sigma, allow_noncanonical=allow_noncanonical))
        return out
    for permuted in sorted(set(itertools.permutations(base)) - {base}):
        sigma = canonical_sigma(base, permuted)
        if permutiple_multiplier(cf, sigma) is not None:
            out.append(classify(cf, sigma, allow_noncanonical=allow_noncanonical))
    return out
