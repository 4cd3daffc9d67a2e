"""Rational realizations of sign patterns and the arrowhead normal form.

Covers sampling a qualitative class Q(P) with exact rational entries, the
diagonal-similarity normalization onto the arrowhead form (unit first row,
dense first column, diagonal (a1, 0, -b1, ..., -b_{n-2})), the witness
embedding that lifts a 4x4 realization to any larger order by replicating
one spoke, and the deflation step that extracts the shared eigenvalue when
two diagonal parameters coincide.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterator, Sequence

from .patterns import Sign, SignPattern, family_pattern, sgn_of_matrix
from .ratpoly import RationalPoly, as_fraction

RationalMatrix = tuple[tuple[Fraction, ...], ...]


class MembershipError(ValueError):
    """A matrix does not belong to the qualitative class an operation requires."""


class DegenerateMergeError(ValueError):
    """Deflation merged two spoke entries to zero, leaving the qualitative class."""


@dataclass(frozen=True)
class ArrowMatrix:
    """Parameters (a_1..a_n, b_1..b_{n-2}) of the arrowhead form.

    The realized matrix has first row (a_1, 1, ..., 1), first column
    (a_1, a_2, ..., a_n), diagonal (a_1, 0, -b_1, ..., -b_{n-2}), and zeros
    elsewhere.
    """

    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]

    def __init__(self, a: Sequence, b: Sequence):
        af = tuple(as_fraction(x) for x in a)
        bf = tuple(as_fraction(x) for x in b)
        if len(af) < 4:
            raise ValueError(f"arrow form needs order >= 4, got {len(af)}")
        if len(bf) != len(af) - 2:
            raise ValueError(f"expected {len(af) - 2} diagonal parameters, got {len(bf)}")
        object.__setattr__(self, "a", af)
        object.__setattr__(self, "b", bf)

    @property
    def n(self) -> int:
        return len(self.a)

    def to_matrix(self) -> RationalMatrix:
        n = self.n
        zero = Fraction(0)
        rows = []
        rows.append((self.a[0],) + (Fraction(1),) * (n - 1))
        for k in range(1, n):
            row = [zero] * n
            row[0] = self.a[k]
            if k >= 2:
                row[k] = -self.b[k - 2]
            rows.append(tuple(row))
        return tuple(rows)

    def char_poly(self) -> RationalPoly:
        return arrow_char_poly(self)

    def to_json(self) -> dict:
        return {
            "a": [f"{x.numerator}/{x.denominator}" for x in self.a],
            "b": [f"{x.numerator}/{x.denominator}" for x in self.b],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ArrowMatrix":
        return cls([Fraction(x) for x in data["a"]], [Fraction(x) for x in data["b"]])


def arrow_char_poly(arrow: ArrowMatrix) -> RationalPoly:
    """Characteristic polynomial of the arrowhead form, by the spoke expansion.

    det(xI - B) = (x - a1) * x * prod_j (x + b_j)
                  - a2 * prod_j (x + b_j)
                  - sum_j a_{j+2} * x * prod_{m != j} (x + b_m)

    This is an O(n^2) closed form; tests pin it against the generic
    Faddeev-LeVerrier route.
    """
    x = RationalPoly.variable()
    linear = [RationalPoly((bj, 1)) for bj in arrow.b]
    k = len(linear)
    prefix = [RationalPoly.one()]
    for f in linear:
        prefix.append(prefix[-1] * f)
    suffix = [RationalPoly.one()]
    for f in reversed(linear):
        suffix.append(suffix[-1] * f)
    suffix.reverse()
    full = prefix[k]
    p = RationalPoly((-arrow.a[0], 1)) * x * full - full.scale(arrow.a[1])
    for j in range(k):
        partial = prefix[j] * suffix[j + 1]
        p = p - (x * partial).scale(arrow.a[j + 2])
    return p


def family_index(matrix: Sequence[Sequence]) -> int | None:
    """Index i with sgn(matrix) equal to the order-n family pattern, else None."""
    pattern = sgn_of_matrix(matrix)
    if pattern.n < 4:
        return None
    for i in (1, 2, 3):
        if pattern == family_pattern(i, pattern.n):
            return i
    return None


# -- sampling Q(P) ---------------------------------------------------------


@dataclass(frozen=True)
class RealizationConfig:
    """Sampling policy: magnitude window, denominator cap, and RNG seed.

    Magnitudes are drawn log-uniformly over the window and rounded to
    rationals with denominator at most denominator_bound, so samples span
    several scales while staying inside the exact engine's domain.
    """

    magnitude_range: tuple[Fraction, Fraction] = (Fraction(1, 1000), Fraction(1000))
    denominator_bound: int = 10_000
    seed: int = 0

    def __post_init__(self):
        lo, hi = (as_fraction(x) for x in self.magnitude_range)
        object.__setattr__(self, "magnitude_range", (lo, hi))
        if not 0 < lo < hi:
            raise ValueError("magnitude range must satisfy 0 < lo < hi")
        if self.denominator_bound < 1:
            raise ValueError("denominator bound must be positive")
        if lo.denominator > self.denominator_bound or hi.denominator > self.denominator_bound:
            raise ValueError("magnitude bounds must respect the denominator bound")

    def with_seed(self, seed: int) -> "RealizationConfig":
        return replace(self, seed=seed)


def _draw_magnitude(rng: random.Random, cfg: RealizationConfig) -> Fraction:
    lo, hi = cfg.magnitude_range
    log_lo, log_hi = math.log(lo), math.log(hi)
    value = math.exp(log_lo + rng.random() * (log_hi - log_lo))
    mag = Fraction(value).limit_denominator(cfg.denominator_bound)
    if mag < lo:
        return lo
    if mag > hi:
        return hi
    return mag


def _sample_with_rng(
    pattern: SignPattern, cfg: RealizationConfig, rng: random.Random
) -> RationalMatrix:
    rows = []
    for row in pattern.rows:
        out = []
        for s in row:
            if s == Sign.ZERO:
                out.append(Fraction(0))
            else:
                mag = _draw_magnitude(rng, cfg)
                out.append(mag if s == Sign.PLUS else -mag)
        rows.append(tuple(out))
    return tuple(rows)


def sample_realization(pattern: SignPattern, cfg: RealizationConfig) -> RationalMatrix:
    """One rational matrix in Q(pattern); deterministic for a fixed seed."""
    return _sample_with_rng(pattern, cfg, random.Random(cfg.seed))


def sample_stream(
    pattern: SignPattern, cfg: RealizationConfig, count: int
) -> Iterator[RationalMatrix]:
    """Stream of count samples from a single RNG seeded with cfg.seed."""
    rng = random.Random(cfg.seed)
    for _ in range(count):
        yield _sample_with_rng(pattern, cfg, rng)


# -- arrowhead normalization -------------------------------------------------


@dataclass(frozen=True)
class DiagonalSimilarity:
    """Audit record of the positive diagonal D used to reach the arrow form."""

    d: tuple[Fraction, ...]

    def conjugate(self, matrix: Sequence[Sequence]) -> RationalMatrix:
        """Return D * M * D^{-1}."""
        M = tuple(tuple(as_fraction(x) for x in row) for row in matrix)
        n = len(self.d)
        return tuple(
            tuple(self.d[i] * M[i][j] / self.d[j] for j in range(n)) for i in range(n)
        )

    def to_json(self) -> dict:
        return {"d": [f"{x.numerator}/{x.denominator}" for x in self.d]}


def to_arrow_form(matrix: Sequence[Sequence]) -> tuple[ArrowMatrix, DiagonalSimilarity]:
    """Normalize a family-class matrix onto the arrowhead form by diagonal similarity.

    The scaling diagonal is D = diag(1, B_12, ..., B_1n), whose entries are
    positive by pattern membership; conjugating by it makes the first row
    (a_1, 1, ..., 1) while fixing the diagonal and the spectrum exactly.
    """
    B = tuple(tuple(as_fraction(x) for x in row) for row in matrix)
    n = len(B)
    if family_index(B) is None:
        raise MembershipError("matrix is not in the qualitative class of any family pattern")
    d = (Fraction(1),) + tuple(B[0][k] for k in range(1, n))
    a = (B[0][0],) + tuple(B[0][k] * B[k][0] for k in range(1, n))
    b = tuple(-B[k][k] for k in range(2, n))
    return ArrowMatrix(a, b), DiagonalSimilarity(d)


def embed_witness(base: ArrowMatrix, n: int, i: int) -> ArrowMatrix:
    """Lift a 4x4 family realization to order n by replicating the third spoke.

    The third spoke weight a_3 splits into n-3 equal parts, each against a
    diagonal -b_1; the fourth spoke and its -b_2 stay last.  The result is
    in the order-n class of the same family, and its characteristic
    polynomial is (x + b_1)^(n-4) times the base one, exactly.
    """
    if base.n != 4:
        raise ValueError(f"embedding starts from a 4x4 arrow matrix, got order {base.n}")
    if n < 5:
        raise ValueError(f"embedding target order must be >= 5, got {n}")
    if family_index(base.to_matrix()) != i:
        raise MembershipError(f"base matrix is not in the order-4 class of family {i}")
    share = base.a[2] / (n - 3)
    a = (base.a[0], base.a[1]) + (share,) * (n - 3) + (base.a[3],)
    b = (base.b[0],) * (n - 3) + (base.b[1],)
    return ArrowMatrix(a, b)


def deflate_repeated(arrow: ArrowMatrix) -> tuple[Fraction, ArrowMatrix]:
    """Extract the eigenvalue shared by a repeated diagonal parameter pair.

    For the first pair (j, k) with b_j = b_k, returns (-b_j, B1) where B1
    drops one of the two spokes and adds its weight to the other, so that
    char_poly(B) = (x + b_j) * char_poly(B1) exactly.  Raises
    DegenerateMergeError when the merged weight vanishes, since B1 would
    then leave the qualitative class the induction argument lives in.
    """
    b = arrow.b
    pair = next(
        ((j, k) for j in range(len(b)) for k in range(j + 1, len(b)) if b[j] == b[k]),
        None,
    )
    if pair is None:
        raise ValueError("deflation requires a repeated diagonal parameter")
    j, k = pair
    merged = arrow.a[j + 2] + arrow.a[k + 2]
    if merged == 0:
        raise DegenerateMergeError(
            f"spoke weights a_{j + 3} and a_{k + 3} cancel; deflated matrix would "
            "leave the qualitative class"
        )
    a = list(arrow.a)
    a[j + 2] = merged
    del a[k + 2]
    b_out = list(b)
    del b_out[k]
    return -b[j], ArrowMatrix(a, b_out)


# -- matrix JSON (exact wire format) ----------------------------------------


def matrix_to_json(matrix: Sequence[Sequence]) -> dict:
    B = tuple(tuple(as_fraction(x) for x in row) for row in matrix)
    return {
        "n": len(B),
        "entries": [[x.numerator, x.denominator] for row in B for x in row],
    }


def matrix_from_json(data: dict) -> RationalMatrix:
    n = data["n"]
    entries = data["entries"]
    if len(entries) != n * n:
        raise ValueError(f"expected {n * n} entries for order {n}, got {len(entries)}")
    values = [Fraction(num, den) for num, den in entries]
    return tuple(tuple(values[r * n + c] for c in range(n)) for r in range(n))
