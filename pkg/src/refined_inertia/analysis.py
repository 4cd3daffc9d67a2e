"""Witness suites, Monte-Carlo falsification, and lemma-level validators.

This is the layer that turns the engine into verdicts about the three
arrowhead families: certified witnesses showing every target inertia is
realized ("allows"), seeded sampling hunting for a certified inertia
outside the target set ("requires" falsification), and exact checks of the
identities the distinct-parameter analysis rests on.
"""

from __future__ import annotations

import csv
import io
import json
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from .engine import (
    DEFAULT_TOLERANCE,
    EigenSolverError,
    InternalCheckError,
    NumericTolerance,
    RefinedInertia,
    _numeric_inertia_flagged,
    arrow_shift_det,
    char_poly,
    refined_inertia_exact,
)
from .patterns import SignPattern, family_pattern, sgn_of_matrix
from .realization import (
    ArrowMatrix,
    RationalMatrix,
    RealizationConfig,
    arrow_char_poly,
    family_index,
    matrix_to_json,
    sample_realization,
    to_arrow_form,
)
from .witness_fixtures import WITNESS_PARAMS


class SearchBudgetError(RuntimeError):
    """A randomized witness search ran out of attempts."""


class WitnessCertificationError(RuntimeError):
    """A stored or constructed witness failed its exact certification."""


@dataclass(frozen=True)
class HnSet:
    """The three-element target set of refined inertias for a given order."""

    n: int
    members: tuple[RefinedInertia, RefinedInertia, RefinedInertia]

    def __contains__(self, inertia: RefinedInertia) -> bool:
        return inertia in self.members


def hn_set(n: int) -> HnSet:
    """Target set {(0,n,0,0), (0,n-2,0,2), (2,n-2,0,0)}; defined for n >= 3."""
    if n < 3:
        raise ValueError(f"the target inertia set needs order >= 3, got {n}")
    return HnSet(
        n,
        (
            RefinedInertia(0, n, 0, 0),
            RefinedInertia(0, n - 2, 0, 2),
            RefinedInertia(2, n - 2, 0, 0),
        ),
    )


# -- 4x4 witnesses -----------------------------------------------------------


def _simple_fraction(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 12), rng.randint(1, 4))


_FAMILY_A_SIGNS = {1: (1, -1, -1, -1), 2: (-1, -1, 1, 1), 3: (-1, 1, 1, -1)}


def search_4x4_witness(
    i: int,
    target: RefinedInertia,
    seed: int = 0,
    budget: int = 50_000,
) -> ArrowMatrix:
    """Randomized search for a 4x4 family member with the given exact inertia.

    Suitable for the open-condition inertias, where a positive-measure set
    of parameters realizes the target.  Raises SearchBudgetError if the
    budget runs out.
    """
    signs = _FAMILY_A_SIGNS[i]
    rng = random.Random(seed)
    for _ in range(budget):
        b1 = _simple_fraction(rng)
        b2 = _simple_fraction(rng)
        if b1 == b2:
            continue
        if i == 3:
            b2 = -b2
        a = tuple(s * _simple_fraction(rng) for s in signs)
        candidate = ArrowMatrix(a, (b1, b2))
        if refined_inertia_exact(arrow_char_poly(candidate)) == target:
            return candidate
    raise SearchBudgetError(f"no ({target}) witness for family {i} within {budget} draws")


def construct_imaginary_pair_witness(
    i: int, seed: int = 0, budget: int = 50_000
) -> ArrowMatrix:
    """Build a 4x4 family member with inertia (0, 2, 0, 2) by coefficient matching.

    Targets char polys (x^2 + w)(x^2 + alpha*x + beta) with alpha, beta, w
    positive rationals, whose roots are one imaginary pair plus a stable
    quadratic.  The four spoke parameters solve the coefficient system
    linearly once b1, b2, alpha, beta, w are drawn; draws are resampled
    until the solution lands in the family's sign class.  This constructive
    route is needed because the target inertia lies on a measure-zero
    variety that random sampling cannot hit.
    """
    rng = random.Random(seed)
    target = RefinedInertia(0, 2, 0, 2)
    for _ in range(budget):
        b1 = _simple_fraction(rng)
        b2 = _simple_fraction(rng)
        if i == 3:
            b2 = -b2
        if b1 == b2:
            continue
        alpha = _simple_fraction(rng)
        beta = _simple_fraction(rng)
        w = _simple_fraction(rng)
        a1 = b1 + b2 - alpha
        a2 = -beta * w / (b1 * b2)
        spoke_sum = b1 * b2 - a1 * (b1 + b2) - a2 - (beta + w)
        spoke_mix = -alpha * w - a1 * b1 * b2 - a2 * (b1 + b2)
        a3 = (spoke_mix - spoke_sum * b1) / (b2 - b1)
        a4 = (spoke_sum * b2 - spoke_mix) / (b2 - b1)
        candidate = ArrowMatrix((a1, a2, a3, a4), (b1, b2))
        if family_index(candidate.to_matrix()) != i:
            continue
        inertia = refined_inertia_exact(arrow_char_poly(candidate))
        if inertia != target:
            raise WitnessCertificationError(
                f"coefficient matching produced inertia {inertia}, expected {target}"
            )
        return candidate
    raise SearchBudgetError(f"no (0,2,0,2) witness for family {i} within {budget} draws")


@dataclass(frozen=True)
class WitnessSuite:
    """One certified realization per target inertia for a single pattern."""

    pattern: SignPattern
    witnesses: tuple[tuple[RefinedInertia, ArrowMatrix], ...]

    def __post_init__(self):
        keys = tuple(ri for ri, _ in self.witnesses)
        expected = hn_set(self.pattern.n).members
        if sorted(keys) != sorted(expected):
            raise ValueError("witness keys must be exactly the three target inertias")

    def matrix_for(self, inertia: RefinedInertia) -> ArrowMatrix:
        for ri, arrow in self.witnesses:
            if ri == inertia:
                return arrow
        raise KeyError(inertia)

    def to_json_dict(self) -> dict:
        return {
            "pattern": self.pattern.to_json(),
            "order": self.pattern.n,
            "witnesses": [
                {
                    "inertia": ri.to_json(),
                    "arrow": arrow.to_json(),
                    "matrix": matrix_to_json(arrow.to_matrix()),
                }
                for ri, arrow in self.witnesses
            ],
        }


def _certified_witness(i: int, n: int, arrow: ArrowMatrix, expected: RefinedInertia) -> None:
    if sgn_of_matrix(arrow.to_matrix()) != family_pattern(i, n):
        raise WitnessCertificationError(
            f"witness for family {i}, order {n} is outside the qualitative class"
        )
    inertia = refined_inertia_exact(arrow_char_poly(arrow))
    if inertia != expected:
        raise WitnessCertificationError(
            f"witness for family {i}, order {n} has inertia {inertia}, expected {expected}"
        )


def find_4x4_witnesses(i: int) -> WitnessSuite:
    """The stored 4x4 witness triple for family i, re-certified exactly.

    The parameter values are frozen fixtures derived once by seeded search
    (open-condition inertias) and coefficient matching (the imaginary
    pair); every call re-runs the exact certification.
    """
    if i not in (1, 2, 3):
        raise ValueError(f"family index must be 1, 2 or 3, got {i}")
    entries = []
    for key, (a, b) in WITNESS_PARAMS[i].items():
        inertia = RefinedInertia(*key)
        arrow = ArrowMatrix([Fraction(x) for x in a], [Fraction(x) for x in b])
        _certified_witness(i, 4, arrow, inertia)
        entries.append((inertia, arrow))
    entries.sort(key=lambda pair: pair[0])
    return WitnessSuite(family_pattern(i, 4), tuple(entries))


def witness_suite(i: int, n: int) -> WitnessSuite:
    """Certified witnesses for all three target inertias at order n >= 4.

    For n >= 5 each stored 4x4 witness is lifted by the spoke-replication
    embedding, which adds n-4 to the negative count and changes nothing
    else; every lifted witness is re-certified exactly.
    """
    if n < 4:
        raise ValueError(f"witness suites start at order 4, got {n}")
    base = find_4x4_witnesses(i)
    if n == 4:
        return base
    from .realization import embed_witness

    entries = []
    for ri4, arrow4 in base.witnesses:
        lifted = embed_witness(arrow4, n, i)
        expected = RefinedInertia(ri4.n_plus, ri4.n_minus + (n - 4), ri4.n_zero, ri4.two_n_p)
        _certified_witness(i, n, lifted, expected)
        entries.append((expected, lifted))
    entries.sort(key=lambda pair: pair[0])
    return WitnessSuite(family_pattern(i, n), tuple(entries))


# -- falsification ------------------------------------------------------------


class Verdict(str, Enum):
    CONSISTENT = "ConsistentWithRequires"
    COUNTEREXAMPLE = "CounterexampleFound"
    ALLOWS = "AllowsConfirmed"


@dataclass(frozen=True)
class AnalysisReport:
    """Histogram of observed refined inertias over seeded samples, plus verdict."""

    pattern: SignPattern
    samples: int
    histogram: tuple[tuple[RefinedInertia, int], ...]
    verdict: Verdict
    counterexample: RationalMatrix | None
    seed: int

    def __post_init__(self):
        if sum(count for _, count in self.histogram) != self.samples:
            raise ValueError("histogram counts must sum to the sample count")
        if self.pattern.n >= 3:
            hn = hn_set(self.pattern.n)
            outside = any(ri not in hn for ri, _ in self.histogram)
            found = self.verdict is Verdict.COUNTEREXAMPLE
            if outside != found or found != (self.counterexample is not None):
                raise ValueError("verdict, counterexample and histogram disagree")

    @property
    def consistent(self) -> bool:
        return self.verdict is not Verdict.COUNTEREXAMPLE

    def observed(self) -> tuple[RefinedInertia, ...]:
        return tuple(ri for ri, _ in self.histogram)

    def to_json_dict(self) -> dict:
        return {
            "pattern": self.pattern.to_json(),
            "samples": self.samples,
            "histogram": [
                {"inertia": ri.to_json(), "count": count} for ri, count in self.histogram
            ],
            "verdict": self.verdict.value,
            "counterexample": (
                matrix_to_json(self.counterexample) if self.counterexample is not None else None
            ),
            "seed": self.seed,
        }

    def histogram_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["n_plus", "n_minus", "n_zero", "two_n_p", "count"])
        for ri, count in self.histogram:
            writer.writerow([ri.n_plus, ri.n_minus, ri.n_zero, ri.two_n_p, count])
        return buffer.getvalue()


def canonical_dumps(data) -> str:
    """Canonical JSON text: sorted keys, fixed layout, trailing newline."""
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


_SPLITMIX_MULT = 0x9E3779B97F4A7C15
_SPLITMIX_MIX = 0xBF58476D1CE4E5B9
_MASK64 = (1 << 64) - 1


def _sample_seed(base: int, index: int) -> int:
    """Per-sample seed derivation; fixed formula so reports never depend on job count."""
    z = (base * _SPLITMIX_MULT + (index + 1) * _SPLITMIX_MIX) & _MASK64
    z = ((z ^ (z >> 30)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def _exact_inertia(matrix: RationalMatrix) -> RefinedInertia:
    """Exact inertia, through the arrowhead closed form when the matrix is family-class.

    The diagonal similarity onto arrow form preserves the characteristic
    polynomial exactly, and the spoke expansion is quadratic instead of
    quartic in the order, which matters inside the falsifier's escalation
    path.
    """
    if family_index(matrix) is not None:
        arrow, _ = to_arrow_form(matrix)
        return refined_inertia_exact(arrow_char_poly(arrow))
    return refined_inertia_exact(char_poly(matrix))


def _falsify_chunk(args) -> tuple[dict, tuple[int, RationalMatrix] | None]:
    pattern, cfg, start, count, members, tol = args
    histogram: Counter = Counter()
    first_outside: tuple[int, RationalMatrix] | None = None
    for k in range(start, start + count):
        sample = sample_realization(pattern, cfg.with_seed(_sample_seed(cfg.seed, k)))
        try:
            inertia, near_axis = _numeric_inertia_flagged(sample, tol)
            suspicious = near_axis or inertia not in members
        except EigenSolverError:
            inertia, suspicious = None, True
        if suspicious:
            inertia = _exact_inertia(sample)
            if inertia not in members and first_outside is None:
                first_outside = (k, sample)
        histogram[inertia] += 1
    return dict(histogram), first_outside


def _shrink_counterexample(matrix: RationalMatrix, members) -> RationalMatrix:
    """Pull entries toward +-1 by bisection while the certified verdict holds."""

    def still_outside(rows) -> bool:
        return _exact_inertia(tuple(tuple(r) for r in rows)) not in members

    work = [list(row) for row in matrix]
    n = len(work)
    for _ in range(2):
        changed = False
        for r in range(n):
            for c in range(n):
                x = work[r][c]
                if x == 0:
                    continue
                target = Fraction(1 if x > 0 else -1)
                if x == target:
                    continue
                work[r][c] = target
                if still_outside(work):
                    changed = True
                    continue
                current = x
                for _ in range(6):
                    midpoint = (current + target) / 2
                    work[r][c] = midpoint
                    if still_outside(work):
                        current = midpoint
                        changed = True
                    else:
                        break
                simplified = current.limit_denominator(1000)
                if simplified != 0 and (simplified > 0) == (current > 0):
                    work[r][c] = simplified
                    if still_outside(work):
                        current = simplified
                work[r][c] = current
        if not changed:
            break
    return tuple(tuple(row) for row in work)


def falsify_requires(
    pattern: SignPattern,
    budget: int,
    cfg: RealizationConfig,
    jobs: int = 1,
    tol: NumericTolerance = DEFAULT_TOLERANCE,
) -> AnalysisReport:
    """Sample Q(pattern) and hunt for a certified inertia outside the target set.

    Classification is numeric-first; any sample whose tuple falls outside
    the target set or within ten axis tolerances of an axis is re-run
    through the exact engine, so every outside verdict is certified.  The
    sample multiset is a pure function of (pattern, budget, seed),
    independent of the job count.
    """
    if pattern.n < 3:
        raise ValueError("falsification needs order >= 3")
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    hn = hn_set(pattern.n)
    members = frozenset(hn.members)
    jobs = max(1, min(jobs, budget or 1))
    bounds = [budget * w // jobs for w in range(jobs + 1)]
    tasks = [
        (pattern, cfg, bounds[w], bounds[w + 1] - bounds[w], members, tol)
        for w in range(jobs)
        if bounds[w + 1] > bounds[w]
    ]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_falsify_chunk, tasks))
    else:
        results = [_falsify_chunk(task) for task in tasks]

    histogram: Counter = Counter()
    first_outside: tuple[int, RationalMatrix] | None = None
    for hist, outside in results:
        histogram.update(hist)
        if outside is not None and (first_outside is None or outside[0] < first_outside[0]):
            first_outside = outside

    counterexample = None
    if first_outside is not None:
        counterexample = _shrink_counterexample(first_outside[1], members)
        verdict = Verdict.COUNTEREXAMPLE
    elif set(histogram) >= members and budget > 0:
        verdict = Verdict.ALLOWS
    else:
        verdict = Verdict.CONSISTENT
    return AnalysisReport(
        pattern=pattern,
        samples=budget,
        histogram=tuple(sorted(histogram.items())),
        verdict=verdict,
        counterexample=counterexample,
        seed=cfg.seed,
    )


# -- lemma validators ----------------------------------------------------------


@dataclass
class LemmaCheck:
    check: str
    status: str  # "pass", "fail" or "skipped"
    details: dict

    @property
    def failed(self) -> bool:
        return self.status == "fail"


def _sorted_descending(arrow: ArrowMatrix) -> ArrowMatrix:
    """Permutation-similar copy with b descending, as the identities assume."""
    order = sorted(range(len(arrow.b)), key=lambda k: arrow.b[k], reverse=True)
    a = (arrow.a[0], arrow.a[1]) + tuple(arrow.a[k + 2] for k in order)
    b = tuple(arrow.b[k] for k in order)
    return ArrowMatrix(a, b)


def validate_lemmas(arrow: ArrowMatrix, i: int) -> list[LemmaCheck]:
    """Run the exact identity checks behind the distinct-parameter analysis.

    The matrix is first permuted so the diagonal parameters descend, which
    is the normalization the sign table assumes.  Checks that need distinct
    parameters are marked skipped when there are ties; the determinant
    parity check runs regardless.  Raises MembershipError if the matrix is
    not in the family's qualitative class, and never raises on a mere check
    failure: each result carries its computed quantities.
    """
    from .realization import MembershipError

    matrix = arrow.to_matrix()
    if family_index(matrix) != i:
        raise MembershipError(f"arrow matrix is not in the qualitative class of family {i}")
    n = arrow.n
    arrow = _sorted_descending(arrow)
    b = arrow.b
    distinct = all(b[k] > b[k + 1] for k in range(len(b) - 1))
    p = arrow_char_poly(arrow)
    inertia = refined_inertia_exact(p)
    checks: list[LemmaCheck] = []

    def skipped(name: str) -> LemmaCheck:
        return LemmaCheck(name, "skipped", {"reason": "repeated b values"})

    # L-det: closed-form shift determinant equals the direct determinant.
    # The values are reused by the sign-table check below.
    shift_dets: dict[int, Fraction] = {}
    if distinct:
        status = "pass"
        message = None
        for j in range(1, n - 1):
            try:
                shift_dets[j] = arrow_shift_det(arrow, j)
            except InternalCheckError as exc:
                status = "fail"
                message = str(exc)
                break
        details = {"det_values": dict(shift_dets)}
        if message:
            details["error"] = message
        checks.append(LemmaCheck("L-det", status, details))
    else:
        checks.append(skipped("L-det"))

    # L-sign: the alternating sign table of det(b_j I + B).
    if distinct and len(shift_dets) == n - 2:
        top = n - 2 if i in (1, 2) else n - 3
        expected = {j: (-1) ** (j + 1) if i == 1 else (-1) ** j for j in range(1, top + 1)}
        actual = {}
        for j in range(1, top + 1):
            value = shift_dets[j]
            actual[j] = (value > 0) - (value < 0)
        ok = all(actual[j] == expected[j] for j in expected)
        checks.append(
            LemmaCheck("L-sign", "pass" if ok else "fail", {"expected": expected, "actual": actual})
        )
    else:
        checks.append(skipped("L-sign"))

    # L-excl: no -b_j is an eigenvalue.
    if distinct:
        values = {j: p.evaluate(-b[j - 1]) for j in range(1, n - 1)}
        ok = all(v != 0 for v in values.values())
        checks.append(LemmaCheck("L-excl", "pass" if ok else "fail", {"char_poly_values": values}))
    else:
        checks.append(skipped("L-excl"))

    # L-low: lower bounds on the negative count.
    if distinct:
        bound = n - 3 if i != 3 else n - 4
        ok = inertia.n_minus >= bound
        checks.append(
            LemmaCheck(
                "L-low", "pass" if ok else "fail", {"n_minus": inertia.n_minus, "bound": bound}
            )
        )
    else:
        checks.append(skipped("L-low"))

    # L-par: determinant sign, no zero eigenvalues, parity of the negative count.
    det = (-1) ** n * p.constant
    sign_ok = ((det > 0) - (det < 0)) == (-1) ** n
    parity_ok = (n - inertia.n_minus) % 2 == 0
    checks.append(
        LemmaCheck(
            "L-par",
            "pass" if (sign_ok and inertia.n_zero == 0 and parity_ok) else "fail",
            {"det": det, "n_zero": inertia.n_zero, "n_minus": inertia.n_minus},
        )
    )

    # L-delta: parity agreement between the shifted negative count and the
    # closed-half-plane count.
    if distinct:
        rows = {}
        ok = True
        for j in range(1, n - 2):
            shifted = refined_inertia_exact(p.taylor_shift(-b[j - 1]))
            delta = shifted.n_minus + shifted.n_zero + shifted.two_n_p
            rows[j] = (shifted.n_minus, delta)
            ok = ok and (shifted.n_minus - delta) % 2 == 0
        checks.append(LemmaCheck("L-delta", "pass" if ok else "fail", {"pairs": rows}))
    else:
        checks.append(skipped("L-delta"))

    # L-k: the negative count reaches n - 2.
    if distinct:
        ok = inertia.n_minus >= n - 2
        checks.append(
            LemmaCheck("L-k", "pass" if ok else "fail", {"n_minus": inertia.n_minus, "bound": n - 2})
        )
    else:
        checks.append(skipped("L-k"))

    return checks


@dataclass(frozen=True)
class LemmaSuiteReport:
    family: int
    order: int
    samples: int
    failures: tuple[tuple[int, str], ...]  # (sample index, check id)
    check_counts: tuple[tuple[str, int], ...]

    @property
    def all_passed(self) -> bool:
        return not self.failures


def run_lemma_suite(
    i: int, n: int, samples: int, cfg: RealizationConfig
) -> LemmaSuiteReport:
    """Validate the lemma checks over seeded samples with distinct b enforced.

    Samples whose arrow form has a repeated diagonal parameter are redrawn
    (rational sampling makes ties vanishingly rare, but the checks assume
    distinctness).
    """
    pattern = family_pattern(i, n)
    failures: list[tuple[int, str]] = []
    counts: Counter = Counter()
    index = 0
    attempts = 0
    attempt_cap = samples * 3 + 100
    while index < samples:
        if attempts >= attempt_cap:
            raise RuntimeError("too many resampling attempts while enforcing distinct b")
        sample = sample_realization(pattern, cfg.with_seed(_sample_seed(cfg.seed, attempts)))
        attempts += 1
        arrow, _ = to_arrow_form(sample)
        if len(set(arrow.b)) != len(arrow.b):
            continue
        for check in validate_lemmas(arrow, i):
            counts[(check.check, check.status)] += 1
            if check.failed:
                failures.append((index, check.check))
        index += 1
    summary = tuple(sorted((f"{check}:{status}", cnt) for (check, status), cnt in counts.items()))
    return LemmaSuiteReport(i, n, samples, tuple(failures), summary)
