"""Rank over a composition algebra and the guaranteed low-rank combination.

`comp_rank` is the definitional brute force: the largest size of an invertible
square submatrix, enumerated in decreasing size and lexicographic subset
order.  For division (nonsplit) algebras it agrees with the number of
right-independent columns computed by skew elimination, and the test suite
cross-checks the two on small shapes.

`low_rank_combination` makes the dependence argument constructive.  Given M
mutually distinct m x n matrices and a target d, write r = m - d + 1 and

    threshold = r           (nonsplit)
    threshold = 4 * r       (split; 4 = dimension of the algebra over k)

Whenever M >= 1 + n * threshold, the truncations to the first r rows are
linearly dependent: over a division algebra as right vectors in C^(r*n),
otherwise as base-field vectors of coefficient data.  The returned
coefficients zero out the first r rows of the combination, which therefore
has rank at most d - 1.  Elimination is deterministic (lexicographic pivots,
first free column), so the chosen witness is reproducible.
"""

import time
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .errors import BoundNotMetError, InfeasibleError, SplitnessUndecidedError
from .fields import PrimeField, Scalar
from .quaternion import NONSPLIT, SPLIT
from .matrices import CompMatrix, field_solve_homogeneous, is_invertible
from .rng import SplitMix64

DEFAULT_BUDGET_MS = 60_000


def comp_rank(Z: CompMatrix) -> int:
    """Maximum size of an invertible square submatrix (0 if every entry is a non-unit)."""
    for size in range(min(Z.m, Z.n), 0, -1):
        for rows in combinations(range(Z.m), size):
            for cols in combinations(range(Z.n), size):
                if is_invertible(Z.submatrix(rows, cols)):
                    return size
    return 0


def dependence_bound(algebra, m: int, d: int) -> int:
    """Per-column threshold: m-d+1 for a division algebra, 4*(m-d+1) when split."""
    if not 1 <= d <= m:
        raise ValueError("need 1 <= d <= m")
    verdict = algebra.is_split_decision()
    if verdict == SPLIT:
        return algebra.dim * (m - d + 1)
    if verdict == NONSPLIT:
        return m - d + 1
    raise SplitnessUndecidedError(f"splitness of {algebra!r} is undecided")


def _entry_coeffs(e):
    # both element kinds expose four base-field coordinates
    return e.coeffs if hasattr(e, "coeffs") else e.entries


def low_rank_combination(matrices, d: int):
    """Coefficients (a_1, ..., a_M), not all zero, killing the first m-d+1 rows.

    Raises BoundNotMetError when M < 1 + n * threshold, the regime where no
    combination is guaranteed.  The truncated combination is verified to be
    exactly zero before the coefficients are returned.
    """
    matrices = list(matrices)
    if not matrices:
        raise ValueError("need at least one matrix")
    algebra = matrices[0].algebra
    m, n = matrices[0].m, matrices[0].n
    if m > n:
        raise ValueError("shapes must satisfy m <= n")
    for Z in matrices:
        if Z.algebra != algebra or (Z.m, Z.n) != (m, n):
            raise ValueError("matrices must share shape and algebra")
    if len(set(matrices)) != len(matrices):
        raise ValueError("matrices must be mutually distinct")
    M = len(matrices)
    threshold = dependence_bound(algebra, m, d)
    if M < 1 + n * threshold:
        raise BoundNotMetError(f"need at least {1 + n * threshold} matrices, got {M}")
    keep = m - d + 1
    truncated = [Z.take_rows(keep) for Z in matrices]

    if algebra.is_split_decision() == SPLIT:
        spec = algebra.field
        rows = []
        for i in range(keep):
            for j in range(n):
                for c in range(4):
                    rows.append(
                        [Scalar(spec, _entry_coeffs(T.entries[i][j])[c]) for T in truncated]
                    )
        sol = field_solve_homogeneous(rows, M, spec)
        if sol is None:
            raise AssertionError("dependence guaranteed by dimension count was not found")
        first = next(c for c in sol if not c.is_zero())
        inv = first.inverse()
        coeffs = tuple(algebra.from_base((c * inv).raw) for c in sol)
    else:
        stacked = CompMatrix(
            algebra,
            [
                [T.entries[i][j] for T in truncated]
                for i in range(keep)
                for j in range(n)
            ],
        )
        from .matrices import skew_solve

        coeffs = skew_solve(stacked)
        if coeffs is None:
            raise AssertionError("dependence guaranteed by dimension count was not found")

    combo = combine(truncated, coeffs)
    if not combo.is_zero():
        raise AssertionError("combination failed to kill the truncated rows")
    return coeffs


def combine(matrices, coeffs) -> CompMatrix:
    """Sum of matrices[i] . coeffs[i] under the right scalar action."""
    acc = matrices[0].scale_right(coeffs[0])
    for Z, a in zip(matrices[1:], coeffs[1:]):
        acc = acc + Z.scale_right(a)
    return acc


@dataclass
class SpanReport:
    params: dict
    trials: int = 0
    successes: int = 0
    counterexample: dict | None = None

    def to_json(self) -> dict:
        return {
            "params": self.params,
            "trials": self.trials,
            "successes": self.successes,
            "counterexample": self.counterexample,
        }


def _random_element(algebra, rng: SplitMix64, entry_bound: int):
    f = algebra.field
    if isinstance(f, PrimeField):
        raws = [rng.randint(0, f.p - 1) for _ in range(4)]
    else:
        raws = [rng.randint(-entry_bound, entry_bound) for _ in range(4)]
    return algebra.element(raws)


def sample_distinct_matrices(algebra, m, n, count, rng: SplitMix64, entry_bound=3):
    """Rejection-sampled list of pairwise distinct matrices (seeded, deterministic)."""
    seen = set()
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 1000 * count:
            raise InfeasibleError("matrix space too small to sample distinct members")
        Z = CompMatrix(
            algebra,
            [[_random_element(algebra, rng, entry_bound) for _ in range(n)] for _ in range(m)],
        )
        if Z not in seen:
            seen.add(Z)
            out.append(Z)
    return out


def _estimate_ops(m, n, d, M, trials) -> int:
    keep = m - d + 1
    solve = (keep * n * 4) ** 2 * M
    rank_cost = sum(
        (2 * s) ** 3 * comb(m, s) * comb(n, s) for s in range(1, min(m, n) + 1)
    )
    return trials * (solve + rank_cost + M * m * n * 16)


def verify_span_bound(
    algebra,
    m: int,
    n: int,
    d: int,
    trials: int,
    seed: int,
    entry_bound: int = 3,
    budget_ms: int = DEFAULT_BUDGET_MS,
) -> SpanReport:
    """Sample families one past the spanning threshold and confirm each yields
    a verified combination of rank at most d-1.

    A counterexample would falsify the implementation, not the underlying
    inequality; the first one found is recorded verbatim in the report.
    """
    threshold = dependence_bound(algebra, m, d)
    M = 1 + n * threshold
    params = {
        "algebra": repr(algebra),
        "m": m,
        "n": n,
        "d": d,
        "family_size": M,
        "seed": seed,
        "entry_bound": entry_bound,
    }
    est = _estimate_ops(m, n, d, M, trials)
    if est > budget_ms * 20_000:
        raise InfeasibleError(f"estimated work {est} exceeds the budget of {budget_ms} ms")
    report = SpanReport(params=params)
    rng = SplitMix64(seed)
    started = time.monotonic()
    for trial in range(trials):
        if (time.monotonic() - started) * 1000 > budget_ms:
            raise InfeasibleError("trial budget exhausted")
        trial_rng = rng.fork()
        matrices = sample_distinct_matrices(algebra, m, n, M, trial_rng, entry_bound)
        ok = True
        failure = None
        try:
            coeffs = low_rank_combination(matrices, d)
            full = combine(matrices, coeffs)
            keep = m - d + 1
            if not full.take_rows(keep).is_zero():
                ok, failure = False, "truncated combination is nonzero"
            elif all(c.is_zero() for c in coeffs):
                ok, failure = False, "coefficients all zero"
            elif comp_rank(full) > d - 1:
                ok, failure = False, f"rank {comp_rank(full)} exceeds {d - 1}"
        except AssertionError as exc:
            ok, failure = False, str(exc)
        report.trials += 1
        if ok:
            report.successes += 1
        elif report.counterexample is None:
            from .serialize import matrix_to_json

            report.counterexample = {
                "trial": trial,
                "reason": failure,
                "matrices": [matrix_to_json(Z) for Z in matrices],
            }
    return report
