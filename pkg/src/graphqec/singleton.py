"""Off-diagonal subdeterminant machinery for singleton-bound-saturating codes.

For a symmetric 2m x 2m integer matrix, every unordered partition of the
vertices into two m-sets yields an off-diagonal m x m block; the code built
on the matrix strongly detects the matching configurations over Z_d exactly
when no block determinant vanishes mod d.  This module computes those
determinants exactly, derives the excluded ("bad") primes, searches for
weight assignments on a sparsity skeleton, and runs the small-graph census
for the all-unimodular predicate.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .zmodlinalg import det_exact


def prime_factors(n: int) -> frozenset[int]:
    """Prime divisors of |n| for nonzero n; 0 and +-1 yield the empty set."""
    n = abs(int(n))
    out = set()
    if n <= 1:
        return frozenset()
    p = 2
    while p * p <= n:
        while n % p == 0:
            out.add(p)
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.add(n)
    return frozenset(out)


def is_prime(d: int) -> bool:
    if d < 2:
        return False
    p = 2
    while p * p <= d:
        if d % p == 0:
            return False
        p += 1 if p == 2 else 2
    return True


@dataclass(frozen=True)
class DeterminantReport:
    """Exact determinants of all off-diagonal m x m blocks of a 2m x 2m
    symmetric matrix, one per unordered vertex partition (the block and its
    transpose share a determinant), plus the derived bad-prime set.  A zero
    determinant makes every prime bad; that is flagged separately."""

    m: int
    partitions: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    dets: tuple[int, ...]
    det_set: tuple[int, ...]
    bad_primes: frozenset[int]
    has_zero_det: bool

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "partitions": [
                {"I": list(block), "det": det}
                for (block, _), det in zip(self.partitions, self.dets)
            ],
            "det_set": list(self.det_set),
            "bad_primes": "all" if self.has_zero_det else sorted(self.bad_primes),
        }


def _validate_gamma(gamma) -> tuple[tuple[tuple[int, ...], ...], int]:
    rows = tuple(tuple(int(x) for x in row) for row in gamma)
    size = len(rows)
    if size == 0 or size % 2:
        raise ValueError(f"matrix size must be even and positive, got {size}")
    if any(len(row) != size for row in rows):
        raise ValueError("matrix must be square")
    for i in range(size):
        if rows[i][i] != 0:
            raise ValueError(f"nonzero diagonal entry at {i}")
        for j in range(i + 1, size):
            if rows[i][j] != rows[j][i]:
                raise ValueError(f"matrix not symmetric at ({i},{j})")
    return rows, size // 2


def _partitions(size: int):
    """Unordered half-half partitions, lexicographic on the block holding 0."""
    m = size // 2
    for rest in itertools.combinations(range(1, size), m - 1):
        block = (0,) + rest
        in_block = set(block)
        yield block, tuple(v for v in range(size) if v not in in_block)


def _block_det(rows, block, comp) -> int:
    return det_exact([[rows[i][j] for j in comp] for i in block])


def _report(rows, m, partitions) -> DeterminantReport:
    dets = tuple(_block_det(rows, block, comp) for block, comp in partitions)
    bad: set[int] = set()
    for det in dets:
        bad |= prime_factors(det)
    return DeterminantReport(
        m=m,
        partitions=tuple(partitions),
        dets=dets,
        det_set=tuple(sorted(set(dets))),
        bad_primes=frozenset(bad),
        has_zero_det=any(det == 0 for det in dets),
    )


def offdiag_subdets(gamma) -> DeterminantReport:
    """Exact determinant for every unordered half-half partition."""
    rows, m = _validate_gamma(gamma)
    return _report(rows, m, list(_partitions(2 * m)))


def is_strongly_ec(gamma, d: int) -> bool:
    """True iff no off-diagonal block determinant vanishes modulo the prime d."""
    if not is_prime(d):
        raise ValueError(f"{d} is not prime")
    report = offdiag_subdets(gamma)
    return not report.has_zero_det and d not in report.bad_primes


def restricted_subdets(gamma, fixed_inputs) -> DeterminantReport:
    """Report restricted to partitions keeping all fixed inputs on one side.

    With the inputs pinned to one block, only partitions whose block contains
    them all can arise as an inputs-plus-errors side, so only those
    determinants constrain the code.
    """
    rows, m = _validate_gamma(gamma)
    fixed = tuple(sorted({int(v) for v in fixed_inputs}))
    if len(fixed) > m:
        raise ValueError(f"at most {m} fixed inputs allowed, got {fixed}")
    if any(not 0 <= v < 2 * m for v in fixed):
        raise ValueError(f"fixed inputs out of range: {fixed}")
    fixed_set = set(fixed)
    relevant = [
        (block, comp)
        for block, comp in _partitions(2 * m)
        if fixed_set <= set(block) or fixed_set <= set(comp)
    ]
    return _report(rows, m, relevant)


def restricted_bad_primes(gamma, fixed_inputs) -> frozenset[int]:
    """Bad primes over the partitions relevant for the given input set."""
    report = restricted_subdets(gamma, fixed_inputs)
    if report.has_zero_det:
        raise ValueError("a relevant block determinant is zero: every prime is bad")
    return report.bad_primes


@dataclass(frozen=True)
class Skeleton:
    """Symmetric 0/1 support pattern with zero diagonal on 2m vertices."""

    support: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in row) for row in self.support)
        size = len(rows)
        if size == 0 or size % 2:
            raise ValueError(f"skeleton size must be even and positive, got {size}")
        if any(len(row) != size for row in rows):
            raise ValueError("skeleton must be square")
        for i in range(size):
            if rows[i][i] != 0:
                raise ValueError(f"skeleton has a nonzero diagonal entry at {i}")
            for j in range(size):
                if rows[i][j] not in (0, 1):
                    raise ValueError("skeleton entries must be 0 or 1")
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"skeleton not symmetric at ({i},{j})")
        object.__setattr__(self, "support", rows)

    @property
    def size(self) -> int:
        return len(self.support)

    @property
    def m(self) -> int:
        return self.size // 2

    @property
    def free_positions(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (i, j)
            for i in range(self.size)
            for j in range(i + 1, self.size)
            if self.support[i][j]
        )

    def min_row_support(self) -> int:
        return min(sum(row) for row in self.support)

    @classmethod
    def from_matrix(cls, gamma) -> "Skeleton":
        return cls(
            tuple(
                tuple(1 if x else 0 for x in row) for row in gamma
            )
        )


@dataclass(frozen=True)
class WeightSearchResult:
    matrix: tuple[tuple[int, ...], ...] | None
    attempts: int
    seed: int
    budget: int

    @property
    def success(self) -> bool:
        return self.matrix is not None


def search_weights(
    skeleton: Skeleton, weight_bound: int, seed: int, budget: int
) -> WeightSearchResult:
    """Randomized search for nonzero weights making every block determinant
    nonzero.

    Each attempt draws weights uniformly from [-bound, bound] without 0 on
    the skeleton's free positions (per-attempt RNG derived from the master
    seed, so runs are reproducible) and verifies determinants with early
    abort.  A skeleton row with fewer than m admissible entries forces a zero
    determinant, so that case fails immediately without spending budget.
    """
    if weight_bound < 1:
        raise ValueError(f"weight bound must be >= 1, got {weight_bound}")
    if budget < 0:
        raise ValueError(f"budget must be >= 0, got {budget}")
    if skeleton.min_row_support() < skeleton.m:
        return WeightSearchResult(matrix=None, attempts=0, seed=seed, budget=budget)
    size = skeleton.size
    positions = skeleton.free_positions
    parts = list(_partitions(size))
    choices = [w for w in range(-weight_bound, weight_bound + 1) if w != 0]
    for attempt in range(budget):
        rng = random.Random(f"{seed}:{attempt}")
        gamma = [[0] * size for _ in range(size)]
        for i, j in positions:
            w = rng.choice(choices)
            gamma[i][j] = w
            gamma[j][i] = w
        if all(_block_det(gamma, block, comp) != 0 for block, comp in parts):
            return WeightSearchResult(
                matrix=tuple(tuple(row) for row in gamma),
                attempts=attempt + 1,
                seed=seed,
                budget=budget,
            )
    return WeightSearchResult(matrix=None, attempts=budget, seed=seed, budget=budget)


def adjacency_bits(gamma) -> str:
    """Upper-triangle 0/1 string, row-major over pairs (i, j), i < j."""
    n = len(gamma)
    return "".join(
        "1" if gamma[i][j] else "0"
        for i in range(n)
        for j in range(i + 1, n)
    )


def _gamma_from_bits(n: int, bits: str) -> tuple[tuple[int, ...], ...]:
    gamma = [[0] * n for _ in range(n)]
    it = iter(bits)
    for i in range(n):
        for j in range(i + 1, n):
            if next(it) == "1":
                gamma[i][j] = 1
                gamma[j][i] = 1
    return tuple(tuple(row) for row in gamma)


def canonical_bits(gamma) -> str:
    """Minimum adjacency bit-string over all vertex permutations."""
    n = len(gamma)
    pair_list = [(i, j) for i in range(n) for j in range(i + 1, n)]
    best = None
    for perm in itertools.permutations(range(n)):
        bits = "".join(
            "1" if gamma[perm[i]][perm[j]] else "0" for i, j in pair_list
        )
        if best is None or bits < best:
            best = bits
    return best or ""


def _small_det(mat) -> int:
    k = len(mat)
    if k == 1:
        return mat[0][0]
    if k == 2:
        return mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    if k == 3:
        a, b, c = mat[0]
        d, e, f = mat[1]
        g, h, i = mat[2]
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    return det_exact(mat)


def unimodular_offdiag_predicate(gamma) -> bool:
    """Every off-diagonal half-block determinant is +-1, which makes the
    block invertible modulo every d >= 2, i.e. valid for every group."""
    n = len(gamma)
    for block, comp in _partitions(n):
        det = _small_det([[gamma[i][j] for j in comp] for i in block])
        if det not in (-1, 1):
            return False
    return True


def graph_census(n: int, predicate=None) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Enumerate all simple graphs on n vertices, keep those passing the
    predicate (default: all off-diagonal block determinants +-1) and return
    one canonical adjacency matrix per isomorphism class, sorted by
    bit-string.

    Brute force over 2^C(n,2) graphs with n! canonicalization: instant for
    n <= 6, hours for n = 8.
    """
    if not 2 <= n <= 8:
        raise ValueError(f"census supports 2 <= n <= 8, got {n}")
    if n % 2:
        raise ValueError(f"census needs an even vertex count, got {n}")
    m = n // 2
    pair_list = [(i, j) for i in range(n) for j in range(i + 1, n)]
    nbits = len(pair_list)
    use_default = predicate is None
    pred = unimodular_offdiag_predicate if use_default else predicate
    vertex_masks = [
        sum(1 << b for b, (u, v) in enumerate(pair_list) if vtx in (u, v))
        for vtx in range(n)
    ]
    survivors = []
    for code in range(1 << nbits):
        if use_default and any(
            bin(code & mask).count("1") < m for mask in vertex_masks
        ):
            # a vertex joined to fewer than m others puts a zero row in some block
            continue
        bits = format(code, f"0{nbits}b")[::-1]
        gamma = _gamma_from_bits(n, bits)
        if pred(gamma):
            survivors.append(gamma)
    classes: dict[str, tuple[tuple[int, ...], ...]] = {}
    for gamma in survivors:
        canon = canonical_bits(gamma)
        if canon not in classes:
            classes[canon] = _gamma_from_bits(n, canon)
    return tuple(classes[key] for key in sorted(classes))
