"""Holomorphic and topological fixed-point systems for an order-n
automorphism acting on a K3 surface, and the bookkeeping for eigenspace
dimensions of the induced action on second cohomology.

The holomorphic side equates 1 + zeta^(n-1) with the weighted count

    sum_i  m_i / ((1 - zeta^(1+i)) (1 - zeta^(n-i)))  +  alpha (1+zeta)/(1-zeta)^2

over canonical isolated type indices i, where alpha is the sum of 1 - genus
over pointwise-fixed curves.  Expanding in the power basis of Q(zeta_n)
gives phi(n) exact rational equations in the m_i and alpha.

The topological side gives, per power j, the Euler characteristic of the
fixed locus of the j-th power as 2 plus a Ramanujan-sum pairing with the
eigenspace dimensions d_d over the divisors d of n.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .cyclotomic import (
    CyclotomicNumber,
    divisors,
    ramanujan_sum,
    totient,
    zeta,
)
from .localtypes import max_index
from .ratlinalg import AffineSolver, same_affine_solutions


class EnumerationError(RuntimeError):
    """No effective bound is derivable from the constraints."""


# ---------------------------------------------------------------------------
# the holomorphic system


@dataclass(frozen=True)
class RationalLinearSystem:
    """Exact rational equations `matrix . x = rhs` in the named unknowns."""

    labels: tuple[str, ...]
    matrix: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]

    def __post_init__(self):
        assert len(set(self.labels)) == len(self.labels)
        for row in self.matrix:
            assert len(row) == len(self.labels)

    def is_row_equivalent(self, other: "RationalLinearSystem") -> bool:
        """Same affine solution set (labels must agree)."""
        if self.labels != other.labels:
            return False
        return same_affine_solutions(
            ([list(r) for r in self.matrix], list(self.rhs)),
            ([list(r) for r in other.matrix], list(other.rhs)),
        )


def point_weight(n: int, i: int) -> CyclotomicNumber:
    """1 / ((1 - zeta^(1+i)) (1 - zeta^(n-i))) in Q(zeta_n)."""
    one = CyclotomicNumber.one(n)
    den = (one - zeta(n, 1 + i)) * (one - zeta(n, n - i))
    return den.inverse()


def curve_weight(n: int) -> CyclotomicNumber:
    """(1 + zeta) / (1 - zeta)^2 in Q(zeta_n)."""
    one = CyclotomicNumber.one(n)
    z = zeta(n, 1)
    return (one + z) / ((one - z) * (one - z))


def lefschetz_number(n: int) -> CyclotomicNumber:
    """1 + zeta^(n-1), the alternating trace on coherent cohomology."""
    return CyclotomicNumber.one(n) + zeta(n, n - 1)


def build_holomorphic_system(n: int) -> RationalLinearSystem:
    """Expand the holomorphic fixed-point equation of an order-n action into
    phi(n) rational equations in m_1 .. m_h, alpha (h = floor((n-1)/2)).

    Identified index pairs i, n-1-i share one denominator, so each canonical
    index contributes a single column.
    """
    if n < 3:
        raise ValueError("order must be at least 3")
    h = max_index(n)
    labels = tuple(f"m{i}" for i in range(1, h + 1)) + ("alpha",)
    columns = [point_weight(n, i) for i in range(1, h + 1)]
    columns.append(curve_weight(n))
    rhs_value = lefschetz_number(n)
    phi = totient(n)
    matrix = tuple(
        tuple(col.coeffs[row] for col in columns) for row in range(phi)
    )
    rhs = tuple(rhs_value.coeffs[row] for row in range(phi))
    return RationalLinearSystem(labels, matrix, rhs)


@dataclass(frozen=True)
class TypeCountVector:
    """Counts of isolated fixed points per canonical type, plus alpha."""

    order: int
    counts: tuple[int, ...]
    alpha: int

    def __post_init__(self):
        assert len(self.counts) == max_index(self.order)
        assert all(c >= 0 for c in self.counts)

    @property
    def total_points(self) -> int:
        return sum(self.counts)

    @property
    def euler(self) -> int:
        """Euler characteristic of the fixed locus: points count 1, a fixed
        genus-g curve counts 2 - 2g, so curves contribute 2 alpha."""
        return self.total_points + 2 * self.alpha

    def count(self, i: int) -> int:
        return self.counts[i - 1]

    def residual(self) -> CyclotomicNumber:
        """Exact residual of the holomorphic equation; zero iff satisfied."""
        n = self.order
        total = CyclotomicNumber.zero(n)
        for i, m in enumerate(self.counts, start=1):
            if m:
                total = total + point_weight(n, i) * m
        total = total + curve_weight(n) * self.alpha
        return total - lefschetz_number(n)

    def satisfies_holomorphic_system(self) -> bool:
        return self.residual().is_zero()


@dataclass(frozen=True)
class EnumerationConstraints:
    """Bounds for enumerating type-count vectors.

    group_bounds:  (indices, bound) pairs meaning sum of m_i <= bound; these
                   come from aggregation against a lower-order count vector.
    exact_sums:    (indices, value) pairs meaning sum of m_i == value; these
                   fix the on-curve budgets of a geometric scenario.
    alpha:         the scenario's fixed curve term.
    """

    alpha: int
    group_bounds: tuple[tuple[tuple[int, ...], int], ...] = ()
    exact_sums: tuple[tuple[tuple[int, ...], int], ...] = ()


def enumerate_type_counts(
    n: int, constraints: EnumerationConstraints
) -> list[TypeCountVector]:
    """All solutions of the holomorphic system under the given constraints,
    in lexicographic order of the count vector.

    Raises EnumerationError when some unknown is not bounded by any group or
    exact sum (the search would not terminate meaningfully).
    """
    system = build_holomorphic_system(n)
    h = max_index(n)
    # substitute alpha: move its column to the right-hand side
    alpha_col = len(system.labels) - 1
    matrix = [list(row[:alpha_col]) for row in system.matrix]
    rhs = [
        system.rhs[r] - system.matrix[r][alpha_col] * constraints.alpha
        for r in range(len(system.rhs))
    ]
    solver = AffineSolver(matrix, rhs)
    if solver.inconsistent:
        return []

    upper = [None] * (h + 1)  # 1-based; upper[i] for variable m_i
    for indices, bound in list(constraints.group_bounds) + list(constraints.exact_sums):
        for i in indices:
            if upper[i] is None or bound < upper[i]:
                upper[i] = bound

    free_cols = solver.free_cols
    for c in free_cols:
        if upper[c + 1] is None:
            raise EnumerationError(
                f"m{c + 1} is a free unknown with no bound; enumeration "
                "would not terminate"
            )

    results = []

    def admissible(values: list[Fraction]) -> bool:
        for v in values:
            if v.denominator != 1 or v < 0:
                return False
        counts = [int(v) for v in values]
        for indices, bound in constraints.group_bounds:
            if sum(counts[i - 1] for i in indices) > bound:
                return False
        for indices, value in constraints.exact_sums:
            if sum(counts[i - 1] for i in indices) != value:
                return False
        return True

    def walk(pos: int, assignment: dict[int, Fraction]):
        if pos == len(free_cols):
            values = solver.solve_from_free(assignment)
            if values is not None and admissible(values):
                vec = TypeCountVector(
                    n, tuple(int(v) for v in values), constraints.alpha
                )
                assert vec.satisfies_holomorphic_system()
                results.append(vec)
            return
        col = free_cols[pos]
        for v in range(upper[col + 1] + 1):
            assignment[col] = Fraction(v)
            walk(pos + 1, assignment)
        del assignment[col]

    walk(0, {})
    results.sort(key=lambda vec: vec.counts)
    return results


# ---------------------------------------------------------------------------
# eigenspace dimensions on second cohomology


@dataclass(frozen=True)
class EigenspaceDims:
    """Complex eigenspace dimensions d_d on H^2, one per divisor d of n,
    for a fixed primitive d-th root of unity.  Total weighted dimension is
    always 22: sum of phi(d) * d_d."""

    order: int
    dims: tuple[int, ...]  # aligned with divisors(order)

    def __post_init__(self):
        assert len(self.dims) == len(divisors(self.order))
        assert all(d >= 0 for d in self.dims)
        assert self.weighted_total() == 22

    def weighted_total(self) -> int:
        return sum(
            totient(d) * v for d, v in zip(divisors(self.order), self.dims)
        )

    def dim(self, d: int) -> int:
        return self.dims[divisors(self.order).index(d)]

    def as_dict(self) -> dict[int, int]:
        return dict(zip(divisors(self.order), self.dims))

    def descending(self) -> tuple[int, ...]:
        """Dims listed from d_n down to d_1, the order used in print."""
        return tuple(reversed(self.dims))

    @classmethod
    def from_descending(cls, order: int, values) -> "EigenspaceDims":
        return cls(order, tuple(reversed(tuple(values))))


def chi_from_dims(dims: EigenspaceDims, j: int) -> int:
    """Euler characteristic of the fixed locus of the j-th power:
    2 + sum over d | n of d_d * (Ramanujan sum of d at j)."""
    return 2 + sum(
        v * ramanujan_sum(d, j) for d, v in zip(divisors(dims.order), dims.dims)
    )


def euler_profile(dims: EigenspaceDims) -> dict[int, int]:
    """chi of the fixed locus of the power of order k, per divisor k of n."""
    n = dims.order
    return {k: chi_from_dims(dims, n // k) for k in divisors(n)}


def invariant_rank(dims: EigenspaceDims, k: int) -> int:
    """Rank of the invariant lattice of the k-th power: the weighted count
    of eigenvalues whose k-th power is 1."""
    g = gcd(dims.order, k)
    return sum(
        totient(d) * dims.dim(d) for d in divisors(dims.order) if g % d == 0
    )


def power_pushforward(dims: EigenspaceDims, k: int) -> EigenspaceDims:
    """Eigenspace dimensions of the k-th power, of order n / gcd(n, k).

    Galois-orbit counting: the phi(d) * d_d eigenvalues of order d power to
    primitive e-th roots with e = d / gcd(d, k) and distribute evenly, so
    each of the phi(e) primitive e-th roots receives d_d * phi(d) / phi(e).
    """
    n = dims.order
    m = n // gcd(n, k)
    out = {e: 0 for e in divisors(m)}
    for d, v in zip(divisors(n), dims.dims):
        e = d // gcd(d, k)
        out[e] += v * (totient(d) // totient(e))
    return EigenspaceDims(m, tuple(out[e] for e in divisors(m)))


@dataclass(frozen=True)
class DimConstraints:
    """Constraints for enumerate_dims.

    chi_exact: power j -> required chi value
    chi_in:    power j -> admissible chi set
    rank_exact: (k, rank) pairs, invariant_rank(dims, k) == rank
    min_dims:  divisor -> lower bound
    """

    chi_exact: tuple[tuple[int, int], ...] = ()
    chi_in: tuple[tuple[int, tuple[int, ...]], ...] = ()
    rank_exact: tuple[tuple[int, int], ...] = ()
    min_dims: tuple[tuple[int, int], ...] = ()


def enumerate_dims(
    n: int, constraints: DimConstraints, mode: str = "purely"
) -> list[EigenspaceDims]:
    """All eigenspace-dimension vectors with weighted total 22 meeting the
    constraints.  Mode "purely" forces d_n >= 1; every mode forces d_1 >= 1.
    Returned in lexicographic order of the descending tuple."""
    divs = divisors(n)
    mins = {d: 0 for d in divs}
    mins[1] = 1
    if mode == "purely":
        mins[n] = max(mins[n], 1)
    elif mode != "not-purely":
        raise ValueError(f"unknown mode {mode!r}")
    for d, lo in constraints.min_dims:
        mins[d] = max(mins[d], lo)

    order_desc = sorted(divs, key=lambda d: (-totient(d), -d))
    results = []

    def place(pos: int, budget: int, chosen: dict[int, int]):
        if pos == len(order_desc):
            if budget != 0:
                return
            dims = EigenspaceDims(
                n, tuple(chosen[d] for d in divs)
            )
            for j, value in constraints.chi_exact:
                if chi_from_dims(dims, j) != value:
                    return
            for j, allowed in constraints.chi_in:
                if chi_from_dims(dims, j) not in allowed:
                    return
            for k, rank in constraints.rank_exact:
                if invariant_rank(dims, k) != rank:
                    return
            results.append(dims)
            return
        d = order_desc[pos]
        w = totient(d)
        lo = mins[d]
        if pos == len(order_desc) - 1 and w == 1:
            v = budget
            if v >= lo:
                chosen[d] = v
                place(pos + 1, 0, chosen)
                del chosen[d]
            return
        for v in range(lo, budget // w + 1):
            chosen[d] = v
            place(pos + 1, budget - w * v, chosen)
            del chosen[d]

    place(0, 22, {})
    results.sort(key=lambda dims: dims.descending())
    return results


def ns_rank(dims: EigenspaceDims) -> tuple[int, tuple[int, ...]]:
    """Neron-Severi rank 22 - phi(n) * d_n under the generality assumption,
    together with the powers k | n whose invariant lattice attains it."""
    n = dims.order
    rank = 22 - totient(n) * dims.dim(n)
    attained = tuple(
        k for k in divisors(n) if invariant_rank(dims, k) == rank
    )
    return rank, attained
