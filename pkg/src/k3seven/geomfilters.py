"""Geometric pruning rules: Riemann-Hurwitz fixed-point counts, Homma's
genus bound, the classification table for non-symplectic involutions
(2-elementary invariants (r, a, delta)), the order-3 fixed-locus relations,
curve-action scenarios, and the type-distribution feasibility checks.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from importlib import resources

from .localtypes import max_index


class TableRangeError(ValueError):
    """Queried invariant falls outside the shipped classification table."""


# ---------------------------------------------------------------------------
# fixed points of a finite-order automorphism on a curve


def rh_fixed_point_counts(q: int, g: int) -> tuple[int, ...]:
    """All fixed-point counts f >= 0 allowed by Riemann-Hurwitz for a prime
    order-q automorphism of a genus-g curve:
    2g - 2 = q (2g' - 2) + f (q - 1) for some integer quotient genus g' >= 0.

    >>> rh_fixed_point_counts(2, 1)
    (0, 4)
    >>> rh_fixed_point_counts(7, 7)
    (2,)
    """
    counts = set()
    for g_quot in range(g + 2):
        rest = (2 * g - 2) - q * (2 * g_quot - 2)
        if rest < 0:
            continue
        if rest % (q - 1) == 0:
            counts.add(rest // (q - 1))
    return tuple(sorted(counts))


def curve_fixed_point_counts(q: int, g: int) -> tuple[int, ...]:
    """Fixed-point counts of a faithful order-q automorphism of a genus-g
    curve, for the orders arising as residual actions here.

    Genus 0: any automorphism of the line has exactly two fixed points.
    Genus 1: translations are fixed-point free; an automorphism with a fixed
    point is linear, giving 4, 3, 2, 1 fixed points for q = 2, 3, 4, 6 and
    none for other q.  Higher genus: Riemann-Hurwitz with intermediate
    stabilizers (only prime q occurs in practice).
    """
    if g == 0:
        return (2,)
    if g == 1:
        linear = {2: 4, 3: 3, 4: 2, 6: 1}
        return (0, linear[q]) if q in linear else (0,)
    counts = set()
    divs = [d for d in range(2, q + 1) if q % d == 0]
    # orbits with stabilizer of order s contribute (q/s)(s-1) to ramification
    max_terms = (2 * g - 2 + 2 * q) // (q - 1) + 1
    contribs = [(q // s) * (s - 1) for s in divs]

    def walk(idx: int, total: int, fixed: int):
        if total > 2 * g - 2 + 2 * q:
            return
        if idx == len(divs):
            rest = (2 * g - 2) - total
            for g_quot in range(g + 2):
                if rest == q * (2 * g_quot - 2):
                    counts.add(fixed)
            return
        s = divs[idx]
        c = contribs[idx]
        for b in range(max_terms + 1):
            walk(idx + 1, total + b * c, fixed + (b if s == q else 0))

    walk(0, 0, 0)
    return tuple(sorted(counts))


def homma_admissible(q: int, g: int) -> bool:
    """Whether a genus-g curve can admit an automorphism of prime order q.

    For q > g >= 2 the order of a prime automorphism is g + 1 or 2g + 1;
    low genus and q <= g impose nothing here.

    >>> homma_admissible(7, 3), homma_admissible(7, 4), homma_admissible(7, 2)
    (True, False, False)
    """
    return q <= g or g <= 1 or q == g + 1 or q == 2 * g + 1


# ---------------------------------------------------------------------------
# non-symplectic involutions: 2-elementary invariants (r, a, delta)

_EMPTY_LOCUS = (10, 10, 0)
_TWO_ELLIPTIC = (10, 8, 0)


def generate_nikulin_triples() -> list[tuple[int, int, int]]:
    """The classification table of invariants (r, a, delta) of hyperbolic
    2-elementary lattices embedding as the invariant lattice of an
    involution of the K3 lattice.

    Existence conditions: 1 <= r <= 20, 0 <= a <= min(r, 22 - r),
    a = r mod 2, and with the signature sigma = 2 - r:
      a = 0 requires sigma = 0 mod 8 (delta = 0 forced);
      a = 1 requires sigma = +-1 mod 8 (delta = 1 forced);
      delta = 0 requires sigma = 0 mod 4;
      a = 2 with sigma = 4 mod 8 forces delta = 0;
      a = r with sigma != 0 mod 8 forces delta = 1, and symmetrically for
      the rank-(22-r) complement.
    """
    triples = []
    for r in range(1, 21):
        sigma = 2 - r
        for a in range(0, min(r, 22 - r) + 1):
            if (a - r) % 2 != 0:
                continue
            if a == 0:
                if sigma % 8 == 0:
                    triples.append((r, a, 0))
                continue
            if a == 1:
                if sigma % 8 in (1, 7):
                    triples.append((r, a, 1))
                continue
            deltas = {1}
            if sigma % 4 == 0:
                deltas.add(0)
                if a == 2 and sigma % 8 == 4:
                    deltas = {0}
                if a == r and sigma % 8 != 0:
                    deltas.discard(0)
                if a == 22 - r and (r - 18) % 8 != 0:
                    deltas.discard(0)
            if a == 2 and sigma % 8 == 4:
                deltas = {0}
            if not deltas:
                deltas = {1}
            for delta in sorted(deltas):
                triples.append((r, a, delta))
    return triples


def _load_triples() -> list[tuple[int, int, int]]:
    ref = resources.files("k3seven.data").joinpath("nikulin_triples.json")
    with ref.open("r", encoding="utf-8") as fh:
        data = json.load(fh)
    return [tuple(t) for t in data["triples"]]


_TRIPLES: list[tuple[int, int, int]] | None = None


def nikulin_triples() -> list[tuple[int, int, int]]:
    global _TRIPLES
    if _TRIPLES is None:
        _TRIPLES = _load_triples()
    return _TRIPLES


@dataclass(frozen=True)
class InvolutionInvariants:
    """Fixed locus shape of a non-symplectic involution.

    Generic shape: one genus-g2 curve plus k2 rational curves, so that
    chi = 2 - 2 g2 + 2 k2.  `special` marks the two exceptional classes.
    """

    g2: int | None
    k2: int | None
    special: str | None = None  # "empty" | "two-elliptic"

    @property
    def chi(self) -> int:
        if self.special == "empty":
            return 0
        if self.special == "two-elliptic":
            return 0
        return 2 - 2 * self.g2 + 2 * self.k2

    def curve_genera(self) -> tuple[int, ...]:
        if self.special == "empty":
            return ()
        if self.special == "two-elliptic":
            return (1, 1)
        return (self.g2,) + (0,) * self.k2

    def __repr__(self):
        if self.special:
            return f"Inv[{self.special}]"
        return f"Inv({self.g2},{self.k2})"


def involution_candidates(r: int) -> list[InvolutionInvariants]:
    """Possible involution fixed loci with invariant-lattice rank r, from
    the shipped table: generic pairs g2 = (22-r-a)/2, k2 = (r-a)/2 plus the
    two exceptional markers at (10,10,0) and (10,8,0)."""
    if not 1 <= r <= 20:
        raise TableRangeError(f"no involution invariant lattice of rank {r}")
    out = []
    seen = set()
    for (tr, ta, delta) in nikulin_triples():
        if tr != r:
            continue
        if (tr, ta, delta) == _EMPTY_LOCUS:
            out.append(InvolutionInvariants(None, None, "empty"))
            continue
        if (tr, ta, delta) == _TWO_ELLIPTIC:
            out.append(InvolutionInvariants(None, None, "two-elliptic"))
            continue
        g2 = (22 - r - ta) // 2
        k2 = (r - ta) // 2
        if (g2, k2) not in seen:
            seen.add((g2, k2))
            out.append(InvolutionInvariants(g2, k2))
    out.sort(key=lambda inv: (inv.special is not None, inv.g2 or 0, inv.k2 or 0))
    return out


# ---------------------------------------------------------------------------
# order-3 fixed loci


@dataclass(frozen=True)
class Order3Invariants:
    """Fixed locus of a non-symplectic order-3 automorphism: N3 isolated
    points plus (unless curve_free) a genus-g3 curve and k3 rational curves,
    subject to 1 - g3 + k3 = N3 - 3 and chi = 3 N3 - 6."""

    g3: int | None
    k3: int | None
    n3: int

    @property
    def curve_free(self) -> bool:
        return self.g3 is None

    @property
    def chi(self) -> int:
        return 3 * self.n3 - 6

    def curve_genera(self) -> tuple[int, ...]:
        if self.curve_free:
            return ()
        return (self.g3,) + (0,) * self.k3

    def __repr__(self):
        if self.curve_free:
            return f"Ord3(-,-,{self.n3})"
        return f"Ord3({self.g3},{self.k3},{self.n3})"


def order3_candidates(chi3: int) -> list[Order3Invariants]:
    """Order-3 fixed loci with Euler characteristic chi3, restricted to the
    curves that can also carry an order-7 action.

    chi3 = 3 N3 - 6 pins N3; the curve-free shape forces N3 = 3.  The main
    curve genus is capped by the 3-elementary lattice structure
    (a = 10 - N3 - 2 g3 >= 0), and Homma's bound with q = 7 removes
    g3 in {2, 4, 5}.
    """
    if (chi3 + 6) % 3 != 0:
        return []
    n3 = (chi3 + 6) // 3
    if n3 < 0:
        return []
    out = []
    if n3 == 3:
        out.append(Order3Invariants(None, None, 3))
    for g3 in range(0, (10 - n3) // 2 + 1 if n3 <= 10 else 0):
        k3 = g3 + n3 - 4
        if k3 < 0:
            continue
        if not homma_admissible(7, g3):
            continue
        out.append(Order3Invariants(g3, k3, n3))
    return out


def order3_prefilter(chi3: int) -> list[Order3Invariants]:
    """Same as order3_candidates but before the Homma/genus filter; matches
    the raw candidate lists of the order-3 classification."""
    if (chi3 + 6) % 3 != 0:
        return []
    n3 = (chi3 + 6) // 3
    if n3 < 0:
        return []
    out = []
    if n3 == 3:
        out.append(Order3Invariants(None, None, 3))
    for g3 in range(0, (10 - n3) // 2 + 1 if n3 <= 10 else 0):
        k3 = g3 + n3 - 4
        if k3 < 0:
            continue
        out.append(Order3Invariants(g3, k3, n3))
    return out


# ---------------------------------------------------------------------------
# base cases and curve-action scenarios


@dataclass(frozen=True)
class BaseCase:
    """One row of the order-7 classification used as pipeline input."""

    label: str
    counts: tuple[int, int, int]
    curve_genera: tuple[int, ...]
    lattice: str
    lattice_rank: int
    citation: str

    @property
    def alpha(self) -> int:
        return sum(1 - g for g in self.curve_genera)

    @property
    def chi(self) -> int:
        return sum(self.counts) + sum(2 - 2 * g for g in self.curve_genera)


@dataclass(frozen=True)
class CurveAssignment:
    genus: int
    kind: str          # "fixed" | "invariant" | "swapped"
    residual: int = 0  # order of the action on the curve when invariant
    fixed_points: int = 0


@dataclass(frozen=True)
class ScenarioRecord:
    """One way the order-n automorphism can act on the curves fixed by its
    distinguished power: per-curve assignment plus the derived budgets.

    alpha is the sum of 1 - genus over pointwise-fixed curves; budgets maps
    each residual order o to the total number of fixed points sitting on
    curves with that residual action.  `translation` marks a fixed-point
    free action on an invariant elliptic curve.
    """

    assignments: tuple[CurveAssignment, ...]
    alpha: int
    budgets: tuple[tuple[int, int], ...]
    translation: bool

    @property
    def r(self) -> int:
        return sum(v for _, v in self.budgets)

    def budget(self, o: int) -> int:
        return dict(self.budgets).get(o, 0)

    def fixed_genera(self) -> tuple[int, ...]:
        return tuple(a.genus for a in self.assignments if a.kind == "fixed")


def enumerate_power_scenarios(
    curve_genera: tuple[int, ...], q: int
) -> list[ScenarioRecord]:
    """All actions of a cyclic group of order q on a disjoint union of
    curves of the given genera: each curve is pointwise fixed, invariant
    with a faithful residual action of some order o | q (o > 1), or grouped
    with equal-genus partners into an orbit of size s | q (s > 1)."""
    sub_orders = [d for d in range(2, q + 1) if q % d == 0]
    orbit_sizes = [s for s in range(2, q + 1) if q % s == 0]
    n_curves = len(curve_genera)
    scenarios = {}

    def expand(idx, taken, assignment):
        if idx == n_curves:
            per_curve = []
            alpha = 0
            budgets: dict[int, int] = {}
            translation = False
            for (g, kind, o, f) in assignment:
                per_curve.append(CurveAssignment(g, kind, o, f))
                if kind == "fixed":
                    alpha += 1 - g
                elif kind == "invariant":
                    budgets[o] = budgets.get(o, 0) + f
                    if g == 1 and f == 0:
                        translation = True
            rec = ScenarioRecord(
                tuple(per_curve),
                alpha,
                tuple(sorted(budgets.items())),
                translation,
            )
            key = (rec.assignments, rec.alpha, rec.budgets)
            scenarios.setdefault(key, rec)
            return
        if idx in taken:
            expand(idx + 1, taken, assignment)
            return
        g = curve_genera[idx]
        expand(idx + 1, taken, assignment + [(g, "fixed", 0, 0)])
        for o in sub_orders:
            for f in curve_fixed_point_counts(o, g):
                expand(idx + 1, taken, assignment + [(g, "invariant", o, f)])
        for s in orbit_sizes:
            partners = [
                j
                for j in range(idx + 1, n_curves)
                if j not in taken and curve_genera[j] == g
            ]
            for combo in itertools.combinations(partners, s - 1):
                orbit = (idx,) + combo
                expand(
                    idx + 1,
                    taken | set(orbit),
                    assignment + [(g, "swapped", s, 0) for _ in orbit],
                )

    expand(0, frozenset(), [])
    out = sorted(
        scenarios.values(),
        key=lambda rec: (-rec.alpha, rec.budgets, rec.translation),
    )
    return out


def enumerate_curve_scenarios(base: BaseCase, p: int) -> list[ScenarioRecord]:
    """Scenario enumeration for a prime residual order p acting on the
    curves of a base case; the classical entry point."""
    return enumerate_power_scenarios(base.curve_genera, p)


# ---------------------------------------------------------------------------
# distribution of isolated points over an involution's fixed curves


def consecutive_pairs(n: int) -> tuple[tuple[int, int], ...]:
    """Canonical type pairs that can sit at the two fixed points of an
    order-n action on an invariant rational curve pointwise fixed by the
    involution power: the tangent weight is even, giving raw consecutive
    pairs (a-1, a) with even a, i.e. canonical {1,2}, {3,4}, ..."""
    h = max_index(n)
    pairs = []
    for a in range(2, n, 2):
        raw = (a - 1, a)
        canon = tuple(sorted(min(i, (n - 1 - i) % n) for i in raw))
        if canon[0] >= 1 and canon not in pairs and canon[0] != canon[1]:
            pairs.append(canon)
    return tuple(sorted(set(pairs)))


def has_consecutive_pair(type_multiset: dict[int, int], n: int) -> bool:
    """Whether some legal consecutive pair is available in the multiset."""
    for i, j in consecutive_pairs(n):
        if type_multiset.get(i, 0) >= 1 and type_multiset.get(j, 0) >= 1:
            return True
    return False


def consecutive_type_filter(type_counts: dict[int, int], n: int = 14) -> bool:
    """Accept unless two isolated points are forced on an invariant rational
    curve while no legal consecutive pair of types is available."""
    return has_consecutive_pair(type_counts, n)


def genus7_distinct_types_filter(pair: tuple[int, int]) -> bool:
    """The two fixed points of an order-7 action on a genus-7 curve fixed by
    the involution cannot share a local type."""
    return pair[0] != pair[1]


def involution_distribution_feasible(
    type_counts: dict[int, int] | int,
    fixed_curve_genera: tuple[int, ...],
    inv: InvolutionInvariants,
    n: int = 14,
    residual: int = 7,
) -> bool:
    """Decide whether the isolated points of the order-n automorphism can be
    distributed over the fixed locus of the involution power.

    The involution's fixed curves carry a residual action of odd order
    `residual`; curves pointwise fixed by the full automorphism must match
    components of equal genus; each remaining rational component either
    joins a permutation orbit of size `residual` or receives exactly two
    points of a legal consecutive pair; a positive-genus component receives
    a Riemann-Hurwitz count, with distinct types when its genus is seven.

    Passing a plain integer for type_counts checks the counting constraints
    only (used when no type data is available).
    """
    remaining = list(inv.curve_genera())
    for g in fixed_curve_genera:
        if g in remaining:
            remaining.remove(g)
        else:
            return False

    big = [g for g in remaining if g >= 1]
    n_rational = sum(1 for g in remaining if g == 0)

    big_options: list[tuple[int, ...]] = []
    for g in big:
        if not homma_admissible(residual, g):
            return False
        opts = curve_fixed_point_counts(residual, g)
        if not opts:
            return False
        big_options.append(opts)

    count_only = isinstance(type_counts, int)
    total = type_counts if count_only else sum(type_counts.values())
    pairs = consecutive_pairs(n)

    def place_pairs(counts: dict[int, int], live: int) -> bool:
        """Remove `live` legal pairs, then give the genus-7 two-point
        components distinct types from what is left."""
        if live == 0:
            return assign_big(counts, 0)
        for (i, j) in pairs:
            if counts.get(i, 0) >= 1 and counts.get(j, 0) >= 1:
                counts[i] -= 1
                counts[j] -= 1
                ok = place_pairs(counts, live - 1)
                counts[i] += 1
                counts[j] += 1
                if ok:
                    return True
        return False

    combo_state: list[tuple[int, ...]] = []

    def assign_big(counts: dict[int, int], idx: int) -> bool:
        if idx == len(big):
            return sum(counts.values()) == 0
        g = big[idx]
        f = combo_state[0][idx]
        if g == 7 and f == 2:
            types = sorted(t for t, c in counts.items() if c >= 1)
            for x in range(len(types)):
                for y in range(x + 1, len(types)):
                    i, j = types[x], types[y]
                    counts[i] -= 1
                    counts[j] -= 1
                    ok = assign_big(counts, idx + 1)
                    counts[i] += 1
                    counts[j] += 1
                    if ok:
                        return True
            return False
        # any f types will do: remove greedily is wrong only if later
        # constraints need specific types, so backtrack over multisets
        return take_any(counts, idx, f)

    def take_any(counts: dict[int, int], idx: int, need: int) -> bool:
        if need == 0:
            return assign_big(counts, idx + 1)
        for t in sorted(counts):
            if counts[t] >= 1:
                counts[t] -= 1
                ok = take_any(counts, idx, need - 1)
                counts[t] += 1
                if ok:
                    return True
        return False

    for combo in itertools.product(*big_options) if big_options else [()]:
        big_total = sum(combo)
        for orbits in range(0, n_rational // residual + 1):
            live = n_rational - orbits * residual
            expected = big_total + 2 * live
            if expected != total:
                continue
            if count_only:
                return True
            combo_state.clear()
            combo_state.append(combo)
            if place_pairs(dict(type_counts), live):
                return True
    return False


def chi_possibilities_under_involution(
    g2: int, k2: int
) -> tuple[int, ...]:
    """Euler characteristics available to the fixed locus of an order-4
    power acting with order at most 2 on the involution's fixed locus:
    the genus-g2 component is pointwise fixed (chi = 2 - 2 g2) or carries an
    involution (chi = fixed-point count); rational components contribute 2
    each unless swapped in pairs."""
    main = {2 - 2 * g2} | set(curve_fixed_point_counts(2, g2))
    totals = set()
    for c in main:
        for swapped in range(0, k2 // 2 + 1):
            totals.add(c + 2 * (k2 - 2 * swapped))
    return tuple(sorted(totals))
