"""Local fixed-point types of a finite-order surface automorphism and their
behaviour under taking powers.

At a fixed point an order-n automorphism acts with eigenvalues
zeta^(1+i), zeta^(n-i) for some index i.  The unordered eigenvalue pair
identifies index i with n-1-i, so the canonical index lives in
0..floor((n-1)/2).  Index 0 means the point is not isolated: one eigenvalue
is 1 and the point lies on a pointwise-fixed curve.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd


class ChainError(ValueError):
    """Chain length incompatible with consecutive index propagation."""


def canonical_index(n: int, i: int) -> int:
    """Canonical representative of the type index: min(i, n-1-i) mod n."""
    i %= n
    return min(i, (n - 1 - i) % n)


def max_index(n: int) -> int:
    return (n - 1) // 2


@dataclass(frozen=True, order=True)
class LocalType:
    """Type of a fixed point of an order-n automorphism, canonical index."""

    order: int
    index: int

    def __post_init__(self):
        if not 0 <= self.index <= max_index(self.order):
            raise ValueError(f"index {self.index} out of range for order {self.order}")

    @classmethod
    def of(cls, n: int, i: int) -> "LocalType":
        return cls(n, canonical_index(n, i))

    @property
    def eigenexponents(self) -> tuple[int, int]:
        """The unordered pair {1+i mod n, n-i mod n}, as a sorted tuple.

        The pair can repeat: for odd n the middle index has both eigenvalues
        equal.
        """
        n, i = self.order, self.index
        return tuple(sorted(((1 + i) % n, (n - i) % n)))

    @property
    def on_fixed_curve(self) -> bool:
        return self.index == 0

    def __repr__(self):
        return f"A({self.index},{self.order})"


#: Marker returned by power_map when the powered point lands on a curve that
#: the powered automorphism fixes pointwise.
ON_FIXED_CURVE = "on-fixed-curve"

PowerImage = LocalType | str


def power_map(n: int, k: int, i: int) -> PowerImage:
    """Type of a fixed point of type index i under the k-th power.

    The k-th power has order m = n / gcd(n, k); the eigenexponents are
    multiplied by k and read modulo m.  The image is ON_FIXED_CURVE exactly
    when i mod m is 0 or m-1 (one powered eigenvalue becomes 1).
    """
    i = canonical_index(n, i)
    m = n // gcd(n, k)
    j = i % m
    if j == 0 or j == m - 1:
        return ON_FIXED_CURVE
    return LocalType.of(m, j)


def aggregation_map(n: int, k: int) -> dict[object, tuple[int, ...]]:
    """Group the isolated canonical indices of order n by their image under
    the k-th power.

    Returns a mapping whose keys are the canonical indices of order
    n/gcd(n,k) (plus ON_FIXED_CURVE), and whose values are the sorted tuples
    of order-n indices mapping there.  Each group yields the inequality
    sum of m_i over the group <= m_j of the lower order.
    """
    if k <= 0:
        raise ValueError("power must be positive")
    groups: dict[object, list[int]] = {}
    for i in range(1, max_index(n) + 1):
        image = power_map(n, k, i)
        key: object
        if image == ON_FIXED_CURVE:
            key = ON_FIXED_CURVE
        else:
            key = image.index
        groups.setdefault(key, []).append(i)
    return {key: tuple(sorted(v)) for key, v in groups.items()}


def on_curve_indices(n: int, k: int) -> tuple[int, ...]:
    """Isolated order-n indices whose k-th power lies on a fixed curve."""
    return aggregation_map(n, k).get(ON_FIXED_CURVE, ())


def tree_types(n: int, chain: int) -> tuple[LocalType, ...]:
    """Type sequence along a chain of invariant rational curves whose two end
    curves are pointwise fixed.

    `chain` counts the intersection nodes.  Indices ascend consecutively
    0, 1, 2, ... from each fixed end; both propagations name the same point,
    which forces chain = n, and the two middle nodes then carry the top
    canonical index twice (they lie on a curve fixed only by the relevant
    power).
    """
    if chain < 1:
        raise ChainError("chain must contain at least one node")
    if chain != n:
        raise ChainError(
            f"a chain of {chain} nodes cannot carry consecutive indices from "
            f"both fixed ends for order {n} (needs exactly {n})"
        )
    return tuple(LocalType.of(n, min(p - 1, chain - p)) for p in range(1, chain + 1))
