"""Simple root systems with exact rational data.

Roots are integer coefficient vectors over the simple roots.  Everything
the zeta machinery needs (coroot coefficients, heights, pairings with
fundamental weights) is Cartan-matrix combinatorics, so no floating point
appears in this module.

Conventions
-----------
``cartan[i][j] = <alpha_j, alpha_i^vee>``, so column ``j`` of the Cartan
matrix is ``alpha_j`` written in the fundamental-weight basis.  Simple roots
are numbered as in Bourbaki.  Indices are 0-based in code; the public
helpers that take a parabolic index ``p`` use the 1-based numbering of the
Dynkin diagram.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial, prod
from typing import Sequence

import numpy as np

Vector = tuple[int, ...]
Weight = tuple[Fraction, ...]

KINDS = "ABCDEFG"

# classical |Phi_+|
_POSITIVE_COUNTS = {
    "A": lambda r: r * (r + 1) // 2,
    "B": lambda r: r * r,
    "C": lambda r: r * r,
    "D": lambda r: r * (r - 1),
    "E": lambda r: {6: 36, 7: 63, 8: 120}[r],
    "F": lambda r: 24,
    "G": lambda r: 6,
}

_WEYL_ORDERS = {
    "A": lambda r: factorial(r + 1),
    "B": lambda r: 2**r * factorial(r),
    "C": lambda r: 2**r * factorial(r),
    "D": lambda r: 2 ** (r - 1) * factorial(r),
    "E": lambda r: {6: 51840, 7: 2903040, 8: 696729600}[r],
    "F": lambda r: 1152,
    "G": lambda r: 12,
}


class RootSystemError(ValueError):
    """Invalid root-system request (bad type/rank, index, or root)."""


def validate_type(kind: str, rank: int) -> None:
    kind = kind.upper()
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 3,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }.get(kind)
    if ok is None:
        raise RootSystemError(f"unknown root system type {kind!r}; expected one of {KINDS}")
    if not ok:
        raise RootSystemError(f"{kind}{rank} is not a simple root system")


def classical_positive_count(kind: str, rank: int) -> int:
    return _POSITIVE_COUNTS[kind.upper()](rank)


def classical_weyl_order(kind: str, rank: int) -> int:
    return _WEYL_ORDERS[kind.upper()](rank)


def cartan_matrix(kind: str, rank: int) -> list[list[int]]:
    """Cartan matrix ``C[i][j] = <alpha_j, alpha_i^vee>`` in Bourbaki numbering."""
    kind = kind.upper()
    validate_type(kind, rank)
    r = rank
    C = [[2 if i == j else 0 for j in range(r)] for i in range(r)]

    def link(i: int, j: int, cij: int = -1, cji: int = -1) -> None:
        C[i][j] = cij
        C[j][i] = cji

    if kind == "A":
        for i in range(r - 1):
            link(i, i + 1)
    elif kind == "B":
        for i in range(r - 2):
            link(i, i + 1)
        # alpha_r short
        link(r - 2, r - 1, -1, -2)
    elif kind == "C":
        for i in range(r - 2):
            link(i, i + 1)
        # alpha_r long
        link(r - 2, r - 1, -2, -1)
    elif kind == "D":
        if r == 3:
            # D3 = A3 with the branch node in the middle
            link(0, 1)
            link(0, 2)
        else:
            for i in range(r - 2):
                link(i, i + 1)
            link(r - 3, r - 1)
    elif kind == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, r - 1):
            link(i, i + 1)
    elif kind == "F":
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    elif kind == "G":
        # alpha_1 short, alpha_2 long
        link(0, 1, -3, -1)
    return C


def _half_lengths(C: Sequence[Sequence[int]]) -> list[Fraction]:
    """d_i = (alpha_i, alpha_i)/2, longest root of each component scaled to 1."""
    r = len(C)
    d: list[Fraction | None] = [None] * r
    for start in range(r):
        if d[start] is not None:
            continue
        comp = [start]
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(r):
                if j != i and C[i][j] != 0 and d[j] is None:
                    # symmetry of (alpha_i, alpha_j): C[i][j] d_i = C[j][i] d_j
                    d[j] = d[i] * Fraction(C[i][j], C[j][i])
                    comp.append(j)
                    stack.append(j)
        top = max(d[i] for i in comp)
        for i in comp:
            d[i] = d[i] / top
    return d  # type: ignore[return-value]


@dataclass(frozen=True, eq=False)
class RootSystemData:
    """Exact data of a (reduced, finite) root system given by its Cartan matrix.

    ``positive_roots`` is sorted by (height, coefficients) so that the
    simple roots come first in their natural order.
    """

    kind: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[Vector, ...]
    coroot_coeffs: tuple[Vector, ...]
    inner: tuple[tuple[Fraction, ...], ...]
    _index: dict[Vector, int] = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.kind}{self.rank}"

    @property
    def n_positive(self) -> int:
        return len(self.positive_roots)

    def index(self, alpha: Sequence[int]) -> tuple[int, int]:
        """Return ``(i, sign)`` with ``alpha == sign * positive_roots[i]``."""
        a = tuple(int(x) for x in alpha)
        if a in self._index:
            return self._index[a], 1
        neg = tuple(-x for x in a)
        if neg in self._index:
            return self._index[neg], -1
        raise RootSystemError(f"{a} is not a root of {self.name}")

    def is_root(self, alpha: Sequence[int]) -> bool:
        try:
            self.index(alpha)
        except RootSystemError:
            return False
        return True

    def coroot(self, alpha: Sequence[int]) -> Vector:
        """Coefficients of ``alpha^vee`` over the simple coroots."""
        i, sign = self.index(alpha)
        return tuple(sign * c for c in self.coroot_coeffs[i])

    def simple_root(self, i: int) -> Vector:
        """``alpha_i`` (1-based, like every other index in the public API)."""
        check_index(self, i)
        return tuple(int(j == i - 1) for j in range(self.rank))

    @property
    def roots(self) -> tuple[Vector, ...]:
        """All roots: positives followed by their negatives."""
        return self.positive_roots + tuple(tuple(-x for x in a) for a in self.positive_roots)

    # numpy views used by the bulk Weyl-group code
    @cached_property
    def root_matrix(self) -> np.ndarray:
        """(rank, n_positive) integer matrix whose columns are the positive roots."""
        return np.array(self.positive_roots, dtype=np.int64).reshape(-1, self.rank).T.copy()

    @cached_property
    def coroot_matrix(self) -> np.ndarray:
        """(n_positive, rank) coroot coefficients of the positive roots."""
        return np.array(self.coroot_coeffs, dtype=np.int64).reshape(-1, self.rank)

    @cached_property
    def cartan_array(self) -> np.ndarray:
        return np.array(self.cartan, dtype=np.int64)

    def to_weight(self, alpha: Sequence[int | Fraction]) -> Weight:
        """Root coordinates -> fundamental-weight coordinates."""
        r = self.rank
        return tuple(
            Fraction(sum(self.cartan[i][j] * alpha[j] for j in range(r))) for i in range(r)
        )

    @cached_property
    def _cartan_inverse(self) -> tuple[tuple[Fraction, ...], ...]:
        return _inverse(self.cartan)

    def to_root_coords(self, weight: Sequence[int | Fraction]) -> tuple[Fraction, ...]:
        """Fundamental-weight coordinates -> (rational) root coordinates."""
        inv = self._cartan_inverse
        r = self.rank
        return tuple(sum((inv[i][j] * weight[j] for j in range(r)), Fraction(0)) for i in range(r))

    def fundamental_weight(self, p: int) -> Weight:
        """``lambda_p`` (1-based) in the fundamental-weight basis."""
        check_index(self, p)
        return tuple(Fraction(int(i == p - 1)) for i in range(self.rank))

    @property
    def rho(self) -> Weight:
        return tuple(Fraction(1) for _ in range(self.rank))

    def pair(self, weight: Sequence[int | Fraction], alpha: Sequence[int]) -> Fraction:
        """``<weight, alpha^vee>`` for a weight in fundamental-weight coordinates."""
        cv = self.coroot(alpha)
        return sum((Fraction(weight[i]) * cv[i] for i in range(self.rank)), Fraction(0))

    def subsystem(self, indices: Sequence[int]) -> "RootSystemData":
        """Root system spanned by the simple roots with the given 0-based indices."""
        sub = [[self.cartan[i][j] for j in indices] for i in indices]
        return from_cartan(sub, kind=f"{self.name}[{','.join(str(i + 1) for i in indices)}]")


def _inverse(M: Sequence[Sequence[int]]) -> tuple[tuple[Fraction, ...], ...]:
    n = len(M)
    A = [[Fraction(M[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next(i for i in range(c, n) if A[i][c] != 0)
        A[c], A[piv] = A[piv], A[c]
        pv = A[c][c]
        A[c] = [x / pv for x in A[c]]
        for i in range(n):
            if i != c and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return tuple(tuple(row[n:]) for row in A)


def from_cartan(C: Sequence[Sequence[int]], kind: str = "?") -> RootSystemData:
    """Build the root system of an arbitrary (possibly reducible) Cartan matrix.

    The positive system is generated by closing the simple roots under the
    simple reflections.
    """
    r = len(C)
    cart = tuple(tuple(int(x) for x in row) for row in C)
    d = _half_lengths(cart)
    inner = tuple(tuple(Fraction(cart[i][j]) * d[i] for j in range(r)) for i in range(r))

    simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for a in frontier:
            for j in range(r):
                # <a, alpha_j^vee> = sum_i a_i C[j][i]
                n = sum(a[i] * cart[j][i] for i in range(r))
                if n == 0:
                    continue
                b = tuple(a[i] - (n if i == j else 0) for i in range(r))
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    for a in seen:
        if not (all(x >= 0 for x in a) or all(x <= 0 for x in a)):
            raise RootSystemError(f"closure produced a root with mixed signs: {a}")
    pos = sorted((a for a in seen if all(x >= 0 for x in a)), key=lambda a: (sum(a), tuple(-x for x in a)))

    def norm2(a: Vector) -> Fraction:
        return sum((a[i] * a[j] * inner[i][j] for i in range(r) for j in range(r)), Fraction(0))

    coroots = []
    for a in pos:
        n = norm2(a)
        cv = []
        for i in range(r):
            # alpha^vee = sum_i a_i (|alpha_i|^2/|alpha|^2) alpha_i^vee
            c = Fraction(a[i]) * 2 * d[i] / n
            if c.denominator != 1:
                raise RootSystemError(f"non-integral coroot for {a}")
            cv.append(int(c))
        coroots.append(tuple(cv))
    return RootSystemData(
        kind=kind,
        rank=r,
        cartan=cart,
        positive_roots=tuple(pos),
        coroot_coeffs=tuple(coroots),
        inner=inner,
        _index={a: i for i, a in enumerate(pos)},
    )


def build_root_system(kind: str, rank: int) -> RootSystemData:
    """Construct the simple root system of type ``kind`` and rank ``rank``.

    >>> build_root_system("A", 2).positive_roots
    ((1, 0), (0, 1), (1, 1))
    """
    kind = kind.upper()
    validate_type(kind, rank)
    rs = from_cartan(cartan_matrix(kind, rank))
    rs = RootSystemData(
        kind=kind,
        rank=rank,
        cartan=rs.cartan,
        positive_roots=rs.positive_roots,
        coroot_coeffs=rs.coroot_coeffs,
        inner=rs.inner,
        _index=rs._index,
    )
    expected = classical_positive_count(kind, rank)
    if rs.n_positive != expected:
        raise RootSystemError(f"{rs.name}: generated {rs.n_positive} positive roots, expected {expected}")
    return rs


def check_index(rs: RootSystemData, p: int) -> None:
    if not 1 <= p <= rs.rank:
        raise RootSystemError(f"parabolic index p={p} out of range 1..{rs.rank}")


def height(rs: RootSystemData, alpha: Sequence[int]) -> int:
    """Height of the coroot, ``<rho, alpha^vee>``."""
    return sum(rs.coroot(alpha))


def pairing_lambda(rs: RootSystemData, p: int, alpha: Sequence[int]) -> int:
    """``<lambda_p, alpha^vee>``: coefficient of ``alpha_p^vee`` in ``alpha^vee``."""
    check_index(rs, p)
    return rs.coroot(alpha)[p - 1]


def parabolic_positive_roots(rs: RootSystemData, p: int) -> list[Vector]:
    """Positive roots orthogonal to ``lambda_p`` (no ``alpha_p`` component)."""
    check_index(rs, p)
    return [a for a in rs.positive_roots if a[p - 1] == 0]


def rho_p(rs: RootSystemData, p: int) -> Weight:
    """Half the sum of the positive roots of the parabolic subsystem, as a weight."""
    total = [0] * rs.rank
    for a in parabolic_positive_roots(rs, p):
        for i, x in enumerate(a):
            total[i] += x
    return tuple(x / 2 for x in rs.to_weight(total))


def center(rs: RootSystemData, p: int) -> int:
    """``c_p = 2 <lambda_p - rho_p, alpha_p^vee>``."""
    rp = rho_p(rs, p)
    c = 2 * (1 - rp[p - 1])
    if c.denominator != 1 or c <= 0:
        raise RootSystemError(f"center of {rs.name}, p={p} is {c}, not a positive integer")
    return int(c)


def degrees_of_parabolic(rs: RootSystemData, p: int) -> list[int]:
    """Degrees of the Weyl group of the parabolic subsystem, in increasing order.

    The exponents are the conjugate partition of the coroot-height
    distribution of the parabolic positive roots; each degree is an
    exponent plus one.
    """
    counts: dict[int, int] = {}
    for a in parabolic_positive_roots(rs, p):
        h = height(rs, a)
        counts[h] = counts.get(h, 0) + 1
    degrees = []
    for h in sorted(counts):
        multiplicity = counts[h] - counts.get(h + 1, 0)
        degrees.extend([h + 1] * multiplicity)
    if len(degrees) != rs.rank - 1:
        raise RootSystemError(f"got {len(degrees)} degrees for a rank-{rs.rank - 1} subsystem")
    return sorted(degrees)


def order_from_degrees(degrees: Sequence[int]) -> int:
    return prod(degrees)
