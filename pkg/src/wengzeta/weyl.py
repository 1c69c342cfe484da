"""Weyl groups, longest elements, inversion sets and diagram automorphisms.

A Weyl element is the integer matrix of its action on simple-root
coordinates (column ``j`` is the image of ``alpha_j``).  Enumeration is a
length-graded breadth-first search by right multiplication with simple
reflections; the result is sorted by the row-major matrix encoding so that
every downstream object is deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from typing import Iterator, Sequence

import numpy as np

from .rootsys import RootSystemData, Vector, check_index, classical_weyl_order

Matrix = tuple[tuple[int, ...], ...]

#: default refusal threshold for full enumeration: |W(E7)|
DEFAULT_CAP = 2_903_040
E8_ORDER = 696_729_600


class GroupTooLarge(RuntimeError):
    """Enumeration refused because |W| exceeds the configured cap."""

    def __init__(self, name: str, order: int, cap: int):
        self.order = order
        self.cap = cap
        super().__init__(
            f"|W({name})| = {order} exceeds the enumeration cap {cap}; "
            f"raise the cap to at least {order} (E8 additionally needs allow_e8)"
        )


@dataclass(frozen=True)
class WeylElement:
    matrix: Matrix
    length: int

    @property
    def rank(self) -> int:
        return len(self.matrix)

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.int64)

    def apply(self, v: Sequence[int]) -> Vector:
        return tuple(int(x) for x in self.array @ np.asarray(v, dtype=np.int64))

    def encode(self) -> str:
        """Row-major encoding, rows separated by ';'."""
        return ";".join(",".join(str(x) for x in row) for row in self.matrix)

    def __repr__(self) -> str:
        return f"WeylElement([{self.encode()}], l={self.length})"


@dataclass(frozen=True)
class DiagramAutomorphism:
    """Permutation of the simple roots preserving the Cartan matrix (0-based)."""

    perm: tuple[int, ...]

    def __call__(self, i: int) -> int:
        return self.perm[i]

    @property
    def inverse(self) -> "DiagramAutomorphism":
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm):
            inv[j] = i
        return DiagramAutomorphism(tuple(inv))

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.perm))

    @cached_property
    def matrix(self) -> np.ndarray:
        r = len(self.perm)
        P = np.zeros((r, r), dtype=np.int64)
        for i, j in enumerate(self.perm):
            P[j, i] = 1
        return P

    def apply_weight(self, mu: Sequence) -> tuple:
        """Image of a weight: ``lambda_i -> lambda_{perm(i)}``."""
        out = [None] * len(mu)
        for i, j in enumerate(self.perm):
            out[j] = mu[i]
        return tuple(out)

    def conjugate(self, mats: np.ndarray) -> np.ndarray:
        """``varpi w varpi^{-1}`` for a single matrix or a stack of matrices."""
        P = self.matrix
        return P @ mats @ P.T


def as_matrix(m) -> np.ndarray:
    if isinstance(m, WeylElement):
        return m.array
    return np.asarray(m, dtype=np.int64)


def simple_reflection(rs: RootSystemData, j: int) -> np.ndarray:
    """Matrix of ``sigma_j`` (0-based): ``alpha_i -> alpha_i - C[j][i] alpha_j``."""
    S = np.eye(rs.rank, dtype=np.int64)
    S[j, :] -= rs.cartan_array[j, :]
    return S


def _length(rs: RootSystemData, M: np.ndarray) -> int:
    img = M @ rs.root_matrix
    return int(np.count_nonzero((img <= 0).all(axis=0)))


def element(rs: RootSystemData, M) -> WeylElement:
    M = as_matrix(M)
    return WeylElement(tuple(tuple(int(x) for x in row) for row in M), _length(rs, M))


def identity(rs: RootSystemData) -> WeylElement:
    return element(rs, np.eye(rs.rank, dtype=np.int64))


def compose(rs: RootSystemData, *ws) -> WeylElement:
    M = np.eye(rs.rank, dtype=np.int64)
    for w in ws:
        M = M @ as_matrix(w)
    return element(rs, M)


def inverse(rs: RootSystemData, w) -> WeylElement:
    return element(rs, _int_inverse(as_matrix(w)))


def _int_inverse(M: np.ndarray) -> np.ndarray:
    inv = np.rint(np.linalg.inv(M.astype(np.float64))).astype(np.int64)
    if not (np.einsum("...ij,...jk->...ik", M, inv) == np.eye(M.shape[-1], dtype=np.int64)).all():
        raise ArithmeticError("matrix is not unimodular")
    return inv


def word(rs: RootSystemData, indices: Sequence[int]) -> WeylElement:
    """Product ``sigma_{i1} sigma_{i2} ...`` of 1-based simple reflections."""
    return compose(rs, *(simple_reflection(rs, i - 1) for i in indices))


class WeylGroup(Sequence[WeylElement]):
    """All elements of W, as a stacked integer array plus lookup helpers."""

    def __init__(self, rs: RootSystemData, mats: np.ndarray):
        self.rs = rs
        flat = mats.reshape(len(mats), -1)
        order = np.lexsort(flat.T[::-1])
        self.mats = np.ascontiguousarray(mats[order])
        self._index = {m.tobytes(): i for i, m in enumerate(self.mats)}

    def __len__(self) -> int:
        return len(self.mats)

    def __getitem__(self, i):  # type: ignore[override]
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(len(self)))]
        return WeylElement(tuple(tuple(int(x) for x in row) for row in self.mats[i]), int(self.lengths[i]))

    def __iter__(self) -> Iterator[WeylElement]:
        for i in range(len(self)):
            yield self[i]

    def index(self, w) -> int:  # type: ignore[override]
        M = np.ascontiguousarray(as_matrix(w), dtype=np.int64)
        return self._index[M.tobytes()]

    def indices(self, mats: np.ndarray) -> np.ndarray:
        mats = np.ascontiguousarray(mats, dtype=np.int64)
        return np.fromiter((self._index[m.tobytes()] for m in mats), dtype=np.int64, count=len(mats))

    @cached_property
    def positive_images(self) -> np.ndarray:
        """(|W|, rank, n_positive): w applied to every positive root."""
        return np.einsum("nij,jk->nik", self.mats, self.rs.root_matrix)

    @cached_property
    def inversion_masks(self) -> np.ndarray:
        """(|W|, n_positive) boolean: positive root lies in Phi_w (sent negative)."""
        return (self.positive_images <= 0).all(axis=1)

    @cached_property
    def lengths(self) -> np.ndarray:
        return self.inversion_masks.sum(axis=1)

    @cached_property
    def inverse_mats(self) -> np.ndarray:
        return _int_inverse(self.mats)

    def admissible_mask(self, p: int) -> np.ndarray:
        """Rows with ``w beta`` simple or negative for every beta in Delta_p."""
        check_index(self.rs, p)
        ok = np.ones(len(self), dtype=bool)
        for j in range(self.rs.rank):
            if j == p - 1:
                continue
            col = self.mats[:, :, j]
            simple = ((col == 1).sum(axis=1) == 1) & ((col == 0).sum(axis=1) == self.rs.rank - 1)
            negative = (col <= 0).all(axis=1)
            ok &= simple | negative
        return ok

    def involution_indices(self, p: int) -> np.ndarray:
        """Index of ``w0 w w_p`` for every w."""
        w0 = longest_element(self.rs).array
        wp = longest_parabolic(self.rs, p).array
        return self.indices(w0 @ self.mats @ wp)

    def conjugation_indices(self, varpi: DiagramAutomorphism) -> np.ndarray:
        """Index of ``varpi w varpi^{-1}`` for every w."""
        return self.indices(varpi.conjugate(self.mats))


def weyl_order(rs: RootSystemData) -> int:
    if rs.kind in "ABCDEFG" and len(rs.kind) == 1:
        return classical_weyl_order(rs.kind, rs.rank)
    raise ValueError("order known only for simple types")


_GROUP_CACHE: dict[tuple, WeylGroup] = {}


def enumerate_group(rs: RootSystemData, cap: int = DEFAULT_CAP, allow_e8: bool = False) -> WeylGroup:
    """Every element of W exactly once, sorted by row-major matrix encoding."""
    if len(rs.kind) == 1:
        order = classical_weyl_order(rs.kind, rs.rank)
        if order > cap or (order >= E8_ORDER and not allow_e8):
            raise GroupTooLarge(rs.name, order, cap)
    key = (rs.cartan,)
    if key in _GROUP_CACHE:
        return _GROUP_CACHE[key]
    r = rs.rank
    gens = [simple_reflection(rs, j) for j in range(r)]
    two_rho = rs.root_matrix.sum(axis=1)
    layer = np.eye(r, dtype=np.int64)[None]
    layers = [layer]
    while True:
        cands = []
        for j, S in enumerate(gens):
            # w sigma_j is longer iff w alpha_j > 0
            up = (layer[:, :, j] >= 0).all(axis=1)
            if up.any():
                cands.append(layer[up] @ S)
        if not cands:
            break
        cand = np.concatenate(cands)
        _, first = np.unique(cand @ two_rho, axis=0, return_index=True)
        layer = cand[np.sort(first)]
        layers.append(layer)
        if sum(len(x) for x in layers) > cap:
            raise GroupTooLarge(rs.name, -1, cap)
    group = WeylGroup(rs, np.concatenate(layers))
    _GROUP_CACHE[key] = group
    return group


# the spec-level name; ``enumerate`` would shadow the builtin inside this module
def enumerate_weyl(rs: RootSystemData, cap: int = DEFAULT_CAP, allow_e8: bool = False) -> WeylGroup:
    return enumerate_group(rs, cap=cap, allow_e8=allow_e8)


def _ascend(rs: RootSystemData, allowed: Sequence[int]) -> np.ndarray:
    M = np.eye(rs.rank, dtype=np.int64)
    gens = {j: simple_reflection(rs, j) for j in allowed}
    while True:
        for j in allowed:
            if (M[:, j] >= 0).all():
                M = M @ gens[j]
                break
        else:
            return M


def longest_element(rs: RootSystemData) -> WeylElement:
    """``w0``: the unique element sending every simple root negative."""
    return element(rs, _ascend(rs, range(rs.rank)))


def longest_parabolic(rs: RootSystemData, p: int) -> WeylElement:
    """``w_p``: longest element of the Weyl group generated by Delta_p."""
    check_index(rs, p)
    return element(rs, _ascend(rs, [j for j in range(rs.rank) if j != p - 1]))


def inversion_set(rs: RootSystemData, w) -> frozenset[Vector]:
    """``Phi_w = Phi_+ cap w^{-1} Phi_-``."""
    img = as_matrix(w) @ rs.root_matrix
    neg = (img <= 0).all(axis=0)
    return frozenset(a for a, n in zip(rs.positive_roots, neg) if n)


def admissible(rs: RootSystemData, p: int, w) -> bool:
    """True iff ``Delta_p`` is contained in ``w^{-1}(Delta cup Phi_-)``."""
    check_index(rs, p)
    M = as_matrix(w)
    for j in range(rs.rank):
        if j == p - 1:
            continue
        col = M[:, j]
        is_simple = sorted(col.tolist()) == [0] * (rs.rank - 1) + [1]
        if not (is_simple or (col <= 0).all()):
            return False
    return True


def fe_involution(rs: RootSystemData, p: int, w) -> WeylElement:
    """``w -> w0 w w_p``."""
    return compose(rs, longest_element(rs), w, longest_parabolic(rs, p))


def diagram_automorphisms(rs: RootSystemData) -> tuple[list[DiagramAutomorphism], DiagramAutomorphism]:
    """All Cartan-preserving permutations, and ``varpi0`` with ``varpi0 w0 = -Id``."""
    r = rs.rank
    C = rs.cartan
    autos = []
    for perm in permutations(range(r)):
        if all(C[perm[i]][perm[j]] == C[i][j] for i in range(r) for j in range(r)):
            autos.append(DiagramAutomorphism(perm))
    P = -longest_element(rs).array
    perm0 = []
    for i in range(r):
        col = P[:, i]
        if sorted(col.tolist()) != [0] * (r - 1) + [1]:
            raise ArithmeticError("-w0 is not a permutation of the simple roots")
        perm0.append(int(np.argmax(col)))
    varpi0 = DiagramAutomorphism(tuple(perm0))
    if varpi0 not in autos:
        raise ArithmeticError("-w0 does not preserve the Dynkin diagram")
    return autos, varpi0


def orbit(rs: RootSystemData, p: int) -> list[int]:
    """1-based Aut(Gamma)-orbit of the node p."""
    autos, _ = diagram_automorphisms(rs)
    return sorted({a(p - 1) + 1 for a in autos})
