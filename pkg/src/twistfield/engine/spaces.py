"""Subspaces Av of A^2, their intersections, and the two-dim partner construction."""

from __future__ import annotations

from dataclasses import dataclass

from ..algebra3 import Algebra3, left_mul_matrix, right_mul_matrix
from ..gf import Field
from ..linalg import (
    Subspace,
    added_rank,
    intersect,
    intersect_rows,
    kernel_rows,
    rref_rows,
)

Vec3 = tuple[int, int, int]

ZERO = "zero"
DEGENERATE = "degenerate"
NONDEGENERATE = "nondegenerate"


@dataclass(frozen=True)
class PairVector:
    """v = (x, y) in A^2; flattening to F^6 is x followed by y."""

    x: Vec3
    y: Vec3

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", tuple(self.x))
        object.__setattr__(self, "y", tuple(self.y))
        if len(self.x) != 3 or len(self.y) != 3:
            raise ValueError("x and y must have three coordinates")

    @property
    def flat(self) -> tuple[int, ...]:
        return self.x + self.y

    def to_json(self) -> list[list[int]]:
        return [list(self.x), list(self.y)]


def classify(fld: Field, v: PairVector) -> str:
    """Rank of the 2x3 coordinate stack: 0 -> zero, 1 -> degenerate, 2 -> nondegenerate."""
    rows, _ = rref_rows(fld, (v.x, v.y))
    return (ZERO, DEGENERATE, NONDEGENERATE)[len(rows)]


def pair_rows(alg: Algebra3, x: Vec3, y: Vec3) -> list[tuple[int, ...]]:
    """Rows e_i * v = (e_i x | e_i y); their span is Av."""
    fld = alg.field
    s = alg.tensor
    rows = []
    for i in range(3):
        si = s[i]
        row = [0] * 6
        for j in range(3):
            r = si[j]
            xj = x[j]
            if xj:
                for k in range(3):
                    if r[k]:
                        row[k] = fld.add(row[k], fld.mul(xj, r[k]))
            yj = y[j]
            if yj:
                for k in range(3):
                    if r[k]:
                        row[3 + k] = fld.add(row[3 + k], fld.mul(yj, r[k]))
        rows.append(tuple(row))
    return rows


def av_subspace(alg: Algebra3, v: PairVector) -> Subspace:
    """Av = {av : a in A} as a canonical subspace of F^6."""
    rows, _ = rref_rows(alg.field, pair_rows(alg, v.x, v.y))
    return Subspace(alg.field, 6, rows)


def intersection_dim(alg: Algebra3, v: PairVector, v2: PairVector) -> tuple[int, Subspace]:
    meet = intersect(av_subspace(alg, v), av_subspace(alg, v2))
    return meet.dim, meet


def solution_space(alg: Algebra3, v: PairVector, v2: PairVector) -> Subspace:
    """Pairs (a, a') in F^6 with a v = a' v'; dimension equals intersection_dim.

    Kernel of the block system [R_x | -R_x' ; R_y | -R_y'], valid when both
    vectors are regular (over a division algebra: nonzero).
    """
    fld = alg.field
    for w in (v, v2):
        if classify(fld, w) == ZERO:
            raise ValueError("solution space requires regular (nonzero) vectors")
    rows = []
    for left, right in ((v.x, v2.x), (v.y, v2.y)):
        rl = right_mul_matrix(alg, left).rows
        rr = right_mul_matrix(alg, right).rows
        for k in range(3):
            rows.append(tuple(rl[k]) + tuple(fld.neg(c) for c in rr[k]))
    return Subspace(fld, 6, kernel_rows(fld, rows, 6))


def solve3(fld: Field, mat_rows, rhs: Vec3) -> Vec3:
    """Unique solution of a 3x3 invertible system."""
    aug = [tuple(mat_rows[i]) + (rhs[i],) for i in range(3)]
    red, pivots = rref_rows(fld, aug)
    if len(red) != 3 or pivots != (0, 1, 2):
        raise ValueError("matrix is singular")
    return tuple(r[3] for r in red)


def construct_two_dim_partner(alg: Algebra3, v: PairVector, x2: Vec3) -> PairVector:
    """For commutative division A: the unique v' = (x', y') with x'y = xy'.

    The resulting pair satisfies dim(Av meet Av') = 2 with the intersection
    equal to span{x'v, y'v} = span{xv', yv'}.
    """
    fld = alg.field
    if not alg.is_commutative():
        raise ValueError("two-dim partner construction needs a commutative tensor")
    if classify(fld, v) != NONDEGENERATE:
        raise ValueError("base vector must be nondegenerate")
    x2 = tuple(x2)
    stack, _ = rref_rows(fld, (v.x, x2))
    if len(stack) != 2:
        raise ValueError("replacement first coordinate must be independent of x")
    rhs = alg.mulvec(x2, v.y)
    y2 = solve3(fld, left_mul_matrix(alg, v.x).rows, rhs)
    return PairVector(x2, y2)


def plane_representatives(fld: Field) -> list[PairVector]:
    """One nondegenerate vector per 2-dim subspace of F^3 (its RREF basis rows).

    Simultaneous GL2 frame changes preserve intersection dimensions and sweep
    all ordered bases of a fixed plane, so these q^2+q+1 vectors meet every
    nondegenerate GL2 orbit.
    """
    q = fld.order
    reps = []
    for a in range(q):
        for b in range(q):
            reps.append(PairVector((1, 0, a), (0, 1, b)))
    for a in range(q):
        reps.append(PairVector((1, a, 0), (0, 0, 1)))
    reps.append(PairVector((0, 1, 0), (0, 0, 1)))
    return reps


def dim_against(fld: Field, base_rows, base_pivots, other_basis) -> int:
    """dim of the intersection of two row spaces; `other_basis` must be independent rows."""
    return len(other_basis) - added_rank(fld, base_rows, base_pivots, other_basis)


def meet_line(fld: Field, base_rows, base_pivots, other_rows):
    """The RREF rows of the intersection of two row spaces."""
    return intersect_rows(fld, base_rows, base_pivots, other_rows)
