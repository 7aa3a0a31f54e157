"""Deterministic exact linear algebra over GF(q).

Vectors are tuples of element indices, matrices are tuples of row tuples.
Reduced row-echelon form is the canonical representative of a subspace, so
structural equality of :class:`Subspace` values is subspace equality and the
basis tuple doubles as a hash key for census bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .gf import Field

Row = tuple[int, ...]


@dataclass(frozen=True)
class MatF:
    """A rows x cols matrix over a finite field, row-major."""

    field: Field = dc_field(compare=False)
    rows: tuple[Row, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        if self.rows:
            w = len(self.rows[0])
            if any(len(r) != w for r in self.rows):
                raise ValueError("ragged rows")
            for r in self.rows:
                for c in r:
                    self.field.check(c)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


@dataclass(frozen=True)
class Subspace:
    """Canonical subspace of F^n: basis rows in reduced row-echelon form."""

    field: Field = dc_field(compare=False)
    ambient: int = 0
    basis: tuple[Row, ...] = ()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, vec: Row) -> bool:
        return not any(_reduce_row(self.field, list(vec), self.basis, _pivots_of(self.basis)))

    def to_json(self) -> dict:
        return {"ambient": self.ambient, "basis": [list(r) for r in self.basis]}


# ---------------------------------------------------------------------------
# row-level core (used directly by the census fast paths)
# ---------------------------------------------------------------------------


def _pivots_of(rows: tuple[Row, ...]) -> tuple[int, ...]:
    return tuple(next(i for i, c in enumerate(r) if c) for r in rows)


def _reduce_row(fld: Field, row: list[int], rows, pivots) -> list[int]:
    """Eliminate `row` against normalized echelon rows (unit pivots)."""
    sub_t, mul_t = fld.sub_t, fld.mul_t
    if sub_t is not None:
        for r, p in zip(rows, pivots):
            c = row[p]
            if c:
                mc = mul_t[c]
                row = [sub_t[a][mc[b]] for a, b in zip(row, r)]
        return row
    for r, p in zip(rows, pivots):
        c = row[p]
        if c:
            row = [fld.sub(a, fld.mul(c, b)) for a, b in zip(row, r)]
    return row


def rref_rows(fld: Field, rows) -> tuple[tuple[Row, ...], tuple[int, ...]]:
    """RREF basis rows and their pivot columns (zero rows dropped)."""
    work: list[list[int]] = []
    pivots: list[int] = []
    for raw in rows:
        row = _reduce_row(fld, list(raw), work, pivots)
        piv = next((i for i, c in enumerate(row) if c), None)
        if piv is None:
            continue
        inv = fld.inv(row[piv])
        if inv != 1:
            row = [fld.mul(inv, c) for c in row]
        # clear the new pivot column in earlier rows
        for k, (r, p) in enumerate(zip(work, pivots)):
            c = r[piv]
            if c:
                work[k] = [fld.sub(a, fld.mul(c, b)) for a, b in zip(r, row)]
        pos = 0
        while pos < len(pivots) and pivots[pos] < piv:
            pos += 1
        work.insert(pos, row)
        pivots.insert(pos, piv)
    return tuple(tuple(r) for r in work), tuple(pivots)


def added_rank(fld: Field, rows, pivots, new_rows) -> int:
    """Number of new pivots `new_rows` contribute on top of an echelon basis."""
    extra: list[list[int]] = []
    extra_pivs: list[int] = []
    count = 0
    for raw in new_rows:
        row = _reduce_row(fld, list(raw), rows, pivots)
        row = _reduce_row(fld, row, extra, extra_pivs)
        piv = next((i for i, c in enumerate(row) if c), None)
        if piv is None:
            continue
        inv = fld.inv(row[piv])
        if inv != 1:
            row = [fld.mul(inv, c) for c in row]
        extra.append(row)
        extra_pivs.append(piv)
        count += 1
    return count


def kernel_rows(fld: Field, rows, ncols: int) -> tuple[Row, ...]:
    """RREF basis of the right null space {v : M v = 0}."""
    red, pivots = rref_rows(fld, rows)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for j in free:
        vec = [0] * ncols
        vec[j] = 1
        for r, p in zip(red, pivots):
            vec[p] = fld.neg(r[j])
        basis.append(tuple(vec))
    out, _ = rref_rows(fld, basis)
    return out


def intersect_rows(fld: Field, rows1, pivots1, rows2) -> tuple[Row, ...]:
    """RREF basis of (row space 1) intersect (row space 2).

    Computed from the kernel of the stacked coefficient system: coefficient
    vectors (c, d) with c*rows1 - d*rows2 = 0 are the null space of the
    transpose of the stacked matrix, and each such c*rows1 spans the
    intersection.
    """
    r1, r2 = len(rows1), len(rows2)
    if r1 == 0 or r2 == 0:
        return ()
    ncols = len(rows1[0])
    stacked_t = []
    for j in range(ncols):
        stacked_t.append(tuple(r[j] for r in rows1) + tuple(fld.neg(r[j]) for r in rows2))
    combos = kernel_rows(fld, stacked_t, r1 + r2)
    vecs = []
    for combo in combos:
        vec = [0] * ncols
        for c, r in zip(combo[:r1], rows1):
            if c:
                for i, b in enumerate(r):
                    vec[i] = fld.add(vec[i], fld.mul(c, b))
        vecs.append(tuple(vec))
    out, _ = rref_rows(fld, vecs)
    return out


# ---------------------------------------------------------------------------
# public wrappers
# ---------------------------------------------------------------------------


def rref(m: MatF) -> tuple[MatF, int, tuple[int, ...]]:
    """Reduced row-echelon form, rank and pivot columns; idempotent."""
    rows, pivots = rref_rows(m.field, m.rows)
    padded = rows + tuple(tuple([0] * m.ncols) for _ in range(m.nrows - len(rows)))
    return MatF(m.field, padded), len(rows), pivots


def rank(m: MatF) -> int:
    return len(rref_rows(m.field, m.rows)[0])


def span(fld: Field, ambient: int, vectors) -> Subspace:
    vectors = list(vectors)
    for v in vectors:
        if len(v) != ambient:
            raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient}")
    rows, _ = rref_rows(fld, vectors)
    return Subspace(fld, ambient, rows)


def subspace_sum(s1: Subspace, s2: Subspace) -> Subspace:
    if s1.ambient != s2.ambient:
        raise ValueError("ambient dimension mismatch")
    rows, _ = rref_rows(s1.field, list(s1.basis) + list(s2.basis))
    return Subspace(s1.field, s1.ambient, rows)


def kernel(m: MatF) -> Subspace:
    return Subspace(m.field, m.ncols, kernel_rows(m.field, m.rows, m.ncols))


def intersect(s1: Subspace, s2: Subspace) -> Subspace:
    if s1.ambient != s2.ambient:
        raise ValueError("ambient dimension mismatch")
    rows = intersect_rows(s1.field, s1.basis, _pivots_of(s1.basis), s2.basis)
    return Subspace(s1.field, s1.ambient, rows)


def mat_mul(fld: Field, a, b):
    """Product of two row-major matrices given as sequences of rows."""
    n, k = len(a), len(b)
    out = []
    for i in range(n):
        row = []
        for j in range(len(b[0])):
            acc = 0
            for t in range(k):
                acc = fld.add(acc, fld.mul(a[i][t], b[t][j]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_vec(fld: Field, a, v) -> Row:
    return tuple(
        _dot(fld, row, v)
        for row in a
    )


def _dot(fld: Field, r, v) -> int:
    acc = 0
    for x, y in zip(r, v):
        if x and y:
            acc = fld.add(acc, fld.mul(x, y))
    return acc


def identity_rows(n: int) -> tuple[Row, ...]:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
