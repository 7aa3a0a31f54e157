"""Twisted fields (K, mu) and generic 3-dimensional F-algebras by structure constants.

The twisted product is mu(x, y) = x*y^sigma - c*x^sigma*y on the cubic
extension K of F, with sigma the Frobenius x -> x^q and c a nonzero element of
norm != 1.  Coordinatized over the power basis (1, t, t^2) of K it becomes an
:class:`Algebra3`, a raw structure tensor with no identity element normalized.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field

from .gf import Field, FieldTower, format_triple
from .linalg import MatF

Vec3 = tuple[int, int, int]
Tensor = tuple[tuple[tuple[int, int, int], ...], ...]


class IsotopyClass(enum.Enum):
    COMMUTATIVE_ISOTOPIC = "commutative-isotopic"
    NON_COMMUTATIVE = "non-commutative"


def twisted_product(tower: FieldTower, c: int, x: int, y: int) -> int:
    """x*y^sigma - c*x^sigma*y with no validity checks on c."""
    K = tower.ext
    frob = tower.frob_t
    return K.sub(K.mul(x, frob[y]), K.mul(c, K.mul(frob[x], y)))


@dataclass(frozen=True)
class TwistedFieldSpec:
    """A cubic tower plus a twisting element c in K^x with N(c) != 1."""

    tower: FieldTower = dc_field(compare=False)
    c: int = 0

    def __post_init__(self) -> None:
        q = self.tower.q
        if q == 2:
            raise ValueError(
                "q=2 admits no twisted field: the norm maps GF(8)^x onto "
                "GF(2)^x = {1}, so N(c) != 1 is unsatisfiable"
            )
        self.tower.ext.check(self.c)
        if self.c == 0:
            raise ValueError("twisting element must be nonzero")
        if self.tower.norm(self.c) == 1:
            raise ValueError(f"twisting element has norm 1: c={self.c}")

    @property
    def q(self) -> int:
        return self.tower.q

    def norm_c(self) -> int:
        return self.tower.norm(self.c)

    def to_json(self) -> dict:
        from .gf import format_elem

        return {
            "q": self.q,
            "f_coeffs": [format_elem(self.tower.base, a) for a in self.tower.f],
            "c": format_triple(self.tower, self.c),
            "norm_c": format_elem(self.tower.base, self.norm_c()),
            "class": isotopy_class(self).value,
        }


def mu(spec: TwistedFieldSpec, x: int, y: int) -> int:
    """The twisted multiplication of the spec, on K element indices."""
    return twisted_product(spec.tower, spec.c, x, y)


def pick_c_by_norm(tower: FieldTower, target: int) -> int:
    """Lex-least c in K^x with N(c) = target; deterministic."""
    tower.base.check(target)
    for c in tower.ext.elements():
        if c != 0 and tower.norm_t[c] == target:
            return c
    raise ValueError(f"no element of norm {target}")  # norm is onto F^x, so target was 0


def valid_c_values(tower: FieldTower):
    """All c in K^x with N(c) != 1, ascending."""
    return [c for c in tower.ext.elements() if c != 0 and tower.norm_t[c] != 1]


# ---------------------------------------------------------------------------
# structure-constant algebras
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Algebra3:
    """A 3-dimensional F-algebra: e_i * e_j = sum_k s[i][j][k] e_k."""

    field: Field = dc_field(compare=False)
    tensor: Tensor = ()

    def __post_init__(self) -> None:
        t = tuple(tuple(tuple(self.field.check(c) for c in row) for row in plane)
                  for plane in self.tensor)
        if len(t) != 3 or any(len(p) != 3 or any(len(r) != 3 for r in p) for p in t):
            raise ValueError("structure tensor must be 3x3x3")
        object.__setattr__(self, "tensor", t)

    def mulvec(self, a: Vec3, b: Vec3) -> Vec3:
        fld = self.field
        s = self.tensor
        out = [0, 0, 0]
        for i in range(3):
            ai = a[i]
            if not ai:
                continue
            si = s[i]
            for j in range(3):
                bj = b[j]
                if not bj:
                    continue
                coef = fld.mul(ai, bj)
                row = si[j]
                for k in range(3):
                    if row[k]:
                        out[k] = fld.add(out[k], fld.mul(coef, row[k]))
        return (out[0], out[1], out[2])

    def is_commutative(self) -> bool:
        s = self.tensor
        return all(s[i][j] == s[j][i] for i in range(3) for j in range(3))

    def to_json(self) -> dict:
        from .gf import format_elem

        flat = [format_elem(self.field, self.tensor[i][j][k])
                for i in range(3) for j in range(3) for k in range(3)]
        return {"q": self.field.order, "tensor": flat}


def to_structure_constants(spec: TwistedFieldSpec) -> Algebra3:
    """Coordinates of mu over the power basis (1, t, t^2) of K."""
    K = spec.tower.ext
    q = spec.q
    basis = [1, q, q * q]
    tensor = []
    for i in range(3):
        plane = []
        for j in range(3):
            prod = mu(spec, basis[i], basis[j])
            plane.append(tuple(K.coeffs(prod)))
        tensor.append(tuple(plane))
    return Algebra3(spec.tower.base, tuple(tensor))


def left_mul_matrix(alg: Algebra3, a: Vec3) -> MatF:
    """Matrix of x -> a*x in the standard basis; linear in a."""
    fld = alg.field
    s = alg.tensor
    rows = []
    for k in range(3):
        row = []
        for j in range(3):
            acc = 0
            for i in range(3):
                if a[i] and s[i][j][k]:
                    acc = fld.add(acc, fld.mul(a[i], s[i][j][k]))
            row.append(acc)
        rows.append(tuple(row))
    return MatF(fld, tuple(rows))


def right_mul_matrix(alg: Algebra3, b: Vec3) -> MatF:
    """Matrix of x -> x*b in the standard basis; linear in b."""
    fld = alg.field
    s = alg.tensor
    rows = []
    for k in range(3):
        row = []
        for i in range(3):
            acc = 0
            for j in range(3):
                if b[j] and s[i][j][k]:
                    acc = fld.add(acc, fld.mul(b[j], s[i][j][k]))
            row.append(acc)
        rows.append(tuple(row))
    return MatF(fld, tuple(rows))


def det3(fld: Field, rows) -> int:
    (a, b, c), (d, e, f), (g, h, i) = rows
    t1 = fld.mul(a, fld.sub(fld.mul(e, i), fld.mul(f, h)))
    t2 = fld.mul(b, fld.sub(fld.mul(d, i), fld.mul(f, g)))
    t3 = fld.mul(c, fld.sub(fld.mul(d, h), fld.mul(e, g)))
    return fld.add(fld.sub(t1, t2), t3)


def is_division(alg: Algebra3) -> bool:
    """det(L_a) != 0 and det(R_a) != 0 for every nonzero a, exhaustively."""
    fld = alg.field
    q = fld.order
    for idx in range(1, q**3):
        a = (idx % q, idx // q % q, idx // (q * q))
        if det3(fld, left_mul_matrix(alg, a).rows) == 0:
            return False
        if det3(fld, right_mul_matrix(alg, a).rows) == 0:
            return False
    return True


def algebra_of(spec: TwistedFieldSpec) -> Algebra3:
    return to_structure_constants(spec)


# ---------------------------------------------------------------------------
# isotopy
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IsotopyWitness:
    """a in K^x with c'/c = a^sigma / a, so a*mu'(x,y) = mu(a x, y)."""

    tower: FieldTower = dc_field(compare=False)
    c: int = 0
    c2: int = 0
    a: int = 0


def isotopy_witness(tower: FieldTower, c: int, c2: int) -> IsotopyWitness:
    """Exhaustive scan for a with c2/c = a^sigma * a^{-1}.

    Solvable precisely when N(c) = N(c2); distinct norms raise, matching the
    Hilbert-90 obstruction.
    """
    K = tower.ext
    for x in (c, c2):
        K.check(x)
        if x == 0 or tower.norm_t[x] == 1:
            raise ValueError("isotopy witnesses are defined for nonzero c of norm != 1")
    if tower.norm_t[c] != tower.norm_t[c2]:
        raise ValueError(
            f"no witness: N(c) = {tower.norm_t[c]} differs from N(c') = {tower.norm_t[c2]}"
        )
    ratio = K.mul(c2, K.inv(c))
    for a in range(1, K.order):
        if K.mul(tower.frob_t[a], K.inv(a)) == ratio:
            witness = IsotopyWitness(tower, c, c2, a)
            _check_witness(witness)
            return witness
    raise RuntimeError("norms agree but no witness found; broken tower")


def _check_witness(w: IsotopyWitness) -> None:
    # a*mu'(x,y) = mu(a x, y) on all 9 basis pairs
    K = w.tower.ext
    q = w.tower.q
    basis = [1, q, q * q]
    for x in basis:
        for y in basis:
            lhs = K.mul(w.a, twisted_product(w.tower, w.c2, x, y))
            rhs = twisted_product(w.tower, w.c, K.mul(w.a, x), y)
            if lhs != rhs:
                raise RuntimeError("isotopy witness fails the defining identity")


def isotopy_class(spec: TwistedFieldSpec) -> IsotopyClass:
    """Commutative-isotopic exactly when N(c) = -1 in F."""
    minus_one = spec.tower.base.neg(1)
    if spec.norm_c() == minus_one:
        return IsotopyClass.COMMUTATIVE_ISOTOPIC
    return IsotopyClass.NON_COMMUTATIVE
