"""Per-theorem verifiers: span-equality laws, two-dim intersection existence,
matrix-pair normal forms, and the finite-field analogue of the d = 1 obstruction.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field as dc_field

from ..algebra3 import Algebra3, IsotopyClass, TwistedFieldSpec, isotopy_class, to_structure_constants
from ..gf import Field
from ..linalg import added_rank, kernel_rows, mat_mul, rref_rows
from ..splitalbert import SplitAlbertSpec, TriVector, rmat, rmat_inv
from .census import AvInventory, build_inventory
from .normalform import det2, pair_normal_form, template_matches
from .spaces import (
    NONDEGENERATE,
    PairVector,
    classify,
    intersection_dim,
    pair_rows,
    plane_representatives,
)


@dataclass
class Verdict:
    name: str
    passed: bool
    checked: int
    witnesses: list = dc_field(default_factory=list)
    details: dict = dc_field(default_factory=dict)
    runtime_ms: float = 0.0

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "witnesses": self.witnesses,
            "details": self.details,
            "runtime_ms": round(self.runtime_ms, 3),
        }

    @classmethod
    def from_json_dict(cls, payload: dict) -> "Verdict":
        return cls(
            name=payload["name"],
            passed=payload["passed"],
            checked=payload["checked"],
            witnesses=payload["witnesses"],
            details=payload["details"],
            runtime_ms=payload.get("runtime_ms", 0.0),
        )


def _scale_vec(fld: Field, k: int, v: tuple) -> tuple:
    return tuple(fld.mul(k, c) for c in v)


def _av_key(alg: Algebra3, v: PairVector) -> tuple:
    rows, _ = rref_rows(alg.field, pair_rows(alg, v.x, v.y))
    return rows


def _nondegenerate_vectors(fld: Field):
    q = fld.order
    from .census import decode_vector

    for idx in range(1, q**6):
        coords = decode_vector(q, idx)
        v = PairVector(coords[:3], coords[3:])
        if classify(fld, v) == NONDEGENERATE:
            yield v


def verify_theorem_A(alg: Algebra3, mode: str = "auto", rng: random.Random | None = None,
                     samples: int = 2000) -> Verdict:
    """Av = Av' iff Fv = Fv', over nondegenerate vectors.

    Exhaustive: group every nondegenerate v by the canonical key of Av; the
    statement holds iff each group is exactly one punctured scalar line.
    """
    t0 = time.perf_counter()
    fld = alg.field
    q = fld.order
    if mode == "auto":
        mode = "exhaustive" if q <= 4 else "sampled"
    witnesses = []
    checked = 0
    if mode == "exhaustive":
        groups: dict[tuple, list[PairVector]] = {}
        for v in _nondegenerate_vectors(fld):
            groups.setdefault(_av_key(alg, v), []).append(v)
            checked += 1
        for key, members in groups.items():
            rep = members[0]
            line = {(_scale_vec(fld, k, rep.x), _scale_vec(fld, k, rep.y))
                    for k in range(1, q)}
            got = {(v.x, v.y) for v in members}
            if got != line:
                witnesses.append({"Av_key": [list(r) for r in key],
                                  "members": sorted(got)[:4]})
    else:
        rng = rng or random.Random(0)
        vectors = list(_nondegenerate_vectors(fld))
        for _ in range(samples):
            v = rng.choice(vectors)
            k = rng.randrange(1, q)
            kv = PairVector(_scale_vec(fld, k, v.x), _scale_vec(fld, k, v.y))
            if _av_key(alg, v) != _av_key(alg, kv):
                witnesses.append({"v": v.to_json(), "k": k, "kind": "scalar direction"})
            w = rng.choice(vectors)
            checked += 1
            if any(w.flat == _scale_vec(fld, k2, v.flat) for k2 in range(1, q)):
                continue
            if _av_key(alg, v) == _av_key(alg, w):
                witnesses.append({"v": v.to_json(), "v2": w.to_json(), "kind": "distinct lines"})
    return Verdict(
        name="theorem-A",
        passed=not witnesses,
        checked=checked,
        witnesses=witnesses[:5],
        details={"mode": mode, "q": q},
        runtime_ms=(time.perf_counter() - t0) * 1000,
    )


def verify_theorem_B(tf: TwistedFieldSpec, workers: int = 1,
                     inventory: AvInventory | None = None) -> Verdict:
    """Two-dim intersections exist iff the algebra is commutative-isotopic.

    v runs over one representative per coordinate plane, v' over every distinct
    Av'; a dim-2 pair forces both vectors nondegenerate and simultaneous GL2
    frame changes preserve intersection dimensions, so this covers all pairs.
    """
    t0 = time.perf_counter()
    alg = to_structure_constants(tf)
    cls = isotopy_class(tf)
    fld = alg.field
    if inventory is None:
        inventory = build_inventory(alg, workers=workers)
    expect_witness = cls is IsotopyClass.COMMUTATIVE_ISOTOPIC
    hits = []
    checked = 0
    for v in plane_representatives(fld):
        base_rows, base_pivots = rref_rows(fld, pair_rows(alg, v.x, v.y))
        for rec in inventory.spaces:
            checked += 1
            d = 3 - added_rank(fld, base_rows, base_pivots, rec.rows)
            if d == 2:
                v2 = PairVector(rec.rep[:3], rec.rep[3:])
                dim_check, _ = intersection_dim(alg, v, v2)
                if dim_check != 2:
                    raise RuntimeError("fast sweep disagrees with direct intersection")
                hits.append({"v": v.to_json(), "v2": v2.to_json()})
                break
        if hits and expect_witness:
            break
    passed = bool(hits) == expect_witness
    return Verdict(
        name="theorem-B",
        passed=passed,
        checked=checked,
        witnesses=hits[:3],
        details={"q": fld.order, "algebra_class": cls.value,
                 "expected": "witness" if expect_witness else "no dim-2 pairs"},
        runtime_ms=(time.perf_counter() - t0) * 1000,
    )


# ---------------------------------------------------------------------------
# split-side span equality (regular quadruples)
# ---------------------------------------------------------------------------


def _u_rows(spec: SplitAlbertSpec, x: tuple, y: tuple):
    """Generators of U(x, y) = {(ux, uy)} as three rows of F^6."""
    rx = rmat(spec, TriVector("V", x)).rows
    ry = rmat(spec, TriVector("V", y)).rows
    return [tuple(rx[k][i] for k in range(3)) + tuple(ry[k][i] for k in range(3))
            for i in range(3)]


def verify_split_theorem_3_1(spec: SplitAlbertSpec, mode: str = "auto",
                             rng: random.Random | None = None,
                             samples: int = 20000) -> Verdict:
    """U(x,y) = U(x',y') iff (x',y') = k(x,y) or (y,y') = k(x,x'), regular quadruples.

    Cross-checks the matrix criterion R_{x'}^{-1} R_x = R_{y'}^{-1} R_y on every
    quadruple as well.
    """
    t0 = time.perf_counter()
    fld = spec.field
    q = fld.order
    if mode == "auto":
        mode = "exhaustive" if q <= 4 else "sampled"
    regs = [(a, b, c) for a in range(1, q) for b in range(1, q) for c in range(1, q)]
    r = len(regs)
    index = {v: i for i, v in enumerate(regs)}
    # projective representative and leading coordinate per regular vector
    rep_id = []
    for v in regs:
        s = fld.inv(v[0])
        rep_id.append(index[tuple(fld.mul(s, c) for c in v)])
    div = [[fld.mul(a, fld.inv(b)) if b else 0 for b in range(q)] for a in range(q)]

    skey_pool: dict[tuple, int] = {}
    skey = [[0] * r for _ in range(r)]
    mkey_pool: dict[tuple, int] = {}
    mkey = [[0] * r for _ in range(r)]
    rmats = [rmat(spec, TriVector("V", v)).rows for v in regs]
    rinvs = [rmat_inv(spec, TriVector("V", v)).rows for v in regs]
    for i, x in enumerate(regs):
        for j, y in enumerate(regs):
            rows, _ = rref_rows(fld, _u_rows(spec, x, y))
            skey[i][j] = skey_pool.setdefault(rows, len(skey_pool))
            m = mat_mul(fld, rinvs[j], rmats[i])
            mkey[i][j] = mkey_pool.setdefault(m, len(mkey_pool))

    witnesses = []
    checked = 0

    def examine(i: int, j: int, k: int, l: int) -> None:
        nonlocal checked
        checked += 1
        eq = skey[i][j] == skey[k][l]
        same_scale = (rep_id[i] == rep_id[k] and rep_id[j] == rep_id[l]
                      and div[regs[k][0]][regs[i][0]] == div[regs[l][0]][regs[j][0]])
        swap_scale = (rep_id[j] == rep_id[i] and rep_id[l] == rep_id[k]
                      and div[regs[j][0]][regs[i][0]] == div[regs[l][0]][regs[k][0]])
        cond = same_scale or swap_scale
        matrix_eq = mkey[i][k] == mkey[j][l]
        if eq != cond or eq != matrix_eq:
            witnesses.append({
                "x": regs[i], "y": regs[j], "x2": regs[k], "y2": regs[l],
                "span_equal": eq, "proportionality": cond, "matrix_criterion": matrix_eq,
            })

    if mode == "exhaustive":
        for i in range(r):
            for j in range(r):
                for k in range(r):
                    for l in range(r):
                        examine(i, j, k, l)
                        if len(witnesses) > 5:
                            break
                    if len(witnesses) > 5:
                        break
                if len(witnesses) > 5:
                    break
            if len(witnesses) > 5:
                break
    else:
        rng = rng or random.Random(0)
        for _ in range(samples):
            i, j, k, l = (rng.randrange(r) for _ in range(4))
            examine(i, j, k, l)
        # force both equality branches to appear
        for _ in range(samples // 10):
            i, j = rng.randrange(r), rng.randrange(r)
            kk = rng.randrange(1, q)
            x2 = tuple(fld.mul(kk, c) for c in regs[i])
            y2 = tuple(fld.mul(kk, c) for c in regs[j])
            examine(i, j, index[x2], index[y2])
            x, x2v = regs[i], regs[j]
            y = tuple(fld.mul(kk, c) for c in x)
            y2 = tuple(fld.mul(kk, c) for c in x2v)
            examine(i, index[y], j, index[y2])
    return Verdict(
        name="split-theorem-3.1",
        passed=not witnesses,
        checked=checked,
        witnesses=witnesses[:5],
        details={"mode": mode, "q": q, "d": list(spec.d)},
        runtime_ms=(time.perf_counter() - t0) * 1000,
    )


# ---------------------------------------------------------------------------
# matrix-pair normal forms (exhaustive)
# ---------------------------------------------------------------------------


def verify_normal_forms(fld: Field) -> Verdict:
    """Every pair of 2x2 matrices lands in a tag with verifying (P, Q)."""
    t0 = time.perf_counter()
    mats = [((a, b), (c, d))
            for a in range(fld.order) for b in range(fld.order)
            for c in range(fld.order) for d in range(fld.order)]
    tag_counts: dict[str, int] = {}
    witnesses = []
    for g0 in mats:
        for g1 in mats:
            form = pair_normal_form(fld, g0, g1)
            tag_counts[form.tag] = tag_counts.get(form.tag, 0) + 1
            if not template_matches(fld, form):
                witnesses.append({"g0": g0, "g1": g1, "tag": form.tag})
    return Verdict(
        name="pair-normal-form",
        passed=not witnesses,
        checked=len(mats) ** 2,
        witnesses=witnesses[:5],
        details={"q": fld.order, "tag_counts": dict(sorted(tag_counts.items()))},
        runtime_ms=(time.perf_counter() - t0) * 1000,
    )


# ---------------------------------------------------------------------------
# finite-field analogue of the two-dim => d = 1 obstruction
# ---------------------------------------------------------------------------


def _admissible(fld: Field, x, y, x2, y2) -> bool:
    """Frame-change-stable span hypotheses, probed over F itself.

    The kernel of the 3x4 column matrix [x y x' y'] must be one line whose
    generator, read as a 2x2 coefficient pattern, is invertible: rank-one
    patterns are exactly the degenerations some GL2 x GL2 frame change exposes,
    and kernel dimension >= 2 happens only when <x,y> = <x',y'>.
    """
    rows = [(x[c], y[c], x2[c], y2[c]) for c in range(3)]
    kern = kernel_rows(fld, rows, 4)
    if len(kern) != 1:
        return False
    w = kern[0]
    return det2(fld, ((w[0], w[1]), (w[2], w[3]))) != 0


def search_theorem_7_2_analogue(spec: SplitAlbertSpec, workers: int = 1) -> Verdict:
    """Sweep for two-dimensional U(x,y) meet U(x',y') under the stability hypotheses.

    Heuristic evidence only: the d = 1 obstruction is a statement over an
    algebraically closed field, and this sweep stays over F.  Any hit with
    d != 1 is a failure; hits at d = 1 are recorded as information.
    """
    t0 = time.perf_counter()
    fld = spec.field
    q = fld.order
    pairs = []
    for ix in range(q**3):
        x = (ix % q, ix // q % q, ix // (q * q))
        for iy in range(q**3):
            y = (iy % q, iy // q % q, iy // (q * q))
            stack, _ = rref_rows(fld, (x, y))
            if len(stack) == 2:
                pairs.append((x, y))
    urows = {}
    for x, y in pairs:
        rows, pivots = rref_rows(fld, _u_rows(spec, x, y))
        urows[(x, y)] = (rows, pivots)
    reps = [(v.x, v.y) for v in plane_representatives(fld)]
    hits = []
    admissible = 0
    checked = 0
    for x, y in reps:
        base_rows, base_pivots = urows[(x, y)]
        for x2, y2 in pairs:
            checked += 1
            if not _admissible(fld, x, y, x2, y2):
                continue
            admissible += 1
            other = urows[(x2, y2)][0]
            d = 3 - added_rank(fld, base_rows, base_pivots, other)
            if d == 2:
                hits.append({"x": list(x), "y": list(y), "x2": list(x2), "y2": list(y2)})
    d_is_one = spec.d_product == 1
    passed = d_is_one or not hits
    return Verdict(
        name="two-dim-search",
        passed=passed,
        checked=checked,
        witnesses=hits[:5],
        details={
            "q": q,
            "d": list(spec.d),
            "d_product": spec.d_product,
            "admissible_quadruples": admissible,
            "two_dim_hits": len(hits),
            "note": "finite-field analogue; heuristic evidence, not a theorem check",
        },
        runtime_ms=(time.perf_counter() - t0) * 1000,
    )
