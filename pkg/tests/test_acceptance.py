"""Acceptance suite: every counting formula and theorem at desk scale.

Each test prints one PASS/FAIL line per criterion (run with -s to see them).
All equalities are exact integer matches; the only tolerances are the stated
wall-clock budgets.
"""

from __future__ import annotations

import itertools
import json
import random
import time

from twistfield import gf
from twistfield.algebra3 import (
    IsotopyClass,
    TwistedFieldSpec,
    det3,
    isotopy_class,
    pick_c_by_norm,
    to_structure_constants,
    valid_c_values,
)
from twistfield.engine import (
    PairVector,
    pair_normal_form,
    scan_all_nondegenerate,
    search_theorem_7_2_analogue,
    template_matches,
    verify_normal_forms,
    verify_split_theorem_3_1,
    verify_theorem_A,
    verify_theorem_B,
)
from twistfield.engine.census import (
    build_inventory,
    complementary_space_count,
    global_counts,
    line_profile,
    per_vector_profile,
)
from twistfield.linalg import identity_rows, intersect, mat_mul, span, subspace_sum
from twistfield.splitalbert import (
    SplitAlbertSpec,
    TriVector,
    char_poly_ratio,
    check_splitting_identity,
    lmat,
    rmat,
    rmat_inv,
    split_twisted_field,
)

V0 = PairVector((1, 0, 0), (0, 1, 0))


def report(criterion: str, ok: bool, detail: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {criterion}"
    if detail:
        line += f" -- {detail}"
    print(line)
    assert ok, line


def test_criterion_1_global_counts(alg3, inv3, alg4, inv4):
    t0 = time.perf_counter()
    got3 = global_counts(alg3, inventory=inv3).observed
    got4 = global_counts(alg4, inventory=inv4).observed
    ok = got3 == {"nondegenerate_vectors": 624, "degenerate_nonzero_vectors": 104,
                  "nondegenerate_spaces": 312, "degenerate_spaces": 4}
    ok = ok and got4 == {"nondegenerate_vectors": 3780, "degenerate_nonzero_vectors": 315,
                         "nondegenerate_spaces": 1260, "degenerate_spaces": 5}
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 30
    report("criterion 1: global counts q=3 (624/104/312/4) and q=4 (3780/315/1260/5)",
           ok, f"{elapsed:.2f}s")


def test_criterion_2_commutative_census_exhaustive(alg3, comm3):
    t0 = time.perf_counter()
    full = scan_all_nondegenerate(alg3, algebra_class=isotopy_class(comm3),
                                  with_lines=True, workers=1)
    inv = build_inventory(alg3)
    deg = complementary_space_count(alg3, PairVector((1, 2, 0), (2, 1, 0)), inventory=inv)
    elapsed = time.perf_counter() - t0
    ok = full.match and full.observed["vectors_checked"] == 624
    ok = ok and full.predicted["per_vector"]["vectors"] == {
        "dim3": 2, "dim2": 24, "dim1": 216,
        "dim0_nondegenerate": 382, "dim0_degenerate": 104,
    }
    ok = ok and deg == 315
    ok = ok and elapsed < 60
    report("criterion 2: q=3 commutative census, all 624 nondegenerate v "
           "(profile 2/24/216/382, lines 4x18+9x16, complement 195, degenerate 315)",
           ok, f"{elapsed:.1f}s single-threaded")


def test_criterion_3_noncommutative_census(tower4, tower5):
    t0 = time.perf_counter()
    ok = True
    for q, tower, cs in (
        (4, tower4, valid_c_values(tower4)),
        (5, tower5, [pick_c_by_norm(tower5, 2), pick_c_by_norm(tower5, 3)]),
    ):
        expect_vec = {
            "dim3": q - 1, "dim2": 0, "dim1": q * (q + 1) * (q**3 - 1),
            "dim0_nondegenerate": (q - 1) * (q**5 - 2 * q**3 - 3 * q**2 - 2 * q - 1),
            "dim0_degenerate": (q**3 - 1) * (q + 1), "zero_vector": 1,
        }
        for c in cs:
            spec = TwistedFieldSpec(tower, c)
            cls = isotopy_class(spec)
            ok = ok and cls is IsotopyClass.NON_COMMUTATIVE
            alg = to_structure_constants(spec)
            inv = build_inventory(alg, workers=4 if q == 5 else 1)
            prof = per_vector_profile(alg, V0, inventory=inv, algebra_class=cls)
            ok = ok and prof.match and prof.observed["vectors"] == expect_vec
            ok = ok and complementary_space_count(alg, V0, inventory=inv) == \
                q**5 - 2 * q**3 - 3 * q**2 - q
            lines = line_profile(alg, V0, inventory=inv, algebra_class=cls)
            ok = ok and lines.match
            degv = PairVector((1, 0, 0), (0, 0, 0))
            ok = ok and complementary_space_count(alg, degv, inventory=inv) == \
                q**2 * (q**3 + q**2 - 1)
            ok = ok and per_vector_profile(alg, degv, inventory=inv,
                                           algebra_class=cls).match
            if not ok:
                break
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 300
    report("criterion 3: noncommutative census q=4 (all 42 valid c, complement 844) "
           "and q=5 (N(c) in {2,3})", ok, f"{elapsed:.1f}s")


def test_criterion_4_theorem_A(tower3, alg3, alg4):
    t0 = time.perf_counter()
    v1 = verify_theorem_A(alg3)
    c_out = next(c for c in valid_c_values(tower3) if c >= 3)
    alg3b = to_structure_constants(TwistedFieldSpec(tower3, c_out))
    v2 = verify_theorem_A(alg3b)
    v3 = verify_theorem_A(alg4)
    ok = v1.passed and v2.passed and v3.passed
    ok = ok and v1.checked == 624 and v3.checked == 3780
    report("criterion 4: Av = Av' iff Fv = Fv', exhaustive at q=3 (both tensor classes) and q=4",
           ok, f"{time.perf_counter() - t0:.1f}s")


def test_criterion_5_theorem_B(tower3, tower4, tower5, comm3):
    t0 = time.perf_counter()
    ok = verify_theorem_B(comm3).passed
    minus_one5 = tower5.base.neg(1)
    ok = ok and verify_theorem_B(TwistedFieldSpec(tower5, pick_c_by_norm(tower5, minus_one5))).passed
    for c in valid_c_values(tower4):
        verdict = verify_theorem_B(TwistedFieldSpec(tower4, c))
        ok = ok and verdict.passed and not verdict.witnesses
        if not ok:
            break
    for target in (2, 3):
        verdict = verify_theorem_B(TwistedFieldSpec(tower5, pick_c_by_norm(tower5, target)))
        ok = ok and verdict.passed and not verdict.witnesses
    report("criterion 5: dim-2 witness at q=3/q=5 commutative; zero dim-2 pairs "
           "across full sweeps at q=4 (all c) and q=5 noncommutative",
           ok, f"{time.perf_counter() - t0:.1f}s")


def test_criterion_6_split_identities(comm3):
    t0 = time.perf_counter()
    # splitting identity, exhaustive at q=3
    stf = split_twisted_field(comm3)
    check_splitting_identity(stf, [(x, y) for x in range(27) for y in range(27)])
    ok = True
    # determinant formulas, exhaustive at q <= 5
    for q, d in ((3, (1, 1, 1)), (4, (1, 1, 2)), (5, (1, 2, 3))):
        fld = gf.Field.of_order(q)
        spec = SplitAlbertSpec(fld, d)
        one_plus_d = fld.add(1, spec.d_product)
        for x in itertools.product(range(q), repeat=3):
            expect = fld.mul(one_plus_d, fld.mul(x[0], fld.mul(x[1], x[2])))
            ok = ok and det3(fld, lmat(spec, TriVector("U", x)).rows) == expect
            ok = ok and det3(fld, rmat(spec, TriVector("V", x)).rows) == expect
    # characteristic roots: all regular pairs at q=3, 500 random pairs at q=7
    F3 = gf.Field.of_order(3)
    spec3 = SplitAlbertSpec(F3, (1, 1, 1))
    for y in itertools.product((1, 2), repeat=3):
        for y2 in itertools.product((1, 2), repeat=3):
            m = mat_mul(F3, rmat_inv(spec3, TriVector("V", y2)).rows,
                        rmat(spec3, TriVector("V", y)).rows)
            roots = char_poly_ratio(spec3, TriVector("V", y), TriVector("V", y2))
            tr = F3.add(F3.add(m[0][0], m[1][1]), m[2][2])
            e1 = F3.add(F3.add(roots[0], roots[1]), roots[2])
            ok = ok and tr == e1 and det3(F3, m) == F3.mul(roots[0], F3.mul(roots[1], roots[2]))
    F7 = gf.Field.of_order(7)
    spec7 = SplitAlbertSpec(F7, (2, 2, 3))
    rng = random.Random(7)
    for _ in range(500):
        y = tuple(rng.randrange(1, 7) for _ in range(3))
        y2 = tuple(rng.randrange(1, 7) for _ in range(3))
        m = mat_mul(F7, rmat_inv(spec7, TriVector("V", y2)).rows,
                    rmat(spec7, TriVector("V", y)).rows)
        roots = char_poly_ratio(spec7, TriVector("V", y), TriVector("V", y2))
        tr = F7.add(F7.add(m[0][0], m[1][1]), m[2][2])
        e1 = F7.add(F7.add(roots[0], roots[1]), roots[2])
        mins = 0
        for i, j in ((0, 1), (0, 2), (1, 2)):
            mins = F7.add(mins, F7.sub(F7.mul(m[i][i], m[j][j]), F7.mul(m[i][j], m[j][i])))
        e2 = 0
        for a, b in itertools.combinations(roots, 2):
            e2 = F7.add(e2, F7.mul(a, b))
        ok = ok and (tr, mins) == (e1, e2)
    # span-equality law, exhaustive at GF(3) and GF(4)
    ok = ok and verify_split_theorem_3_1(SplitAlbertSpec(F3, (1, 1, 1))).passed
    ok = ok and verify_split_theorem_3_1(SplitAlbertSpec(gf.Field.of_order(4), (1, 1, 2))).passed
    report("criterion 6: splitting identity (q=3 exhaustive), det formulas (q<=5), "
           "characteristic roots (q=3 exhaustive, 500 random q=7), span law (GF(3), GF(4))",
           ok, f"{time.perf_counter() - t0:.1f}s")


def test_criterion_7_normal_forms():
    t0 = time.perf_counter()
    ok = True
    for q in (2, 3):
        verdict = verify_normal_forms(gf.Field.of_order(q))
        ok = ok and verdict.passed and verdict.checked == q**8
        ok = ok and verdict.details["tag_counts"].get("I*", 0) > 0
    # printed representatives reproduce on pairs already in normal position
    F3 = gf.Field.of_order(3)
    ident = tuple(map(tuple, identity_rows(2)))
    for lam, mu_ in ((0, 0), (1, 2), (2, 2)):
        form = pair_normal_form(F3, ident, ((lam, 0), (0, mu_)))
        ok = ok and form.tag == "I" and form.rep == (ident, ((lam, 0), (0, mu_)))
        ok = ok and template_matches(F3, form)
    form = pair_normal_form(F3, ident, ((2, 0), (1, 2)))
    ok = ok and form.tag == "II" and form.rep[1] == ((2, 0), (1, 2))
    report("criterion 7: matrix-pair normal forms exhaustive over GF(2) and GF(3), "
           "tags verified incl. the I* deviation", ok, f"{time.perf_counter() - t0:.1f}s")


def test_criterion_8_property_suites(tower3, alg3, inv3):
    t0 = time.perf_counter()
    ok = True
    # field axioms at q=4 (the remaining orders are covered in test_gf)
    F4 = gf.Field.of_order(4)
    for a, b, c in itertools.product(range(4), repeat=3):
        ok = ok and F4.mul(a, F4.mul(b, c)) == F4.mul(F4.mul(a, b), c)
        ok = ok and F4.mul(a, F4.add(b, c)) == F4.add(F4.mul(a, b), F4.mul(a, c))
    # norm fibers
    for q in (2, 3, 4, 5):
        tower = gf.FieldTower.build(q)
        fibers = {}
        for x in tower.ext.elements():
            if x:
                fibers[tower.norm(x)] = fibers.get(tower.norm(x), 0) + 1
        ok = ok and set(fibers.values()) == {(q**3 - 1) // (q - 1)}
        ok = ok and len(fibers) == q - 1
    # RREF canonicity and the modular law (sampled; bulk versions in test_linalg)
    F5 = gf.Field.of_order(5)
    rng = random.Random(85)
    for _ in range(500):
        vecs = [tuple(rng.randrange(5) for _ in range(6)) for _ in range(3)]
        s1 = span(F5, 6, vecs)
        mixed = [tuple(F5.add(a, b) for a, b in zip(vecs[0], vecs[1]))] + vecs
        ok = ok and span(F5, 6, mixed) == s1
        s2 = span(F5, 6, [tuple(rng.randrange(5) for _ in range(6)) for _ in range(3)])
        ok = ok and s1.dim + s2.dim == intersect(s1, s2).dim + subspace_sum(s1, s2).dim
    # the section-6 facts live in test_engine_properties; spot-check one here
    from twistfield.engine.census import hit_span_conditions
    from twistfield.engine.spaces import dim_against, pair_rows
    from twistfield.linalg import rref_rows
    base_rows, base_pivots = rref_rows(alg3.field, pair_rows(alg3, V0.x, V0.y))
    for rec in inv3.spaces:
        d = dim_against(alg3.field, base_rows, base_pivots, rec.rows)
        if d in (1, 2):
            ok = ok and hit_span_conditions(alg3, V0, rec)
    report("criterion 8: property suites (field axioms, norm fibers, RREF canonicity, "
           "modular law, intersection span conditions)", ok,
           f"{time.perf_counter() - t0:.1f}s")


def test_criterion_9_determinism(alg3, comm3):
    t0 = time.perf_counter()
    cls = isotopy_class(comm3)
    outs = []
    for workers in (1, 2, 4):
        rep = scan_all_nondegenerate(alg3, algebra_class=cls, with_lines=False,
                                     workers=workers)
        payload = rep.to_json_dict()
        payload.pop("runtime_ms")
        outs.append(json.dumps(payload, sort_keys=True))
    ok = outs[0] == outs[1] == outs[2]
    profs = []
    for workers in (1, 3):
        rep = per_vector_profile(alg3, V0, algebra_class=cls, workers=workers)
        payload = rep.to_json_dict()
        payload.pop("runtime_ms")
        profs.append(json.dumps(payload, sort_keys=True))
    ok = ok and profs[0] == profs[1]
    report("criterion 9: identical census JSON for worker counts 1/2/4 (runtime_ms excluded)",
           ok, f"{time.perf_counter() - t0:.1f}s")
