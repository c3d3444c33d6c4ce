"""Acceptance gate: one test per published claim, at stated budgets.

Each case prints a single [criterion N] PASS/FAIL line (visible with -s,
and in the failure report otherwise).  The s = 3 dimension stretch runs
only when ACCEPTANCE_S3=1 is set in the environment.
"""

import os
import random
import time

import pytest

from morava32 import honda_fgl as hf
from morava32 import nilsolve as ns
from morava32.census import chi, chi_restriction, family_totals, \
    reassembly_identity
from morava32.groebner import buchberger, dimension, dimension_oracle, \
    normal_form, staircase
from morava32.polyring import Monomial, MonomialOrder, PolyF2, VarTable, \
    halved_degree, to_text
from morava32.presentations import GROUPS, build, default_order, forget_v, \
    homogeneity_audit, membership_targets, restrict_c0

CHI = {1: 14, 2: 184, 3: 2528}
RESTRICTION = {1: 10, 2: 136}
BUDGET = {1: 1.0, 2: 300.0, 3: 3600.0}


def line(n, ok, msg):
    print(f"[criterion {n}] {'PASS' if ok else 'FAIL'}: {msg}")
    return ok


def fresh_gb(group, s):
    nv = forget_v(build(group, s))
    return buchberger(nv.polynomials(), default_order(nv.table))


@pytest.mark.parametrize("s", (1, 2))
@pytest.mark.parametrize("group", GROUPS)
def test_criterion_1_dimension(group, s):
    start = time.perf_counter()
    dim = dimension(fresh_gb(group, s))
    elapsed = time.perf_counter() - start
    ok = dim == CHI[s] and elapsed < BUDGET[s]
    assert line(1, ok, f"{group} s={s} dim {dim} (expected {CHI[s]}) "
                f"in {elapsed:.2f}s (budget {BUDGET[s]:.0f}s)"), \
        f"dimension {dim} != {CHI[s]} or over budget ({elapsed:.2f}s)"


@pytest.mark.skipif(os.environ.get("ACCEPTANCE_S3") != "1",
                    reason="stretch target, set ACCEPTANCE_S3=1")
@pytest.mark.parametrize("group", GROUPS)
def test_criterion_1_dimension_s3(group):
    dim = dimension(fresh_gb(group, 3))
    assert line(1, dim == CHI[3], f"{group} s=3 dim {dim}"), dim


@pytest.mark.parametrize("s", (1, 2))
@pytest.mark.parametrize("group", GROUPS)
def test_criterion_2_restriction(group, s):
    rpres = restrict_c0(forget_v(build(group, s)))
    dim = dimension(buchberger(rpres.polynomials(),
                               default_order(rpres.table)))
    ok = dim == RESTRICTION[s]
    assert line(2, ok, f"{group} s={s} c=0 dim {dim} "
                f"(expected {RESTRICTION[s]})"), dim


@pytest.mark.parametrize("s", (1, 2))
@pytest.mark.parametrize("group", GROUPS)
def test_criterion_3_memberships(group, s, gbs):
    gb = gbs(group, s)
    bad = []
    for name, target in membership_targets(build(group, s)):
        nf = normal_form(target, gb)
        if nf:
            bad.append(f"{name}: normal form {to_text(nf, gb.order)}")
    ok = line(3, not bad,
              f"{group} s={s} all four claimed relations reduce to 0"
              if not bad else f"{group} s={s} " + "; ".join(bad))
    assert ok, (
        f"{group} s={s}: {'; '.join(bad)}. The power relations for x1/y1 "
        "fail exactly at s = 1 and exactly for the groups whose defining "
        "power relation carries the extra a*b*c^(2^s - 1) correction term: "
        "the defect is congruent to a*b*c, which survives reduction only "
        "when 2^s - 1 = 1 (shown above as its normal form). At s >= 2 "
        "nilpotency of c kills it and every membership holds. Dimension, "
        "restriction, elimination, and census checks pass at every s, so "
        "the defect is confined to these stated power identities.")


@pytest.mark.parametrize("s", (1, 2))
@pytest.mark.parametrize("group", GROUPS)
def test_criterion_4_elimination(group, s, gbs):
    pres, gb = build(group, s), gbs(group, s)
    egb = ns.elimination_gb(pres)
    exprs = {n: ns.eliminate(n, pres, egb) for n in ns.FRONT}
    fixed = {n: ns.solve_fixed_point(n, pres, gb) for n in ns.FRONT}
    sols = {n: f.solution for n, f in fixed.items()}
    ix, iy = gb.table.index("x1"), gb.table.index("y1")
    eliminated = all(
        all(m.exps[ix] == 0 and m.exps[iy] == 0 for m in p.monos)
        for p in exprs.values())
    stabilized = all(f.stabilized for f in fixed.values())
    residuals = all(not ns.defining_residual(n, pres, gb, sols)
                    for n in ns.FRONT)
    agree = all(not normal_form(sols[n] + exprs[n], gb) for n in ns.FRONT)
    ok = eliminated and stabilized and residuals and agree
    assert line(4, ok, f"{group} s={s} eliminated={eliminated} "
                f"stabilized={stabilized} residuals_zero={residuals} "
                f"routes_agree={agree}")


def test_criterion_5_oracle_on_presentations(gbs):
    for group in GROUPS:
        nv = forget_v(build(group, 1))
        gb = gbs(group, 1)
        bound = max(m.degree() for m in staircase(gb).monomials)
        left, right = dimension(gb), dimension_oracle(nv.polynomials(), bound)
        assert line(5, left == right,
                    f"{group} s=1 dimension {left} == oracle {right}"), \
            (left, right)


def test_criterion_5_oracle_on_random_ideals():
    rng = random.Random(7)
    names = ("x", "y", "z", "w")
    checked = 0
    while checked < 20:
        nvars = rng.randint(2, 4)
        table = VarTable(names[:nvars], (1,) * nvars, -1)
        rels = []
        for _ in range(rng.randint(2, 5)):
            terms = set()
            for _ in range(rng.randint(1, 4)):
                exps = [0] * nvars
                for _ in range(rng.randint(0, 4)):
                    exps[rng.randrange(nvars)] += 1
                terms.add(tuple(exps))
            p = PolyF2(table, [Monomial(e) for e in terms])
            if p:
                rels.append(p)
        if not rels:
            continue
        gb = buchberger(rels, MonomialOrder.degrevlex(table.names))
        st = staircase(gb, cap=64)
        if st.status != "complete":
            continue
        bound = max((m.degree() for m in st.monomials), default=0)
        if dimension(gb) != dimension_oracle(rels, bound):
            assert line(5, False, f"random ideal #{checked} disagrees")
        checked += 1
    assert line(5, True, f"{checked} random ideals: dimension == oracle")


@pytest.mark.parametrize("group", GROUPS)
def test_criterion_6_determinism(group, gbs):
    reference = gbs(group, 1).basis
    nv = forget_v(build(group, 1))
    order = default_order(nv.table)
    rng = random.Random(13)
    rels = list(nv.polynomials())
    for _ in range(10):
        rng.shuffle(rels)
        assert buchberger(rels, order).basis == reference
    assert line(6, True, f"{group} s=1 reduced basis identical over "
                "10 shuffles")


def test_criterion_7_fgl_witnesses():
    start = time.perf_counter()
    for s in (1, 2, 3):
        law = hf.fgl(s)  # constructing it asserts 2-integral reduction
        t = law.F.table
        assert to_text(law.two_series) == f"v^1*x^{2 ** s}"
        assert law.F.substitute({"x": PolyF2.variable(t, "y"),
                                 "y": PolyF2.variable(t, "x")}) == law.F
        assert law.F.substitute({"y": PolyF2.zero(t)}) == \
            PolyF2.variable(t, "x")
        assert hf.associativity_check(s)
        assert halved_degree(law.F) == 1
    elapsed = time.perf_counter() - start
    assert line(7, elapsed < 1.0,
                f"two-series, symmetry, unit, associativity for s=1..3 "
                f"in {elapsed:.3f}s (budget 1s)"), elapsed


def test_criterion_8_census():
    for s in range(1, 17):
        assert reassembly_identity(s), s
        assert (16 ** s - 4 ** s) // 2 + 4 ** s * 2 ** s == chi(s), s
        for group in GROUPS:
            rep = family_totals(group, s)
            assert rep.total_from_ranges == chi_restriction(s), (group, s)
            expected_flags = ("w^i*o^j*x^k*y^l", "w^i*o^j*x^k*y^l*T") \
                if group == "g38" else ()
            assert rep.mismatched_labels == expected_flags, (group, s)
    assert line(8, True, "totals, reassembly, and the flagged g38 "
                "stated-cardinality mismatch for s = 1..16")


def test_criterion_9_homogeneity():
    for group in GROUPS:
        for s in (1, 2, 3, 4):
            degrees = homogeneity_audit(build(group, s))
            assert len(degrees) == 17, (group, s)
    assert line(9, True, "all 17 relations homogeneous for every group, "
                "s = 1..4, with wt(v) = -(2^s - 1)")
