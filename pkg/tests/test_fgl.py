"""Mod-2 law witnesses against an independent exact-rational oracle."""

from fractions import Fraction

import pytest
from sympy import QQ, Rational
from sympy.polys.rings import ring

from morava32 import honda_fgl as hf
from morava32.polyring import PolyF2, halved_degree, to_text


def law_via_reversion(s, N):
    """Reference route: undetermined-coefficient inversion over sympy QQ.

    Returns the mod-2 law rendered in the text grammar, or raises if a
    coefficient that survives reduction has even denominator or sits in a
    degree with no integral v-exponent.
    """
    R, x, y = ring("x,y", QQ)
    Rt, u = ring("u", QQ)

    def logof(var, S):
        i, out = 0, S.zero
        while 2 ** (s * i) <= N:
            out += var ** (2 ** (s * i)) / Rational(2 ** i)
            i += 1
        return out

    logu = logof(u, Rt)
    e = {1: Rational(1)}
    powers = {1: logu}
    for d in range(2, N + 1):
        powers[d] = powers[d - 1] * logu
        e[d] = -sum((e[k] * powers[k].coeff(u ** d) for k in range(1, d)),
                    Rational(0))
    t = logof(x, R) + logof(y, R)

    def trunc(p):
        return sum((c * R({m: 1}) for m, c in p.terms() if sum(m) <= N),
                   R.zero)

    F, pw = R.zero, R.one
    for d in range(1, N + 1):
        pw = trunc(pw * t)
        F += e[d] * pw

    kept = []
    for mon, c in F.terms():
        assert int(c.denominator) % 2 == 1, (mon, c)
        if int(c.numerator) % 2:
            k, r = divmod(sum(mon) - 1, 2 ** s - 1)
            assert r == 0, (mon, sum(mon))
            kept.append((mon, k))
    terms = []
    for mon, k in sorted(kept, key=lambda t: (sum(t[0]), t[0]), reverse=True):
        fs = ([f"v^{k}"] if k else []) + \
            [f"{n}^{p}" if p > 1 else n for n, p in zip("xy", mon) if p]
        terms.append("*".join(fs) or "1")
    return " + ".join(terms)


@pytest.mark.parametrize("s,n", [(1, 8), (2, 8), (3, 16)])
def test_law_matches_rational_reversion(s, n):
    assert to_text(hf.fgl(s, n).F) == law_via_reversion(s, n)


def test_frozen_small_laws():
    assert to_text(hf.fgl(1, 4).F) == \
        "v^2*x^2*y + v^2*x*y^2 + v^1*x*y + x + y"
    assert to_text(hf.fgl(2, 4).F) == "v^1*x^2*y^2 + x + y"
    assert to_text(hf.fgl(1, 8).F) == (
        "v^7*x^5*y^3 + v^7*x^3*y^5 + v^6*x^5*y^2 + v^6*x^4*y^3 + "
        "v^6*x^3*y^4 + v^6*x^2*y^5 + v^5*x^4*y^2 + v^5*x^2*y^4 + "
        "v^4*x^4*y + v^4*x*y^4 + v^2*x^2*y + v^2*x*y^2 + v^1*x*y + x + y")


@pytest.mark.parametrize("s", (1, 2, 3))
def test_two_series_witness(s):
    expected = f"v^1*x^{2 ** s}"
    assert to_text(hf.two_series(s)) == expected
    assert to_text(hf.two_series(s, 2 ** (s + 1))) == expected
    assert to_text(hf.fgl(s).two_series) == expected


@pytest.mark.parametrize("s", (1, 2, 3))
def test_two_series_is_the_diagonal(s):
    # doubling the log is one route; substituting y = x in F is another
    law = hf.fgl(s)
    t = law.F.table
    diag = law.F.substitute({"y": PolyF2.variable(t, "x")})
    assert to_text(diag) == to_text(law.two_series)


@pytest.mark.parametrize("s", (1, 2, 3))
def test_symmetric_and_unital(s):
    law = hf.fgl(s)
    t = law.F.table
    swapped = law.F.substitute({"x": PolyF2.variable(t, "y"),
                                "y": PolyF2.variable(t, "x")})
    assert swapped == law.F
    assert law.F.substitute({"y": PolyF2.zero(t)}) == \
        PolyF2.variable(t, "x")


@pytest.mark.parametrize("s", (1, 2, 3))
def test_associative(s):
    assert hf.associativity_check(s)


@pytest.mark.parametrize("s", (1, 2, 3))
def test_halved_degree_one(s):
    assert halved_degree(hf.fgl(s).F) == 1
    assert halved_degree(hf.two_series(s)) == 1


def test_honda_log_coefficients():
    log = hf.honda_log(2, 16)
    assert log.truncation == 16
    assert log.coefficients[(1,)] == Fraction(1)
    assert log.coefficients[(4,)] == Fraction(1, 2)
    assert log.coefficients[(16,)] == Fraction(1, 4)
    assert (2,) not in log.coefficients
    assert all(e[0] <= 16 for e in log.coefficients)


def test_validation():
    with pytest.raises(ValueError):
        hf.two_series(1, 1)  # below the degree of the leading witness
    with pytest.raises(ValueError):
        hf.fgl(0)
    t = hf.law_table(2)
    assert t.names == ("x", "y") and t.v_weight == -3
    assert hf.series_table(3).v_weight == -7
