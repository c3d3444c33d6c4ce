"""Height-s Honda formal group law at p = 2, by exact rational log/exp.

The logarithm is sum x^(2^(s*i)) / 2^i.  Its compositional inverse is found
degree by degree with undetermined coefficients, the law is
F = exp(log x + log y), and the two-series is [2](x) = exp(2 log x).  The
individual exp coefficients are not 2-integral (e_2 = -1/2 already at
s = 1), but every coefficient of F and of [2](x) must be: that is the
functional-equation property, enforced here as a hard error before the
reduction mod 2.  The reduced two-series v * x^(2^s) is the computational
witness that order-2 Euler classes u satisfy u^(2^s) = 0, which is where
the nilpotency relations of the group presentations come from.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .polyring import Monomial, PolyF2, VarTable

ONE = Fraction(1)


@dataclass(frozen=True)
class RationalSeries:
    """Truncated exact-rational series; keys are exponent tuples."""

    coefficients: Mapping[tuple[int, ...], Fraction]
    truncation: int


@dataclass(frozen=True)
class FglMod2:
    """The mod-2 law and its two-series, with v-weights attached."""

    F: PolyF2
    two_series: PolyF2


def law_table(s: int) -> VarTable:
    return VarTable(("x", "y"), (1, 1), -(2 ** s - 1))


def series_table(s: int) -> VarTable:
    return VarTable(("x",), (1,), -(2 ** s - 1))


def _check(s: int, N: int, minimum: int):
    if s < 1:
        raise ValueError("s must be at least 1")
    if N < minimum:
        raise ValueError(f"truncation must be at least {minimum}")


def honda_log(s: int, N: int) -> RationalSeries:
    """Logarithm with coefficient 1/2^i on x^(2^(s*i)), degree <= N."""
    _check(s, N, 1)
    coeffs = {}
    i = 0
    while 2 ** (s * i) <= N:
        coeffs[(2 ** (s * i),)] = Fraction(1, 2 ** i)
        i += 1
    return RationalSeries(coeffs, N)


def _mul(a, b, N):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(i + j for i, j in zip(ea, eb))
            if sum(e) > N:
                continue
            c = out.get(e, 0) + ca * cb
            if c:
                out[e] = c
            else:
                out.pop(e, None)
    return out


def _exp_coefficients(s: int, N: int) -> dict[int, Fraction]:
    """Compositional inverse of the logarithm, degree by degree.

    log(exp t) = t forces, at each degree d >= 2, e_d to cancel the
    contribution of the higher logarithm terms evaluated on the partial
    exp; only e_d itself enters through the leading log term.
    """
    log = honda_log(s, N)
    e = {1: ONE}
    for d in range(2, N + 1):
        partial = {(k,): v for k, v in e.items()}
        total = Fraction(0)
        for (m,), c in log.coefficients.items():
            if m == 1 or m > d:
                continue
            power = {(0,): ONE}
            for _ in range(m):
                power = _mul(power, partial, d)
            total += c * power.get((d,), 0)
        if total:
            e[d] = -total
    # safety: the inverse property itself, cheap at these sizes
    partial = {(k,): v for k, v in e.items()}
    check = {}
    for (m,), c in log.coefficients.items():
        power = {(0,): ONE}
        for _ in range(m):
            power = _mul(power, partial, N)
        for k, v in power.items():
            acc = check.get(k, 0) + c * v
            if acc:
                check[k] = acc
            else:
                check.pop(k, None)
    assert check == {(1,): ONE}, "exp does not invert log"
    return e


_EXP_CACHE: dict[tuple[int, int], dict[int, Fraction]] = {}


def _exp_of(series, s: int, N: int):
    """exp evaluated on a rational series with zero constant term."""
    if (s, N) not in _EXP_CACHE:
        _EXP_CACHE[(s, N)] = _exp_coefficients(s, N)
    exp = _EXP_CACHE[(s, N)]
    out = {}
    power = {tuple(0 for _ in next(iter(series))): ONE}
    for d in range(1, N + 1):
        power = _mul(power, series, N)
        ed = exp.get(d)
        if not ed:
            continue
        for e, c in power.items():
            acc = out.get(e, 0) + ed * c
            if acc:
                out[e] = acc
            else:
                out.pop(e, None)
    return out


def _reduce_mod2(coeffs, table: VarTable, s: int, what: str) -> PolyF2:
    """2-integrality gate, mod-2 reduction, v-weight attachment.

    A degree-d monomial carries v-exponent (d - 1) / (2^s - 1); a slot where
    that is not an integer must hold an even coefficient, or the law would
    not be homogeneous of halved degree 1.
    """
    period = 2 ** s - 1
    monos = []
    for exps, c in coeffs.items():
        if c.denominator % 2 == 0:
            raise ValueError(
                f"{what}: coefficient {c} of {exps} is not 2-integral; "
                "the functional-equation property failed")
        if c.numerator % 2 == 0:
            continue
        d = sum(exps)
        k, r = divmod(d - 1, period)
        if r:
            raise ValueError(
                f"{what}: odd coefficient at degree {d}, which admits no "
                "integral v-exponent; the law is not graded")
        monos.append(Monomial(tuple(exps), k))
    return PolyF2(table, monos)


def fgl(s: int, N: int = 0) -> FglMod2:
    """The mod-2 Honda law F = exp(log x + log y), truncated at degree N.

    N defaults to 2^(s+1), the smallest window showing both the full
    two-series and the first corrections of the law.
    """
    N = N or 2 ** (s + 1)
    _check(s, N, 2)
    log = honda_log(s, N)
    both = {}
    for (m,), c in log.coefficients.items():
        both[(m, 0)] = c
        both[(0, m)] = c
    F = _reduce_mod2(_exp_of(both, s, N), law_table(s), s, "F")
    return FglMod2(F, two_series(s, N))


def two_series(s: int, N: int = 0) -> PolyF2:
    """[2](x) = exp(2 log x) mod 2; expected to be exactly v * x^(2^s)."""
    N = N or 2 ** (s + 1)
    _check(s, N, 2 ** s)
    doubled = {e: 2 * c for e, c in honda_log(s, N).coefficients.items()}
    return _reduce_mod2(_exp_of(doubled, s, N), series_table(s), s, "[2](x)")


def _truncate(p: PolyF2, N: int) -> PolyF2:
    return PolyF2(p.table, (m for m in p.monos if sum(m.exps) <= N))


def _compose(F: PolyF2, a: PolyF2, b: PolyF2, N: int) -> PolyF2:
    """F(a, b) over a and b's table, truncated at total degree N."""
    table = a.table
    out = PolyF2.zero(table)
    for m in F.monos:
        i, j = m.exps
        term = PolyF2.one(table, m.v_exp)
        for _ in range(i):
            term = _truncate(term * a, N)
        for _ in range(j):
            term = _truncate(term * b, N)
        out = out + term
    return out


def associativity_check(s: int, N: int = 0) -> bool:
    """F(F(x, y), z) = F(x, F(y, z)) as truncated trivariate polynomials."""
    N = N or 2 ** (s + 1)
    _check(s, N, 3)
    F = fgl(s, N).F
    t3 = VarTable(("x", "y", "z"), (1, 1, 1), -(2 ** s - 1))
    def embed(p, where):
        return PolyF2(t3, (Monomial(where(m.exps), m.v_exp) for m in p.monos))
    fxy = embed(F, lambda e: (e[0], e[1], 0))
    fyz = embed(F, lambda e: (0, e[0], e[1]))
    x3 = PolyF2.variable(t3, "x")
    z3 = PolyF2.variable(t3, "z")
    return _compose(F, fxy, z3, N) == _compose(F, x3, fyz, N)
