"""Ring presentations for the four order-32 groups g38, g39, g40, g41.

Eight generators with halved degrees a, b, c, x1, y1 = 1 and x2, y2, T = 2;
the unit v carries halved degree -(2^s - 1), so every relation below is
homogeneous (audited, not assumed).  x1 and y1 are adjoined as generators
together with the two defining relations def_x1 and def_y1 that express them
in the others; the nilsolve module checks that this adjunction is honest.

The relation tails that differ between the groups are the pow_x2 / pow_y2
power rules and the def_x1 / def_y1 defining rules; everything else is shared.
"""

from __future__ import annotations

from dataclasses import dataclass

from .polyring import (
    InhomogeneousError,
    Monomial,
    MonomialOrder,
    PolyF2,
    VarTable,
    halved_degree,
    to_text,
)

GROUPS = ("g38", "g39", "g40", "g41")

VAR_NAMES = ("a", "b", "c", "x1", "x2", "y1", "y2", "T")
HALVED_DEGREES = (1, 1, 1, 1, 2, 1, 2, 2)

# degrevlex precedence used everywhere by default
DEFAULT_PRECEDENCE = ("T", "x1", "y1", "x2", "y2", "a", "b", "c")

RELATION_NAMES = (
    "nil_a", "nil_b", "nil_c",
    "c_x", "c_y", "a_x", "b_y",
    "cross_bx", "cross_ay",
    "t_quad", "t_a", "t_b", "ct",
    "pow_x2", "pow_y2",
    "def_x1", "def_y1",
)


def make_table(s: int) -> VarTable:
    if s < 1:
        raise ValueError("the height s must be at least 1")
    return VarTable(VAR_NAMES, HALVED_DEGREES, -(2 ** s - 1))


def default_order(table: VarTable) -> MonomialOrder:
    return MonomialOrder.degrevlex(
        tuple(n for n in DEFAULT_PRECEDENCE if n in table.names))


def elimination_order(table: VarTable) -> MonomialOrder:
    """Block order putting x1, y1 in front, degrevlex within each block."""
    return MonomialOrder.block(
        ("x1", "y1"), tuple(n for n in DEFAULT_PRECEDENCE if n in table.names))


@dataclass(frozen=True)
class Presentation:
    group: str
    s: int
    table: VarTable
    relations: tuple[tuple[str, PolyF2], ...]

    def relation(self, name: str) -> PolyF2:
        for n, p in self.relations:
            if n == name:
                return p
        raise KeyError(f"no relation named {name!r}")

    def relation_names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.relations)

    def polynomials(self) -> tuple[PolyF2, ...]:
        return tuple(p for _, p in self.relations)


def _mono(table, v_exp=0, **pows):
    exps = [0] * len(table)
    for name, e in pows.items():
        exps[table.index(name)] = e
    return PolyF2(table, (Monomial(tuple(exps), v_exp),))


def euler_shift(table: VarTable, s: int, u: str, kind: str) -> PolyF2:
    """u + u1 + v * sum over 0 < i < s of u^(2^s - 2^i) * u2^(2^(i-1)).

    kind "x" uses the pair (x1, x2), kind "y" the pair (y1, y2); the sum is
    empty at s = 1.  Every term has halved degree 1.
    """
    u1, u2 = ("x1", "x2") if kind == "x" else ("y1", "y2")
    p = _mono(table, **{u: 1}) + _mono(table, **{u1: 1})
    for i in range(1, s):
        p = p + _mono(table, v_exp=1, **{u: 2 ** s - 2 ** i, u2: 2 ** (i - 1)})
    return p


def build(group: str, s: int) -> Presentation:
    """The 17 named relations of one group at one height."""
    if group not in GROUPS:
        raise ValueError(f"unknown group {group!r}; expected one of {GROUPS}")
    t = make_table(s)
    q = 2 ** s
    h = 2 ** (s - 1)

    def m(v_exp=0, **pows):
        return _mono(t, v_exp, **pows)

    x_a = euler_shift(t, s, "a", "x")
    x_c = euler_shift(t, s, "c", "x")
    y_b = euler_shift(t, s, "b", "y")
    y_c = euler_shift(t, s, "c", "y")

    if group == "g38":
        pow_x2_tail = m(c=2) + m(a=1, c=1)
    else:
        pow_x2_tail = m(a=2) + m(b=2) + m(a=1, c=1) + m(v_exp=1, a=1, b=1, c=q - 1)

    if group in ("g38", "g41"):
        pow_y2_tail = m(a=2) + m(b=1, c=1) + m(v_exp=1, a=1, b=1, c=q - 1)
    elif group == "g39":
        pow_y2_tail = m(b=2) + m(b=1, c=1)
    else:
        pow_y2_tail = m(b=2) + m(c=2) + m(b=1, c=1)

    if group == "g38":
        def_x1_tail = m(a=1)
    else:
        def_x1_tail = m(b=1) + m(c=1) + m(v_exp=1, b=h, c=h)

    if group == "g39":
        def_y1_tail = m(c=1)
    elif group == "g40":
        def_y1_tail = PolyF2.zero(t)
    else:
        def_y1_tail = (m(a=1) + m(b=1) + m(c=1)
                       + (m(a=1, b=1) + m(b=1, c=1) + m(a=1, c=1)) ** h * m(v_exp=1))

    relations = (
        ("nil_a", m(a=q)),
        ("nil_b", m(b=q)),
        ("nil_c", m(c=q)),
        ("c_x", m(c=1) * x_c),
        ("c_y", m(c=1) * y_c),
        ("a_x", m(a=1) * x_a),
        ("b_y", m(b=1) * y_b),
        ("cross_bx", x_c * y_b + m(v_exp=1, b=q - 1, T=1)),
        ("cross_ay", y_c * x_a + m(v_exp=1, a=q - 1, T=1)),
        ("t_quad", m(T=2) + m(T=1, x1=1, y1=1)
                 + m(x2=1, y1=1) * y_c + m(x1=1, y2=1) * x_c),
        ("t_a", m(T=1) * x_a + m(v_exp=1, a=q - 1, x2=1) * (m(c=1) + m(y1=1))),
        ("t_b", m(T=1) * y_b + m(v_exp=1, b=q - 1, y2=1) * (m(c=1) + m(x1=1))),
        ("ct", m(c=1, T=1)),
        ("pow_x2", m(v_exp=2, x2=q) + pow_x2_tail),
        ("pow_y2", m(v_exp=2, y2=q) + pow_y2_tail),
        ("def_x1", m(x1=1)
                 + (m(x2=1) + m(v_exp=1, x1=1, x2=h)) ** h * m(v_exp=1)
                 + def_x1_tail),
        ("def_y1", m(y1=1)
                 + (m(y2=1) + m(v_exp=1, y1=1, y2=h)) ** h * m(v_exp=1)
                 + def_y1_tail),
    )
    return Presentation(group, s, t, relations)


def homogeneity_audit(pres: Presentation) -> dict:
    """Halved degree of every relation; a mixed relation is a hard failure."""
    degrees = {}
    for name, p in pres.relations:
        try:
            degrees[name] = halved_degree(p)
        except InhomogeneousError as exc:
            (m1, d1), (m2, d2) = exc.witnesses
            raise InhomogeneousError(f"{name}: {m1}", d1, m2, d2) from None
    return degrees


def forget_v(pres: Presentation) -> Presentation:
    """Set v = 1 (every v_exp to 0) ahead of ideal computations.

    A collision, two monomials of one relation differing only in v_exp,
    would silently cancel and change the ideal; drop_v raises instead.
    """
    return Presentation(
        pres.group, pres.s, pres.table,
        tuple((name, p.drop_v()) for name, p in pres.relations))


def restrict_c0(pres: Presentation) -> Presentation:
    """Substitute c = 0, drop vanished relations, remove c from the table."""
    zero = PolyF2.zero(pres.table)
    kept = []
    for name, p in pres.relations:
        q = p.substitute({"c": zero})
        if q:
            kept.append((name, q.drop_var("c")))
    return Presentation(pres.group, pres.s, pres.table.without("c"), tuple(kept))


def membership_targets(pres: Presentation) -> tuple[tuple[str, PolyF2], ...]:
    """Derived identities that must lie in the ideal (v-free)."""
    t = pres.table
    s = pres.s
    q = 2 ** s
    h = 2 ** (s - 1)

    def m(**pows):
        return _mono(t, 0, **pows)

    return (
        ("a2c_ac2", m(a=2, c=1) + m(a=1, c=2)),
        ("b2c_bc2", m(b=2, c=1) + m(b=1, c=2)),
        ("x1_power", m(x1=q) + m(a=h, c=h)),
        ("y1_power", m(y1=q) + m(b=h, c=h)),
    )


def dump_text(pres: Presentation) -> str:
    """group=, s=, vweight= headers, then one name: polynomial line each."""
    order = default_order(pres.table)
    lines = [
        f"group={pres.group}",
        f"s={pres.s}",
        f"vweight={pres.table.v_weight}",
    ]
    lines.extend(f"{name}: {to_text(p, order)}" for name, p in pres.relations)
    return "\n".join(lines) + "\n"
