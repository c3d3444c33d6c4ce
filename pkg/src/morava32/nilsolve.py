"""Two independent constructions of x1 and y1, cross-checked.

The defining equations are implicit (x1 occurs on both sides), so the
presentation adjoins x1, y1 as honest generators.  This module shows they
are redundant: a fixed-point iteration driven by nilpotency of x2 and y2
converges to an expression in the remaining six variables, and a
block-elimination Groebner basis produces one independently.  Agreement of
the two modulo the ideal is the evidence that the adjoined generators do
not change the ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .groebner import ReducedGB, buchberger, dimension, normal_form
from .polyring import PolyF2, codec, substitute
from .presentations import Presentation, elimination_order, forget_v

FRONT = ("x1", "y1")


@dataclass(frozen=True)
class FixedPointResult:
    """Outcome of the fixed-point iteration for one adjoined variable.

    solution is free of x1 and y1; stabilized is False when the iteration
    cap was hit without two consecutive iterates agreeing in the quotient,
    which would falsify the nilpotence argument behind convergence.
    """

    solution: PolyF2
    iterations: int
    stabilized: bool


def _rhs(pres: Presentation, which: str) -> PolyF2:
    # the defining relation is  which + rhs,  so adding which isolates rhs
    rel = pres.relation("def_" + which)
    return rel.drop_v() + PolyF2.variable(rel.table, which)


def _free_of_front(p: PolyF2) -> bool:
    ix = p.table.index("x1")
    iy = p.table.index("y1")
    return all(m.exps[ix] == 0 and m.exps[iy] == 0 for m in p.monos)


def solve_fixed_point(which: str, pres: Presentation,
                      gb: ReducedGB) -> FixedPointResult:
    """Iterate candidate <- rhs(candidate) until the quotient class repeats.

    Both adjoined variables are iterated jointly from 0.  Each step
    substitutes the current pair into the right-hand sides; the iterate is
    kept small by reducing against only the x1-, y1-free elements of the
    basis, which cannot reintroduce the front variables.  Reducing against
    the full basis would: x1 itself is a standard monomial under the default
    order, so a full normal form rewrites the candidate back through x1 and
    the iteration then oscillates on representatives instead of converging.
    Stabilization is detected on full normal forms, where consecutive
    iterates equal in the quotient certify a fixed point; the cap is
    4 * 2^s steps, comfortably past the nilpotency index that drives the
    contraction.
    """
    if which not in FRONT:
        raise ValueError(f"which must be one of {FRONT}, not {which!r}")
    rhs = {name: _rhs(pres, name) for name in FRONT}
    free = ReducedGB(gb.table, gb.order,
                     tuple(p for p in gb.basis if _free_of_front(p)))
    cand = {name: PolyF2.zero(gb.table) for name in FRONT}
    cls = {name: PolyF2.zero(gb.table) for name in FRONT}
    cap = 4 * 2 ** pres.s
    for step in range(1, cap + 1):
        nxt = {name: normal_form(substitute(rhs[name], cand), free)
               for name in FRONT}
        nxt_cls = {name: normal_form(nxt[name], gb) for name in FRONT}
        if nxt_cls == cls:
            return FixedPointResult(cand[which], step, True)
        cand, cls = nxt, nxt_cls
    return FixedPointResult(cand[which], cap, False)


def defining_residual(which: str, pres: Presentation, gb: ReducedGB,
                      solutions: dict[str, PolyF2]) -> PolyF2:
    """NF of the defining relation with the solutions substituted in.

    Zero is the fixed-point property; anything else means the iteration
    settled on a non-solution.
    """
    rel = pres.relation("def_" + which).drop_v()
    return normal_form(substitute(rel, solutions), gb)


def eliminate(which: str, pres: Presentation,
              elim_gb: Optional[ReducedGB] = None) -> PolyF2:
    """Expression r in the six back variables with which + r in the ideal.

    Under the block order with front {x1, y1}, the reduced basis of a
    presentation where both variables are redundant contains elements with
    leading terms exactly x1 and y1; their tails are automatically standard,
    hence free of the front block.  The absence of such an element means the
    variable is not expressible and raises.
    """
    if which not in FRONT:
        raise ValueError(f"which must be one of {FRONT}, not {which!r}")
    if elim_gb is None:
        elim_gb = elimination_gb(pres)
    table = elim_gb.table
    cod = codec(table, elim_gb.order)
    target = PolyF2.variable(table, which)
    want = target.monos[0]
    for p in elim_gb.basis:
        lead = max(p.monos, key=lambda m: cod.key(m.exps))
        if lead == want:
            r = p + target
            if not _free_of_front(r):
                raise ValueError(
                    f"basis element for {which} has a tail touching the "
                    f"front block; {which} is not eliminable")
            return r
    raise ValueError(f"no basis element with leading term {which}; "
                     f"{which} is not eliminable")


def elimination_gb(pres: Presentation) -> ReducedGB:
    """Reduced basis of the v-forgotten ideal under the x1, y1 front block."""
    nv = forget_v(pres)
    return buchberger(nv.polynomials(), elimination_order(nv.table))


def least_power_in_ideal(name: str, gb: ReducedGB, cap: int) -> int:
    """Least N with name^N in the ideal; the nilpotency exponent.

    Raises if no power up to cap lands in the ideal, which for x2 and y2
    would undercut the convergence argument of the fixed-point iteration.
    """
    x = PolyF2.variable(gb.table, name)
    p = PolyF2.one(gb.table)
    for n in range(1, cap + 1):
        p = p * x
        if not normal_form(p, gb):
            return n
    raise ValueError(f"{name}^N stays outside the ideal for all N <= {cap}")


def eliminated_dimension(pres: Presentation,
                         elim_gb: Optional[ReducedGB] = None) -> int:
    """Quotient dimension after substituting away x1 and y1.

    Drops the two defining relations, substitutes the eliminated
    expressions into the rest, removes the two variables from the table,
    and measures the quotient again.  Equality with the full presentation's
    dimension is the evidence that adjoining x1, y1 changed nothing.
    """
    if elim_gb is None:
        elim_gb = elimination_gb(pres)
    exprs = {name: eliminate(name, pres, elim_gb) for name in FRONT}
    nv = forget_v(pres)
    rels = []
    for name in nv.relation_names():
        if name in ("def_x1", "def_y1"):
            continue
        p = substitute(nv.relation(name), exprs)
        for gone in FRONT:
            p = p.drop_var(gone)
        if p:
            rels.append(p)
    return dimension(buchberger(rels))
