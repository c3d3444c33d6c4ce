"""Groebner bases over F2 on packed monomial keys.

Polynomials are held as sets of packed integer keys (see
polyring.MonomialCodec), so adding is set symmetric difference, the leading
term is max(), and divisibility is one masked subtraction.  Buchberger runs
with the Gebauer-Moeller pair update (the coprime and chain criteria), normal
pair selection (minimal lcm in the order), immediate full tail reduction, and
a final autoreduction, so the returned basis is the reduced Groebner basis:
unique, hence independent of the order in which relations arrive.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .polyring import (
    Monomial,
    MonomialOrder,
    PolyF2,
    VarTable,
    codec,
    parse,
    to_text,
)


class ResourceLimitError(RuntimeError):
    """A size budget was exceeded; carries the pair queue size at abort."""

    def __init__(self, message: str, pair_queue: int):
        super().__init__(f"{message} (pair queue size {pair_queue})")
        self.pair_queue = pair_queue


class InfiniteQuotientError(ValueError):
    """The staircase is certainly infinite (some variable has no pure power)."""


class IndeterminateError(ValueError):
    """A cap or degree bound was too small to certify the answer."""


class CacheMismatchError(ValueError):
    """A Groebner cache file does not match the expected header."""


@dataclass(frozen=True)
class ReducedGB:
    """The reduced Groebner basis, sorted descending by leading term."""

    table: VarTable
    order: MonomialOrder
    basis: tuple[PolyF2, ...]


@dataclass(frozen=True)
class Staircase:
    """Standard monomials of an ideal, with a completeness certificate.

    status is "complete" (every standard monomial listed), "infinite"
    (some variable has no pure power among the leading terms, so all its
    powers are standard), or "indeterminate" (the degree cap was reached
    while levels were still producing monomials; raise the cap).
    """

    monomials: tuple[Monomial, ...]
    status: str
    cap: int
    detail: str = ""


# -- packed engine ---------------------------------------------------------


def _elem(keys, cod):
    lt = max(keys)
    return lt, (lt & cod.expmask) | cod.guards, tuple(keys)


def _nf_keys(keys, elems, cod):
    """Full normal form of a key set against (lt, guarded-lt, body) elements.

    Always rewrites the largest reducible monomial, using the first divisor
    in element order, so the result is a function of the inputs alone.
    """
    expmask = cod.expmask
    guards = cod.guards
    work = set(keys)
    out = []
    while work:
        m = max(work)
        mexp = m & expmask
        for lt, ah, body in elems:
            if lt <= m and (ah - mexp) & guards == guards:
                delta = m - lt
                work ^= {k + delta for k in body}
                break
        else:
            work.remove(m)
            out.append(m)
    return frozenset(out)


def _spoly(e1, e2, cod):
    lt1, _, b1 = e1
    lt2, _, b2 = e2
    l = cod.lcm(lt1, lt2)
    d1 = l - lt1
    d2 = l - lt2
    return {k + d1 for k in b1} ^ {k + d2 for k in b2}


def _update(G, P, keys, cod):
    """Gebauer-Moeller update: append the new element, prune the pair set."""
    t = max(keys)
    lcm_with = [cod.lcm(g[0], t) for g in G]
    newP = []
    # chain criterion on old pairs: drop (i, j) once t divides their lcm,
    # unless the pair shares its lcm with one of the replacing pairs
    for l, i, j in P:
        if not cod.divides(t, l) or lcm_with[i] == l or lcm_with[j] == l:
            newP.append((l, i, j))
    classes = {}
    for i in range(len(G)):
        classes.setdefault(lcm_with[i], []).append(i)
    k = len(G)
    kept = []
    for l in sorted(classes):
        # a kept class with a properly smaller lcm subsumes this one
        if any(cod.divides(l2, l) for l2 in kept):
            continue
        kept.append(l)
        members = classes[l]
        # coprime criterion: a product-lcm member certifies the whole class
        if not any(G[i][0] + t - cod.offset == l for i in members):
            newP.append((l, members[0], k))
    G.append(_elem(keys, cod))
    return newP


def _autoreduce(bodies, cod):
    items = sorted((max(b), b) for b in bodies)
    kept = []
    for lt, b in items:
        if not any(cod.divides(l2, lt) for l2, _ in kept):
            kept.append((lt, b))
    basis = [frozenset(b) for _, b in kept]
    for _ in range(1000):
        elems = [_elem(b, cod) for b in basis]
        changed = False
        nxt = []
        for i, b in enumerate(basis):
            others = elems[:i] + elems[i + 1:]
            r = _nf_keys(b, others, cod)
            changed = changed or r != b
            nxt.append(r)
        basis = nxt
        if not changed:
            return sorted(basis, key=max, reverse=True)
    raise AssertionError("autoreduction did not stabilize")


def buchberger(relations: Sequence[PolyF2], order: Optional[MonomialOrder] = None,
               *, max_basis: int = 2000, max_pairs: int = 200000) -> ReducedGB:
    """Reduced Groebner basis of the ideal generated by the relations.

    The relations must be v-free (forget v first); zero relations are
    dropped.  Budgets abort with ResourceLimitError rather than thrash.
    """
    relations = list(relations)
    if not relations:
        raise ValueError("buchberger needs at least one relation")
    table = relations[0].table
    for p in relations:
        if p.table != table:
            raise ValueError("relations live over different variable tables")
        if any(m.v_exp for m in p.monos):
            raise ValueError("forget v before computing a Groebner basis")
    order = order or MonomialOrder.degrevlex(table.names)
    cod = codec(table, order)

    G = []
    P = []
    for p in relations:
        if not p:
            continue
        keys = frozenset(cod.key(m.exps) for m in p.monos)
        r = _nf_keys(keys, G, cod)
        if r:
            P = _update(G, P, r, cod)
    while P:
        if len(G) > max_basis:
            raise ResourceLimitError(f"basis grew past {max_basis} elements", len(P))
        if len(P) > max_pairs:
            raise ResourceLimitError(f"pair queue grew past {max_pairs}", len(P))
        i = min(range(len(P)), key=P.__getitem__)
        _, a, b = P.pop(i)
        s = _spoly(G[a], G[b], cod)
        r = _nf_keys(s, G, cod)
        if r:
            P = _update(G, P, r, cod)

    reduced = _autoreduce([set(body) for _, _, body in G], cod) if G else []
    basis = tuple(PolyF2(table, (Monomial(cod.exps(k)) for k in body))
                  for body in reduced)
    return ReducedGB(table, order, basis)


@lru_cache(maxsize=64)
def _packed_basis(gb: ReducedGB):
    cod = codec(gb.table, gb.order)
    return [_elem([cod.key(m.exps) for m in p.monos], cod) for p in gb.basis]


def normal_form(p: PolyF2, gb: ReducedGB) -> PolyF2:
    """Unique normal form of p modulo the reduced basis (v-free input)."""
    if p.table != gb.table:
        raise ValueError("polynomial and basis live over different tables")
    if any(m.v_exp for m in p.monos):
        raise ValueError("forget v before reduction")
    cod = codec(gb.table, gb.order)
    keys = frozenset(cod.key(m.exps) for m in p.monos)
    r = _nf_keys(keys, _packed_basis(gb), cod)
    return PolyF2(gb.table, (Monomial(cod.exps(k)) for k in r))


def member(p: PolyF2, gb: ReducedGB) -> bool:
    return not normal_form(p, gb)


def staircase(gb: ReducedGB, cap: Optional[int] = None) -> Staircase:
    """Standard monomials (those no leading term divides), level by level.

    Staircases are closed under divisors, so level d+1 is built from level d
    by multiplying with single variables; the first empty level certifies
    completeness.  A variable with no pure power among the leading terms has
    all its powers standard, which is reported as infinite up front.
    """
    table = gb.table
    cod = codec(table, gb.order)
    lts = [max(cod.key(m.exps) for m in p.monos) for p in gb.basis]
    if any(cod.degree(lt) == 0 for lt in lts):
        # the ideal contains 1; the quotient is the zero ring
        return Staircase((), "complete", cap or 0)
    bounds = {}
    for lt in lts:
        nz = [(i, e) for i, e in enumerate(cod.exps(lt)) if e]
        if len(nz) == 1:
            i, e = nz[0]
            bounds[i] = min(bounds.get(i, e), e)
    missing = [table.names[i] for i in range(len(table)) if i not in bounds]
    if missing:
        return Staircase((), "infinite", cap or 0,
                         "no pure power of " + ", ".join(missing)
                         + " among the leading terms")
    if cap is None:
        cap = sum(e - 1 for e in bounds.values()) + 1
    deltas = [cod.key(tuple(int(j == i) for j in range(len(table)))) - cod.offset
              for i in range(len(table))]
    guarded = [(lt & cod.expmask) | cod.guards for lt in lts]
    expmask = cod.expmask
    guards = cod.guards
    found = [cod.key_one]
    level = [cod.key_one]
    degree = 0
    while level:
        if degree + 1 > cap:
            return Staircase(
                tuple(Monomial(cod.exps(k)) for k in sorted(found)),
                "indeterminate", cap,
                f"degree cap {cap} reached while the staircase was still growing")
        nxt = set()
        for m in level:
            for dv in deltas:
                c = m + dv
                if c in nxt:
                    continue
                cexp = c & expmask
                for ah in guarded:
                    if (ah - cexp) & guards == guards:
                        break
                else:
                    nxt.add(c)
        level = nxt
        found.extend(nxt)
        degree += 1
    return Staircase(tuple(Monomial(cod.exps(k)) for k in sorted(found)),
                     "complete", cap)


def dimension(gb: ReducedGB, cap: Optional[int] = None) -> int:
    """F2-dimension of the quotient ring, certified finite."""
    st = staircase(gb, cap)
    if st.status == "infinite":
        raise InfiniteQuotientError(st.detail)
    if st.status == "indeterminate":
        raise IndeterminateError(st.detail)
    return len(st.monomials)


# -- linear-algebra dimension oracle ---------------------------------------
#
# Independent of the engine above: plain exponent tuples, F2 rows as bit
# masks over the monomials of degree <= depth, one bit per monomial.


def _oracle_key(exps):
    return sum(exps), tuple(-e for e in reversed(exps))


def _monomials_upto(nvars, bound):
    if nvars == 0:
        yield ()
        return
    for e in range(bound + 1):
        for rest in _monomials_upto(nvars - 1, bound - e):
            yield (e,) + rest


def _oracle_standard(relations, nvars, bound, depth):
    """Monomials of degree <= bound with no pivot in the depth-truncated span.

    Rows are the multiples m*r with deg(m*r) <= depth, reduced one at a time
    so only pivot rows are ever held.
    """
    mons = sorted(_monomials_upto(nvars, depth), key=_oracle_key)
    index = {m: i for i, m in enumerate(mons)}
    pivots = {}
    for r in relations:
        if not r:
            continue
        terms = [m.exps for m in r.monos]
        rdeg = max(sum(t) for t in terms)
        for mult in _monomials_upto(nvars, depth - rdeg):
            row = 0
            for t in terms:
                row |= 1 << index[tuple(a + b for a, b in zip(mult, t))]
            while row:
                lead = row.bit_length() - 1
                p = pivots.get(lead)
                if p is None:
                    pivots[lead] = row
                    break
                row ^= p
    return frozenset(m for i, m in enumerate(mons)
                     if sum(m) <= bound and i not in pivots)


def dimension_oracle(relations: Sequence[PolyF2], degree_bound: int,
                     slack: int = 2, min_extra_depth: int = 5,
                     max_extra_depth: int = 12) -> int:
    """Quotient dimension by F2 row reduction, no Groebner machinery.

    Spans every multiple m*r with deg(m*r) <= degree_bound + slack, row
    reduces, and counts monomials of degree <= degree_bound that carry no
    pivot.  Every pivot is the true leading monomial of an ideal element, so
    the count only ever overestimates.  Truncation hides any reduction whose
    witness needs rows past the span boundary, and a hidden one can surface
    after several quiet depths, so the standard set is recomputed with the
    span one degree deeper until three consecutive depths agree on it, and
    never before min_extra_depth extra degrees have been examined.  A set
    still moving at depth degree_bound + slack + max_extra_depth raises
    IndeterminateError.  Counts alone are no certificate: a phantom standard
    monomial at one depth can offset a real one lost at the next.
    """
    relations = list(relations)
    if not relations:
        raise ValueError("dimension_oracle needs at least one relation")
    nvars = len(relations[0].table)
    for p in relations:
        if any(m.v_exp for m in p.monos):
            raise ValueError("forget v before the dimension oracle")
    prev = _oracle_standard(relations, nvars, degree_bound, degree_bound + slack)
    stable = 0
    for extra in range(1, max_extra_depth + 1):
        cur = _oracle_standard(relations, nvars, degree_bound,
                               degree_bound + slack + extra)
        stable = stable + 1 if cur == prev else 0
        if stable >= 2 and extra >= min_extra_depth:
            return len(cur)
        prev = cur
    raise IndeterminateError(
        f"degree bound {degree_bound} too small: the apparent standard "
        f"monomial set was still changing at span depth "
        f"{degree_bound + slack + max_extra_depth}")


# -- cache files ------------------------------------------------------------


def save_gb(gb: ReducedGB, path, *, group: str, s: int):
    """Write the basis in the text grammar under the four header lines."""
    lines = [
        f"group={group}",
        f"s={s}",
        f"order={gb.order.to_spec()}",
        f"tool_version={__version__}",
    ]
    lines.extend(to_text(p, gb.order) for p in gb.basis)
    Path(path).write_text("\n".join(lines) + "\n")


def load_gb(path, table: VarTable, *, group: str, s: int, order: MonomialOrder,
            tool_version: Optional[str] = None) -> ReducedGB:
    """Load a cached basis; any header mismatch is an error, never a guess."""
    lines = Path(path).read_text().splitlines()
    if len(lines) < 4:
        raise CacheMismatchError("truncated cache file")
    expected = {
        "group": str(group),
        "s": str(s),
        "order": order.to_spec(),
        "tool_version": tool_version or __version__,
    }
    for key, line in zip(("group", "s", "order", "tool_version"), lines[:4]):
        name, eq, value = line.partition("=")
        if eq != "=" or name != key:
            raise CacheMismatchError(f"expected a {key}= header, found {line!r}")
        if value != expected[key]:
            raise CacheMismatchError(
                f"cache {key} mismatch: file has {value!r}, expected {expected[key]!r}")
    basis = tuple(parse(line, table) for line in lines[4:] if line.strip())
    return ReducedGB(table, order, basis)
