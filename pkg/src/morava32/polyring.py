"""Polynomials over F2 with graded monomial orders and a central unit exponent.

Everything downstream (Groebner bases, ring presentations, verification) works
in F2[vars], where each monomial additionally carries an integer exponent of a
central invertible unit written v.  The unit records the periodic grading; it
is ignored by every monomial order and is forgotten before ideal computations.

Monomial comparisons go through packed integer keys (see MonomialCodec): a
monomial is encoded as one integer whose natural ordering coincides with the
chosen monomial order, so the Groebner engine can compare, multiply and test
divisibility with plain integer arithmetic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Optional

NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class ParseError(ValueError):
    """Raised on malformed polynomial text; carries the offending position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class DegreeOverflowError(ArithmeticError):
    """An exponent or total degree left the packable field range."""


class InhomogeneousError(ValueError):
    """A polynomial mixes two halved degrees; carries both witnesses."""

    def __init__(self, mono1, deg1, mono2, deg2):
        super().__init__(
            f"inhomogeneous: monomial {mono1} has halved degree {deg1}, "
            f"monomial {mono2} has halved degree {deg2}"
        )
        self.witnesses = ((mono1, deg1), (mono2, deg2))


@dataclass(frozen=True)
class VarTable:
    """Ordered variable list with halved degrees and the halved degree of v.

    The name ``v`` is reserved for the central unit and cannot be a variable.
    """

    names: tuple[str, ...]
    halved_degrees: tuple[int, ...]
    v_weight: int

    def __post_init__(self):
        if len(self.names) != len(set(self.names)):
            raise ValueError("duplicate variable names")
        if len(self.halved_degrees) != len(self.names):
            raise ValueError("halved_degrees must match names in length")
        for name in self.names:
            if not NAME_RE.fullmatch(name):
                raise ValueError(f"bad variable name {name!r}")
            if name == "v":
                raise ValueError("the name 'v' is reserved for the graded unit")
        for d in self.halved_degrees:
            if not isinstance(d, int) or d <= 0:
                raise ValueError("halved degrees must be positive integers")

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def degree_of(self, name: str) -> int:
        return self.halved_degrees[self.index(name)]

    def without(self, name: str) -> "VarTable":
        """A copy of the table with one variable removed."""
        i = self.index(name)
        return VarTable(
            self.names[:i] + self.names[i + 1:],
            self.halved_degrees[:i] + self.halved_degrees[i + 1:],
            self.v_weight,
        )


@dataclass(frozen=True)
class Monomial:
    """Exponent vector in VarTable order plus the unit exponent v_exp.

    v_exp may be negative (v is invertible); variable exponents may not.
    """

    exps: tuple[int, ...]
    v_exp: int = 0

    def degree(self) -> int:
        return sum(self.exps)

    def halved_degree(self, table: VarTable) -> int:
        return sum(e * d for e, d in zip(self.exps, table.halved_degrees)) \
            + self.v_exp * table.v_weight


@dataclass(frozen=True)
class MonomialOrder:
    """A graded monomial order: plain degrevlex or two-block elimination.

    precedence lists every variable, most significant first.  For the block
    kind the front names are compared first (by degrevlex among themselves),
    so any polynomial whose leading term avoids the front block is free of it.
    v_exp is ignored entirely.
    """

    kind: str
    precedence: tuple[str, ...]
    front: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in ("degrevlex", "block"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        if len(set(self.precedence)) != len(self.precedence):
            raise ValueError("precedence repeats a variable")
        if self.kind == "degrevlex" and self.front:
            raise ValueError("degrevlex takes no front block")
        if self.kind == "block":
            if not self.front:
                raise ValueError("block order needs a nonempty front block")
            missing = set(self.front) - set(self.precedence)
            if missing:
                raise ValueError(f"front variables {sorted(missing)} not in precedence")

    @classmethod
    def degrevlex(cls, precedence: Iterable[str]) -> "MonomialOrder":
        return cls("degrevlex", tuple(precedence))

    @classmethod
    def block(cls, front: Iterable[str], precedence: Iterable[str]) -> "MonomialOrder":
        return cls("block", tuple(precedence), tuple(front))

    def validate_for(self, table: VarTable):
        if set(self.precedence) != set(table.names) or len(self.precedence) != len(table.names):
            raise ValueError("order precedence is not a permutation of the table variables")

    def blocks(self) -> tuple[tuple[str, ...], ...]:
        """Variable blocks, most significant first, each in precedence order."""
        if self.kind == "degrevlex":
            return (self.precedence,)
        front = set(self.front)
        return (
            tuple(n for n in self.precedence if n in front),
            tuple(n for n in self.precedence if n not in front),
        )

    def to_spec(self) -> str:
        if self.kind == "degrevlex":
            return "degrevlex:" + ",".join(self.precedence)
        return "block:" + ",".join(self.front) + ":" + ",".join(self.precedence)

    @classmethod
    def from_spec(cls, text: str) -> "MonomialOrder":
        parts = text.strip().split(":")
        if parts[0] == "degrevlex" and len(parts) == 2:
            return cls.degrevlex(tuple(parts[1].split(",")))
        if parts[0] == "block" and len(parts) == 3:
            return cls.block(tuple(parts[1].split(",")), tuple(parts[2].split(",")))
        raise ValueError(f"bad order spec {text!r}")


class MonomialCodec:
    """Packs exponent vectors into integers ordered like the monomial order.

    Layout, most significant field first, one 16-bit field each: for every
    block, the block's total degree, then FIELD_MAX minus the exponent of each
    block variable in reverse precedence order.  Integer comparison of keys is
    then exactly the order comparison: degrees are compared first and, on a
    tie, the last differing variable decides with the smaller exponent winning.

    Packing also makes the arithmetic cheap: key(m1*m2) = k1 + k2 - offset,
    quotient keys are additive the same way, and divisibility is one masked
    subtraction (each exponent field keeps a spare guard bit, so per-field
    borrows cannot cross fields).
    """

    FIELD_BITS = 16
    FIELD_MAX = (1 << (FIELD_BITS - 1)) - 1

    def __init__(self, table: VarTable, order: MonomialOrder):
        order.validate_for(table)
        self.table = table
        self.order = order
        fields = []  # (kind, payload) most significant first
        for block in order.blocks():
            fields.append(("deg", tuple(table.index(n) for n in block)))
            for name in reversed(block):
                fields.append(("exp", table.index(name)))
        bits = self.FIELD_BITS
        nfields = len(fields)
        self._exp_shift = [0] * len(table)
        self._deg_fields = []
        for pos, (kind, payload) in enumerate(fields):
            shift = (nfields - 1 - pos) * bits
            if kind == "deg":
                self._deg_fields.append((shift, payload))
            else:
                self._exp_shift[payload] = shift
        fmask = (1 << bits) - 1
        self._fmask = fmask
        self.offset = 0
        self.expmask = 0
        self.guards = 0
        for i in range(len(table)):
            shift = self._exp_shift[i]
            self.offset |= self.FIELD_MAX << shift
            self.expmask |= fmask << shift
            self.guards |= (1 << (bits - 1)) << shift
        self.key_one = self.key((0,) * len(table))

    def key(self, exps) -> int:
        if len(exps) != len(self.table):
            raise ValueError("exponent vector length does not match the table")
        k = 0
        for shift, idxs in self._deg_fields:
            d = 0
            for i in idxs:
                d += exps[i]
            if d > self.FIELD_MAX:
                raise DegreeOverflowError(f"degree {d} exceeds the packable range")
            k |= d << shift
        for i, e in enumerate(exps):
            if e < 0:
                raise ValueError("negative exponent")
            k |= (self.FIELD_MAX - e) << self._exp_shift[i]
        return k

    def exps(self, key: int) -> tuple[int, ...]:
        return tuple(
            self.FIELD_MAX - ((key >> self._exp_shift[i]) & self._fmask)
            for i in range(len(self.table))
        )

    def degree(self, key: int) -> int:
        return sum((key >> shift) & self._fmask for shift, _ in self._deg_fields)

    def mul(self, k1: int, k2: int) -> int:
        if self.degree(k1) + self.degree(k2) > self.FIELD_MAX:
            raise DegreeOverflowError("monomial product exceeds the packable range")
        return k1 + k2 - self.offset

    def divides(self, kdiv: int, kmul: int) -> bool:
        """Whether the monomial of kdiv divides the monomial of kmul."""
        return (((kdiv & self.expmask) | self.guards) - (kmul & self.expmask)) \
            & self.guards == self.guards

    def quotient(self, kmul: int, kdiv: int) -> int:
        """Key of kmul / kdiv; the caller guarantees divisibility."""
        return kmul + self.offset - kdiv

    def lcm(self, k1: int, k2: int) -> int:
        e1 = self.exps(k1)
        e2 = self.exps(k2)
        return self.key(tuple(max(a, b) for a, b in zip(e1, e2)))


@lru_cache(maxsize=None)
def codec(table: VarTable, order: MonomialOrder) -> MonomialCodec:
    return MonomialCodec(table, order)


def _default_order(table: VarTable) -> MonomialOrder:
    return MonomialOrder.degrevlex(table.names)


class PolyF2:
    """A polynomial over F2: a set of monomials, canonically sorted.

    Equal monomials cancel in pairs on construction (characteristic 2); the
    surviving ones are stored strictly descending under the table's default
    degrevlex order with v_exp as a final printing tie-break, so two equal
    polynomials always hold identical sequences.
    """

    __slots__ = ("table", "monos", "_hash")

    def __init__(self, table: VarTable, monomials: Iterable[Monomial] = ()):
        parity = {}
        n = len(table)
        for m in monomials:
            if len(m.exps) != n:
                raise ValueError("monomial does not match the variable table")
            parity[m] = not parity.get(m, False)
        cod = codec(table, _default_order(table))
        monos = [m for m, keep in parity.items() if keep]
        for m in monos:
            cod.key(m.exps)  # validates exponent range
        monos.sort(key=lambda m: (cod.key(m.exps), m.v_exp), reverse=True)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "monos", tuple(monos))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *_):
        raise AttributeError("PolyF2 is immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, table: VarTable) -> "PolyF2":
        return cls(table, ())

    @classmethod
    def one(cls, table: VarTable, v_exp: int = 0) -> "PolyF2":
        return cls(table, (Monomial((0,) * len(table), v_exp),))

    @classmethod
    def variable(cls, table: VarTable, name: str, exp: int = 1, v_exp: int = 0) -> "PolyF2":
        exps = [0] * len(table)
        exps[table.index(name)] = exp
        return cls(table, (Monomial(tuple(exps), v_exp),))

    # -- basic protocol ---------------------------------------------------

    def __bool__(self):
        return bool(self.monos)

    def __len__(self):
        return len(self.monos)

    def __eq__(self, other):
        if not isinstance(other, PolyF2):
            return NotImplemented
        return self.table == other.table and self.monos == other.monos

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.table, self.monos)))
        return self._hash

    def __repr__(self):
        return f"PolyF2({to_text(self)})"

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "PolyF2") -> "PolyF2":
        self._check_same_table(other)
        return PolyF2(self.table, set(self.monos) ^ set(other.monos))

    __sub__ = __add__  # characteristic 2

    def __mul__(self, other: "PolyF2") -> "PolyF2":
        self._check_same_table(other)
        parity = {}
        for m1 in self.monos:
            e1, v1 = m1.exps, m1.v_exp
            for m2 in other.monos:
                m = Monomial(tuple(a + b for a, b in zip(e1, m2.exps)), v1 + m2.v_exp)
                parity[m] = not parity.get(m, False)
        return PolyF2(self.table, (m for m, keep in parity.items() if keep))

    def __pow__(self, n: int) -> "PolyF2":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = PolyF2.one(self.table)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def _check_same_table(self, other):
        if not isinstance(other, PolyF2) or other.table != self.table:
            raise ValueError("polynomials live over different variable tables")

    # -- structure --------------------------------------------------------

    def total_degree(self) -> int:
        """Largest plain total degree among monomials; -1 for the zero polynomial."""
        return max((m.degree() for m in self.monos), default=-1)

    def substitute(self, assignments: Mapping[str, "PolyF2"]) -> "PolyF2":
        """Replace variables by polynomials over the same table."""
        table = self.table
        for name, value in assignments.items():
            table.index(name)
            self._check_same_table(value)
        idx = {table.index(name): value for name, value in assignments.items()}
        result = PolyF2.zero(table)
        for m in self.monos:
            kept = [0] * len(table)
            prod = None
            for i, e in enumerate(m.exps):
                if e and i in idx:
                    factor = idx[i] ** e
                    prod = factor if prod is None else prod * factor
                else:
                    kept[i] = e
            term = PolyF2(table, (Monomial(tuple(kept), m.v_exp),))
            result = result + (term if prod is None else term * prod)
        return result

    def drop_var(self, name: str) -> "PolyF2":
        """Rebuild over the table without `name`; its exponent must be 0 throughout."""
        i = self.table.index(name)
        for m in self.monos:
            if m.exps[i]:
                raise ValueError(f"polynomial still involves {name!r}")
        new_table = self.table.without(name)
        return PolyF2(new_table, (Monomial(m.exps[:i] + m.exps[i + 1:], m.v_exp)
                                  for m in self.monos))

    def drop_v(self) -> "PolyF2":
        """Set every v_exp to 0.

        Two monomials that differed only in v_exp would silently cancel here,
        changing the ideal, so that situation is an error instead.
        """
        seen = set()
        for m in self.monos:
            if m.exps in seen:
                raise ValueError(
                    "v exponent collision: two monomials share the exponent "
                    f"vector {m.exps} and would cancel when v is forgotten"
                )
            seen.add(m.exps)
        return PolyF2(self.table, (Monomial(m.exps, 0) for m in self.monos))


# -- module-level operations (the public op surface) ----------------------


def add(p: PolyF2, q: PolyF2) -> PolyF2:
    return p + q


def mul(p: PolyF2, q: PolyF2) -> PolyF2:
    return p * q


def compare(m1: Monomial, m2: Monomial, table: VarTable,
            order: Optional[MonomialOrder] = None) -> int:
    """-1, 0 or 1 comparing m1 to m2 under the order; v_exp is ignored."""
    cod = codec(table, order or _default_order(table))
    k1, k2 = cod.key(m1.exps), cod.key(m2.exps)
    return (k1 > k2) - (k1 < k2)


def leading_monomial(p: PolyF2, order: Optional[MonomialOrder] = None) -> Monomial:
    if not p.monos:
        raise ValueError("the zero polynomial has no leading monomial")
    cod = codec(p.table, order or _default_order(p.table))
    return max(p.monos, key=lambda m: (cod.key(m.exps), m.v_exp))


def halved_degree(p: PolyF2) -> Optional[int]:
    """The common halved degree of all monomials (None for 0).

    Raises InhomogeneousError with two witness monomials if they disagree.
    """
    if not p.monos:
        return None
    first = p.monos[0]
    d0 = first.halved_degree(p.table)
    for m in p.monos[1:]:
        d = m.halved_degree(p.table)
        if d != d0:
            raise InhomogeneousError(to_text(PolyF2(p.table, (first,))), d0,
                                     to_text(PolyF2(p.table, (m,))), d)
    return d0


def substitute(p: PolyF2, assignments: Mapping[str, PolyF2]) -> PolyF2:
    return p.substitute(assignments)


def to_text(p: PolyF2, order: Optional[MonomialOrder] = None) -> str:
    """Render in the text grammar; terms descend in the active order."""
    if not p.monos:
        return "0"
    cod = codec(p.table, order or _default_order(p.table))
    names = p.table.names
    parts = []
    for m in sorted(p.monos, key=lambda m: (cod.key(m.exps), m.v_exp), reverse=True):
        factors = []
        if m.v_exp:
            factors.append(f"v^{m.v_exp}")
        for name, e in zip(names, m.exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        parts.append("*".join(factors) if factors else "1")
    return " + ".join(parts)


def parse(text: str, table: VarTable) -> PolyF2:
    """Parse `poly := term ('+' term)*` with `term := factor ('*' factor)*`.

    A factor is a variable with an optional natural exponent, v with a
    mandatory integer exponent, or the literal 1.  The standalone string 0
    denotes the zero polynomial.  Whitespace is insignificant.
    """
    if text.strip() == "0":
        return PolyF2.zero(table)
    pos = _skip_ws(text, 0)
    if pos == len(text):
        raise ParseError("empty polynomial", pos)
    monos = []
    while True:
        mono, pos = _parse_term(text, pos, table)
        monos.append(mono)
        pos = _skip_ws(text, pos)
        if pos < len(text) and text[pos] == "+":
            pos = _skip_ws(text, pos + 1)
        else:
            break
    if pos != len(text):
        raise ParseError(f"unexpected character {text[pos]!r}", pos)
    return PolyF2(table, monos)


def _skip_ws(text, pos):
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def _parse_int(text, pos, allow_negative):
    start = pos
    if allow_negative and pos < len(text) and text[pos] == "-":
        pos += 1
    digits = pos
    while pos < len(text) and text[pos].isdigit():
        pos += 1
    if pos == digits:
        raise ParseError("expected an exponent", start)
    return int(text[start:pos]), pos


def _parse_term(text, pos, table):
    exps = [0] * len(table)
    v_exp = 0
    while True:
        pos = _skip_ws(text, pos)
        if pos < len(text) and text[pos] == "1" \
                and not (pos + 1 < len(text) and text[pos + 1].isdigit()):
            pos += 1
        else:
            match = NAME_RE.match(text, pos)
            if not match:
                raise ParseError("expected a variable, v^k or 1", pos)
            name = match.group()
            pos = match.end()
            if name == "v":
                if pos >= len(text) or text[pos] != "^":
                    raise ParseError("v requires an integer exponent", pos)
                k, pos = _parse_int(text, pos + 1, allow_negative=True)
                v_exp += k
            else:
                try:
                    i = table.index(name)
                except KeyError:
                    raise ParseError(f"unknown variable {name!r}", match.start()) from None
                e = 1
                if pos < len(text) and text[pos] == "^":
                    e, pos = _parse_int(text, pos + 1, allow_negative=False)
                exps[i] += e
        pos = _skip_ws(text, pos)
        if pos < len(text) and text[pos] == "*":
            pos += 1
        else:
            break
    return Monomial(tuple(exps), v_exp), pos
