"""Dense univariate polynomials over a :class:`~fnc_forge.field.GF`.

Coefficients are packed field integers, lowest degree first.  The zero
polynomial has degree ``NEG_INF`` so that ``deg(a*b) == deg a + deg b``
holds without special cases.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import _kernels as K
from .errors import (
    BothZero,
    CapExceeded,
    DivisionByZero,
    LevelMismatch,
    ParseError,
    TooLarge,
)
from .field import GF, FieldElem, field_from_label, parse_elem

NEG_INF = float("-inf")


class UniPoly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: GF, coeffs=()):
        self.field = field
        self.coeffs = tuple(K.norm([int(c) for c in coeffs]))

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, F):
        return cls(F, ())

    @classmethod
    def const(cls, F, c):
        return cls(F, (int(c),))

    @classmethod
    def x(cls, F):
        return cls(F, (0, 1))

    @classmethod
    def monomial(cls, F, e, c=1):
        return cls(F, [0] * e + [int(c)])

    @classmethod
    def from_roots(cls, F, roots):
        out = [1]
        for r in roots:
            out = K.pmul(F, out, [F.neg(int(r)), 1])
        return cls(F, out)

    @classmethod
    def parse(cls, F, text, var="x"):
        return parse_poly(F, text, var)

    # -- basic queries ----------------------------------------------------------

    @property
    def deg(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_monic(self) -> bool:
        return self.lc == 1

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def to_list(self) -> list[int]:
        return list(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == tuple(K.norm([other]))
        return NotImplemented

    def __hash__(self):
        return hash((self.field.label, self.coeffs))

    def __repr__(self):
        return f"UniPoly({self.field.label}, {list(self.coeffs)})"

    def __str__(self):
        return self.pretty()

    def pretty(self, var="x") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if not c:
                continue
            mon = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
            if not mon:
                terms.append(str(c))
            elif c == 1:
                terms.append(mon)
            else:
                terms.append(f"{c}*{mon}")
        return " + ".join(terms)

    def to_dict(self) -> dict:
        return {"field": self.field.label, "coeffs": list(self.coeffs)}

    @classmethod
    def from_dict(cls, d):
        return cls(field_from_label(d["field"]), d["coeffs"])

    # -- arithmetic ------------------------------------------------------------

    def _coerce(self, o):
        if isinstance(o, UniPoly):
            if o.field != self.field:
                raise LevelMismatch(f"{o.field.label} vs {self.field.label}")
            return list(o.coeffs)
        if isinstance(o, FieldElem):
            if o.field != self.field:
                raise LevelMismatch(f"{o.field.label} vs {self.field.label}")
            return K.norm([o.value])
        if isinstance(o, int):
            return K.norm([self.field.from_int(o)])
        return None

    def _wrap(self, cs):
        p = UniPoly.__new__(UniPoly)
        p.field = self.field
        p.coeffs = tuple(cs)
        return p

    def __add__(self, o):
        b = self._coerce(o)
        if b is None:
            return NotImplemented
        return self._wrap(K.padd(self.field, list(self.coeffs), b))

    __radd__ = __add__

    def __sub__(self, o):
        b = self._coerce(o)
        if b is None:
            return NotImplemented
        return self._wrap(K.psub(self.field, list(self.coeffs), b))

    def __rsub__(self, o):
        b = self._coerce(o)
        if b is None:
            return NotImplemented
        return self._wrap(K.psub(self.field, b, list(self.coeffs)))

    def __neg__(self):
        return self._wrap(K.pneg(self.field, self.coeffs))

    def __mul__(self, o):
        b = self._coerce(o)
        if b is None:
            return NotImplemented
        return self._wrap(K.pmul(self.field, list(self.coeffs), b))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return self._wrap(K.ppow(self.field, list(self.coeffs), e))

    def __divmod__(self, o):
        b = self._coerce(o)
        if b is None:
            return NotImplemented
        q, r = K.pdivmod(self.field, list(self.coeffs), b)
        return self._wrap(q), self._wrap(r)

    def __floordiv__(self, o):
        return divmod(self, o)[0]

    def __mod__(self, o):
        return divmod(self, o)[1]

    def exact_div(self, o) -> "UniPoly":
        q, r = divmod(self, o)
        if not r.is_zero():
            raise ValueError("division is not exact")
        return q

    def divides(self, o: "UniPoly") -> bool:
        """True when self divides o."""
        if self.is_zero():
            return o.is_zero()
        return (o % self).is_zero()

    def scale(self, c) -> "UniPoly":
        c = c.value if isinstance(c, FieldElem) else int(c)
        return self._wrap(K.pscale(self.field, self.coeffs, c))

    def monic(self) -> "UniPoly":
        return self._wrap(K.pmonic(self.field, self.coeffs))

    def derivative(self) -> "UniPoly":
        return self._wrap(K.pderiv(self.field, self.coeffs))

    def compose(self, inner: "UniPoly") -> "UniPoly":
        if inner.field != self.field:
            raise LevelMismatch(f"{inner.field.label} vs {self.field.label}")
        return self._wrap(K.pcompose(self.field, self.coeffs, list(inner.coeffs)))

    def frobenius(self, e: int = 1) -> "UniPoly":
        """self**(p**e)."""
        return self._wrap(K.pfrob(self.field, list(self.coeffs), e))

    def __call__(self, a):
        if isinstance(a, FieldElem):
            if not a.field.contains_field(self.field):
                raise LevelMismatch(f"cannot evaluate over {a.field.label}")
            return FieldElem(a.field, K.peval(a.field, self.coeffs, a.value))
        return K.peval(self.field, self.coeffs, int(a))

    def eval_arr(self, X, over: GF | None = None):
        E = over or self.field
        return K.peval_arr(E, list(self.coeffs), X)

    def over(self, E: GF) -> "UniPoly":
        """The same polynomial viewed over an extension E of its field."""
        if not E.contains_field(self.field):
            raise LevelMismatch(f"{self.field.label} is not a subfield of {E.label}")
        return UniPoly(E, self.coeffs)


# -- free-function API -------------------------------------------------------


def poly_ring_ops(a: UniPoly, b, op: str):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "divrem":
        return divmod(a, b)
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown operation {op!r}")


def derivative(f: UniPoly) -> UniPoly:
    return f.derivative()


def compose(T: UniPoly, f: UniPoly) -> UniPoly:
    return T.compose(f)


def gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    if a.field != b.field:
        raise LevelMismatch(f"{a.field.label} vs {b.field.label}")
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    return UniPoly(a.field, K.pgcd(a.field, list(a.coeffs), list(b.coeffs)))


def frobenius_poly(F: GF, q: int | None = None) -> UniPoly:
    """x^q - x over F (q defaults to |F|)."""
    q = q or F.order
    c = [0] * (q + 1)
    c[q] = 1
    c[1] = F.neg(1)
    return UniPoly(F, c)


@dataclass
class ValueSetReport:
    field: str
    values: list[int]
    size: int
    lower_bound: int | None
    is_mvsp: bool | None
    values_in_base: bool

    def to_dict(self):
        return {
            "field": self.field,
            "values": list(self.values),
            "size": self.size,
            "lower_bound": self.lower_bound,
            "is_mvsp": self.is_mvsp,
            "values_in_base": self.values_in_base,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(**d)


def value_array(f: UniPoly, E: GF | None = None) -> np.ndarray:
    E = E or f.field
    return f.eval_arr(E.elements(), over=E)


def value_set(f: UniPoly, eval_level: GF | None = None) -> ValueSetReport:
    E = eval_level or f.field
    if not E.contains_field(f.field):
        raise LevelMismatch(f"cannot evaluate {f.field.label} polynomial over {E.label}")
    vals = np.unique(value_array(f, E))
    values = [int(v) for v in vals]
    if E.base is None:
        in_base = True
    else:
        in_base = bool(np.all(E.pow_arr(vals, E.base.order) == vals))
    if f.is_constant():
        lb, mv = None, None
    else:
        lb = (E.order - 1) // f.deg + 1
        mv = len(values) == lb
    return ValueSetReport(E.label, values, len(values), lb, mv, in_base)


def pth_power_root(f: UniPoly) -> UniPoly | None:
    F = f.field
    p = F.p
    cs = f.coeffs
    if any(c for i, c in enumerate(cs) if i % p):
        return None
    # inverse Frobenius on coefficients: c -> c^(p^(n-1))
    e = p ** (F.abs_degree - 1)
    return UniPoly(F, [F.pow(cs[i], e) for i in range(0, len(cs), p)])


def squarefree_decomposition(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Monic squarefree, pairwise coprime g_i with f = lc(f) * prod g_i^i.

    Yun's algorithm adapted to characteristic p: the part whose derivative
    vanishes is a p-th power and is handled by recursion on its p-th root.
    """
    if f.is_zero():
        raise ValueError("zero polynomial has no squarefree decomposition")
    F = f.field
    acc: dict[int, list] = {}

    def put(part, mult):
        if len(part) > 1:
            acc[mult] = K.pmul(F, acc.get(mult, [1]), part)

    def rec(a, mult):
        if len(a) <= 1:
            return
        da = K.pderiv(F, a)
        if not da:
            rec(list(pth_power_root(UniPoly(F, a)).coeffs), mult * F.p)
            return
        c = K.pgcd(F, a, da)
        w = K.pdivmod(F, a, c)[0]
        i = 1
        while len(w) > 1:
            y = K.pgcd(F, w, c)
            z = K.pdivmod(F, w, y)[0]
            put(K.pmonic(F, z), i * mult)
            i += 1
            w = y
            c = K.pdivmod(F, c, y)[0]
        if len(c) > 1:
            rec(list(pth_power_root(UniPoly(F, K.pmonic(F, c))).coeffs), mult * F.p)

    rec(K.pmonic(F, f.coeffs), 1)
    return [(UniPoly(F, acc[m]), m) for m in sorted(acc)]


def distinct_root_count(g: UniPoly, E: GF | None = None) -> int:
    """Number of distinct roots of g in E (default: its own field)."""
    E = E or g.field
    if g.is_constant():
        return 0
    F = g.field
    h = K.ppowmod(F, [0, 1], E.order, list(g.coeffs))
    return len(K.pgcd(F, list(g.coeffs), K.psub(F, h, [0, 1]))) - 1


def rational_root_split(f: UniPoly):
    """Distinct rational roots of f grouped by multiplicity, plus counts of non-rational ones.

    Returns a list of (multiplicity, rational_count, nonrational_count); the
    counts are of distinct roots in an algebraic closure.
    """
    out = []
    for g, m in squarefree_decomposition(f):
        r = distinct_root_count(g)
        out.append((m, r, g.deg - r))
    return out


@dataclass
class RootProfile:
    field: str
    entries: list = dc_field(default_factory=list)  # (field label, root, multiplicity, rational)
    constant: int = 1

    def to_dict(self):
        return {
            "field": self.field,
            "constant": self.constant,
            "entries": [
                {"field": e[0], "root": e[1], "multiplicity": e[2], "rational": e[3]}
                for e in self.entries
            ],
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            d["field"],
            [(e["field"], e["root"], e["multiplicity"], e["rational"]) for e in d["entries"]],
            d["constant"],
        )

    def degree(self) -> int:
        return sum(e[2] for e in self.entries)

    def multiplicities(self) -> list[int]:
        return [e[2] for e in self.entries]

    def reconstruct(self) -> UniPoly:
        """constant * prod (x - root)^mult, multiplied out field by field."""
        F = field_from_label(self.field)
        total = [self.constant]
        groups: dict[str, list] = {}
        for lab, r, m, _ in self.entries:
            groups.setdefault(lab, []).append((r, m))
        for lab in sorted(groups):
            E = field_from_label(lab)
            part = [1]
            for r, m in groups[lab]:
                part = K.pmul(E, part, K.ppow(E, [E.neg(r), 1], m))
            if any(c >= F.order for c in part):
                raise AssertionError("conjugate roots do not multiply out to the base field")
            total = K.pmul(F, total, part)
        return UniPoly(F, total)


DEFAULT_ROOT_CAP = 4


def root_multiplicities(f: UniPoly, search_degree_cap: int = DEFAULT_ROOT_CAP) -> RootProfile:
    """All roots of f with multiplicities, found by evaluation in extensions.

    Each squarefree part is split by degree (gcd with x^(|F|^m) - x) and only
    the extensions that actually hold roots are built and scanned.
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    F = f.field
    entries = []
    for g, mult in squarefree_decomposition(f):
        rest = list(g.coeffs)
        h = [0, 1]
        for m in range(1, search_degree_cap + 1):
            if len(rest) <= 1:
                break
            h = K.ppowmod(F, h, F.order, rest)
            part = K.pgcd(F, rest, K.psub(F, h, [0, 1]))
            if len(part) <= 1:
                continue
            try:
                E = F.extension(m) if m > 1 else F
            except TooLarge as exc:
                raise CapExceeded(str(exc)) from None
            vals = K.peval_arr(E, part, E.elements())
            roots = np.flatnonzero(vals == 0)
            if len(roots) != len(part) - 1:
                raise AssertionError("root scan disagrees with degree split")
            entries.extend((E.label, int(r), mult, m == 1) for r in roots)
            rest = K.pdivmod(F, rest, part)[0]
            h = K.pmod(F, h, rest) if len(rest) > 1 else h
        if len(rest) > 1:
            raise CapExceeded(
                f"{len(rest) - 1} roots lie outside extensions of degree <= {search_degree_cap}"
            )
    entries.sort(key=lambda e: (not e[3], e[0], e[1]))
    return RootProfile(F.label, entries, f.lc)


def lth_power_test(f: UniPoly, l: int):
    """(c, h) with f = c * h^l, h monic, when every multiplicity is divisible
    by l and c = lc(f) is an l-th power; otherwise None."""
    if l < 2:
        raise ValueError("l must be at least 2")
    if f.is_zero():
        return None
    F = f.field
    c = f.lc
    if F.pow(c, F.mult_order // math.gcd(l, F.mult_order)) != 1:
        return None
    h = UniPoly(F, [1])
    for g, m in squarefree_decomposition(f):
        if m % l:
            return None
        h = h * g ** (m // l)
    return c, h


def interpolate(F: GF, values) -> UniPoly:
    """The unique polynomial of degree < |F| taking values[a] at each a in F."""
    # f(x) = sum_a v_a (1 - (x - a)^(q-1)); coefficients via the power-sum identity
    q = F.order
    vals = np.asarray(values, dtype=np.int64)
    X = F.elements()
    coeffs = [0] * q
    # coefficient of x^j for 1 <= j <= q-1 is -sum_a v_a * a^(q-1-j); constant is v_0
    for j in range(1, q):
        coeffs[j] = F.neg(F.sum_arr(F.mul_arr(vals, F.pow_arr(X, q - 1 - j))))
    coeffs[0] = int(vals[0])
    return UniPoly(F, coeffs)


# -- parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(g\^-?\d+)|(\d+)|([A-Za-z]\w*)|(\*\*|[-+*^()\[\],]))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse {text[pos:]!r} in polynomial {text!r}")
        gen, num, name, op = m.groups()
        if gen:
            out.append(("elem", gen))
        elif num:
            out.append(("num", num))
        elif name:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


def parse_expression(text: str, const, variables: dict):
    """Evaluate a ring expression: + - * ^, parentheses, implicit products.

    ``const(literal)`` turns an element literal into a ring element and
    ``variables`` maps names to ring elements.  Exponents are non-negative
    integers.
    """
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take(kind=None, val=None):
        nonlocal pos
        tok = peek()
        if tok[0] is None or (kind and tok[0] != kind) or (val and tok[1] != val):
            raise ParseError(f"unexpected {tok[1]!r} in {text!r}")
        pos += 1
        return tok

    def expr():
        sign = None
        if peek() in (("op", "-"), ("op", "+")):
            sign = take()[1]
        acc = term()
        if sign == "-":
            acc = -acc
        while peek()[0] == "op" and peek()[1] in "+-":
            op = take()[1]
            rhs = term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term():
        acc = power()
        while True:
            tok = peek()
            if tok == ("op", "*"):
                take()
                acc = acc * power()
            elif tok[0] in ("num", "elem", "name") or tok == ("op", "("):
                acc = acc * power()  # implicit product such as 2x or 3(x+1)
            else:
                return acc

    def power():
        b = atom()
        if peek() == ("op", "^"):
            take()
            b = b ** int(take("num")[1])
        return b

    def atom():
        kind, val = peek()
        if kind in ("num", "elem"):
            take()
            return const(val)
        if kind == "name":
            take()
            if val not in variables:
                raise ParseError(f"unknown variable {val!r} in {text!r}")
            return variables[val]
        if (kind, val) == ("op", "("):
            take()
            v = expr()
            take("op", ")")
            return v
        raise ParseError(f"unexpected {val!r} in {text!r}")

    if not toks:
        raise ParseError("empty expression")
    result = expr()
    if pos != len(toks):
        raise ParseError(f"trailing input {toks[pos][1]!r} in {text!r}")
    return result


def parse_poly(F: GF, text, var: str = "x") -> UniPoly:
    """Parse a polynomial in one variable.

    Numeric literals are packed field elements (``3`` over F_4 is t+1) and
    ``g^i`` is a generator power.  ``[c0, c1, ...]`` gives the coefficient
    vector directly.
    """
    if isinstance(text, UniPoly):
        return text
    if isinstance(text, (list, tuple)):
        return UniPoly(F, [parse_elem(F, c) for c in text])
    t = str(text).strip()
    if t.startswith("["):
        if not t.endswith("]"):
            raise ParseError(f"unterminated coefficient vector {text!r}")
        body = t[1:-1].strip()
        items = body.split(",") if body else []
        return UniPoly(F, [parse_elem(F, s) for s in items])
    return parse_expression(
        t, lambda lit: UniPoly(F, [parse_elem(F, lit)]), {var: UniPoly.x(F)}
    )
