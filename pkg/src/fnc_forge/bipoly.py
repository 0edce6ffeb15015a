"""Sparse bivariate polynomials and exact division in F[x][y]."""

from __future__ import annotations

import numpy as np

from . import _kernels as K
from .errors import LevelMismatch, NonUnitLeader
from .field import GF, field_from_label, parse_elem
from .poly import UniPoly, parse_expression


class BiPoly:
    """Map (i, j) -> nonzero coefficient of x^i y^j."""

    __slots__ = ("field", "terms")

    def __init__(self, field: GF, terms=None):
        self.field = field
        self.terms = {k: int(v) for k, v in (terms or {}).items() if v}

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_x(cls, f: UniPoly) -> "BiPoly":
        return cls(f.field, {(i, 0): c for i, c in enumerate(f.coeffs)})

    @classmethod
    def from_y(cls, g: UniPoly) -> "BiPoly":
        return cls(g.field, {(0, j): c for j, c in enumerate(g.coeffs)})

    @classmethod
    def separated(cls, f: UniPoly, g: UniPoly) -> "BiPoly":
        """f(x) - g(y)."""
        return cls.from_x(f) - cls.from_y(g)

    @classmethod
    def parse(cls, F: GF, text: str) -> "BiPoly":
        return parse_expression(
            text,
            lambda lit: cls(F, {(0, 0): parse_elem(F, lit)}),
            {"x": cls(F, {(1, 0): 1}), "y": cls(F, {(0, 1): 1})},
        )

    @classmethod
    def from_rows(cls, F: GF, rows, outer="y") -> "BiPoly":
        terms = {}
        for o, row in enumerate(rows):
            for i, c in enumerate(row):
                if c:
                    terms[(i, o) if outer == "y" else (o, i)] = c
        return cls(F, terms)

    # -- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def deg_x(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    @property
    def deg_y(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (t[0][1], t[0][0]))

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.field.label, tuple(self.sorted_terms())))

    def __repr__(self):
        return f"BiPoly({self.field.label}, {self.sorted_terms()})"

    def to_dict(self):
        return {"field": self.field.label, "terms": [[i, j, c] for (i, j), c in self.sorted_terms()]}

    @classmethod
    def from_dict(cls, d):
        return cls(field_from_label(d["field"]), {(i, j): c for i, j, c in d["terms"]})

    # -- arithmetic ---------------------------------------------------------

    def _check(self, o):
        if o.field != self.field:
            raise LevelMismatch(f"{o.field.label} vs {self.field.label}")

    def __add__(self, o):
        self._check(o)
        F = self.field
        out = dict(self.terms)
        for k, c in o.terms.items():
            out[k] = F.add(out.get(k, 0), c)
        return BiPoly(F, out)

    def __neg__(self):
        F = self.field
        return BiPoly(F, {k: F.neg(c) for k, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if isinstance(o, int):
            return self.scale(self.field.from_int(o))
        self._check(o)
        F = self.field
        out: dict = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in o.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = F.add(out.get(k, 0), F.mul(c1, c2))
        return BiPoly(F, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = BiPoly(self.field, {(0, 0): 1})
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def scale(self, c: int) -> "BiPoly":
        F = self.field
        return BiPoly(F, {k: F.mul(v, c) for k, v in self.terms.items()})

    def dx(self) -> "BiPoly":
        F = self.field
        p = F.p
        return BiPoly(F, {(i - 1, j): F.mul(c, i % p) for (i, j), c in self.terms.items() if i % p})

    def dy(self) -> "BiPoly":
        F = self.field
        p = F.p
        return BiPoly(F, {(i, j - 1): F.mul(c, j % p) for (i, j), c in self.terms.items() if j % p})

    def swap(self) -> "BiPoly":
        return BiPoly(self.field, {(j, i): c for (i, j), c in self.terms.items()})

    def rows(self, outer="y") -> list[list[int]]:
        """Coefficient lists of the inner variable, indexed by outer degree."""
        d = self.deg_y if outer == "y" else self.deg_x
        rows = [dict() for _ in range(d + 1)]
        for (i, j), c in self.terms.items():
            if outer == "y":
                rows[j][i] = c
            else:
                rows[i][j] = c
        out = []
        for r in rows:
            lst = [0] * (max(r) + 1) if r else []
            for e, c in r.items():
                lst[e] = c
            out.append(lst)
        return out

    def __call__(self, x: int, y: int) -> int:
        F = self.field
        acc = 0
        for (i, j), c in self.terms.items():
            acc = F.add(acc, F.mul(c, F.mul(F.pow(x, i), F.pow(y, j))))
        return acc

    def homogeneous_eval(self, X, Y, Z, d: int | None = None, over: GF | None = None):
        """Evaluate the degree-d homogenisation at arrays X, Y, Z."""
        E = over or self.field
        d = self.total_degree if d is None else d
        X, Y, Z = (np.asarray(a, dtype=np.int64) for a in (X, Y, Z))
        shape = np.broadcast(X, Y, Z).shape
        acc = np.zeros(shape, dtype=np.int64)
        pows = {}

        def pw(A, name, e):
            key = (name, e)
            if key not in pows:
                pows[key] = E.pow_arr(A, e) if e else np.ones_like(A)
            return pows[key]

        for (i, j), c in self.sorted_terms():
            t = E.mul_arr(E.mul_arr(pw(X, "x", i), pw(Y, "y", j)), pw(Z, "z", d - i - j))
            acc = E.add_arr(acc, E.mul_arr(np.broadcast_to(t, shape), c))
        return acc

    def top_form(self) -> "BiPoly":
        d = self.total_degree
        return BiPoly(self.field, {k: c for k, c in self.terms.items() if sum(k) == d})


def frobenius_form(Fp: BiPoly, q: int | None = None) -> BiPoly:
    """(x^q - x) F_x + (y^q - y) F_y."""
    F = Fp.field
    q = q or F.order
    xq = BiPoly(F, {(q, 0): 1, (1, 0): F.neg(1)})
    yq = BiPoly(F, {(0, q): 1, (0, 1): F.neg(1)})
    return xq * Fp.dx() + yq * Fp.dy()


def _divide_rows(F: GF, D_rows, G_rows):
    dg = len(G_rows) - 1
    lead = K.norm(G_rows[dg])
    inv = F.inv(lead[0])
    R = [K.norm(r) for r in D_rows]
    if len(R) - 1 < dg:
        return None if any(R) else []
    Q = [[] for _ in range(len(R) - dg)]
    Gn = [K.norm(g) for g in G_rows]
    for j in range(len(R) - 1, dg - 1, -1):
        a = R[j]
        if not a:
            continue
        fac = K.pscale(F, a, inv)
        Q[j - dg] = fac
        for t in range(dg + 1):
            g = Gn[t]
            if not g:
                continue
            # constant rows are the common case for f(x) - g(y)
            prod = K.pscale(F, fac, g[0]) if len(g) == 1 else K.pmul(F, fac, g)
            R[j - dg + t] = K.psub(F, R[j - dg + t], prod)
    if any(R[:dg]):
        return None
    return Q


def division_outer(G: BiPoly) -> str:
    """Variable to divide along: one whose leading coefficient is a nonzero constant."""
    ry = G.rows("y")
    if ry and len(K.norm(ry[-1])) == 1:
        return "y"
    rx = G.rows("x")
    if rx and len(K.norm(rx[-1])) == 1:
        return "x"
    raise NonUnitLeader("neither leading coefficient in y nor in x is a nonzero constant")


def bipoly_divides(D: BiPoly, G: BiPoly):
    """Quotient D / G when G divides D exactly, else None."""
    if G.field != D.field:
        raise LevelMismatch(f"{G.field.label} vs {D.field.label}")
    if G.is_zero():
        raise NonUnitLeader("division by the zero polynomial")
    outer = division_outer(G)
    if D.is_zero():
        return BiPoly(D.field, {})
    Q = _divide_rows(D.field, D.rows(outer), G.rows(outer))
    if Q is None:
        return None
    return BiPoly.from_rows(D.field, Q, outer)
