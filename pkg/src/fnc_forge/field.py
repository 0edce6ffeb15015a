"""Finite fields built as explicit extension towers.

A field is either a prime field F_p or an extension K[t]/(m(t)) of a
subfield K by a monic irreducible m.  Elements are packed non-negative
integers: c_0 + c_1 t + ... + c_{e-1} t^{e-1} with c_i in K is stored as
sum(c_i * |K|**i).  Every level packs in base |K|, so the base-p digits of
a packed integer are its F_p-coordinates and a subfield element keeps the
same integer in every field built on top of it.

Multiplication runs through exp/log/Zech tables indexed by a fixed
generator.  The tables are produced from the coordinate-vector product
(``mul_reference``), which stays available as an independent check.
"""

from __future__ import annotations

import os
import re
from array import array
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels as K
from .errors import (
    DivisionByZero,
    LevelMismatch,
    NotPrime,
    ParseError,
    TooLarge,
)

DEFAULT_CAP = 1 << 20


def desk_cap() -> int:
    """Largest field order we agree to build (env ``FNC_FORGE_CAP`` overrides)."""
    env = os.environ.get("FNC_FORGE_CAP")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ParseError(f"FNC_FORGE_CAP must be an integer, got {env!r}") from None
    return DEFAULT_CAP


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def digits(n: int, base: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        n, r = divmod(n, base)
        out.append(r)
    return out


def undigits(ds, base: int) -> int:
    v = 0
    for d in reversed(ds):
        v = v * base + d
    return v


_REGISTRY: dict[str, "GF"] = {}


class GF:
    """A finite field, either prime or a simple extension of a smaller GF.

    Construct through :func:`prime_field`, :func:`build_tower` or
    :meth:`extension` so that identical fields share one object.
    """

    def __init__(self, p, base=None, modulus=None, label=None, role="prime"):
        if base is None:
            if not is_prime(p):
                raise NotPrime(f"{p} is not prime")
            self.degree = 1
            self.abs_degree = 1
            self.order = p
            self.modulus = None
        else:
            modulus = tuple(modulus)
            if modulus[-1] != 1 or len(modulus) < 2:
                raise ValueError("modulus must be monic of positive degree")
            self.degree = len(modulus) - 1
            self.abs_degree = base.abs_degree * self.degree
            self.order = base.order**self.degree
            self.modulus = modulus
        self.p = p
        self.base = base
        self.label = label or (f"{p}" if base is None else f"{base.label}[{list(modulus)}]")
        self.role = role
        self.mult_order = self.order - 1
        self.char2 = p == 2
        self.prime_like = self.abs_degree == 1
        self._extensions: dict[int, GF] = {}
        self._bind_scalar_ops()
        if base is not None and self.degree == 1:
            self._share_tables(base)
        else:
            self._build_tables()

    def __repr__(self):
        return f"GF({self.label}, order={self.order})"

    def __eq__(self, other):
        return isinstance(other, GF) and other.label == self.label

    def __hash__(self):
        return hash(self.label)

    # -- reference arithmetic on coordinate vectors -------------------------

    def coords(self, a: int) -> list[int]:
        if self.base is None:
            return [a]
        return digits(a, self.base.order, self.degree)

    def from_coords(self, cs) -> int:
        if self.base is None:
            return cs[0]
        return undigits(cs, self.base.order)

    def mul_reference(self, a: int, b: int) -> int:
        """Schoolbook product of coordinate vectors reduced by the modulus."""
        if self.base is None:
            return a * b % self.p
        B = self.base
        ca, cb = self.coords(a), self.coords(b)
        prod = [0] * (2 * self.degree - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    if y:
                        prod[i + j] = B.add(prod[i + j], B.mul_reference(x, y))
        mod = self.modulus
        e = self.degree
        for i in range(len(prod) - 1, e - 1, -1):
            c = prod[i]
            if c:
                for j in range(e):
                    if mod[j]:
                        prod[i - e + j] = B.sub(prod[i - e + j], B.mul_reference(c, mod[j]))
                prod[i] = 0
        return self.from_coords(prod[:e])

    def pow_reference(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self.mul_reference(result, a)
            a = self.mul_reference(a, a)
            e >>= 1
        return result

    # -- tables ---------------------------------------------------------------

    def _find_generator(self) -> int:
        m = self.mult_order
        if m == 1:
            return 1
        cofactors = [m // r for r in prime_factors(m)]
        for g in range(1, self.order):
            if all(self.pow_reference(g, c) != 1 for c in cofactors):
                return g
        raise AssertionError("no generator found")

    def _build_tables(self):
        p, n, m = self.p, self.abs_degree, self.mult_order
        g = self._find_generator()
        pw = p ** np.arange(n, dtype=np.int64)
        exp = np.empty(m, dtype=np.int64)
        exp[0] = 1
        filled = 1
        c = g
        while filled < m:
            # the map z -> c*z is F_p-linear; its matrix rows are c * p^i
            M = np.array(
                [digits(self.mul_reference(c, int(p**i)), p, n) for i in range(n)],
                dtype=np.int64,
            )
            cnt = min(filled, m - filled)
            D = (exp[:cnt, None] // pw) % p
            exp[filled : filled + cnt] = ((D @ M) % p) @ pw
            filled += cnt
            c = self.mul_reference(c, c)
        log = np.full(self.order, -1, dtype=np.int64)
        log[exp] = np.arange(m, dtype=np.int64)
        if np.count_nonzero(log >= 0) != m:
            raise AssertionError("generator tables are not a permutation")
        self._install(g, exp, log)

    def _install(self, g, exp, log):
        p = self.p
        self.generator = int(g)
        m = self.mult_order
        self._np_pw = p ** np.arange(self.abs_degree, dtype=np.int64)
        self._np_exp2 = np.concatenate([exp, exp])
        self._np_log = log
        d0 = exp % p
        one_plus = exp - d0 + (d0 + 1) % p
        self._np_zech = log[one_plus]
        self._exp2 = array("q", self._np_exp2.tobytes())
        self._log = array("q", log.tobytes())
        self._zech = array("q", self._np_zech.tobytes())
        self._half = m // 2 if p != 2 else 0

    def _share_tables(self, other: "GF"):
        self.generator = other.generator
        for name in ("_np_pw", "_np_exp2", "_np_log", "_np_zech", "_exp2", "_log", "_zech", "_half"):
            setattr(self, name, getattr(other, name))

    # -- scalar arithmetic ----------------------------------------------------

    def _bind_scalar_ops(self):
        if self.prime_like:
            self.add = self._add_prime
            self.sub = self._sub_prime
            self.neg = self._neg_prime
            self.mul = self._mul_prime
        elif self.char2:
            self.add = self.sub = _xor
            self.neg = _ident
            self.mul = self._mul_log
        else:
            self.add = self._add_zech
            self.sub = self._sub_zech
            self.neg = self._neg_log
            self.mul = self._mul_log

    def _add_prime(self, a, b):
        s = a + b
        return s - self.p if s >= self.p else s

    def _sub_prime(self, a, b):
        s = a - b
        return s + self.p if s < 0 else s

    def _neg_prime(self, a):
        return self.p - a if a else 0

    def _mul_prime(self, a, b):
        return a * b % self.p

    def _mul_log(self, a, b):
        if not a or not b:
            return 0
        return self._exp2[self._log[a] + self._log[b]]

    def _neg_log(self, a):
        if not a:
            return 0
        return self._exp2[self._log[a] + self._half]

    def _add_zech(self, a, b):
        if not a:
            return b
        if not b:
            return a
        la, lb = self._log[a], self._log[b]
        if la > lb:
            la, lb = lb, la
        z = self._zech[lb - la]
        if z < 0:
            return 0
        return self._exp2[la + z]

    def _sub_zech(self, a, b):
        return self._add_zech(a, self._neg_log(b))

    def inv(self, a: int) -> int:
        if not a:
            raise DivisionByZero("inverse of zero")
        if self.prime_like:
            return pow(a, self.p - 2, self.p)
        la = self._log[a]
        return self._exp2[self.mult_order - la] if la else 1

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if not a:
            return 0 if e else 1
        if self.prime_like:
            return pow(a, e, self.p)
        return self._exp2[self._log[a] * e % self.mult_order]

    def log(self, a: int) -> int:
        if not a:
            raise DivisionByZero("log of zero")
        return self._log[a]

    def gen_power(self, i: int) -> int:
        return self._exp2[i % self.mult_order]

    def from_int(self, n: int) -> int:
        """Image of the integer n (reduced mod p) in this field."""
        return n % self.p

    # -- vectorised arithmetic ------------------------------------------------

    def add_arr(self, A, B):
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.prime_like:
            return (A + B) % self.p
        if self.char2:
            return A ^ B
        p, pw = self.p, self._np_pw
        s = ((A[..., None] // pw) % p + (B[..., None] // pw) % p) % p
        return s @ pw

    def neg_arr(self, A):
        A = np.asarray(A, dtype=np.int64)
        if self.prime_like:
            return (-A) % self.p
        if self.char2:
            return A
        p, pw = self.p, self._np_pw
        return ((-((A[..., None] // pw) % p)) % p) @ pw

    def sub_arr(self, A, B):
        return self.add_arr(A, self.neg_arr(B))

    def mul_arr(self, A, B):
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.prime_like:
            return A * B % self.p
        la = self._np_log[A]
        lb = self._np_log[B]
        ok = (la >= 0) & (lb >= 0)
        return np.where(ok, self._np_exp2[np.where(ok, la + lb, 0)], 0)

    def pow_arr(self, A, e: int):
        A = np.asarray(A, dtype=np.int64)
        if e == 0:
            return np.ones_like(A)
        la = self._np_log[A]
        m = self.mult_order
        ok = la >= 0
        if e < 0:
            e = m - (-e % m)
        return np.where(ok, self._np_exp2[np.where(ok, la, 0) * (e % m) % m], 0)

    def sum_arr(self, A) -> int:
        A = np.asarray(A, dtype=np.int64).ravel()
        if self.prime_like:
            return int(A.sum() % self.p)
        if self.char2:
            return int(np.bitwise_xor.reduce(A)) if A.size else 0
        p, pw = self.p, self._np_pw
        return int((((A[:, None] // pw) % p).sum(axis=0) % p) @ pw)

    def elements(self):
        return np.arange(self.order, dtype=np.int64)

    # -- structure -------------------------------------------------------------

    def chain(self) -> list["GF"]:
        """Fields from the prime field up to this one."""
        out = [self]
        while out[-1].base is not None:
            out.append(out[-1].base)
        return out[::-1]

    def contains_field(self, other: "GF") -> bool:
        return any(f == other for f in self.chain())

    def extension(self, m: int) -> "GF":
        """The degree-m extension built with the packed-minimal irreducible."""
        if m in self._extensions:
            return self._extensions[m]
        label = f"{self.label}/{m}"
        if label in _REGISTRY:
            ext = _REGISTRY[label]
        else:
            if self.order**m > desk_cap():
                raise TooLarge(f"extension of order {self.order}^{m} exceeds the desk cap {desk_cap()}")
            ext = GF(self.p, self, minimal_irreducible(self, m), label=label, role="ext")
            _REGISTRY[label] = ext
        self._extensions[m] = ext
        return ext

    def parse_elem(self, text) -> int:
        return parse_elem(self, text)

    def format_elem(self, a: int) -> str:
        return str(a)


def _xor(a, b):
    return a ^ b


def _ident(a):
    return a


def minimal_irreducible(F: GF, m: int) -> tuple:
    """Monic irreducible of degree m over F with the smallest packed encoding."""
    for j in range(F.order**m):
        f = digits(j, F.order, m) + [1]
        if K.is_irreducible(F, f):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")


def prime_field(p: int) -> GF:
    label = f"{p}"
    if label not in _REGISTRY:
        _REGISTRY[label] = GF(p, label=label, role="prime")
    return _REGISTRY[label]


def _sub_field(base: GF, degree: int, label: str, role: str) -> GF:
    if label not in _REGISTRY:
        mod = (0, 1) if degree == 1 else minimal_irreducible(base, degree)
        _REGISTRY[label] = GF(base.p, base, mod, label=label, role=role)
    return _REGISTRY[label]


@dataclass(frozen=True, eq=False)
class FieldTower:
    """F_p inside F_q = F_p^s inside F_Q = F_q^k, each level built over the previous."""

    p: int
    s: int
    k: int
    prime: GF
    base: GF
    top: GF

    @property
    def q(self) -> int:
        return self.base.order

    @property
    def Q(self) -> int:
        return self.top.order

    @property
    def base_modulus(self) -> tuple:
        return self.base.modulus

    @property
    def top_modulus(self) -> tuple:
        return self.top.modulus

    @property
    def label(self) -> str:
        return self.top.label

    def level(self, name: str) -> GF:
        try:
            return {"prime": self.prime, "base": self.base, "top": self.top}[name]
        except KeyError:
            raise LevelMismatch(f"unknown level {name!r}") from None

    def elem(self, value, level: str = "top") -> "FieldElem":
        F = self.level(level)
        if isinstance(value, str):
            value = parse_elem(F, value)
        return FieldElem(F, value)

    def trace_norm_arrays(self):
        return _trace_norm_arrays(self.top)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "s": self.s,
            "k": self.k,
            "q": self.q,
            "Q": self.Q,
            "base_modulus": list(self.base_modulus),
            "top_modulus": list(self.top_modulus),
            "generator": self.top.generator,
        }


def build_tower(p: int, s: int = 1, k: int = 1) -> FieldTower:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if s < 1 or k < 1:
        raise ValueError("extension degrees must be positive")
    if p ** (s * k) > desk_cap():
        raise TooLarge(f"field of order {p}^{s * k} exceeds the desk cap {desk_cap()}")
    return _build_tower(p, s, k)


@lru_cache(maxsize=None)
def _build_tower(p, s, k):
    prime = prime_field(p)
    base = _sub_field(prime, s, f"{p}^{s}", "base")
    top = _sub_field(base, k, f"{p}^{s}:{k}", "top")
    return FieldTower(p, s, k, prime, base, top)


_FIELD_RE = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+)\s*(?::\s*(\d+))?)?\s*$")


def parse_field(text: str) -> FieldTower:
    """Parse "p", "p^s" or "p^s:k" into a tower."""
    m = _FIELD_RE.match(text)
    if not m:
        raise ParseError(f"bad field spec {text!r}; expected p^s or p^s:k")
    p = int(m.group(1))
    s = int(m.group(2) or 1)
    k = int(m.group(3) or 1)
    return build_tower(p, s, k)


def field_from_label(label: str) -> GF:
    """Rebuild a field from its label (used when reading JSON reports back)."""
    if label in _REGISTRY:
        return _REGISTRY[label]
    head, *exts = label.split("/")
    if ":" in head:
        F = parse_field(head).top
    elif "^" in head:
        p, s = head.split("^")
        F = build_tower(int(p), int(s), 1).base
    else:
        F = prime_field(int(head))
    for e in exts:
        F = F.extension(int(e))
    return F


_GEN_RE = re.compile(r"^g\^(-?\d+)$")


def parse_elem(F: GF, text) -> int:
    """Element literal: packed integer, or ``g^i`` for a generator power, optionally negated."""
    if isinstance(text, (int, np.integer)):
        v = int(text)
    else:
        t = str(text).strip().replace(" ", "")
        neg = False
        if t.startswith("-"):
            neg, t = True, t[1:]
        m = _GEN_RE.match(t)
        if m:
            v = F.gen_power(int(m.group(1)))
        elif t.isdigit():
            v = int(t)
        else:
            raise ParseError(f"bad element literal {text!r}")
        if v >= F.order:
            raise ParseError(f"element {v} out of range for a field of order {F.order}")
        return F.neg(v) if neg else v
    if not 0 <= v < F.order:
        raise ParseError(f"element {v} out of range for a field of order {F.order}")
    return v


@dataclass(frozen=True)
class FieldElem:
    """Boxed element: a packed integer together with its field."""

    field: GF
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.field.order:
            raise ValueError(f"{self.value} is not an element of {self.field}")

    @property
    def level(self) -> str:
        return self.field.role

    @property
    def coeffs(self) -> list[int]:
        return self.field.coords(self.value)

    def _other(self, o):
        if isinstance(o, FieldElem):
            if o.field != self.field:
                raise LevelMismatch(f"{o.field.label} vs {self.field.label}")
            return o.value
        if isinstance(o, int):
            return self.field.from_int(o)
        return NotImplemented

    def __add__(self, o):
        return FieldElem(self.field, self.field.add(self.value, self._other(o)))

    __radd__ = __add__

    def __sub__(self, o):
        return FieldElem(self.field, self.field.sub(self.value, self._other(o)))

    def __rsub__(self, o):
        return FieldElem(self.field, self.field.sub(self._other(o), self.value))

    def __mul__(self, o):
        return FieldElem(self.field, self.field.mul(self.value, self._other(o)))

    __rmul__ = __mul__

    def __truediv__(self, o):
        return FieldElem(self.field, self.field.div(self.value, self._other(o)))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElem(self.field, self.field.pow(self.value, e))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value


def elem_arith(a: FieldElem, b: FieldElem, op: str) -> FieldElem:
    if a.field != b.field:
        raise LevelMismatch(f"{a.field.label} vs {b.field.label}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def _require_extension(e: FieldElem):
    if e.field.base is None or e.field.role not in ("top", "ext"):
        raise LevelMismatch("operation needs an element of the top field")


def frobenius_q(e: FieldElem) -> FieldElem:
    """e**q where q is the order of the field directly below e's field."""
    _require_extension(e)
    return FieldElem(e.field, e.field.pow(e.value, e.field.base.order))


def in_base_subfield(e: FieldElem) -> bool:
    return frobenius_q(e) == e


def trace_norm_to_base(e: FieldElem):
    _require_extension(e)
    F = e.field
    q = F.base.order
    t, n, c = 0, 1, e.value
    for _ in range(F.degree):
        t = F.add(t, c)
        n = F.mul(n, c)
        c = F.pow(c, q)
    return FieldElem(F.base, t), FieldElem(F.base, n)


@lru_cache(maxsize=None)
def _trace_norm_arrays(F: GF):
    q = F.base.order
    A = F.elements()
    T = np.zeros_like(A)
    N = np.ones_like(A)
    C = A
    for _ in range(F.degree):
        T = F.add_arr(T, C)
        N = F.mul_arr(N, C)
        C = F.pow_arr(C, q)
    return T, N


def fiber_count(tower: FieldTower, u, v) -> int:
    """Number of top-field elements with trace u and norm v over the base field."""
    u = u.value if isinstance(u, FieldElem) else int(u)
    v = v.value if isinstance(v, FieldElem) else int(v)
    T, N = tower.trace_norm_arrays()
    return int(np.count_nonzero((T == u) & (N == v)))


def fiber_table(tower: FieldTower) -> np.ndarray:
    """q x q matrix of fiber counts indexed by (trace, norm)."""
    T, N = tower.trace_norm_arrays()
    q = tower.q
    out = np.zeros((q, q), dtype=np.int64)
    np.add.at(out, (T, N), 1)
    return out
