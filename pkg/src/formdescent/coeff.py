"""Exact sparse multivariate polynomials over the rationals.

A :class:`Poly` lives in a fixed number ``m`` of coordinates. For ``m <= 4``
the coordinates are named ``t, x, y, z`` (in that order); higher dimensions
continue with ``u, v, w, r``. Coefficients are :class:`fractions.Fraction`,
so every operation is exact.

Textual syntax (parse and print round-trip losslessly)::

    2*t^2 x - 1/3*y + 1
    -t x^2 y
    3/4

A term is an optional rational coefficient, an optional ``*``, then zero or
more ``var`` or ``var^n`` factors separated by spaces or ``*``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

VARIABLE_NAMES = "txyzuvwr"
MAX_DIM = len(VARIABLE_NAMES)

Monomial = tuple  # tuple[int, ...] of length m


class DimensionMismatch(ValueError):
    pass


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, str)):
        return Fraction(c)
    raise TypeError(f"exact coefficient required, got {type(c).__name__}")


def _grlex_key(exps: Monomial):
    return (-sum(exps), tuple(-e for e in exps))


class Poly:
    """Immutable polynomial: a map ``exponent tuple -> Fraction`` without zeros."""

    __slots__ = ("dim", "_terms", "_hash")

    def __init__(self, dim: int, terms: Mapping[Monomial, object] | None = None):
        if not 1 <= dim <= MAX_DIM:
            raise ValueError(f"dimension must be in 1..{MAX_DIM}, got {dim}")
        self.dim = dim
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for exps, c in terms.items():
                exps = tuple(int(e) for e in exps)
                if len(exps) != dim or any(e < 0 for e in exps):
                    raise ValueError(f"bad exponent vector {exps} for dimension {dim}")
                c = _as_fraction(c)
                if c:
                    clean[exps] = clean.get(exps, 0) + c
                    if not clean[exps]:
                        del clean[exps]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, dim: int, terms: dict) -> "Poly":
        # Trusted constructor: terms already canonical.
        p = object.__new__(cls)
        p.dim = dim
        p._terms = terms
        p._hash = None
        return p

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, dim: int) -> "Poly":
        return cls._raw(dim, {})

    @classmethod
    def const(cls, dim: int, c) -> "Poly":
        c = _as_fraction(c)
        return cls._raw(dim, {(0,) * dim: c} if c else {})

    @classmethod
    def var(cls, dim: int, axis: int) -> "Poly":
        _check_axis(dim, axis)
        exps = [0] * dim
        exps[axis] = 1
        return cls._raw(dim, {tuple(exps): Fraction(1)})

    @classmethod
    def parse(cls, text: str, dim: int) -> "Poly":
        return parse_poly(text, dim)

    # -- inspection -----------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(sorted(self._terms.items(), key=lambda kv: _grlex_key(kv[0])))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> Fraction:
        """Value of a constant polynomial; raises if the polynomial is not constant."""
        if not self.is_constant():
            raise ValueError(f"polynomial {self} is not constant")
        return self._terms.get((0,) * self.dim, Fraction(0))

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def __len__(self) -> int:
        return len(self._terms)

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.dim != self.dim:
                raise DimensionMismatch(f"dimensions {self.dim} and {other.dim} differ")
            return other
        return Poly.const(self.dim, other)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly._raw(self.dim, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.dim, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def scale(self, c) -> "Poly":
        c = _as_fraction(c)
        if not c:
            return Poly.zero(self.dim)
        if c == 1:
            return self
        return Poly._raw(self.dim, {e: c * v for e, v in self._terms.items()})

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        other = self._coerce(other)
        out: dict[Monomial, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Poly._raw(self.dim, out)

    def __rmul__(self, other) -> "Poly":
        return self.scale(other)

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        out = Poly.const(self.dim, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.dim == other.dim and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.dim, frozenset(self._terms.items())))
        return self._hash

    # -- calculus -------------------------------------------------------------

    def partial(self, axis: int) -> "Poly":
        _check_axis(self.dim, axis)
        out = {}
        for e, c in self._terms.items():
            k = e[axis]
            if k:
                e2 = e[:axis] + (k - 1,) + e[axis + 1:]
                out[e2] = c * k
        return Poly._raw(self.dim, out)

    def depends_on(self, axis: int) -> bool:
        _check_axis(self.dim, axis)
        return any(e[axis] for e in self._terms)

    def directional(self, components: Iterable) -> "Poly":
        """Derivative along a constant vector with the given components."""
        out = Poly.zero(self.dim)
        for axis, c in enumerate(components):
            if c:
                out = out + self.partial(axis).scale(c)
        return out

    # -- evaluation -----------------------------------------------------------

    def __call__(self, *point):
        """Evaluate at a point; arguments may be numbers or numpy arrays.

        Exact (Fraction) arguments give an exact result; floats or arrays are
        evaluated in floating point.
        """
        if len(point) != self.dim:
            raise DimensionMismatch(f"expected {self.dim} coordinates, got {len(point)}")
        exact = all(isinstance(v, (int, Fraction)) for v in point)
        total = Fraction(0) if exact else 0.0
        for e, c in self._terms.items():
            term = c if exact else float(c)
            for v, k in zip(point, e):
                if k:
                    term = term * v**k
            total = total + term
        return total

    # -- text -----------------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({self.dim}, {format_poly(self)!r})"


def _check_axis(dim: int, axis: int) -> None:
    if not 0 <= axis < dim:
        raise IndexError(f"axis {axis} out of range for dimension {dim}")


def variable_names(dim: int) -> str:
    return VARIABLE_NAMES[:dim]


def poly_add(a: Poly, b: Poly) -> Poly:
    return a + b


def poly_mul(a: Poly, b: Poly) -> Poly:
    return a * b


def poly_partial(p: Poly, axis: int) -> Poly:
    return p.partial(axis)


def poly_depends_on(p: Poly, axis: int) -> bool:
    return p.depends_on(axis)


# -- text format ---------------------------------------------------------------

def _format_monomial(exps: Monomial) -> str:
    factors = []
    for name, k in zip(VARIABLE_NAMES, exps):
        if k == 1:
            factors.append(name)
        elif k > 1:
            factors.append(f"{name}^{k}")
    return " ".join(factors)


def format_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    pieces = []
    for i, (exps, c) in enumerate(p.items()):
        mono = _format_monomial(exps)
        neg = c < 0
        mag = -c if neg else c
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f" - {body}" if neg else f" + {body}")
    return "".join(pieces)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>[A-Za-z])(?:\^(?P<exp>\d+))?|(?P<op>[+\-*()]))")


class PolyParseError(ValueError):
    pass


def parse_poly(text: str, dim: int) -> Poly:
    """Parse the textual syntax documented at module level."""
    names = variable_names(dim)
    pos = 0
    tokens = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolyParseError(f"unexpected character at {pos} in {text!r}")
        pos = m.end()
        if m.group("num"):
            try:
                tokens.append(("num", Fraction(m.group("num"))))
            except ZeroDivisionError:
                raise PolyParseError(f"zero denominator in {text!r}") from None
        elif m.group("var"):
            v = m.group("var")
            if v not in names:
                raise PolyParseError(f"unknown variable {v!r} for dimension {dim}")
            tokens.append(("var", (names.index(v), int(m.group("exp") or 1))))
        else:
            tokens.append(("op", m.group("op")))
    if not tokens:
        raise PolyParseError("empty polynomial")

    out = Poly.zero(dim)
    sign = 1
    coef = None
    exps = [0] * dim
    seen = False
    after_star = False

    def flush():
        nonlocal out, coef, exps, seen, sign
        if not seen or after_star:
            raise PolyParseError(f"dangling operator in {text!r}")
        c = Fraction(1) if coef is None else coef
        out = out + Poly(dim, {tuple(exps): sign * c})
        coef, exps, seen, sign = None, [0] * dim, False, 1

    for kind, val in tokens:
        if kind == "op" and val in "+-":
            if after_star:
                raise PolyParseError(f"operator after '*' in {text!r}")
            if seen:
                flush()
            if val == "-":
                sign = -sign
        elif kind == "op" and val == "*":
            if not seen or after_star:
                raise PolyParseError(f"'*' without left operand in {text!r}")
            after_star = True
        elif kind == "op":
            raise PolyParseError(f"parentheses are not part of the polynomial syntax: {text!r}")
        elif kind == "num":
            coef = val if coef is None else coef * val
            seen, after_star = True, False
        else:
            axis, k = val
            exps[axis] += k
            seen, after_star = True, False
    flush()
    return out
