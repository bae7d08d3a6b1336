"""Exterior algebra over R^m with a constant orthonormal coframe.

Forms are sparse maps from strictly increasing index tuples (basis forms
``dx^{i1} ^ ... ^ dx^{ip}``) to polynomial coefficients. Mixed grades are
allowed; grade-dependent signs are applied slice by slice.

Metrics are diagonal with entries +1/-1, so the metric equals its inverse and
the volume form is ``dx^0 ^ ... ^ dx^{m-1}``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping

from .coeff import DimensionMismatch, Poly, VARIABLE_NAMES, parse_poly

BasisIndex = tuple  # strictly increasing tuple[int, ...]


@dataclass(frozen=True)
class Metric:
    signs: tuple[int, ...]

    def __post_init__(self):
        signs = tuple(int(s) for s in self.signs)
        if not 2 <= len(signs) <= 8:
            raise ValueError(f"metric dimension must be in 2..8, got {len(signs)}")
        if any(s not in (1, -1) for s in signs):
            raise ValueError(f"metric entries must be +1 or -1, got {signs}")
        object.__setattr__(self, "signs", signs)

    @property
    def dim(self) -> int:
        return len(self.signs)

    @property
    def s(self) -> int:
        """Negative index of inertia."""
        return sum(1 for e in self.signs if e < 0)

    @classmethod
    def lorentzian(cls, dim: int = 4) -> "Metric":
        return cls((1,) + (-1,) * (dim - 1))

    @classmethod
    def euclidean(cls, dim: int) -> "Metric":
        return cls((1,) * dim)

    def inner(self, a: "FrameVector", b: "FrameVector") -> Fraction:
        return sum((s * x * y for s, x, y in zip(self.signs, a.components, b.components)), Fraction(0))


@dataclass(frozen=True)
class FrameVector:
    """Constant-coefficient vector ``c^mu X_mu``.

    The same component tuple doubles as a constant covector ``c_mu dx^mu``
    wherever an operation expects a 1-form (see :func:`extend`).
    """

    components: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(Fraction(c) for c in self.components))

    @property
    def dim(self) -> int:
        return len(self.components)

    @classmethod
    def axis(cls, dim: int, axis: int, scale=1) -> "FrameVector":
        comps = [0] * dim
        comps[axis] = scale
        return cls(tuple(comps))

    def __add__(self, other: "FrameVector") -> "FrameVector":
        return FrameVector(tuple(a + b for a, b in zip(self.components, other.components)))

    def __mul__(self, c) -> "FrameVector":
        return FrameVector(tuple(Fraction(c) * a for a in self.components))

    __rmul__ = __mul__

    def pair(self, other: "FrameVector") -> Fraction:
        """Natural pairing, reading ``self`` as covector and ``other`` as vector."""
        return sum((a * b for a, b in zip(self.components, other.components)), Fraction(0))

    def as_form(self) -> "Form":
        m = self.dim
        return Form(m, {(i,): Poly.const(m, c) for i, c in enumerate(self.components) if c})


class Form:
    """Immutable mixed-grade differential form with polynomial coefficients."""

    __slots__ = ("dim", "_terms")

    def __init__(self, dim: int, terms: Mapping[BasisIndex, object] | None = None):
        self.dim = dim
        clean: dict[BasisIndex, Poly] = {}
        for idx, c in (terms or {}).items():
            idx = tuple(idx)
            if any(b <= a for a, b in zip(idx, idx[1:])) or any(not 0 <= i < dim for i in idx):
                raise ValueError(f"basis index {idx} is not strictly increasing in 0..{dim - 1}")
            if not isinstance(c, Poly):
                c = Poly.const(dim, c)
            elif c.dim != dim:
                raise DimensionMismatch(f"coefficient dimension {c.dim} != form dimension {dim}")
            if c:
                prev = clean.get(idx)
                c = c if prev is None else prev + c
                if c:
                    clean[idx] = c
                else:
                    del clean[idx]
        self._terms = clean

    @classmethod
    def _raw(cls, dim: int, terms: dict) -> "Form":
        f = object.__new__(cls)
        f.dim = dim
        f._terms = terms
        return f

    @classmethod
    def zero(cls, dim: int) -> "Form":
        return cls._raw(dim, {})

    @classmethod
    def scalar(cls, p) -> "Form":
        if not isinstance(p, Poly):
            raise TypeError("use Form(dim, {(): c}) for numeric scalars")
        return cls._raw(p.dim, {(): p} if p else {})

    @classmethod
    def basis(cls, dim: int, idx: Iterable[int], coef=1) -> "Form":
        """``coef * dx^{i1} ^ ... ^ dx^{ip}`` for any (possibly unsorted) index list."""
        sign, key = sort_index(tuple(idx))
        if sign == 0:
            return cls.zero(dim)
        c = coef if isinstance(coef, Poly) else Poly.const(dim, coef)
        return cls(dim, {key: c.scale(sign)})

    @classmethod
    def parse(cls, text: str, dim: int) -> "Form":
        return parse_form(text, dim)

    # -- inspection -----------------------------------------------------------

    @property
    def terms(self) -> dict[BasisIndex, Poly]:
        return dict(self._terms)

    def items(self):
        return iter(sorted(self._terms.items(), key=lambda kv: (len(kv[0]), kv[0])))

    def __getitem__(self, idx: BasisIndex) -> Poly:
        return self._terms.get(tuple(idx), Poly.zero(self.dim))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def grades(self) -> list[int]:
        return sorted({len(k) for k in self._terms})

    def grade(self, p: int) -> "Form":
        return Form._raw(self.dim, {k: v for k, v in self._terms.items() if len(k) == p})

    def slices(self):
        for p in self.grades():
            yield p, self.grade(p)

    def is_homogeneous(self) -> bool:
        return len(self.grades()) <= 1

    @property
    def degree(self) -> int:
        g = self.grades()
        if len(g) > 1:
            raise ValueError(f"form has mixed grades {g}")
        return g[0] if g else 0

    def coefficients(self) -> list[Poly]:
        return [c for _, c in self.items()]

    def map_coefficients(self, fn) -> "Form":
        out = {}
        for k, v in self._terms.items():
            c = fn(v)
            if c:
                out[k] = c
        return Form._raw(self.dim, out)

    # -- linear structure -----------------------------------------------------

    def _check(self, other: "Form") -> None:
        if other.dim != self.dim:
            raise DimensionMismatch(f"form dimensions {self.dim} and {other.dim} differ")

    def __add__(self, other: "Form") -> "Form":
        self._check(other)
        out = dict(self._terms)
        for k, v in other._terms.items():
            s = out[k] + v if k in out else v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Form._raw(self.dim, out)

    def __neg__(self) -> "Form":
        return Form._raw(self.dim, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __mul__(self, c) -> "Form":
        """Multiply every coefficient by a number or a polynomial."""
        if isinstance(c, Poly):
            return self.map_coefficients(lambda v: v * c)
        c = Fraction(c)
        if c == 1:
            return self
        return self.map_coefficients(lambda v: v.scale(c))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return self.dim == other.dim and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.dim, frozenset(self._terms.items())))

    def __str__(self) -> str:
        return format_form(self)

    def __repr__(self) -> str:
        return f"Form({self.dim}, {format_form(self)!r})"


# -- index combinatorics -------------------------------------------------------

def sort_index(idx: tuple) -> tuple[int, tuple]:
    """Sort an index tuple, returning (permutation sign, sorted tuple); sign 0 on repeats."""
    if len(set(idx)) != len(idx):
        return 0, ()
    inversions = sum(1 for a in range(len(idx)) for b in range(a + 1, len(idx)) if idx[a] > idx[b])
    return (-1 if inversions % 2 else 1), tuple(sorted(idx))


def _merge_sign(a: tuple, b: tuple) -> int:
    # sign of dx^a ^ dx^b relative to sorted(a + b); a, b disjoint and increasing
    inv = 0
    for i in a:
        for j in b:
            if i > j:
                inv += 1
    return -1 if inv % 2 else 1


def basis_indices(dim: int, p: int) -> list[tuple]:
    return list(combinations(range(dim), p))


def _same_dim(*objs) -> int:
    dims = {o.dim for o in objs}
    if len(dims) != 1:
        raise DimensionMismatch(f"dimension mismatch: {sorted(dims)}")
    return dims.pop()


# -- algebraic operations ------------------------------------------------------

def wedge(a: Form, b: Form) -> Form:
    m = _same_dim(a, b)
    out: dict[tuple, Poly] = {}
    for ia, ca in a._terms.items():
        sa = set(ia)
        for ib, cb in b._terms.items():
            if sa.intersection(ib):
                continue
            key = tuple(sorted(ia + ib))
            c = ca * cb
            if _merge_sign(ia, ib) < 0:
                c = -c
            prev = out.get(key)
            c = c if prev is None else prev + c
            if c:
                out[key] = c
            else:
                out.pop(key, None)
    return Form._raw(m, out)


def interior(X: FrameVector, w: Form) -> Form:
    """Contraction ``i_X w``: antiderivation of degree -1."""
    m = _same_dim(X, w)
    out = Form.zero(m)
    acc: dict[tuple, Poly] = {}
    for idx, c in w._terms.items():
        for pos, axis in enumerate(idx):
            comp = X.components[axis]
            if not comp:
                continue
            key = idx[:pos] + idx[pos + 1:]
            v = c.scale(comp if pos % 2 == 0 else -comp)
            prev = acc.get(key)
            v = v if prev is None else prev + v
            if v:
                acc[key] = v
            else:
                acc.pop(key, None)
    out._terms = acc
    return out


def extend(xi, w: Form) -> Form:
    """Extension ``xi ^ w`` by a 1-form (a :class:`Form` or covector components)."""
    xi_form = xi.as_form() if isinstance(xi, FrameVector) else xi
    if isinstance(xi, Form) and xi.grades() not in ([1], []):
        raise ValueError("extension requires a 1-form")
    return wedge(xi_form, w)


def flat(X: FrameVector, g: Metric) -> Form:
    _same_dim(X, g)
    return FrameVector(tuple(s * c for s, c in zip(g.signs, X.components))).as_form()


def sharp(w: Form, g: Metric) -> FrameVector:
    m = _same_dim(w, g)
    if w.grades() not in ([1], []):
        raise ValueError("sharp requires a homogeneous 1-form")
    comps = [Fraction(0)] * m
    for (i,), c in w._terms.items():
        if not c.is_constant():
            raise ValueError(f"sharp requires constant coefficients, got {c}")
        comps[i] = g.signs[i] * c.constant_value()
    return FrameVector(tuple(comps))


def exterior_derivative(w: Form) -> Form:
    m = w.dim
    acc: dict[tuple, Poly] = {}
    for idx, c in w._terms.items():
        for mu in range(m):
            if mu in idx:
                continue
            dc = c.partial(mu)
            if not dc:
                continue
            # dx^mu ^ dx^idx: sign = (-1)^{#indices below mu}
            below = sum(1 for i in idx if i < mu)
            if below % 2:
                dc = -dc
            key = tuple(sorted(idx + (mu,)))
            prev = acc.get(key)
            dc = dc if prev is None else prev + dc
            if dc:
                acc[key] = dc
            else:
                acc.pop(key, None)
    return Form._raw(m, acc)


d = exterior_derivative


def lie_derivative(X: FrameVector, w: Form) -> Form:
    """Lie derivative along a constant vector field: acts on coefficients only."""
    _same_dim(X, w)
    return w.map_coefficients(lambda c: c.directional(X.components))


@lru_cache(maxsize=None)
def hodge_table(signs: tuple[int, ...]) -> dict[tuple, tuple[int, tuple]]:
    """``idx -> (sign, complement)`` with ``*dx^idx = sign * dx^complement``.

    The sign is the product of the metric entries on ``idx`` (raising indices)
    times the parity of the permutation ``idx + complement`` (contracting the
    volume form).
    """
    m = len(signs)
    table = {}
    for p in range(m + 1):
        for idx in combinations(range(m), p):
            comp = tuple(i for i in range(m) if i not in idx)
            raise_sign = 1
            for i in idx:
                raise_sign *= signs[i]
            perm_sign, _ = sort_index(idx + comp)
            table[idx] = (raise_sign * perm_sign, comp)
    return table


def hodge(w: Form, g: Metric) -> Form:
    m = _same_dim(w, g)
    table = hodge_table(g.signs)
    out = {}
    for idx, c in w._terms.items():
        sign, comp = table[idx]
        out[comp] = c if sign > 0 else -c
    return Form._raw(m, out)


def codifferential(w: Form, g: Metric) -> Form:
    """``delta = (-1)^{m(p+1)+s+1} * d * `` on each grade-p slice."""
    m = _same_dim(w, g)
    out = Form.zero(m)
    for p, part in w.slices():
        sign = -1 if (m * (p + 1) + g.s + 1) % 2 else 1
        out = out + hodge(exterior_derivative(hodge(part, g)), g) * sign
    return out


delta = codifferential


def laplace_beltrami(w: Form, g: Metric) -> Form:
    return exterior_derivative(codifferential(w, g)) + codifferential(exterior_derivative(w), g)


def _wave_scalar(c: Poly, g: Metric) -> Poly:
    out = Poly.zero(c.dim)
    for a, s in enumerate(g.signs):
        dd = c.partial(a).partial(a)
        if dd:
            out = out + (dd if s > 0 else -dd)
    return out


def wave_operator(w: Form, g: Metric) -> Form:
    """``sum_a g^{aa} L_{X_a} L_{X_a}`` applied to each coefficient."""
    _same_dim(w, g)
    return w.map_coefficients(lambda c: _wave_scalar(c, g))


def principal_symbol(g: Metric, f: Poly, h: Poly) -> Poly:
    """Half the nested commutator ``[[L, h], f]`` of the wave operator, applied to 1.

    Equals ``g^{ab} d_a f d_b h`` (the contravariant metric on ``df, dh``).
    """
    if f.dim != g.dim or h.dim != g.dim:
        raise DimensionMismatch("polynomials and metric must share a dimension")

    def L(u: Poly) -> Poly:
        return _wave_scalar(u, g)

    def comm_h(u: Poly) -> Poly:
        return L(h * u) - h * L(u)

    one = Poly.const(g.dim, 1)
    nested = comm_h(f * one) - f * comm_h(one)
    return nested.scale(Fraction(1, 2))


# -- text format ---------------------------------------------------------------

def format_basis(idx: tuple) -> str:
    if not idx:
        return "1"
    return "^".join("d" + VARIABLE_NAMES[i] for i in idx)


def format_form(w: Form) -> str:
    if w.is_zero():
        return "0"
    items = list(w.items())
    if len(items) == 1 and items[0][0] == ():
        return str(items[0][1])
    parts = []
    for idx, c in items:
        parts.append(f"({c})" if idx == () else f"({c}) {format_basis(idx)}")
    return " + ".join(parts)


class FormParseError(ValueError):
    pass


_BASIS = re.compile(r"d[a-z](?:\s*\^\s*d[a-z])*")


def parse_form(text: str, dim: int) -> Form:
    """Parse ``(poly) dt^dx + (poly) dy^dz``-style text.

    A term is an optional sign, an optional parenthesised polynomial and an
    optional basis (``dt^dx``; ``1`` or nothing for grade 0). A bare
    polynomial without any basis is read as a 0-form.
    """
    s = text.strip()
    if not s:
        raise FormParseError("empty form")
    if "(" not in s and not _BASIS.search(s):
        return Form(dim, {(): parse_poly(s, dim)})
    out = Form.zero(dim)
    pos = 0
    first = True
    names = VARIABLE_NAMES[:dim]
    while pos < len(s):
        while pos < len(s) and s[pos].isspace():
            pos += 1
        sign = 1
        if not first:
            if pos >= len(s) or s[pos] not in "+-":
                raise FormParseError(f"expected '+' or '-' at {pos} in {text!r}")
            sign = -1 if s[pos] == "-" else 1
            pos += 1
        elif pos < len(s) and s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos += 1
        while pos < len(s) and s[pos].isspace():
            pos += 1
        coef = Poly.const(dim, 1)
        had = False
        if pos < len(s) and s[pos] == "(":
            depth, end = 0, pos
            while end < len(s):
                depth += {"(": 1, ")": -1}.get(s[end], 0)
                if depth == 0:
                    break
                end += 1
            if depth:
                raise FormParseError(f"unbalanced parentheses in {text!r}")
            coef = parse_poly(s[pos + 1:end], dim)
            pos = end + 1
            had = True
            while pos < len(s) and s[pos].isspace():
                pos += 1
        idx: tuple = ()
        m = _BASIS.match(s, pos)
        if m:
            letters = [tok.strip()[1] for tok in m.group(0).split("^")]
            for ch in letters:
                if ch not in names:
                    raise FormParseError(f"unknown differential d{ch} for dimension {dim}")
            idx = tuple(names.index(ch) for ch in letters)
            pos = m.end()
            had = True
        elif s.startswith("1", pos):
            pos += 1
            had = True
        if not had:
            raise FormParseError(f"expected a term at {pos} in {text!r}")
        out = out + Form.basis(dim, idx, coef.scale(sign))
        first = False
    return out
