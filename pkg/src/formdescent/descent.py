"""Projector splitting of the exterior algebra along a descent pair (X, xi).

With ``xi(X) = 1`` the operators ``P = xi ^ i_X`` and ``Q = i_X (xi ^ .)``
resolve the identity. ``P`` keeps the part carrying a ``xi`` factor, ``Q``
the part annihilated by ``i_X``. A form then splits as

    w = xi ^ w1 + w0,      w1 = i_X w,   w0 = Q w,

and two biorthogonal pairs split it four ways.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .coeff import VARIABLE_NAMES
from .exterior import (
    FrameVector,
    Form,
    Metric,
    extend,
    flat,
    hodge,
    interior,
    lie_derivative,
)


class InvalidPair(ValueError):
    pass


@dataclass(frozen=True)
class DescentPair:
    """Constant vector ``X`` with a constant (hence closed) covector ``xi``, ``xi(X) = 1``."""

    X: FrameVector
    xi: FrameVector
    label: str = "e"
    norm: Fraction | None = None  # g(X, X) when built from a metric

    def __post_init__(self):
        if self.X.dim != self.xi.dim:
            raise InvalidPair("X and xi live in different dimensions")
        if self.xi.pair(self.X) != 1:
            raise InvalidPair(f"xi(X) = {self.xi.pair(self.X)}, expected 1")

    @property
    def dim(self) -> int:
        return self.X.dim

    @classmethod
    def coordinate(cls, dim: int, axis: int, g: Metric | None = None) -> "DescentPair":
        """``(d/dx^axis, dx^axis)``, tagged ``e_<name>``."""
        X = FrameVector.axis(dim, axis)
        norm = Fraction(g.signs[axis]) if g is not None else None
        return cls(X, FrameVector.axis(dim, axis), f"e_{VARIABLE_NAMES[axis]}", norm)

    @classmethod
    def metric(cls, X: FrameVector, g: Metric, label: str = "e") -> "DescentPair":
        """Pair with ``xi = X_flat / g(X, X)``; requires a non-null ``X``."""
        norm = g.inner(X, X)
        if norm == 0:
            raise InvalidPair("g(X, X) = 0: null vectors admit no metric descent pair")
        comps = tuple(s * c / norm for s, c in zip(g.signs, X.components))
        return cls(X, FrameVector(comps), label, norm)

    def is_metric(self, g: Metric) -> bool:
        n = g.inner(self.X, self.X)
        if n == 0:
            return False
        return self.xi.as_form() == flat(self.X, g) * Fraction(1, n)


def proj_P(pair: DescentPair, w: Form) -> Form:
    return extend(pair.xi, interior(pair.X, w))


def proj_Q(pair: DescentPair, w: Form) -> Form:
    return interior(pair.X, extend(pair.xi, w))


def is_invariant(X: FrameVector, w: Form) -> bool:
    return lie_derivative(X, w).is_zero()


@dataclass(frozen=True)
class SingleDecomposition:
    scalar_part: Form  # w0, tag "1"
    vector_part: Form  # w1, tag = pair label
    pair: DescentPair

    def recompose(self) -> Form:
        return extend(self.pair.xi, self.vector_part) + self.scalar_part

    def tagged(self) -> dict[str, tuple[str, Form]]:
        return {"(0)": ("1", self.scalar_part), "(1)": (self.pair.label, self.vector_part)}


def decompose_single(pair: DescentPair, w: Form) -> SingleDecomposition:
    return SingleDecomposition(proj_Q(pair, w), interior(pair.X, w), pair)


@dataclass(frozen=True)
class DoubleDecomposition:
    """Parts ``w_(r,s)``; ``r`` counts the first pair's covector, ``s`` the second's."""

    parts: dict = field(hash=False)  # (r, s) -> Form
    pairs: tuple[DescentPair, DescentPair]

    def __getitem__(self, key) -> Form:
        return self.parts[key]

    def recompose(self) -> Form:
        (pY, pZ) = self.pairs
        return (
            self.parts[0, 0]
            + extend(pY.xi, self.parts[1, 0])
            + extend(pZ.xi, self.parts[0, 1])
            + extend(pY.xi, extend(pZ.xi, self.parts[1, 1]))
        )

    def tags(self) -> dict[tuple, str]:
        ly, lz = self.pairs[0].label, self.pairs[1].label
        return {(0, 0): "1", (1, 0): ly, (0, 1): lz, (1, 1): f"{ly}^{lz}"}

    def tagged(self) -> dict[str, tuple[str, Form]]:
        tags = self.tags()
        return {f"({r},{s})": (tags[r, s], self.parts[r, s]) for (r, s) in sorted(self.parts)}


def check_biorthogonal(pairY: DescentPair, pairZ: DescentPair) -> None:
    if pairY.dim != pairZ.dim:
        raise InvalidPair("pairs live in different dimensions")
    if pairY.xi.pair(pairZ.X) != 0 or pairZ.xi.pair(pairY.X) != 0:
        raise InvalidPair("double descent needs xi_Y(X_Z) = xi_Z(X_Y) = 0")


def _iYiZ(pairY: DescentPair, pairZ: DescentPair, w: Form) -> Form:
    return interior(pairY.X, interior(pairZ.X, w))


def decompose_double(pairY: DescentPair, pairZ: DescentPair, w: Form) -> DoubleDecomposition:
    check_biorthogonal(pairY, pairZ)
    yi, zi = pairY.xi, pairZ.xi
    parts = {
        (0, 0): -_iYiZ(pairY, pairZ, extend(yi, extend(zi, w))),
        (0, 1): -_iYiZ(pairY, pairZ, extend(yi, w)),
        (1, 0): _iYiZ(pairY, pairZ, extend(zi, w)),
        (1, 1): -_iYiZ(pairY, pairZ, w),
    }
    return DoubleDecomposition(parts, (pairY, pairZ))


def hodge_components(pair: DescentPair, w: Form, g: Metric) -> SingleDecomposition:
    """Split of ``*w`` computed from the split of ``w`` alone.

    ``(*w)_1 = i_X * w0`` and ``(*w)_0 = -(-1)^p i_X * w1 / g(X,X)``; for a
    unit spacelike ``X`` (``g(X,X) = -1``) the factor reduces to ``(-1)^p``.
    """
    if not w.is_homogeneous():
        raise ValueError("hodge_components needs a homogeneous form")
    norm = g.inner(pair.X, pair.X)
    if norm == 0:
        raise InvalidPair("degenerate pair: g(X, X) = 0")
    if not pair.is_metric(g):
        raise InvalidPair("pair is not metrically consistent: xi != X_flat / g(X, X)")
    p = w.degree
    dec = decompose_single(pair, w)
    vec = interior(pair.X, hodge(dec.scalar_part, g))
    factor = -(-1 if p % 2 else 1) / norm
    sca = interior(pair.X, hodge(dec.vector_part, g)) * factor
    return SingleDecomposition(sca, vec, pair)


def hodge_components_double(pairY: DescentPair, pairZ: DescentPair, w: Form, g: Metric) -> DoubleDecomposition:
    """Four-way split of ``*w`` from the four-way split of ``w``.

    With ``i_{Y^Z} = i_Z i_Y`` and both pairs unit spacelike:
    ``(*w)_(1,1) = i_{Y^Z} * w_(0,0)``, ``(*w)_(0,1) = (-1)^p i_{Y^Z} * w_(1,0)``,
    ``(*w)_(1,0) = (-1)^(p-1) i_{Y^Z} * w_(0,1)``, ``(*w)_(0,0) = i_{Y^Z} * w_(1,1)``
    where ``p`` is the degree of ``w``. For general norms the (0,1) and (1,0)
    factors carry ``-1/g(Y,Y)`` resp. ``-1/g(Z,Z)`` and the (0,0) part
    ``1/(g(Y,Y) g(Z,Z))``.
    """
    if not w.is_homogeneous():
        raise ValueError("hodge_components_double needs a homogeneous form")
    for pr in (pairY, pairZ):
        if not pr.is_metric(g):
            raise InvalidPair(f"pair {pr.label} is not metrically consistent")
    check_biorthogonal(pairY, pairZ)
    p = w.degree
    nY = g.inner(pairY.X, pairY.X)
    nZ = g.inner(pairZ.X, pairZ.X)
    dec = decompose_double(pairY, pairZ, w)

    def iYZ_star(part: Form) -> Form:
        return interior(pairZ.X, interior(pairY.X, hodge(part, g)))

    sgn = -1 if p % 2 else 1
    parts = {
        (1, 1): iYZ_star(dec[0, 0]),
        (0, 1): iYZ_star(dec[1, 0]) * (-sgn / nY),
        (1, 0): iYZ_star(dec[0, 1]) * (sgn / nZ),
        (0, 0): iYZ_star(dec[1, 1]) * (1 / (nY * nZ)),
    }
    return DoubleDecomposition(parts, (pairY, pairZ))


@dataclass
class CommutatorReport:
    residuals: list[Form]

    @property
    def ok(self) -> bool:
        return all(r.is_zero() for r in self.residuals)


def projector_commutator(pair_i: DescentPair, pair_j: DescentPair, forms) -> CommutatorReport:
    """Residual of ``[P_i, P_j] w - (xi_j(X_i) eps_i i_{X_j} - xi_i(X_j) eps_j i_{X_i}) w``."""
    a = pair_j.xi.pair(pair_i.X)
    b = pair_i.xi.pair(pair_j.X)
    out = []
    for w in forms:
        lhs = proj_P(pair_i, proj_P(pair_j, w)) - proj_P(pair_j, proj_P(pair_i, w))
        rhs = extend(pair_i.xi, interior(pair_j.X, w)) * a - extend(pair_j.xi, interior(pair_i.X, w)) * b
        out.append(lhs - rhs)
    return CommutatorReport(out)
