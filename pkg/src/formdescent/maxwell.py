"""Maxwell forms on (t, x, y, z) and their splitting into descent sectors.

``F = dt ^ E - B``, ``G = *F`` (vacuum), ``J = dt ^ j - R`` with the usual
component placements. Single descent along ``z`` separates the EEB sector
(``Ex, Ey, Bz``) from the BBE sector (``Bx, By, Ez``); double descent along
``y`` and ``z`` yields the four sectors ``Ex``, ``EyBz``, ``ByEz`` and ``Bx``.

Residual identifiers are stable strings. Each componentwise equation maps to
one coefficient of one intrinsic residual, up to a fixed sign recorded in
:data:`CROSSCHECK_CATALOGUE`.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, fields
from typing import Mapping, NamedTuple

from .coeff import Poly, parse_poly
from .descent import DescentPair, decompose_double, decompose_single
from .exterior import (
    Form,
    FrameVector,
    Metric,
    exterior_derivative as d,
    extend,
    hodge,
    interior,
)

T, X_, Y_, Z_ = range(4)
DIM = 4

FIELD_NAMES = ("Ex", "Ey", "Ez", "Bx", "By", "Bz", "rho", "jx", "jy", "jz")


class DescentViolation(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        desc = ", ".join(f"({q}, {axis})" for q, axis in self.violations)
        super().__init__(f"descent condition violated: {desc}")


def _zero() -> Poly:
    return Poly.zero(DIM)


@dataclass(frozen=True)
class EMConfig:
    Ex: Poly = field(default_factory=_zero)
    Ey: Poly = field(default_factory=_zero)
    Ez: Poly = field(default_factory=_zero)
    Bx: Poly = field(default_factory=_zero)
    By: Poly = field(default_factory=_zero)
    Bz: Poly = field(default_factory=_zero)
    rho: Poly = field(default_factory=_zero)
    jx: Poly = field(default_factory=_zero)
    jy: Poly = field(default_factory=_zero)
    jz: Poly = field(default_factory=_zero)

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not isinstance(v, Poly):
                v = parse_poly(v, DIM) if isinstance(v, str) else Poly.const(DIM, v)
                object.__setattr__(self, f.name, v)
            if v.dim != DIM:
                raise ValueError(f"{f.name} must be a polynomial in (t, x, y, z)")

    @classmethod
    def from_strings(cls, data: Mapping[str, str]) -> "EMConfig":
        unknown = set(data) - set(FIELD_NAMES)
        if unknown:
            raise ValueError(f"unknown EMConfig keys: {sorted(unknown)}")
        return cls(**{k: parse_poly(str(v), DIM) for k, v in data.items()})

    def to_strings(self) -> dict[str, str]:
        return {name: str(getattr(self, name)) for name in FIELD_NAMES}

    def components(self) -> dict[str, Poly]:
        return {name: getattr(self, name) for name in FIELD_NAMES}


def _vacuum_metric(g: Metric) -> None:
    if g != Metric.lorentzian(4):
        raise ValueError(f"vacuum Maxwell forms need the (+,-,-,-) metric in 4D, got {g.signs}")


def assemble_F(c: EMConfig) -> Form:
    return Form(DIM, {
        (T, X_): c.Ex, (T, Y_): c.Ey, (T, Z_): c.Ez,
        (Y_, Z_): -c.Bx, (X_, Z_): c.By, (X_, Y_): -c.Bz,
    })


def assemble_G_vacuum(c: EMConfig, g: Metric) -> Form:
    _vacuum_metric(g)
    return hodge(assemble_F(c), g)


def assemble_J(c: EMConfig) -> Form:
    return Form(DIM, {
        (T, Y_, Z_): c.jx, (T, X_, Z_): -c.jy, (T, X_, Y_): c.jz,
        (X_, Y_, Z_): -c.rho,
    })


def split_E_B(F: Form) -> tuple[Form, Form]:
    """``E = i_T F`` and ``B = -(F - dt ^ i_T F)``."""
    Tvec = FrameVector.axis(DIM, T)
    E = interior(Tvec, F)
    return E, -(F - extend(FrameVector.axis(DIM, T), E))


def split_H_D(G: Form) -> tuple[Form, Form]:
    """``H = -i_T G`` and ``D = -(G - dt ^ i_T G)``."""
    Tvec = FrameVector.axis(DIM, T)
    iG = interior(Tvec, G)
    return -iG, -(G - extend(FrameVector.axis(DIM, T), iG))


class Residuals(NamedTuple):
    faraday: Form
    ampere: Form
    continuity: Form


def residuals(c: EMConfig, g: Metric) -> Residuals:
    F, J = assemble_F(c), assemble_J(c)
    G = assemble_G_vacuum(c, g)
    return Residuals(d(F), d(G) - J, d(J))


# -- sector splitting ----------------------------------------------------------

SINGLE_SECTORS = {
    "EEB": ("EEB.faraday", "EEB.ampere", "EEB.constitutive", "EEB.continuity"),
    "BBE": ("BBE.faraday", "BBE.ampere", "BBE.constitutive"),
}

DOUBLE_SECTORS = {
    "Ex": ("sector.Ex.faraday", "sector.Ex.ampere", "sector.Ex.constitutive", "sector.Ex.continuity"),
    "EyBz": ("sector.EyBz.faraday", "sector.EyBz.ampere", "sector.EyBz.constitutive"),
    "ByEz": ("sector.ByEz.faraday", "sector.ByEz.ampere", "sector.ByEz.constitutive"),
    "Bx": ("sector.Bx.faraday", "sector.Bx.ampere", "sector.Bx.constitutive"),
}


@dataclass
class SectorReport:
    mode: str
    residuals: dict[str, Form]
    sectors: dict[str, tuple[str, ...]]
    violations: list[tuple[str, str]] = field(default_factory=list)

    def sector_of(self, eq_id: str) -> str:
        for name, ids in self.sectors.items():
            if eq_id in ids:
                return name
        raise KeyError(eq_id)

    def is_zero(self) -> bool:
        return all(r.is_zero() for r in self.residuals.values())

    def nonzero(self) -> dict[str, Form]:
        return {k: v for k, v in self.residuals.items() if not v.is_zero()}

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "residuals": {k: str(self.residuals[k]) for k in sorted(self.residuals)},
            "sectors": {k: list(v) for k, v in sorted(self.sectors.items())},
            "violations": [list(v) for v in self.violations],
        }


def _axis_name(pair: DescentPair) -> str:
    return pair.label[2:] if pair.label.startswith("e_") else pair.label


def descent_violations(c: EMConfig, pairs) -> list[tuple[str, str]]:
    out = []
    for pair in pairs:
        for name, p in c.components().items():
            if p.directional(pair.X.components):
                out.append((name, _axis_name(pair)))
    return out


def _default_pair(axis: int, g: Metric) -> DescentPair:
    return DescentPair.coordinate(DIM, axis, g)


def split_single(c: EMConfig, g: Metric, pairZ: DescentPair | None = None, strict: bool = True) -> SectorReport:
    _vacuum_metric(g)
    pairZ = pairZ or _default_pair(Z_, g)
    violations = descent_violations(c, [pairZ])
    if violations and strict:
        raise DescentViolation(violations)
    F, J = assemble_F(c), assemble_J(c)
    G = hodge(F, g)
    Fd, Gd, Jd = (decompose_single(pairZ, w) for w in (F, G, J))
    F0, F1 = Fd.scalar_part, Fd.vector_part
    G0, G1 = Gd.scalar_part, Gd.vector_part
    J0, J1 = Jd.scalar_part, Jd.vector_part
    iZ = pairZ.X
    res = {
        "EEB.faraday": d(F0),
        "EEB.ampere": d(G1) + J1,
        "EEB.constitutive": G1 - interior(iZ, hodge(F0, g)),
        "EEB.continuity": d(J1),
        "BBE.faraday": d(F1),
        "BBE.ampere": d(G0) - J0,
        "BBE.constitutive": G0 - interior(iZ, hodge(F1, g)),
    }
    return SectorReport("single", res, dict(SINGLE_SECTORS), violations)


def split_double(c: EMConfig, g: Metric, pairY: DescentPair | None = None,
                 pairZ: DescentPair | None = None, strict: bool = True) -> SectorReport:
    _vacuum_metric(g)
    pairY = pairY or _default_pair(Y_, g)
    pairZ = pairZ or _default_pair(Z_, g)
    violations = descent_violations(c, [pairY, pairZ])
    if violations and strict:
        raise DescentViolation(violations)
    F, J = assemble_F(c), assemble_J(c)
    G = hodge(F, g)
    Fd, Gd, Jd = (decompose_double(pairY, pairZ, w) for w in (F, G, J))

    def iYZ_star(w: Form) -> Form:
        return interior(pairZ.X, interior(pairY.X, hodge(w, g)))

    res = {
        "sector.Ex.faraday": d(Fd[0, 0]),
        "sector.Ex.ampere": d(Gd[1, 1]) - Jd[1, 1],
        "sector.Ex.constitutive": Gd[1, 1] - iYZ_star(Fd[0, 0]),
        "sector.Ex.continuity": d(Jd[1, 1]),
        "sector.EyBz.faraday": d(Fd[1, 0]),
        "sector.EyBz.ampere": d(Gd[0, 1]) + Jd[0, 1],
        "sector.EyBz.constitutive": Gd[0, 1] - iYZ_star(Fd[1, 0]),
        "sector.ByEz.faraday": d(Fd[0, 1]),
        "sector.ByEz.ampere": d(Gd[1, 0]) + Jd[1, 0],
        "sector.ByEz.constitutive": Gd[1, 0] + iYZ_star(Fd[0, 1]),
        "sector.Bx.faraday": d(Fd[1, 1]),
        "sector.Bx.ampere": d(Gd[0, 0]) - Jd[0, 0],
        "sector.Bx.constitutive": Gd[0, 0] - iYZ_star(Fd[1, 1]),
    }
    return SectorReport("double", res, dict(DOUBLE_SECTORS), violations)


def recombine(report: SectorReport, pairs=None) -> tuple[Form, Form]:
    """Rebuild ``(dF, dG - J)`` from the sector residuals of an invariant config."""
    r = report.residuals
    if report.mode == "single":
        (pz,) = pairs or (_default_pair(Z_, Metric.lorentzian()),)
        far = r["EEB.faraday"] - extend(pz.xi, r["BBE.faraday"])
        amp = r["BBE.ampere"] - extend(pz.xi, r["EEB.ampere"])
        return far, amp
    py, pz = pairs or (_default_pair(Y_, Metric.lorentzian()), _default_pair(Z_, Metric.lorentzian()))

    def put(p00, p10, p01, p11):
        return (p00 - extend(py.xi, p10) - extend(pz.xi, p01)
                + extend(py.xi, extend(pz.xi, p11)))

    # parts: (0,0) Ex, (1,0) EyBz, (0,1) ByEz, (1,1) Bx for F; G/J swap (0,0)<->(1,1), (1,0)<->(0,1)
    far = put(r["sector.Ex.faraday"], r["sector.EyBz.faraday"], r["sector.ByEz.faraday"], r["sector.Bx.faraday"])
    amp = put(r["sector.Bx.ampere"], r["sector.ByEz.ampere"], r["sector.EyBz.ampere"], r["sector.Ex.ampere"])
    return far, amp


# -- componentwise equations ---------------------------------------------------

def _componentwise_single(c: EMConfig) -> dict[str, Poly]:
    dt = lambda p: p.partial(T)  # noqa: E731
    dx = lambda p: p.partial(X_)  # noqa: E731
    dy = lambda p: p.partial(Y_)  # noqa: E731
    return {
        "EEB1": dt(c.Bz) + dx(c.Ey) - dy(c.Ex),
        "EEB2": dx(c.Ex) + dy(c.Ey) - c.rho,
        "EEB3": -dt(c.Ex) + dy(c.Bz) - c.jx,
        "EEB4": -dt(c.Ey) - dx(c.Bz) - c.jy,
        "BBE1": dx(c.Bx) + dy(c.By),
        "BBE2": dt(c.Bx) + dy(c.Ez),
        "BBE3": dt(c.By) - dx(c.Ez),
        "BBE4": -dt(c.Ez) + dx(c.By) - dy(c.Bx) - c.jz,
    }


def _componentwise_double(c: EMConfig) -> dict[str, Poly]:
    dt = lambda p: p.partial(T)  # noqa: E731
    dx = lambda p: p.partial(X_)  # noqa: E731
    return {
        "E1": dx(c.Ex) - c.rho,
        "E2": -dt(c.Ex) - c.jx,
        "EB1": dt(c.Bz) + dx(c.Ey),
        "EB2": -dt(c.Ey) - dx(c.Bz) - c.jy,
        "BE1": dt(c.By) - dx(c.Ez),
        "BE2": -dt(c.Ez) + dx(c.By) - c.jz,
        "B1": dx(c.Bx),
        "B2": dt(c.Bx),
    }


# equation id -> (intrinsic residual id, basis index, sign): scalar = sign * coefficient
CROSSCHECK_CATALOGUE: dict[str, dict[str, tuple[str, tuple, int]]] = {
    "single": {
        "EEB1": ("EEB.faraday", (T, X_, Y_), -1),
        "EEB2": ("EEB.ampere", (X_, Y_), 1),
        "EEB3": ("EEB.ampere", (T, Y_), -1),
        "EEB4": ("EEB.ampere", (T, X_), 1),
        "BBE1": ("BBE.faraday", (X_, Y_), 1),
        "BBE2": ("BBE.faraday", (T, Y_), 1),
        "BBE3": ("BBE.faraday", (T, X_), -1),
        "BBE4": ("BBE.ampere", (T, X_, Y_), 1),
    },
    "double": {
        "E1": ("sector.Ex.ampere", (X_,), -1),
        "E2": ("sector.Ex.ampere", (T,), 1),
        "EB1": ("sector.EyBz.faraday", (T, X_), 1),
        "EB2": ("sector.EyBz.ampere", (T, X_), 1),
        "BE1": ("sector.ByEz.faraday", (T, X_), -1),
        "BE2": ("sector.ByEz.ampere", (T, X_), -1),
        "B1": ("sector.Bx.faraday", (X_,), -1),
        "B2": ("sector.Bx.faraday", (T,), -1),
    },
}


def componentwise_crosscheck(c: EMConfig, g: Metric, mode: str = "single") -> dict[str, Poly]:
    """Scalar residuals (lhs - rhs) of the componentwise sector equations."""
    _vacuum_metric(g)
    if mode == "single":
        pairs = [_default_pair(Z_, g)]
        table = _componentwise_single(c)
    elif mode == "double":
        pairs = [_default_pair(Y_, g), _default_pair(Z_, g)]
        table = _componentwise_double(c)
    else:
        raise ValueError(f"mode must be 'single' or 'double', got {mode!r}")
    violations = descent_violations(c, pairs)
    if violations:
        raise DescentViolation(violations)
    return table


def crosscheck_mismatches(c: EMConfig, g: Metric, mode: str = "single") -> dict[str, Poly]:
    """Equations whose scalar residual differs from its catalogued intrinsic coefficient.

    The returned polynomial is ``scalar - sign * coefficient``; empty means agreement.
    """
    scalars = componentwise_crosscheck(c, g, mode)
    report = split_single(c, g) if mode == "single" else split_double(c, g)
    out = {}
    for eq, (rid, idx, sign) in CROSSCHECK_CATALOGUE[mode].items():
        diff = scalars[eq] - report.residuals[rid][idx].scale(sign)
        if diff:
            out[eq] = diff
    return out


def _sign_normal(p: Poly) -> Poly:
    items = list(p.items())
    return -p if items and items[0][1] < 0 else p


def coefficient_multiset(*forms: Form) -> Counter:
    """Nonzero coefficients of the given forms, each normalised up to sign."""
    return Counter(_sign_normal(c) for f in forms for c in f.coefficients())
