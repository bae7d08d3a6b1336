"""Periodic Yee-lattice leapfrog for Maxwell's equations in natural units (c = 1).

Staggering, in units of the spacing ``dx`` (E on edges, B on faces)::

    Ex (i+1/2, j, k)    Bx (i, j+1/2, k+1/2)
    Ey (i, j+1/2, k)    By (i+1/2, j, k+1/2)
    Ez (i, j, k+1/2)    Bz (i+1/2, j+1/2, k)

E lives at integer time levels, B half a step behind. One step is
``B <- B - dt curl E`` followed by ``E <- E + dt curl B - dt j``.

Sector energies use the time-mixed quadratic form
``sum E^2 + B^{n-1/2} . B^{n+1/2}``, which the leapfrog conserves exactly
(up to rounding) in the absence of sources.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator, NamedTuple

import numpy as np

from .maxwell import EMConfig

FIELDS = ("Ex", "Ey", "Ez", "Bx", "By", "Bz")
EEB_FIELDS = ("Ex", "Ey", "Bz")
BBE_FIELDS = ("Bx", "By", "Ez")

# grid offsets (in cells) of each staggered component
OFFSETS = {
    "Ex": (0.5, 0.0, 0.0), "Ey": (0.0, 0.5, 0.0), "Ez": (0.0, 0.0, 0.5),
    "Bx": (0.0, 0.5, 0.5), "By": (0.5, 0.0, 0.5), "Bz": (0.5, 0.5, 0.0),
}


class CourantViolation(ValueError):
    pass


@dataclass(frozen=True)
class GridSpec:
    nx: int
    ny: int
    nz: int
    dx: float = 1.0 / 64
    courant: float = 0.5

    def __post_init__(self):
        if min(self.nx, self.ny, self.nz) < 1:
            raise ValueError("grid sizes must be positive")
        if not self.dx > 0:
            raise ValueError("spacing must be positive")
        if not 0 < self.courant <= 1:
            raise CourantViolation(
                f"Courant number {self.courant} outside (0, 1]: dt must satisfy dt <= dx/sqrt(3)")

    @property
    def dt(self) -> float:
        return self.courant * self.dx / math.sqrt(3)

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.nx, self.ny, self.nz)

    @property
    def cell_volume(self) -> float:
        return self.dx ** 3

    def coordinates(self, name: str):
        """Broadcastable physical (x, y, z) positions of a staggered component."""
        ox, oy, oz = OFFSETS[name]
        x = (np.arange(self.nx) + ox) * self.dx
        y = (np.arange(self.ny) + oy) * self.dx
        z = (np.arange(self.nz) + oz) * self.dx
        return x[:, None, None], y[None, :, None], z[None, None, :]


SourceFn = Callable[[float], tuple[np.ndarray, np.ndarray, np.ndarray]]


class Grid:
    """Field state: six staggered arrays plus the step counter."""

    def __init__(self, spec: GridSpec, fields: dict[str, np.ndarray] | None = None, step_count: int = 0):
        self.spec = spec
        self.fields = {}
        for name in FIELDS:
            arr = np.zeros(spec.shape) if fields is None or name not in fields else np.asarray(fields[name], float)
            if arr.shape != spec.shape:
                arr = np.broadcast_to(arr, spec.shape).copy()
            self.fields[name] = arr
        self.step_count = step_count

    def __getitem__(self, name: str) -> np.ndarray:
        return self.fields[name]

    @property
    def time(self) -> float:
        return self.step_count * self.spec.dt

    def copy(self) -> "Grid":
        return Grid(self.spec, {k: v.copy() for k, v in self.fields.items()}, self.step_count)

    def advance(self, steps: int = 1, sources: SourceFn | None = None) -> "Grid":
        """In-place leapfrog update; returns ``self``."""
        f = self.fields
        dt, h = self.spec.dt, self.spec.dx
        for _ in range(steps):
            cx, cy, cz = curl_E(f["Ex"], f["Ey"], f["Ez"], h)
            f["Bx"] -= dt * cx
            f["By"] -= dt * cy
            f["Bz"] -= dt * cz
            hx, hy, hz = curl_B(f["Bx"], f["By"], f["Bz"], h)
            f["Ex"] += dt * hx
            f["Ey"] += dt * hy
            f["Ez"] += dt * hz
            if sources is not None:
                jx, jy, jz = sources((self.step_count + 0.5) * dt)
                f["Ex"] -= dt * jx
                f["Ey"] -= dt * jy
                f["Ez"] -= dt * jz
            self.step_count += 1
        return self


def _fwd(a: np.ndarray, axis: int) -> np.ndarray:
    return np.roll(a, -1, axis=axis) - a


def _bwd(a: np.ndarray, axis: int) -> np.ndarray:
    return a - np.roll(a, 1, axis=axis)


def curl_E(Ex, Ey, Ez, h: float):
    """Curl of edge fields, landing on faces (forward differences)."""
    return (
        (_fwd(Ez, 1) - _fwd(Ey, 2)) / h,
        (_fwd(Ex, 2) - _fwd(Ez, 0)) / h,
        (_fwd(Ey, 0) - _fwd(Ex, 1)) / h,
    )


def curl_B(Bx, By, Bz, h: float):
    """Curl of face fields, landing on edges (backward differences)."""
    return (
        (_bwd(Bz, 1) - _bwd(By, 2)) / h,
        (_bwd(Bx, 2) - _bwd(Bz, 0)) / h,
        (_bwd(By, 0) - _bwd(Bx, 1)) / h,
    )


def div_B(grid: Grid) -> np.ndarray:
    f, h = grid.fields, grid.spec.dx
    return (_fwd(f["Bx"], 0) + _fwd(f["By"], 1) + _fwd(f["Bz"], 2)) / h


def sample(c: EMConfig, spec: GridSpec) -> Grid:
    """Evaluate a polynomial configuration at the staggered points.

    E is taken at t = 0 and B at t = -dt/2. Descent is not enforced here.
    """
    return sample_functions({name: getattr(c, name) for name in FIELDS}, spec)


def sample_functions(funcs: dict[str, Callable], spec: GridSpec) -> Grid:
    """Like :func:`sample` for arbitrary ``f(t, x, y, z)`` callables (numpy-aware)."""
    out = {}
    for name in FIELDS:
        fn = funcs.get(name)
        if fn is None:
            continue
        t = -0.5 * spec.dt if name.startswith("B") else 0.0
        x, y, z = spec.coordinates(name)
        out[name] = np.broadcast_to(np.asarray(fn(t, x, y, z), float), spec.shape).copy()
    return Grid(spec, out)


def poly_sources(c: EMConfig, spec: GridSpec) -> SourceFn | None:
    """Current sampler from the polynomial ``jx, jy, jz``; ``None`` when all vanish."""
    if not (c.jx or c.jy or c.jz):
        return None
    pos = {name: spec.coordinates(name) for name in ("Ex", "Ey", "Ez")}

    def fn(t: float):
        return tuple(
            np.broadcast_to(np.asarray(p(t, *pos[e]), float), spec.shape)
            for p, e in ((c.jx, "Ex"), (c.jy, "Ey"), (c.jz, "Ez"))
        )

    return fn


def normalize_peak(grid: Grid) -> Grid:
    """Copy of ``grid`` rescaled so the largest field magnitude is 1.

    Relative diagnostics are scale-free, but absolute rounding noise in
    ``div_B`` grows like ``ulp(max|B|) / dx``; unit peak makes it comparable
    across initialisations.
    """
    out = grid.copy()
    peak = max(float(np.max(np.abs(a))) for a in out.fields.values())
    if peak > 0:
        for a in out.fields.values():
            a /= peak
    return out


def step(grid: Grid, steps: int = 1, sources: SourceFn | None = None) -> Grid:
    """Return a new grid advanced by ``steps`` leapfrog steps."""
    return grid.copy().advance(steps, sources)


def plane_wave_error(n: int, t_end: float = 1.0, courant: float = 0.5) -> float:
    """Max nodal error in E_y for the wave E_y = B_z = sin(2 pi (x - t)) on an n x 1 x 1 grid."""
    spec = GridSpec(n, 1, 1, 1.0 / n, courant)
    wave = lambda t, x, y, z: np.sin(2 * np.pi * (x - t))  # noqa: E731
    grid = sample_functions({"Ey": wave, "Bz": wave}, spec)
    grid.advance(max(1, round(t_end / spec.dt)))
    x, y, z = spec.coordinates("Ey")
    return float(np.max(np.abs(grid["Ey"] - wave(grid.time, x, y, z))))


class SectorEnergies(NamedTuple):
    eeb: float
    bbe: float
    total: float


def energies(grid: Grid) -> SectorEnergies:
    f, h, dt = grid.fields, grid.spec.dx, grid.spec.dt
    cx, cy, cz = curl_E(f["Ex"], f["Ey"], f["Ez"], h)
    b_next = {"Bx": f["Bx"] - dt * cx, "By": f["By"] - dt * cy, "Bz": f["Bz"] - dt * cz}
    vol = grid.spec.cell_volume

    def part(names):
        s = 0.0
        for n in names:
            s += float(np.sum(f[n] * f[n])) if n.startswith("E") else float(np.sum(f[n] * b_next[n]))
        return s * vol

    eeb, bbe = part(EEB_FIELDS), part(BBE_FIELDS)
    return SectorEnergies(eeb, bbe, eeb + bbe)


def leakage(grid: Grid, sector: str) -> float:
    """Energy found outside ``sector`` (the sector the data was initialised in)."""
    e = energies(grid)
    if sector == "eeb":
        return abs(e.bbe)
    if sector == "bbe":
        return abs(e.eeb)
    raise ValueError(f"sector must be 'eeb' or 'bbe', got {sector!r}")


class TraceRow(NamedTuple):
    step: int
    time: float
    eeb_energy: float
    bbe_energy: float
    total: float
    divB_max: float
    leakage: float


CSV_HEADER = "step,time,eeb_energy,bbe_energy,total,divB_max,leakage"


def run(grid: Grid, steps: int, sources: SourceFn | None = None, every: int = 1) -> Iterator[TraceRow]:
    """Advance ``grid`` in place, yielding diagnostics every ``every`` steps.

    Leakage is the energy outside the initially dominant sector relative to
    the initial total energy.
    """
    e0 = energies(grid)
    home = "eeb" if abs(e0.eeb) >= abs(e0.bbe) else "bbe"
    scale = abs(e0.total)

    def row() -> TraceRow:
        e = energies(grid)
        leak = leakage(grid, home) / scale if scale else 0.0
        return TraceRow(grid.step_count, grid.time, e.eeb, e.bbe, e.total,
                        float(np.max(np.abs(div_B(grid)))), leak)

    yield row()
    done = 0
    while done < steps:
        n = min(every, steps - done)
        grid.advance(n, sources)
        done += n
        yield row()


def format_row(r: TraceRow) -> str:
    return (f"{r.step},{r.time:.17g},{r.eeb_energy:.17g},{r.bbe_energy:.17g},"
            f"{r.total:.17g},{r.divB_max:.17g},{r.leakage:.17g}")
