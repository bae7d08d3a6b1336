"""Randomised exact identity suites for the exterior calculus and descent projectors.

Every identity is a single-trial check ``check(rng, g) -> str | None`` that
returns ``None`` on success or a printable counterexample. :func:`run_suite`
sweeps each check over dimensions and metric signatures with a private,
deterministically seeded generator per (identity, signature), so results do
not depend on which other identities are selected.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from . import exterior as ext
from .descent import (
    DescentPair,
    decompose_double,
    decompose_single,
    hodge_components,
    hodge_components_double,
    proj_P,
    proj_Q,
    projector_commutator,
)
from .exterior import Form, FrameVector, Metric, extend, interior, lie_derivative, wedge
from .randforms import all_signatures, random_constant_vector, random_form

Check = Callable[[random.Random, Metric], "str | None"]


@dataclass(frozen=True)
class Identity:
    name: str
    statement: str
    check: Check
    all_signatures: bool = True  # False: one Lorentzian-type metric per dimension
    min_dim: int = 2
    applies: Callable[[Metric], bool] | None = None


@dataclass(frozen=True)
class IdentityResult:
    name: str
    statement: str
    trials: int
    failures: int
    counterexample: str | None = None

    @property
    def ok(self) -> bool:
        return self.failures == 0


def _fail(what: str, w: Form, lhs: Form, rhs: Form, g: Metric) -> str:
    return f"{what} on m={g.dim} signs={g.signs}: w = {w}; lhs = {lhs}; rhs = {rhs}"


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def _hom(rng: random.Random, g: Metric) -> Form:
    return random_form(rng, g.dim, degree=rng.randint(0, g.dim))


def _mixed(rng: random.Random, g: Metric) -> Form:
    return random_form(rng, g.dim)


def _nonnull_vector(rng: random.Random, g: Metric) -> FrameVector:
    while True:
        X = random_constant_vector(rng, g.dim)
        if g.inner(X, X) != 0:
            return X


def _metric_pair(rng: random.Random, g: Metric) -> DescentPair:
    return DescentPair.metric(_nonnull_vector(rng, g), g)


def _coordinate_pairs(g: Metric) -> tuple[DescentPair, DescentPair]:
    m = g.dim
    return DescentPair.coordinate(m, m - 2, g), DescentPair.coordinate(m, m - 1, g)


# -- exterior calculus ---------------------------------------------------------

def _duality(rng, g):
    w = _hom(rng, g)
    p, m = w.degree, g.dim
    lhs = ext.hodge(ext.hodge(w, g), g)
    rhs = w * _sign(p * (m - p) + g.s)
    return None if lhs == rhs else _fail("double star", w, lhs, rhs, g)


def _dd_zero(rng, g):
    w = _mixed(rng, g)
    r = ext.d(ext.d(w))
    return None if r.is_zero() else _fail("dd", w, r, Form.zero(g.dim), g)


def _delta_delta_zero(rng, g):
    w = _mixed(rng, g)
    r = ext.codifferential(ext.codifferential(w, g), g)
    return None if r.is_zero() else _fail("delta delta", w, r, Form.zero(g.dim), g)


def _delta_is_star_d_star(rng, g):
    w = _mixed(rng, g)
    lhs = ext.codifferential(w, g)
    rhs = ext.hodge(ext.d(ext.hodge(w, g)), g)
    return None if lhs == rhs else _fail("delta vs *d*", w, lhs, rhs, g)


def _wave_is_minus_laplace(rng, g):
    w = _mixed(rng, g)
    lhs = ext.wave_operator(w, g)
    rhs = -ext.laplace_beltrami(w, g)
    return None if lhs == rhs else _fail("wave vs -laplace-beltrami", w, lhs, rhs, g)


def _cartan(rng, g):
    w = _mixed(rng, g)
    X = random_constant_vector(rng, g.dim)
    lhs = lie_derivative(X, w)
    rhs = interior(X, ext.d(w)) + ext.d(interior(X, w))
    return None if lhs == rhs else _fail("Cartan formula", w, lhs, rhs, g)


def _lie_commutes(op_name: str, op):
    def check(rng, g):
        w = _mixed(rng, g)
        X = random_constant_vector(rng, g.dim)
        lhs = lie_derivative(X, op(w, g))
        rhs = op(lie_derivative(X, w), g)
        return None if lhs == rhs else _fail(f"Lie derivative vs {op_name}", w, lhs, rhs, g)
    return check


def _star_of_wedge(rng, g):
    w = _hom(rng, g)
    nu = random_constant_vector(rng, g.dim).as_form()
    lhs = ext.hodge(wedge(w, nu), g)
    rhs = interior(ext.sharp(nu, g), ext.hodge(w, g))
    return None if lhs == rhs else _fail("star of wedge", w, lhs, rhs, g)


def _interior_star_sign(rng, g):
    w = _hom(rng, g)
    nu = random_constant_vector(rng, g.dim).as_form()
    lhs = interior(ext.sharp(nu, g), ext.hodge(w, g))
    rhs = ext.hodge(wedge(nu, w), g) * _sign(w.degree)
    return None if lhs == rhs else _fail("interior after star", w, lhs, rhs, g)


def _star_interior_sign(rng, g):
    w = _hom(rng, g)
    nu = random_constant_vector(rng, g.dim).as_form()
    p = w.degree
    lhs = ext.hodge(interior(ext.sharp(nu, g), w), g)
    rhs = wedge(nu, ext.hodge(w, g)) * _sign(p + 1)
    return None if lhs == rhs else _fail("star after interior", w, lhs, rhs, g)


# -- projectors and descent -----------------------------------------------------

def _resolution(rng, g):
    pair, w = _metric_pair(rng, g), _mixed(rng, g)
    lhs = proj_P(pair, w) + proj_Q(pair, w)
    return None if lhs == w else _fail("P + Q", w, lhs, w, g)


def _idempotent(rng, g):
    pair, w = _metric_pair(rng, g), _mixed(rng, g)
    P, Q = proj_P(pair, w), proj_Q(pair, w)
    if proj_P(pair, P) != P:
        return _fail("P P", w, proj_P(pair, P), P, g)
    if proj_Q(pair, Q) != Q:
        return _fail("Q Q", w, proj_Q(pair, Q), Q, g)
    return None


def _annihilate(rng, g):
    pair, w = _metric_pair(rng, g), _mixed(rng, g)
    pq, qp = proj_P(pair, proj_Q(pair, w)), proj_Q(pair, proj_P(pair, w))
    if pq or qp:
        return _fail("PQ, QP", w, pq, qp, g)
    return None


def _projector_wedge(rng, g):
    pair = _metric_pair(rng, g)
    w, nu = _mixed(rng, g), _mixed(rng, g)
    P, Q = (lambda u: proj_P(pair, u)), (lambda u: proj_Q(pair, u))
    lhs = P(wedge(w, nu))
    rhs = wedge(P(w), Q(nu)) + wedge(Q(w), P(nu))
    if lhs != rhs:
        return _fail("P of wedge", w, lhs, rhs, g)
    lhs, rhs = Q(wedge(w, nu)), wedge(Q(w), Q(nu))
    return None if lhs == rhs else _fail("Q of wedge", w, lhs, rhs, g)


def _coordinate_projectors_commute(rng, g):
    pY, pZ = _coordinate_pairs(g)
    w = _mixed(rng, g)
    lhs = proj_P(pY, proj_P(pZ, w))
    rhs = proj_P(pZ, proj_P(pY, w))
    return None if lhs == rhs else _fail("[P_Y, P_Z]", w, lhs, rhs, g)


def _commutator_formula(rng, g):
    pi, pj = _metric_pair(rng, g), _metric_pair(rng, g)
    w = _mixed(rng, g)
    report = projector_commutator(pi, pj, [w])
    return None if report.ok else _fail("projector commutator", w, report.residuals[0], Form.zero(g.dim), g)


def _star_off_diagonal(rng, g):
    pair, w = _metric_pair(rng, g), _mixed(rng, g)
    P, Q = (lambda u: proj_P(pair, u)), (lambda u: proj_Q(pair, u))
    star = lambda u: ext.hodge(u, g)
    lhs = star(w)
    rhs = P(star(Q(w))) + Q(star(P(w)))
    if lhs != rhs:
        return _fail("star = P*Q + Q*P", w, lhs, rhs, g)
    diag = P(star(P(w))) + Q(star(Q(w)))
    return None if diag.is_zero() else _fail("P*P + Q*Q", w, diag, Form.zero(g.dim), g)


def _lie_projectors(rng, g):
    pair, w = _metric_pair(rng, g), _mixed(rng, g)
    V = random_constant_vector(rng, g.dim)
    for name, proj in (("P", proj_P), ("Q", proj_Q)):
        lhs = lie_derivative(V, proj(pair, w))
        rhs = proj(pair, lie_derivative(V, w))
        if lhs != rhs:
            return _fail(f"Lie derivative vs {name}", w, lhs, rhs, g)
    return None


def _roundtrip(rng, g):
    w = _mixed(rng, g)
    single = decompose_single(_metric_pair(rng, g), w)
    if single.recompose() != w:
        return _fail("single recomposition", w, single.recompose(), w, g)
    for part in (single.scalar_part, single.vector_part):
        if interior(single.pair.X, part):
            return _fail("single part not horizontal", w, part, Form.zero(g.dim), g)
    double = decompose_double(*_coordinate_pairs(g), w)
    if double.recompose() != w:
        return _fail("double recomposition", w, double.recompose(), w, g)
    for part in double.parts.values():
        if any(interior(pr.X, part) for pr in double.pairs):
            return _fail("double part not horizontal", w, part, Form.zero(g.dim), g)
    return None


def _hodge_blocks_single(rng, g):
    pair, w = _metric_pair(rng, g), _hom(rng, g)
    got = hodge_components(pair, w, g)
    want = decompose_single(pair, ext.hodge(w, g))
    if got.scalar_part != want.scalar_part:
        return _fail("star scalar part", w, got.scalar_part, want.scalar_part, g)
    if got.vector_part != want.vector_part:
        return _fail("star vector part", w, got.vector_part, want.vector_part, g)
    return None


def _scaled_axis_pairs(rng: random.Random, g: Metric) -> tuple[DescentPair, DescentPair]:
    m = g.dim
    return tuple(
        DescentPair.metric(FrameVector.axis(m, a, rng.choice((1, 2, 3)) * rng.choice((1, -1))), g)
        for a in (m - 2, m - 1)
    )


def _hodge_blocks_double(rng, g):
    pY, pZ = _scaled_axis_pairs(rng, g)
    w = _hom(rng, g)
    got = hodge_components_double(pY, pZ, w, g)
    want = decompose_double(pY, pZ, ext.hodge(w, g))
    for key in want.parts:
        if got[key] != want[key]:
            return _fail(f"star part {key}", w, got[key], want[key], g)
    return None


def _invariant_derivative(rng, g):
    m = g.dim
    pair = DescentPair.coordinate(m, m - 1, g)
    w = random_form(rng, m, free_axes=range(m - 1))
    dec = decompose_single(pair, w)
    ddec = decompose_single(pair, ext.d(w))
    want_vec, want_sca = -ext.d(dec.vector_part), ext.d(dec.scalar_part)
    if ddec.vector_part != want_vec:
        return _fail("vector part of dw", w, ddec.vector_part, want_vec, g)
    if ddec.scalar_part != want_sca:
        return _fail("scalar part of dw", w, ddec.scalar_part, want_sca, g)
    return None


def _current_scalar_part(rng, g):
    m = g.dim
    pair = DescentPair.coordinate(m, m - 1, g)
    J = random_form(rng, m, degree=m - 1)
    J0 = proj_Q(pair, J)
    lhs = ext.d(J0)
    rhs = extend(pair.xi, lie_derivative(pair.X, J0))
    return None if lhs == rhs else _fail("d of scalar part", J, lhs, rhs, g)


def _lorentz_like(g: Metric) -> bool:
    return g.dim == 4 and g.s == 3


IDENTITIES: tuple[Identity, ...] = (
    Identity("hodge-duality", "** w = (-1)^(p(m-p)+s) w", _duality),
    Identity("exterior-nilpotent", "d d w = 0", _dd_zero, all_signatures=False),
    Identity("codifferential-nilpotent", "delta delta w = 0", _delta_delta_zero),
    Identity("codifferential-lorentzian", "delta = *d* when m = 4, s = 3", _delta_is_star_d_star,
             applies=_lorentz_like),
    Identity("wave-laplace-beltrami", "wave w = -(d delta + delta d) w", _wave_is_minus_laplace),
    Identity("cartan-formula", "L_X w = i_X dw + d i_X w", _cartan, all_signatures=False),
    Identity("lie-exterior", "L_X d = d L_X", _lie_commutes("d", lambda w, g: ext.d(w)),
             all_signatures=False),
    Identity("lie-hodge", "L_X * = * L_X", _lie_commutes("star", lambda w, g: ext.hodge(w, g))),
    Identity("lie-wave", "L_X wave = wave L_X", _lie_commutes("wave", lambda w, g: ext.wave_operator(w, g))),
    Identity("star-of-wedge", "*(w ^ nu) = i_(nu sharp) * w", _star_of_wedge),
    Identity("interior-star-sign", "i_(nu sharp) * w = (-1)^p *(nu ^ w)", _interior_star_sign),
    Identity("star-interior-sign", "* i_(nu sharp) w = (-1)^(p+1) nu ^ * w", _star_interior_sign),
    Identity("projector-resolution", "P + Q = id", _resolution),
    Identity("projector-idempotent", "P P = P, Q Q = Q", _idempotent),
    Identity("projector-annihilation", "P Q = Q P = 0", _annihilate),
    Identity("projector-wedge", "P(w^v) = Pw^Qv + Qw^Pv, Q(w^v) = Qw^Qv", _projector_wedge),
    Identity("projector-commute", "[P_Y, P_Z] = 0 for coordinate pairs", _coordinate_projectors_commute,
             min_dim=2),
    Identity("projector-commutator", "[P_i, P_j] = xi_j(X_i) e_i i_j - xi_i(X_j) e_j i_i",
             _commutator_formula),
    Identity("hodge-off-diagonal", "* = P*Q + Q*P, P*P = Q*Q = 0", _star_off_diagonal),
    Identity("lie-projectors", "L_V commutes with P and Q", _lie_projectors),
    Identity("descent-roundtrip", "single and double splits recompose", _roundtrip),
    Identity("hodge-blocks-single", "split of *w from split of w", _hodge_blocks_single),
    Identity("hodge-blocks-double", "four-way split of *w from split of w", _hodge_blocks_double),
    Identity("invariant-derivative", "d(xi^w1 + w0) = -xi^d w1 + d w0 for invariant w",
             _invariant_derivative, all_signatures=False),
    Identity("current-scalar-part", "d(Q J) = xi ^ L_X(Q J) for (m-1)-forms", _current_scalar_part,
             all_signatures=False),
)

NAMES = tuple(i.name for i in IDENTITIES)


def _metrics(identity: Identity, m: int) -> Iterable[Metric]:
    if identity.all_signatures:
        return all_signatures(m)
    return [Metric.lorentzian(m)]


def run_identity(identity: Identity, dims: Sequence[int], seed: int, trials: int,
                 metrics: Sequence[Metric] | None = None) -> IdentityResult:
    """Run ``trials`` checks per (dimension, metric).

    ``metrics`` replaces the default signature sweep; only those whose
    dimension is in ``dims`` are used.
    """
    total = failures = 0
    example = None
    for m in dims:
        if m < identity.min_dim:
            continue
        chosen = _metrics(identity, m) if metrics is None else [g for g in metrics if g.dim == m]
        for g in chosen:
            if identity.applies is not None and not identity.applies(g):
                continue
            rng = random.Random(f"{seed}:{identity.name}:{g.signs}")
            for _ in range(trials):
                total += 1
                msg = identity.check(rng, g)
                if msg is not None:
                    failures += 1
                    example = example or msg
    return IdentityResult(identity.name, identity.statement, total, failures, example)


def run_suite(dims: Sequence[int] = (2, 3, 4, 5), seed: int = 0, trials: int = 200,
              names: Sequence[str] | None = None) -> list[IdentityResult]:
    chosen = IDENTITIES if names is None else [i for i in IDENTITIES if i.name in set(names)]
    return [run_identity(i, dims, seed, trials) for i in chosen]


def get(name: str) -> Identity:
    for i in IDENTITIES:
        if i.name == name:
            return i
    raise KeyError(name)


__all__ = ["Identity", "IdentityResult", "IDENTITIES", "NAMES", "run_identity", "run_suite", "get"]
