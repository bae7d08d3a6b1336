"""Reference implementations on sympy, written from the tensor-index formulas.

They share no code with the package: forms are plain dicts from increasing
index tuples to sympy expressions, and every operator works on fully
antisymmetric components.
"""
from __future__ import annotations

from itertools import combinations, permutations
from math import factorial

import sympy as sp

COORDS = sp.symbols("t x y z u v w r")


def perm_parity(seq) -> int:
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


def levi_civita(idx) -> int:
    return 0 if len(set(idx)) < len(idx) else perm_parity(idx)


def poly_to_sympy(p) -> sp.Expr:
    """Package ``Poly`` to sympy via its raw term map."""
    syms = COORDS[: p.dim]
    return sp.Add(*[sp.Rational(c.numerator, c.denominator) * sp.Mul(*[s ** e for s, e in zip(syms, exps)])
                    for exps, c in p.terms.items()])


def form_to_dict(w) -> dict:
    return {idx: poly_to_sympy(c) for idx, c in w.terms.items()}


def clean(form: dict) -> dict:
    out = {}
    for k, v in form.items():
        v = sp.expand(v)
        if v != 0:
            out[k] = v
    return out


def component(form: dict, idx) -> sp.Expr:
    """Antisymmetric component ``w_{idx}`` for any ordering of distinct indices."""
    if len(set(idx)) < len(idx):
        return sp.Integer(0)
    key = tuple(sorted(idx))
    return perm_parity(idx) * form.get(key, sp.Integer(0))


def wedge(a: dict, b: dict) -> dict:
    out: dict = {}
    for ia, ca in a.items():
        for ib, cb in b.items():
            cat = ia + ib
            if len(set(cat)) < len(cat):
                continue
            key = tuple(sorted(cat))
            out[key] = out.get(key, 0) + perm_parity(cat) * ca * cb
    return clean(out)


def d(form: dict, m: int) -> dict:
    """``(dw)_J = sum_k (-1)^k d_{J_k} w_{J without J_k}`` over increasing ``J``."""
    syms = COORDS[:m]
    degrees = {len(k) for k in form}
    out = {}
    for p in degrees:
        for J in combinations(range(m), p + 1):
            val = 0
            for k, axis in enumerate(J):
                rest = J[:k] + J[k + 1:]
                val += (-1) ** k * sp.diff(form.get(rest, 0), syms[axis])
            out[J] = val
    return clean(out)


def interior(X, form: dict, m: int) -> dict:
    """``(i_X w)_J = X^a w_{a J}``."""
    out = {}
    for p in {len(k) for k in form if k}:
        for J in combinations(range(m), p - 1):
            out[J] = sum(X[a] * component(form, (a,) + J) for a in range(m))
    return clean(out)


def hodge(form: dict, signs) -> dict:
    """``(*w)_J = (1/p!) w^{i_1..i_p} eps_{i_1..i_p J}`` with ``eps_{0..m-1} = 1``."""
    m = len(signs)
    out = {}
    for p in {len(k) for k in form}:
        for J in combinations(range(m), m - p):
            val = 0
            for I in permutations(range(m), p):
                eps = levi_civita(I + J)
                if not eps:
                    continue
                raise_ = 1
                for i in I:
                    raise_ *= signs[i]
                val += raise_ * component(form, I) * eps
            out[J] = val * sp.Rational(1, factorial(p))
    return clean(out)


def codifferential(form: dict, signs) -> dict:
    m, s = len(signs), sum(1 for x in signs if x < 0)
    out: dict = {}
    for p in {len(k) for k in form}:
        part = {k: v for k, v in form.items() if len(k) == p}
        sign = (-1) ** (m * (p + 1) + s + 1)
        for k, v in hodge(d(hodge(part, signs), m), signs).items():
            out[k] = out.get(k, 0) + sign * v
    return clean(out)


def wave(form: dict, signs) -> dict:
    syms = COORDS[: len(signs)]
    return clean({k: sum(g * sp.diff(v, s, 2) for g, s in zip(signs, syms)) for k, v in form.items()})


def maxwell_vector_residuals(fields: dict) -> dict:
    """Vector-calculus Maxwell residuals in natural units from sympy component expressions."""
    t, x, y, z = COORDS[:4]
    E = sp.Matrix([fields.get(k, 0) for k in ("Ex", "Ey", "Ez")])
    B = sp.Matrix([fields.get(k, 0) for k in ("Bx", "By", "Bz")])
    j = sp.Matrix([fields.get(k, 0) for k in ("jx", "jy", "jz")])
    rho = fields.get("rho", 0)

    def curl(V):
        return sp.Matrix([
            sp.diff(V[2], y) - sp.diff(V[1], z),
            sp.diff(V[0], z) - sp.diff(V[2], x),
            sp.diff(V[1], x) - sp.diff(V[0], y),
        ])

    def div(V):
        return sp.diff(V[0], x) + sp.diff(V[1], y) + sp.diff(V[2], z)

    return {
        "gauss_B": sp.expand(div(B)),
        "faraday": [sp.expand(e) for e in curl(E) + sp.diff(B, t)],
        "gauss_E": sp.expand(div(E) - rho),
        "ampere": [sp.expand(e) for e in curl(B) - sp.diff(E, t) - j],
        "continuity": sp.expand(sp.diff(rho, t) + div(j)),
    }
