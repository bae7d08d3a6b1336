import os
import sys
from fractions import Fraction
from itertools import combinations

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from formdescent import Form, FrameVector, Metric, Poly  # noqa: E402

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

small_fractions = st.builds(
    lambda n, sign, den: Fraction(sign * n, den), st.integers(1, 6), st.sampled_from([1, -1]),
    st.sampled_from([1, 1, 2, 3]),
)


def polys(dim: int, max_degree: int = 3, max_terms: int = 4, axes=None):
    axes = list(range(dim)) if axes is None else list(axes)

    def build(exps_coefs):
        terms = {}
        for factors, c in exps_coefs:
            full = [0] * dim
            for a in factors:
                full[a] += 1
            key = tuple(full)
            terms[key] = terms.get(key, 0) + c
        return Poly(dim, terms)

    # a monomial is a multiset of at most max_degree variable factors
    monomial = st.lists(st.sampled_from(axes), max_size=max_degree) if axes else st.just([])
    return st.lists(st.tuples(monomial, small_fractions), max_size=max_terms).map(build)


def basis_index(dim: int, degree=None):
    if degree is not None:
        return st.sampled_from(list(combinations(range(dim), degree)))
    return st.integers(0, dim).flatmap(lambda p: st.sampled_from(list(combinations(range(dim), p))))


def forms(dim: int, degree=None, max_terms: int = 3, axes=None, max_degree: int = 3):
    return st.lists(
        st.tuples(basis_index(dim, degree), polys(dim, max_degree=max_degree, axes=axes)), max_size=max_terms
    ).map(lambda kv: Form(dim, _accumulate(dim, kv)))


def _accumulate(dim, kv):
    out = {}
    for idx, p in kv:
        out[idx] = out.get(idx, Poly.zero(dim)) + p
    return out


def metrics(dim: int):
    return st.lists(st.sampled_from([1, -1]), min_size=dim, max_size=dim).map(lambda s: Metric(tuple(s)))


def vectors(dim: int):
    return st.lists(st.builds(Fraction, st.integers(-3, 3), st.sampled_from([1, 2])),
                    min_size=dim, max_size=dim).map(lambda c: FrameVector(tuple(c)))


def nonnull_vectors(g: Metric):
    return vectors(g.dim).filter(lambda X: g.inner(X, X) != 0)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
