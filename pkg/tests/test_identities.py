import pytest

from formdescent import exterior
from formdescent import identities as ids
from formdescent.exterior import Metric


def flip_odd_grades(original):
    def broken(w, g):
        out = original(w, g)
        return out * -1 if any(len(idx) % 2 for idx in w.terms) else out
    return broken


def test_names_are_unique():
    assert len(set(ids.NAMES)) == len(ids.NAMES)
    assert ids.get("hodge-duality").name == "hodge-duality"
    with pytest.raises(KeyError):
        ids.get("no-such-identity")


def test_whole_suite_holds_at_low_trials():
    results = ids.run_suite(trials=3)
    assert [r.name for r in results] == list(ids.NAMES)
    bad = [(r.name, r.counterexample) for r in results if not r.ok]
    assert bad == []
    assert all(r.trials > 0 for r in results)


def test_trial_counts():
    # 2^2 + 2^3 signatures, 2 trials each
    assert ids.run_identity(ids.get("hodge-duality"), (2, 3), 0, 2).trials == 24
    # lorentzian-only identity: one metric per dimension
    assert ids.run_identity(ids.get("exterior-nilpotent"), (2, 3), 0, 2).trials == 4
    # restricted to m = 4, s = 3: four sign orderings
    assert ids.run_identity(ids.get("codifferential-lorentzian"), (2, 3, 4, 5), 0, 2).trials == 8


def test_metric_override():
    r = ids.run_identity(ids.get("lie-hodge"), (3, 4), 0, 5, metrics=[Metric.lorentzian(4)])
    assert r.ok and r.trials == 5


def test_selection_does_not_change_outcome():
    alone = ids.run_suite(dims=(3,), seed=7, trials=4, names=["lie-hodge"])
    together = ids.run_suite(dims=(3,), seed=7, trials=4, names=["hodge-duality", "lie-hodge"])
    assert alone[0] == together[1]


def test_wrong_hodge_sign_is_caught(monkeypatch):
    monkeypatch.setattr(exterior, "hodge", flip_odd_grades(exterior.hodge))
    r = ids.run_identity(ids.get("hodge-duality"), (2, 3, 4), 0, 10)
    assert not r.ok
    assert r.counterexample and "m=" in r.counterexample


def test_global_hodge_sign_cancels_in_duality(monkeypatch):
    monkeypatch.setattr(exterior, "hodge", lambda w, g, _h=exterior.hodge: _h(w, g) * -1)
    r = ids.run_identity(ids.get("hodge-duality"), (4,), 0, 10)
    assert r.ok
