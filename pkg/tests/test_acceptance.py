"""Acceptance criteria, one test each.

Every criterion records a PASS/FAIL line that the terminal summary prints
(see conftest.py).  Run this file directly for the same lines without pytest.
"""

import contextlib
import itertools
import os
import time

import pytest

from lielab import (
    GF, QQ, BudgetError, Subspace, census_dim3, centralizer_C, derivation_space, eigenspace, grading, image_B,
    is_ideal, is_simple, is_subring, make_chevalley, make_ga1, make_ga1_twisted, make_heisenberg, make_sl2,
    make_witt, normalizer, random_basis_change, randomized_lemma_sweep, recognize_ga1, recognize_sl2,
    simplicity, verify_jacobi,
)
from lielab.lemmas import LEMMA_IDS, default_catalog

REPORT = {}

FIELDS = {"F5": GF(5), "F7": GF(7), "F25": GF(5, 2), "Q": QQ}
CHEVALLEY = ("A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2")

# golden census values for p = 5 (checked against closed forms in test_census.py and below)
CENSUS_TOTAL = 5**9
CENSUS_JACOBI = 2 * 5**6 - 5**3          # 31125
# simple tables are the GL3-orbit of sl2, whose stabiliser is Aut(sl2) = PGL2
GL3 = (5**3 - 1) * (5**3 - 5) * (5**3 - 5**2)
PGL2 = (5**2 - 1) * (5**2 - 5) // (5 - 1)
CENSUS_SIMPLE = GL3 // PGL2              # 12400
ROUND_TRIP_SEEDS = 1000
LEMMA_INSTANCES = 10**4


@contextlib.contextmanager
def criterion(n, title):
    t0 = time.perf_counter()
    detail = {}
    try:
        yield detail
    except BaseException as exc:
        REPORT[n] = f"criterion {n} FAIL  {title}: {type(exc).__name__}: {exc}"[:300]
        raise
    status = detail.pop("status", "PASS")
    info = ", ".join(f"{k}={v}" for k, v in detail.items())
    REPORT[n] = f"criterion {n} {status}  {title} ({info}; {time.perf_counter() - t0:.1f}s)"


def catalog():
    """(label, ring) for every construction named in criterion 1."""
    out = []
    for fname, F in FIELDS.items():
        out += [(f"sl2/{fname}", make_sl2(F)), (f"ga1/{fname}", make_ga1(F)),
                (f"heisenberg/{fname}", make_heisenberg(F))]
        out += [(f"{t}/{fname}", make_chevalley(t, F)) for t in CHEVALLEY]
    out += [("witt/F5", make_witt(5)), ("witt/F7", make_witt(7))]
    out += [("ga1-twisted/F25", make_ga1_twisted(5, 2)), ("ga1-twisted/F49", make_ga1_twisted(7, 2)),
            ("ga1-twisted/F125", make_ga1_twisted(5, 3))]
    return out


def test_criterion_1_construction_soundness():
    with criterion(1, "Jacobi holds for every catalog construction") as d:
        rings = catalog()
        bad = [label for label, L in rings if not verify_jacobi(L)]
        assert not bad, bad
        d["constructions"] = len(rings)


def test_criterion_2_census():
    with criterion(2, "census of 3-dimensional tables over F_5") as d:
        jobs = min(8, os.cpu_count() or 1)
        res = census_dim3(5, jobs=jobs)
        assert res.total_tables == CENSUS_TOTAL
        assert res.unrecognized == []
        assert res.recognized_sl2_count == res.simple_count
        assert res.jacobi_count == CENSUS_JACOBI
        assert res.simple_count == CENSUS_SIMPLE
        assert res.perfect_centerless_count == res.simple_count
        assert res.spectrum_ok_count == res.simple_count
        d.update(tables=res.total_tables, jacobi=res.jacobi_count, simple=res.simple_count,
                 recognized=res.recognized_sl2_count, unrecognized=len(res.unrecognized), jobs=jobs)


def _transport_ok(L, model, iso):
    return all(
        iso.apply(L.basis_bracket(i, j)) == model.bracket(iso.apply(L.basis(i)), iso.apply(L.basis(j)))
        for i in range(L.dim) for j in range(L.dim)
    )


def test_criterion_3_recognition_round_trip():
    with criterion(3, "recognition round trip, 1000 seeds per field") as d:
        cases = [("sl2", GF(5)), ("sl2", GF(7)), ("sl2", GF(5, 2)), ("sl2", GF(7, 2)), ("ga1", GF(5)), ("ga1", GF(7))]
        total = 0
        for name, F in cases:
            model = make_sl2(F) if name == "sl2" else make_ga1(F)
            for seed in range(ROUND_TRIP_SEEDS):
                L = random_basis_change(model, seed)
                rep = recognize_sl2(L, seed=seed) if name == "sl2" else recognize_ga1(L)
                assert rep.recognized, (name, F, seed, rep.verdict, rep.failure_reason)
                assert _transport_ok(L, model, rep.isomorphism), (name, F, seed)
                total += 1
        d["recognized"] = f"{total}/{total}"


def test_criterion_4_lemma_suite():
    with criterion(4, "lemma suite, zero counterexamples") as d:
        verdicts = randomized_lemma_sweep(default_catalog(GF(5)), trials=300, seed=0)
        verdicts += randomized_lemma_sweep(default_catalog(GF(7)), trials=40, seed=0)
        met = [v for v in verdicts if v.hypothesis_met]
        assert all(v.holds for v in verdicts)
        assert len(met) >= LEMMA_INSTANCES, len(met)
        per = {lid: sum(v.lemma_id == lid for v in met) for lid in LEMMA_IDS}
        assert all(per.values()), per
        d.update(verdicts=len(verdicts), hypothesis_met=len(met), counterexamples=0)


def test_criterion_5_identities():
    with criterion(5, "B_x + C_x = dim, grading law, C(e) = E_2") as d:
        rings = catalog()
        checked = 0
        for label, L in rings:
            for i in range(L.dim):
                x = L.basis(i)
                assert image_B(L, x, 1).dim + centralizer_C(L, x, 1).dim == L.dim, (label, i)
                checked += 1
        graded = 0
        for label, L in rings:
            p = L.field.characteristic
            if not p:
                continue
            for i in range(L.dim):
                G = grading(L, L.basis(i))  # asserts the law internally as well
                for (k, Ek), (l, El) in itertools.product(G.components.items(), repeat=2):
                    target = G.components.get((k + l) % p, L.zero_subspace())
                    for a in Ek.rows:
                        for b in El.rows:
                            assert L.bracket(a, b) in target, (label, i, k, l)
                graded += 1
        for F in (GF(5), GF(7), GF(5, 2), GF(7, 2)):
            L = make_sl2(F)
            E2 = Subspace(F, 3, eigenspace(L.ad(L.basis(0)), F.from_int(2)).rows)
            assert E2.dim == 1
            e = E2.rows[0]
            assert centralizer_C(L, e, 1) == E2
            # also along a scrambled copy, through the recognizer's triple
            M = random_basis_change(L, 3)
            t = recognize_sl2(M).triple
            E2m = Subspace(F, 3, eigenspace(M.ad(t.h), F.from_int(2)).rows)
            assert centralizer_C(M, t.e, 1) == E2m
        d.update(rank_nullity_checks=checked, gradings=graded)


def test_criterion_6_witt():
    with criterion(6, "Witt algebras simple with self-normalizing codim-1 subring") as d:
        for p in (5, 7):
            W = make_witt(p)
            res = simplicity(W)
            assert res.simple and res.exhaustive
            H = W.span([W.basis(i + 1) for i in range(0, p - 1)])
            assert H.codim == 1 and is_subring(W, H) and not is_ideal(W, H)
            assert normalizer(W, H) == H
        d["primes"] = "5,7"


def test_criterion_7_derivations():
    with criterion(7, "derivations of F_{p^k} over F_p vanish") as d:
        for p, k in itertools.product((5, 7), (1, 2, 3)):
            assert derivation_space(GF(p, k)).nrows == 0, (p, k)
        d["fields"] = 6


def test_criterion_8_not_reproducible():
    with criterion(8, "rank-4 nonexistence and characteristic-0 linearisation") as d:
        with pytest.raises(BudgetError):
            census_dim3(5, dim=4)
        # the rank-4 statement has only lemma-level coverage (criteria 4 and 5)
        assert not is_simple(make_ga1(GF(5)))
        d["status"] = "NOT REPRODUCIBLE (documented)"
        d["dim4_census"] = "BudgetError"


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            with contextlib.suppress(Exception):
                fn()
    for n in sorted(REPORT):
        print(REPORT[n])
