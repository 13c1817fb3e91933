"""Acceptance gate: one test per criterion, at the stated sample counts
and tolerances (exact equality unless a float tolerance is called out).
Each test prints a single pass/fail line; run with `pytest -s` (or read
the captured output) to see the tally.
"""

import itertools
import math
import random
import time
from fractions import Fraction

import pytest

from lagrel.axioms import axiom_table, run_soundness_suite
from lagrel.linalg import Matrix, det, is_psd_hermitian, rank
import lagrel.diagrams as dg
import lagrel.gauss as gs
import lagrel.lagrangian as lg
import lagrel.lov as lov
from lagrel.relations import AffineRelation
from lagrel.scalars import CIRCLE_ONE, EXACT as F, FLOAT, circle_from_tan_half

from conftest import (
    GF5_FIELD, rand_frac, rand_lagrangian_state, rand_positive_state,
    rand_psd, rand_quasi_real_state, rand_real_matrix, rand_symplectomorphism,
)


def report(criterion: str, passed: bool, detail: str = ""):
    tag = "PASS" if passed else "FAIL"
    print(f"ACCEPTANCE {criterion}: {tag}{(' (' + detail + ')') if detail else ''}")
    assert passed, f"{criterion}: {detail}"


def test_criterion_01_axiom_soundness():
    """Every transcribed equation of all four tables holds at >= 5 random
    exact parameter assignments; zero failures; suite under 60 s."""
    t0 = time.time()
    results = run_soundness_suite("all", samples=5, seed=11)
    elapsed = time.time() - t0
    failures = [(c, n) for c, n, ok in results if not ok]
    report("1 axiom soundness",
           not failures and elapsed < 60.0,
           f"{len(results)} axioms, {elapsed:.1f}s, failures={failures}")


def test_criterion_02_ap_uniqueness():
    """100 random Lagrangian states on <= 3 modes, re-presented 3 ways,
    give identical AP fingerprints. Exact equality."""
    rng = random.Random(101)
    done = 0
    while done < 100:
        n = rng.randint(1, 3)
        state = rand_lagrangian_state(rng, n)
        if state.is_empty:
            continue
        fp = lg.ap_form(state).fingerprint()
        variants = 0
        while variants < 3:
            p = rand_real_matrix(rng, n, n)
            if rank(p) < n:
                continue
            remixed = lg.LagrangianRelation.from_constraints(
                F, 0, n, (p @ state.rel.mat).to_lists(),
                (p @ state.rel.rhs).to_list())
            assert lg.ap_form(remixed).fingerprint() == fp
            variants += 1
        done += 1
    report("2 AP-form uniqueness", True, "100 states x 3 presentations")


def test_criterion_03_positivity_equivalence():
    """The AP-invariant test and the restricted-Hermitian-form test agree
    on 500 random complex Lagrangian states; zero disagreements."""
    rng = random.Random(202)
    agreements = 0
    positives = 0
    while agreements < 500:
        n = rng.randint(1, 3)
        state = rand_lagrangian_state(rng, n)
        if state.is_empty:
            continue
        a = lg.positive_by_invariant(state)
        b = lg.positive_by_form(state)
        assert a == b, "positivity algorithms disagree"
        positives += a
        agreements += 1
    report("3 positivity equivalence", True,
           f"500 states, {positives} positive")


def test_criterion_04_closure():
    """200 random composites/tensors of positive (resp. quasi-real)
    relations stay positive (resp. quasi-real)."""
    rng = random.Random(303)
    checked = 0
    while checked < 200:
        n = rng.randint(1, 2)
        if checked % 2 == 0:
            a = rand_positive_state(rng, n)
            b = rand_positive_state(rng, n)
            closed = lg.is_positive(a.tensor(b)) and \
                lg.is_positive(a.compose(b.dagger()))
        else:
            a = rand_quasi_real_state(rng, n)
            b = rand_quasi_real_state(rng, n)
            closed = lg.is_quasi_real(a.tensor(b)) and \
                lg.is_quasi_real(a.compose(b.dagger()))
        assert closed
        checked += 1
    report("4 closure", True, "200 composites/tensors")


def test_criterion_05_constructive_completeness():
    """interpret o synthesize_normal_form = id on 100 random quasi-real
    and 100 random positive states on <= 3 modes; canonical equality."""
    rng = random.Random(404)
    done = 0
    while done < 100:
        n = rng.randint(1, 3)
        state = rand_quasi_real_state(rng, n)
        if state.is_empty:
            continue
        d = dg.synthesize_normal_form(state, "gga")
        assert dg.interpret(d, "gga") == state
        done += 1
    done = 0
    while done < 100:
        n = rng.randint(1, 3)
        state = rand_positive_state(rng, n)
        d = dg.synthesize_normal_form(state, "gqga")
        assert dg.interpret(d, "gqga") == state
        done += 1
    report("5 constructive completeness", True,
           "100 quasi-real + 100 positive round trips")


def test_criterion_06_wigner_bijection():
    """50 random rational phase matrices round-trip exactly; images have
    det 1 and delta + i Omega PSD."""
    rng = random.Random(505)
    for _ in range(50):
        n = rng.randint(1, 2)
        re = rand_real_matrix(rng, n, n)
        phi = (re + re.transpose()) + rand_psd(rng, n, definite=True).scale(F.i)
        pm = gs.PhaseMatrix.centered(phi)
        sigma = gs.phase_to_covariance(pm)
        assert det(sigma) == F.one
        assert is_psd_hermitian(sigma + lg.omega(F, n).scale(F.i))
        assert gs.covariance_to_phase(sigma).phi == phi
    report("6 Wigner bijection", True, "50 round trips")


def test_criterion_07_gauss_functoriality():
    """to_gaussrel(gauss_compose(g, h)) equals the relational composite
    on 100 random pairs; settles the composite-covariance reading."""
    rng = random.Random(606)
    for _ in range(100):
        n, m, k = (rng.randint(0, 2) for _ in range(3))
        g = gs.GaussMap(rand_real_matrix(rng, m, n), rand_psd(rng, m),
                        rand_real_matrix(rng, m, 1))
        h = gs.GaussMap(rand_real_matrix(rng, k, m), rand_psd(rng, k),
                        rand_real_matrix(rng, k, 1))
        assert gs.to_gaussrel(gs.gauss_compose(g, h)) \
            == gs.to_gaussrel(g).compose(gs.to_gaussrel(h))
    report("7 Gauss functoriality", True, "100 pairs")


def test_criterion_08_projection_consistency():
    """Generalised-Schur projection equals the relational oracle through
    the doubling embedding on 50 random state/effect pairs, <= 2 modes."""
    rng = random.Random(707)
    for _ in range(50):
        n = 1
        m = rng.randint(1, 2)
        d = 2 * (n + m)
        sigma = rand_psd(rng, d, definite=True)
        mu = rand_real_matrix(rng, d, 1)
        delta = rand_psd(rng, 2 * n, definite=True)
        nu = rand_real_matrix(rng, 2 * n, 1)
        s1, m1 = gs.qgauss_project(sigma, 2 * n, delta, mu, nu)
        s2, m2 = gs.qgauss_project_relational(sigma, 2 * n, delta, mu, nu)
        assert s1 == s2 and m1 == m2
    report("8 projection consistency", True, "50 state/effect pairs")


def test_criterion_09_teleportation():
    """eps = 0 returns exactly the identity; at eps in {1/4, 1, 4} the
    diagram path and the direct relational path agree exactly."""
    rng = random.Random(808)
    ident = lg.LagrangianRelation.identity(F, 1)
    for _ in range(5):
        outcome = (rand_frac(rng), rand_frac(rng))
        assert dg.demo_teleportation(0, outcome) == ident
    for eps in (Fraction(1, 4), Fraction(1), Fraction(4)):
        for _ in range(5):
            outcome = (rand_frac(rng), rand_frac(rng))
            assert dg.demo_teleportation(eps, outcome) \
                == dg.teleportation_oracle(eps, outcome)
    report("9 teleportation", True,
           "identity at eps=0; two paths agree at eps in {1/4, 1, 4}")


def test_criterion_10_lov_embedding():
    """Every optics generator interprets to a symplectic orthogonal map:
    exact on circle points, residual <= 1e-9 over 100 random float
    angles; the beamsplitter at zero is the identity."""
    cps = [circle_from_tan_half(t) for t in
           (Fraction(0), Fraction(1, 2), Fraction(-2, 3), Fraction(3))]
    eye = Matrix.identity(F, 8)
    for cp in cps:
        for kind in ("ps", "wp", "bs"):
            gate = lov.Gate(kind, (0,) if kind != "bs" else (0, 1), angle=cp)
            s = lov.gate_mode_matrix(gate, 2, F)
            assert lg.symplectomorphism_check(s)
            assert s.transpose() @ s == eye
            assert dg.interpret(lov.gate_layer(gate, 2, F), "gqga") \
                == lg.graph_relation(s, check=False)
    pbs = lov.gate_mode_matrix(lov.Gate("pbs", (0, 1)), 2, F)
    assert lg.symplectomorphism_check(pbs) and pbs.transpose() @ pbs == eye
    rng = random.Random(909)
    omega_f = lg.omega(FLOAT, 4)
    eye_f = Matrix.identity(FLOAT, 8)
    worst = 0.0
    for _ in range(100):
        theta = rng.uniform(0.0, 2.0 * math.pi)
        kind = rng.choice(["ps", "wp", "bs"])
        gate = lov.Gate(kind, (0,) if kind != "bs" else (0, 1), angle=theta)
        s = lov.gate_mode_matrix(gate, 2, FLOAT)
        worst = max(
            worst,
            max(abs(x) for x in (s.transpose() @ omega_f @ s - omega_f).data),
            max(abs(x) for x in (s.transpose() @ s - eye_f).data))
    assert worst <= 1e-9
    bs0 = lov.gate_layer(lov.Gate("bs", (0, 1), angle=CIRCLE_ONE), 2, F)
    assert dg.interpret(bs0, "gqga") == lg.LagrangianRelation.identity(F, 4)
    report("10 LOv embedding", True, f"float residual {worst:.2e}")


def test_criterion_11_finite_field_oracle():
    """Relational composition over GF5 matches exhaustive enumeration on
    50 random small relations; zero mismatches."""
    rng = random.Random(1010)
    k = GF5_FIELD

    def rand_rel(dom, cod):
        rows = [[k.coerce(rng.randint(-2, 2)) for _ in range(dom + cod)]
                for _ in range(rng.randint(0, 2))]
        rhs = [k.coerce(rng.randint(-2, 2)) for _ in rows]
        return AffineRelation.from_constraints(k, dom, cod, rows, rhs)

    def points(rel):
        return {pt for pt in itertools.product(k.elements, repeat=rel.n_coords())
                if rel.contains(pt)}

    for _ in range(50):
        a, b, c = rng.randint(0, 2), rng.randint(1, 2), rng.randint(0, 2)
        r, s = rand_rel(a, b), rand_rel(b, c)
        got = points(r.compose(s))
        expected = {p[:a] + q[b:] for p in points(r) for q in points(s)
                    if p[a:] == q[:b]}
        assert got == expected
    report("11 finite-field composition oracle", True, "50 relations")
