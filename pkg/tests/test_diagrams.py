import random
from fractions import Fraction

import pytest

from lagrel.errors import (
    IllFormedDiagram, NegativeEpsilon, NotInFragment, NotPositiveDefinite,
    ZeroSqueeze,
)
from lagrel.linalg import Matrix, from_text
import lagrel.diagrams as dg
import lagrel.gauss as gs
import lagrel.lagrangian as lg
from lagrel.scalars import EXACT as F, circle_from_tan_half, qi

from conftest import (
    rand_frac, rand_lagrangian_state, rand_positive_state, rand_psd,
    rand_quasi_real_state, rand_real_matrix, rand_qi,
)


# -- interpretation ---------------------------------------------------------------


@pytest.mark.parametrize("m,n", [(0, 1), (1, 1), (2, 1), (1, 2), (0, 2), (2, 2),
                                 (0, 0), (2, 0)])
def test_spider_nodes_interpret_to_generators(m, n):
    a, b = qi(Fraction(2, 3)), qi(Fraction(-1, 2), Fraction(1, 3))
    assert dg.interpret(dg.spider_diagram(dg.Z, m, n, (a, b))) \
        == lg.z_spider_rel(F, m, n, a, b)
    assert dg.interpret(dg.spider_diagram(dg.X, m, n, (a, b))) \
        == lg.x_spider_rel(F, m, n, a, b)


def test_bare_wire_and_boxes():
    assert dg.interpret(dg.wire_diagram(2)) == lg.LagrangianRelation.identity(F, 2)
    assert dg.interpret(dg.box_diagram(dg.FOURIER)) == lg.fourier_rel(F)
    assert dg.interpret(dg.box_diagram(dg.FOURIER_INV)) == lg.fourier_inv_rel(F)
    assert dg.interpret(dg.box_diagram(dg.SQUEEZE, param=qi(3))) \
        == lg.squeeze_rel(F, 3)
    assert dg.interpret(dg.vacuum_diagram(), "gqga") == lg.vacuum_rel(F)
    # unlabeled two-legged grey node: the sharp resource pairing
    bell = dg.spider_diagram(dg.Z, 0, 2, (0, 0))
    rel = dg.interpret(bell)
    assert rel.contains([], [], [2, -2], [5, 5])


def test_diagram_compose_tensor_match_relations(rng):
    for _ in range(15):
        m = rng.randint(0, 2)
        d1 = dg.spider_diagram(dg.Z, rng.randint(0, 2), m,
                               (rand_qi(rng), rand_qi(rng)))
        d2 = dg.spider_diagram(dg.X, m, rng.randint(0, 2),
                               (rand_qi(rng), rand_qi(rng)))
        assert dg.interpret(dg.compose_diagrams(d1, d2)) \
            == dg.interpret(d1).compose(dg.interpret(d2))
        assert dg.interpret(dg.tensor_diagrams(d1, d2)) \
            == dg.interpret(d1).tensor(dg.interpret(d2))


def test_validation_rejects_malformed():
    d = dg.Diagram(1, 0)
    with pytest.raises(IllFormedDiagram):
        d.validate()  # unused input port
    d = dg.wire_diagram(1)
    d.add_edge(("in", 0), ("out", 0))
    with pytest.raises(IllFormedDiagram):
        d.validate()  # port reused
    d = dg.Diagram(0, 1)
    nid = d.add_node(dg.FOURIER)
    d.add_edge(("node", nid, 0), ("out", 0))
    with pytest.raises(IllFormedDiagram):
        d.validate()  # box port 1 unused
    d = dg.Diagram(0, 0)
    v = d.add_node(dg.VACUUM)
    with pytest.raises(IllFormedDiagram):
        d.validate()  # vacuum must have one leg


def test_fragment_checks():
    with pytest.raises(NotInFragment):
        dg.interpret(dg.vacuum_diagram(), "gsa")
    complex_spider = dg.spider_diagram(dg.Z, 0, 1, (qi(0, 1), 0))
    with pytest.raises(NotInFragment):
        dg.interpret(complex_spider, "gqga")
    shear = dg.spider_diagram(dg.Z, 1, 1, (0, 1))
    with pytest.raises(NotInFragment):
        dg.interpret(shear, "gga")  # symplectic phases are not affine
    with pytest.raises(NotInFragment):
        dg.interpret(dg.box_diagram(dg.FOURIER), "gga")
    with pytest.raises(ZeroSqueeze):
        dg.interpret(dg.box_diagram(dg.SQUEEZE, param=qi(0)))


def test_contraction_order_independence(rng):
    for _ in range(10):
        n = rng.randint(1, 2)
        state = rand_lagrangian_state(rng, n)
        if state.is_empty:
            continue
        d = dg.synthesize_normal_form(state, "gsa")
        base = dg.interpret(d, "gsa")
        nb = 2 * (d.n_in + d.n_out)
        internal = 2 * len(d.edges) + sum(
            1 for node in d.nodes.values() if node.kind in dg.SPIDERS)
        order = list(range(nb, nb + internal))
        for _ in range(2):
            rng.shuffle(order)
            assert dg.interpret(d, "gsa", elimination_order=list(order)) == base


def test_fusion_mutation_control(rng):
    """Deliberately mismatched phases must break spider fusion."""
    d = dg.Diagram(2, 2)
    g1 = d.add_node(dg.Z, phase=(1, 2))
    g2 = d.add_node(dg.Z, phase=(2, 3))
    d.add_edge(("in", 0), ("node", g1))
    d.add_edge(("in", 1), ("node", g1))
    d.add_edge(("node", g1), ("node", g2))
    d.add_edge(("node", g2), ("out", 0))
    d.add_edge(("node", g2), ("out", 1))
    assert dg.interpret(d) == lg.z_spider_rel(F, 2, 2, 3, 5)
    assert dg.interpret(d) != lg.z_spider_rel(F, 2, 2, 4, 5)
    assert dg.interpret(d) != lg.z_spider_rel(F, 2, 2, 3, 6)


# -- synthesis ---------------------------------------------------------------------


def test_synthesize_identity_and_vacuum():
    idr = lg.LagrangianRelation.identity(F, 1)
    for calc in ("gsa", "gga", "gqga"):
        assert dg.interpret(dg.synthesize_normal_form(idr, calc), calc) == idr
    vac = lg.vacuum_rel(F)
    for calc in ("gga", "gqga"):
        d = dg.synthesize_normal_form(vac, calc)
        assert any(node.kind == dg.VACUUM for node in d.nodes.values())
        assert dg.interpret(d, calc) == vac


def test_synthesize_gsa_round_trip(rng):
    done = 0
    while done < 30:
        n = rng.randint(1, 3)
        state = rand_lagrangian_state(rng, n)
        if state.is_empty:
            continue
        d = dg.synthesize_normal_form(state, "gsa")
        assert dg.interpret(d, "gsa") == state
        done += 1


def test_synthesize_rejects_wrong_fragment():
    conj_vac = lg.vacuum_rel(F).conjugate()
    with pytest.raises(NotInFragment):
        dg.synthesize_normal_form(conj_vac, "gqga")
    shear = lg.z_spider_rel(F, 1, 1, 0, 2)  # positive but not quasi-real
    with pytest.raises(NotInFragment):
        dg.synthesize_normal_form(shear, "gga")


def test_synthesize_empty():
    emp = lg.LagrangianRelation.empty(F, 1, 2)
    for calc in ("gsa", "gga", "gqga"):
        d = dg.synthesize_normal_form(emp, calc)
        got = dg.interpret(d, calc)
        assert got.is_empty and (got.n_in, got.n_out) == (1, 2)


def test_synthesize_maps(rng):
    from conftest import rand_symplectomorphism
    for _ in range(10):
        r = lg.graph_relation(rand_symplectomorphism(rng, 1)) \
            .compose(lg.z_translate_rel(F, rand_frac(rng)))
        d = dg.synthesize_normal_form(r, "gsa")
        assert dg.interpret(d, "gsa") == r


# -- graph import --------------------------------------------------------------------


def test_import_graph_examples():
    u0 = Matrix.zeros(F, 2, 2)
    d = dg.import_graph_state(u0, Matrix.identity(F, 2))
    assert sum(1 for node in d.nodes.values() if node.kind == dg.VACUUM) == 2
    assert dg.interpret(d, "gqga") == lg.vacuum_rel(F).tensor(lg.vacuum_rel(F))

    for w in (Fraction(1), Fraction(-2), Fraction(3, 2)):
        u = Matrix.from_rows(F, [[w]])
        v = Matrix.identity(F, 1)
        got = dg.interpret(dg.import_graph_state(u, v), "gqga")
        assert got == gs.qgauss_state(
            gs.PhaseMatrix.centered(u + v.scale(F.i))), w

    u = from_text(F, "0,1;1,0")
    v = Matrix.identity(F, 2)
    got = dg.interpret(dg.import_graph_state(u, v), "gqga")
    assert got == gs.qgauss_state(gs.PhaseMatrix.centered(u + v.scale(F.i)))


def test_import_graph_phase_matrix_recovered(rng):
    for _ in range(10):
        n = rng.randint(1, 2)
        u = rand_real_matrix(rng, n, n)
        u = u + u.transpose()
        v = rand_psd(rng, n, definite=True)
        d = dg.import_graph_state(u, v)
        state = dg.interpret(d, "gsa")
        assert lg.ap_form(state).phi == u + v.scale(F.i)
        sigma = gs.phase_to_covariance(gs.PhaseMatrix.centered(u + v.scale(F.i)))
        assert gs.covariance_to_phase(sigma).phi == u + v.scale(F.i)


def test_import_graph_rejects_indefinite():
    with pytest.raises(NotPositiveDefinite):
        dg.import_graph_state(Matrix.zeros(F, 1, 1), from_text(F, "-1"))


# -- teleportation ---------------------------------------------------------------------


def test_teleportation_perfect_at_zero():
    ident = lg.LagrangianRelation.identity(F, 1)
    assert dg.demo_teleportation(0, (0, 0)) == ident
    assert dg.demo_teleportation(0, (Fraction(3, 7), Fraction(-2, 5))) == ident


def test_teleportation_two_paths_agree(rng):
    for eps in (0, Fraction(1, 4), 1, 4):
        for _ in range(3):
            outcome = (rand_frac(rng), rand_frac(rng))
            assert dg.demo_teleportation(eps, outcome) \
                == dg.teleportation_oracle(eps, outcome)


def test_teleportation_noise_grows_with_eps():
    ch = dg.teleportation_oracle(Fraction(1, 2), (0, 0))
    out = lg.z_spider_rel(F, 0, 1, 0, 0).compose(ch)
    eg = gs.extract_extended_gaussian(out)
    assert eg.sigma[0, 0] == qi(Fraction(1, 2))
    with pytest.raises(NegativeEpsilon):
        dg.demo_teleportation(-1)


# -- squeeze / shear extensions ----------------------------------------------------------


def test_squeeze_shear_diagrams():
    assert dg.interpret(dg.squeeze_diagram(1)) == lg.LagrangianRelation.identity(F, 1)
    two = dg.compose_diagrams(dg.squeeze_diagram(2),
                              dg.squeeze_diagram(Fraction(1, 2)))
    assert dg.interpret(two) == lg.LagrangianRelation.identity(F, 1)
    with pytest.raises(ZeroSqueeze):
        dg.squeeze_diagram(0)
    a = Fraction(3, 4)
    shear_rel = dg.interpret(dg.shear_diagram(a), "gqga")
    assert shear_rel == lg.graph_relation(from_text(F, "1,3/4;0,1"))
    # matches the unitary embedding of the corresponding phase-space shear
    s_phase = gs.phase_space_to_mode(from_text(F, "1,3/4;0,1"))
    assert shear_rel == gs.qgauss_unitary(s_phase)


def test_rotation_diagrams_cover_special_angles(rng):
    for t in (Fraction(1, 2), Fraction(-1, 3), Fraction(0), Fraction(2)):
        cp = circle_from_tan_half(t)
        assert dg.interpret(dg.rotation_diagram(cp), "gqga") \
            == lg.graph_relation(lg.symplectic_rotation(F, cp))
    from lagrel.scalars import CIRCLE_HALF, CIRCLE_QUARTER
    for cp in (CIRCLE_QUARTER, CIRCLE_HALF, CIRCLE_QUARTER.inv()):
        assert dg.interpret(dg.rotation_diagram(cp), "gqga") \
            == lg.graph_relation(lg.symplectic_rotation(F, cp))
