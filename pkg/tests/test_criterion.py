from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from noricat.commutant import free_module, module_structure
from noricat.criterion import (FAIL, NOT_CHECKED, PASS, TargetPresentation, build_V,
                               check_condition_a, check_condition_b, check_condition_c,
                               check_module_map_routes, check_refined_c_prime, descent_is_unique,
                               full_criterion, kernel_saturation_identity, v_independent)
from noricat.criterion import TestMap as Probe
from noricat.diagram import (Arrow, Coproduct, Diagram, Representation, base_change_Q,
                             diagram_from_arrows)
from noricat.galois import (build_galois_diagram, cyclic_group, equivariant_map_from_point,
                            group_algebra, permutation_module, regular_gset, symmetric_group)
from noricat.linalg import IntMat, RatMat, block_diag

from helpers import random_rep, seeded


def regular_c2():
    G = cyclic_group(2)
    return build_galois_diagram(G, regular_gset(G), [equivariant_map_from_point(regular_gset(G), 0)],
                                coproduct=True)


def galois_target(inst, extra=()):
    G = inst.group
    A = group_algebra(G, inst.rep.ring)
    modules = {name: permutation_module(S, inst.rep.ring, A) for name, S in inst.gsets.items()}
    modules.update(extra)
    return TargetPresentation(inst.rep, A, modules, {o: o for o in inst.diagram.objects},
                              list(modules))


# condition (a) --------------------------------------------------------------


def test_condition_a_zero_inclusions_fail():
    D = Diagram(("p", "q", "s"), (Arrow("i", "p", "s"), Arrow("j", "q", "s")),
                (Coproduct("p", "q", "s", "i", "j"),))
    T = Representation(D, "Z", {"p": 1, "q": 1, "s": 2},
                       {"i": IntMat.zeros(2, 1), "j": IntMat.zeros(2, 1)})
    (res,) = check_condition_a(T)
    assert res.status == FAIL and res.certificate["det"] == 0
    assert "kernelVector" in res.certificate


def test_condition_a_det_two_fails_over_z_only():
    D = Diagram(("p", "q", "s"), (Arrow("i", "p", "s"), Arrow("j", "q", "s")),
                (Coproduct("p", "q", "s", "i", "j"),))
    T = Representation(D, "Z", {"p": 1, "q": 1, "s": 2},
                       {"i": IntMat([[1], [1]], 2, 1), "j": IntMat([[1], [-1]], 2, 1)})
    (res,) = check_condition_a(T)
    assert res.status == FAIL and res.certificate["invariantFactors"] == [1, 2]
    assert check_condition_a(base_change_Q(T))[0].status == PASS


def test_condition_a_not_checked():
    T = random_rep(seeded(1))
    (res,) = check_condition_a(T)
    assert res.status == NOT_CHECKED
    inst = regular_c2()
    out = check_condition_a(inst.rep, [("l", "X"), ("X", "l")])
    assert [r.status for r in out] == [PASS, NOT_CHECKED]


# condition (c) and the two routes -------------------------------------------


def test_condition_c_examples():
    inst = regular_c2()
    T, E = inst.rep, inst.galois_stage
    assert check_condition_c(T, E, "l", IntMat.zeros(1, 2)).status == PASS
    assert check_condition_c(T, E, "l", IntMat.identity(2)).status == PASS
    res = check_condition_c(T, E, "l", IntMat([[1, 0]], 1, 2))
    assert res.status == FAIL
    cert = res.certificate
    assert cert["kernelGen"] == [0, 1] and cert["image"] == [1, 0]
    assert "basisIndex" in cert
    with pytest.raises(ValueError):
        check_condition_c(T, E, "l", IntMat.zeros(1, 3))


def test_module_map_routes_examples():
    inst = regular_c2()
    T, E = inst.rep, inst.galois_stage
    r = check_module_map_routes(T, E, "l", "X", T.matrix("phi0"))
    assert r.status == PASS and r.agree
    r = check_module_map_routes(T, E, "l", "l", IntMat.identity(2))
    assert r.status == PASS and r.agree
    r = check_module_map_routes(T, E, "l", "l", IntMat([[1, 0], [0, 0]], 2, 2))
    assert r.status == FAIL and r.agree and r.violation
    with pytest.raises(ValueError):
        check_module_map_routes(T, E, "l", "l", IntMat.zeros(1, 2))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_property_routes_agree(seed):
    rng = seeded(seed)
    T = random_rep(rng, max_rank=3, entry=2)
    objs = T.diagram.objects
    p, p2 = rng.choice(objs), rng.choice(objs)
    n, m = T.values[p], T.values[p2]
    f = IntMat([[rng.randint(-2, 2) for _ in range(n)] for _ in range(m)], m, n)
    assert check_module_map_routes(T, T.diagram, p, p2, f).agree


# descent ---------------------------------------------------------------------


def test_build_V_identity_gives_tautological_module():
    inst = regular_c2()
    T, E = inst.rep, inst.galois_stage
    res = build_V(T, E, "l", IntMat.identity(2))
    assert res.status == PASS and res.unique
    M = module_structure(T, E, "l")
    assert all(a == b for a, b in zip(res.module.action, M.action))


def test_build_V_mod_two():
    inst = regular_c2()
    T, E = inst.rep, inst.galois_stage
    res = build_V(T, E, "l", IntMat.identity(2), IntMat([[2, 0], [0, 2]], 2, 2))
    assert res.status == PASS and res.unique
    assert res.module.carrier.torsion == (2, 2)
    again = build_V(T, E, "l", IntMat.identity(2), IntMat([[2, 0], [0, 2]], 2, 2))
    assert v_independent(res, again)


def test_build_V_failures():
    inst = regular_c2()
    T, E = inst.rep, inst.galois_stage
    res = build_V(T, E, "l", IntMat([[1, 0]], 1, 2))
    assert res.status == FAIL and res.certificate["reason"] == "kernel not invariant"
    res = build_V(T, E, "l", IntMat([[2, 0], [0, 1]], 2, 2))
    assert res.status == FAIL and "surjective" in res.certificate["reason"]


def test_descent_uniqueness():
    assert descent_is_unique(IntMat.identity(2), IntMat.zeros(2, 0), "Z")
    # a non-surjective alpha leaves room for a second action
    assert not descent_is_unique(IntMat([[1, 0], [0, 0]], 2, 2), IntMat.zeros(2, 0), "Z")


# saturation identity ---------------------------------------------------------


def test_saturation_examples():
    s = kernel_saturation_identity(IntMat([[1, 2]], 1, 2))
    assert s.holds and s.kernel_Z.col(0) in ((-2, 1), (2, -1))
    s = kernel_saturation_identity(IntMat([[1]], 1, 1), IntMat([[2]], 1, 1))
    assert not s.holds
    assert s.kernel_Z == IntMat([[2]], 1, 1) and s.kernel_Q_cap == IntMat([[1]], 1, 1)
    s = kernel_saturation_identity(IntMat.zeros(1, 2))
    assert s.holds and s.kernel_Z.cols == 2


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 3), st.integers(1, 4), st.integers(0, 10_000))
def test_property_saturation_torsion_free(m, n, seed):
    rng = seeded(seed)
    f = IntMat([[rng.randint(-4, 4) for _ in range(n)] for _ in range(m)], m, n)
    assert kernel_saturation_identity(f).holds


def test_refined_c_prime():
    inst = regular_c2()
    T, E = inst.rep, inst.galois_stage
    f = RatMat([[Fraction(1, 2), Fraction(1, 2)]], 1, 2)
    res = check_refined_c_prime(T, E, "l", f)
    assert res.status == PASS and res.certificate["saturationIdentity"]
    res = check_refined_c_prime(T, E, "l", RatMat([[Fraction(1, 3), 0]], 1, 2))
    assert res.status == FAIL


# full criterion ----------------------------------------------------------------


def test_full_criterion_galois_pass():
    G = symmetric_group(3)
    inst = build_galois_diagram(G, regular_gset(G), [equivariant_map_from_point(regular_gset(G), 0)],
                                coproduct=True)
    target = galois_target(inst)
    maps = [Probe("l", inst.rep.matrix("phi0"), name="phi0")]
    report = full_criterion(inst.rep, target, maps, inst.galois_stage)
    assert report.overall == PASS, report.to_json()
    assert not report.failures()


def test_full_criterion_unreachable_generator():
    inst = regular_c2()
    base = galois_target(inst)
    reg = base.modules["l"]
    # three copies of the regular module need six generators; no T(p) has that many
    huge = free_module(base.algebra, [block_diag([M, M, M], IntMat) for M in reg.action], 6)
    target = TargetPresentation(inst.rep, base.algebra, {**base.modules, "huge": huge},
                                base.S, ["huge"])
    (b,) = check_condition_b(target)
    assert b.status == FAIL
    assert all(o["reason"] == "generator count" for o in b.certificate["obstructions"].values())
    report = full_criterion(inst.rep, target, [], inst.galois_stage)
    assert report.overall == FAIL


def test_full_criterion_precondition_and_incomplete():
    inst = regular_c2()
    base = galois_target(inst)
    A = base.algebra
    modules = dict(base.modules)
    modules["l"] = free_module(A, [IntMat.identity(2)] * 2, 2)
    # the loops rho1 swap coordinates, which the trivial action on S(l) does not respect
    with pytest.raises(ValueError, match="inconsistent target presentation"):
        TargetPresentation(inst.rep, A, modules, {o: o for o in inst.diagram.objects})
    # a diagram with no coproduct table cannot reach PASS
    G = cyclic_group(2)
    bare = build_galois_diagram(G, regular_gset(G), [equivariant_map_from_point(regular_gset(G), 0)])
    report = full_criterion(bare.rep, galois_target(bare), [Probe("l", IntMat.identity(2))],
                            bare.galois_stage)
    assert report.condition_a[0].status == NOT_CHECKED
    assert report.overall != PASS


def test_full_criterion_non_equivariant_map_fails():
    inst = regular_c2()
    report = full_criterion(inst.rep, galois_target(inst),
                            [Probe("l", IntMat([[1, 0]], 1, 2), name="bad")],
                            inst.galois_stage)
    assert report.overall == FAIL
    (bad,) = report.failures()
    assert bad.subject == "bad" and bad.certificate["image"] == [1, 0]


def test_full_criterion_other_rep_rejected():
    inst = regular_c2()
    other = random_rep(seeded(3))
    with pytest.raises(ValueError):
        full_criterion(other, galois_target(inst), [])


def test_condition_b_identity_surjection():
    inst = regular_c2()
    res = check_condition_b(galois_target(inst))
    assert all(r.status == PASS for r in res)
    assert {r.subject for r in res} == {"l", "X", "l+X"}
    D = diagram_from_arrows(["p"], [])
    T = Representation(D, "Z", {"p": 1}, {})
    A = group_algebra(cyclic_group(1))
    target = TargetPresentation(T, A, {"p": free_module(A, [IntMat.identity(1)], 1)}, {"p": "p"})
    assert check_condition_b(target)[0].status == NOT_CHECKED
