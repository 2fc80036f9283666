import pytest

from noricat.category import (CMorphism, cokernel, compose, direct_sum, find_isomorphism,
                              forgetful, hom_at_stage, kernel, kernel_inclusion, refine,
                              tilde_T, tower, zero_object)
from noricat.diagram import Representation, SubdiagramChain, diagram_from_arrows
from noricat.galois import cyclic_group, regular_gset
from noricat.graphs import CellularMap, Edge, Graph, GraphPair, build_diagram
from noricat.linalg import FgAbGroup, IntMat

from helpers import oracle_cokernel_group, oracle_kernel_group, random_rep, same_group, seeded


def regular_c2():
    G = cyclic_group(2)
    R = regular_gset(G)
    D = diagram_from_arrows(["p"], [("g0", "p", "p"), ("g1", "p", "p")])
    return Representation(D, "Z", {"p": 2}, {f"g{g}": R.permutation_matrix(g) for g in range(2)})


def scalar_rep(n=1):
    D = diagram_from_arrows(["p"], [])
    return Representation(D, "Z", {"p": n}, {})


def test_hom_regular_c2_has_rank_two():
    T = regular_c2()
    X = tilde_T(T, T.diagram, "p")
    H = hom_at_stage(X, X)
    assert H.rank == 2 and H.group.torsion == ()
    assert H.contains(IntMat.identity(2))
    assert H.contains(IntMat([[0, 1], [1, 0]], 2, 2))
    assert not H.contains(IntMat([[1, 0], [0, 0]], 2, 2))


def test_hom_between_torsion_objects():
    T = scalar_rep()
    X = tilde_T(T, T.diagram, "p")
    two = cokernel(CMorphism(X, X, IntMat([[2]], 1, 1)))
    three = cokernel(CMorphism(X, X, IntMat([[3]], 1, 1)))
    assert str(forgetful(two)) == "Z/2"
    assert hom_at_stage(two, three).group.is_trivial
    assert hom_at_stage(two, two).group == FgAbGroup(0, (2,))
    # Hom(Z, Z/2) is Z/2, Hom(Z/2, Z) is zero
    assert hom_at_stage(X, two).group == FgAbGroup(0, (2,))
    assert hom_at_stage(two, X).group.is_trivial


def test_kernel_cokernel_examples():
    T = scalar_rep()
    X = direct_sum(tilde_T(T, T.diagram, "p"), tilde_T(T, T.diagram, "p"))
    ident = CMorphism(X, X, IntMat.identity(2))
    assert forgetful(kernel(ident)).is_trivial and forgetful(cokernel(ident)).is_trivial
    zero = CMorphism(X, X, IntMat.zeros(2, 2))
    assert forgetful(kernel(zero)) == FgAbGroup(2)
    assert forgetful(cokernel(zero)) == FgAbGroup(2)
    f = CMorphism(X, X, IntMat([[2, 0], [0, 0]], 2, 2))
    assert forgetful(kernel(f)) == FgAbGroup(1)
    assert forgetful(cokernel(f)) == FgAbGroup(1, (2,))
    inc = kernel_inclusion(f)
    assert compose(f, inc).matrix.is_zero()


def test_non_equivariant_matrix_rejected():
    T = regular_c2()
    X = tilde_T(T, T.diagram, "p")
    with pytest.raises(ValueError, match="commute"):
        CMorphism(X, X, IntMat([[1, 0], [0, 0]], 2, 2))


def test_direct_sum_and_zero():
    T = regular_c2()
    X = tilde_T(T, T.diagram, "p")
    S = direct_sum(X, X)
    assert forgetful(S) == FgAbGroup(4)
    assert hom_at_stage(S, S).rank == 8
    Z0 = zero_object(T, T.diagram)
    assert forgetful(Z0).is_trivial
    assert forgetful(direct_sum(X, Z0)) == forgetful(X)


def two_circles():
    X = Graph(("a", "b"), (Edge("la", "a", "a"), Edge("lb", "b", "b")))
    swap = CellularMap(X, X, {"a": "b", "b": "a"}, {"la": ("lb", 1), "lb": ("la", 1)})
    kill = CellularMap(X, X, {"a": "a", "b": "b"}, {"la": ("la", 1), "lb": None})
    return X, swap, kill


def test_coproduct_matches_direct_sum():
    circle = Graph(("v",), (Edge("e", "v", "v"),))
    pairs = {"c": GraphPair(circle), "d": GraphPair(circle)}
    D, T = build_diagram(pairs, coproducts=[("c", "d")])
    U = tilde_T(T, D, "c+d")
    S = direct_sum(tilde_T(T, D, "c"), tilde_T(T, D, "d"))
    res = find_isomorphism(S, U, D)
    assert res.status == "ISO"
    assert (res.backward @ res.forward) == IntMat.identity(2)


def test_refine_keeps_the_carrier():
    X, swap, _ = two_circles()
    D, T = build_diagram({"c": GraphPair(X)}, [("s", "c", "c", swap)])
    small = tilde_T(T, D.sub(["c"], []), "c")
    big = refine(small, D)
    assert forgetful(big) == forgetful(small) == FgAbGroup(2)
    assert big.algebra.dim == 2 and small.algebra.dim == 4
    with pytest.raises(ValueError):
        refine(tilde_T(T, D, "c"), D.sub(["c"], []))


def test_hom_grows_along_stages():
    rng = seeded(21)
    for _ in range(20):
        T = random_rep(rng, max_rank=3)
        D = T.diagram
        p = D.objects[0]
        E0 = D.sub([p], [])
        X0 = tilde_T(T, E0, p)
        H0 = hom_at_stage(X0, X0)
        H1 = hom_at_stage(X0, X0, D)
        assert H0.is_contained_in(H1)


def test_kernel_cokernel_against_oracle():
    rng = seeded(22)
    T = regular_c2()
    X = tilde_T(T, T.diagram, "p")
    gens = hom_at_stage(X, X).lattice_basis()
    for _ in range(20):
        F = IntMat.zeros(2, 2)
        for B in gens:
            F = F + B.scale(rng.randint(-3, 3))
        f = CMorphism(X, X, F)
        R = IntMat.zeros(2, 0)
        assert same_group(forgetful(kernel(f)), oracle_kernel_group(F, R, R))
        assert same_group(forgetful(cokernel(f)), oracle_cokernel_group(F, R))


def test_tower_cuts_then_stabilizes():
    X, swap, kill = two_circles()
    ident = CellularMap.identity(X)
    D, T = build_diagram({"c": GraphPair(X)},
                         [("s", "c", "c", swap), ("k", "c", "c", kill), ("i", "c", "c", ident)])
    chain = SubdiagramChain((D.sub(["c"], []), D.sub(["c"], ["s"]),
                             D.sub(["c"], ["s", "k"]), D))
    tw = tower(T, chain)
    assert [A.dim for A in tw.algebras] == [4, 2, 1, 1]
    assert tw.report[0].ranks == (4, 2, 1, 1)
    assert tw.report[0].status == "STABILIZED"
    assert tw.report[-1].status == "NOT-YET"


def test_constant_chain_stabilizes_immediately():
    T = regular_c2()
    D = T.diagram
    tw = tower(T, SubdiagramChain((D, D, D)))
    assert tw.image_ranks == (2, 2)
    assert tw.report[0].ranks == (2, 2, 2) and tw.report[0].status == "STABILIZED"
