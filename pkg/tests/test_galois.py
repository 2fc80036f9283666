import itertools

import pytest

from noricat.commutant import compute_end
from noricat.criterion import FAIL, PASS, check_condition_c
from noricat.galois import (FiniteGroup, GSet, build_galois_diagram, compare_with_group_algebra,
                            coset_gset, cyclic_group, direct_product, equivariant_map_from_point,
                            galois_stage_end, group_algebra, regular_gset, symmetric_group,
                            trivial_gset)
from noricat.linalg import IntMat

from helpers import brute_nullity

SMALL_GROUPS = [cyclic_group(2), cyclic_group(3), cyclic_group(4), symmetric_group(3),
                direct_product(cyclic_group(2), cyclic_group(2)), cyclic_group(8),
                direct_product(cyclic_group(2), cyclic_group(4))]


def phi_matrix(A, B, phi):
    rows = [[0] * A.size for _ in range(B.size)]
    for x in range(A.size):
        rows[phi[x]][x] = 1
    return IntMat(rows, B.size, A.size)


def test_group_validation():
    with pytest.raises(ValueError):
        FiniteGroup(((0, 1), (0, 1)))
    G = cyclic_group(3)
    with pytest.raises(ValueError):
        GSet(G, ((0, 1), (1, 0), (0, 1)))


@pytest.mark.parametrize("G", SMALL_GROUPS, ids=lambda G: f"order{G.order}")
def test_group_algebra_axioms(G):
    A = group_algebra(G)
    assert A.is_associative() and A.is_unital()


def test_s3_is_noncommutative():
    G = symmetric_group(3)
    assert not G.is_abelian()
    A = group_algebra(G)
    n = G.order
    e = [[int(k == g) for k in range(n)] for g in range(n)]
    witness = [(g, h) for g, h in itertools.product(range(n), repeat=2)
               if A.multiply(e[g], e[h]) != A.multiply(e[h], e[g])]
    assert witness


@pytest.mark.parametrize("G", SMALL_GROUPS[:5], ids=lambda G: f"order{G.order}")
def test_regular_stage_gives_group_algebra(G):
    inst = build_galois_diagram(G, regular_gset(G), [equivariant_map_from_point(regular_gset(G), 0)])
    A = galois_stage_end(inst)
    assert A.dim == G.order == brute_nullity(inst.rep, inst.galois_stage)
    cmp = compare_with_group_algebra(A, inst)
    assert cmp.injective and cmp.surjective and cmp.homomorphism and cmp.isomorphism


def test_trivial_target_cross_checked():
    G = cyclic_group(3)
    B = trivial_gset(G, 2)
    inst = build_galois_diagram(G, B, [equivariant_map_from_point(B, 0),
                                       equivariant_map_from_point(B, 1)])
    A = galois_stage_end(inst)
    assert A.dim == brute_nullity(inst.rep, inst.galois_stage)
    cmp = compare_with_group_algebra(A, inst)
    assert cmp.homomorphism


def test_c2_swap_has_dimension_two():
    G = cyclic_group(2)
    B = regular_gset(G)
    inst = build_galois_diagram(G, B, [equivariant_map_from_point(B, 1)])
    A = galois_stage_end(inst)
    assert A.dim == 2
    assert compare_with_group_algebra(A, inst).isomorphism


def test_non_equivariant_map_refused():
    G = cyclic_group(3)
    B = trivial_gset(G, 2)
    with pytest.raises(ValueError, match="equivariant"):
        build_galois_diagram(G, B, [[0, 1, 0]])


def test_equivariant_kernels_are_invariant():
    G = symmetric_group(3)
    inst = build_galois_diagram(G, regular_gset(G))
    L = regular_gset(G)
    t = next(g for g in range(1, G.order) if G.mul(g, g) == G.identity)
    for H in ([G.identity], [G.identity, t], list(range(G.order))):
        C = coset_gset(G, H)
        phi = equivariant_map_from_point(C, 0)
        assert L.is_equivariant(C, phi)
        res = check_condition_c(inst.rep, inst.galois_stage, "l", phi_matrix(L, C, phi))
        assert res.status == PASS


def test_non_equivariant_kernel_fails():
    G = cyclic_group(3)
    inst = build_galois_diagram(G, regular_gset(G))
    # collapse two of the three points: not a G-map
    f = IntMat([[1, 1, 0], [0, 0, 1]], 2, 3)
    res = check_condition_c(inst.rep, inst.galois_stage, "l", f)
    assert res.status == FAIL and res.certificate


def test_orbits_and_cosets():
    G = symmetric_group(3)
    C = coset_gset(G, [0])
    assert C.size == 6 and len(C.orbits()) == 1
    assert len(trivial_gset(G, 3).orbits()) == 3
    assert compute_end(build_galois_diagram(G, trivial_gset(G, 1)).rep).dim >= 1
