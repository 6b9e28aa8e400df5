import itertools

import pytest

from linkcob.abgroup import (BudgetExceeded, FgAbelianGroup, GroupHom, Subgroup,
                             SubgroupInProduct, cyclic, free, from_presentation, graph_of,
                             is_exact_at, is_graph_of_isomorphism, torsion_elements)
from linkcob.zlattice import IntMatrix


def elements(G):
    assert G.is_finite()
    return list(itertools.product(*(range(d) for d in G.torsion)))


def brute_image(f):
    return {f(x) for x in elements(f.source)}


def brute_kernel(g):
    zero = (0,) * g.target.ngens
    return {x for x in elements(g.source) if g(x) == zero}


def random_hom(rng, G, H):
    """A random well-defined map, or None when the draw is not well defined."""
    cols = []
    for j in range(G.ngens):
        cols.append([rng.randrange(d) for d in H.moduli])
    try:
        return GroupHom(G, H, IntMatrix.from_columns(cols, H.ngens) if cols
                        else IntMatrix.zeros(H.ngens, 0))
    except ValueError:
        return None


SMALL = [FgAbelianGroup(0, t) for t in [(), (2,), (3,), (4,), (2, 2), (2, 4), (6,), (3, 3)]]


def test_group_validation():
    with pytest.raises(ValueError):
        FgAbelianGroup(0, (2, 3))
    with pytest.raises(ValueError):
        FgAbelianGroup(0, (1,))
    with pytest.raises(ValueError):
        FgAbelianGroup(-1)


def test_presentation_normalizes():
    assert from_presentation([[2, 0], [0, 3]]) == cyclic(6)
    assert from_presentation([[2, 0], [0, 4]]) == FgAbelianGroup(0, (2, 4))
    assert from_presentation([[0, 0]]) == free(2)
    assert str(FgAbelianGroup(2, (3,))) == "Z/3 + Z^2"
    assert str(free(0)) == "0"
    assert cyclic(1).is_trivial() and cyclic(0) == free(1)


def test_torsion_elements():
    assert len(list(torsion_elements(FgAbelianGroup(0, (2, 4))))) == 8
    # the torsion subgroup of Z is trivial: exactly the zero element
    assert list(torsion_elements(free(1))) == [(0,)]
    with pytest.raises(BudgetExceeded):
        list(torsion_elements(cyclic(10**6), budget=100))


def test_hom_well_definedness():
    with pytest.raises(ValueError):
        GroupHom(cyclic(2), cyclic(3), [[1]])
    with pytest.raises(ValueError):
        GroupHom(cyclic(2), free(1), [[1]])
    assert GroupHom(cyclic(2), cyclic(4), [[2]])((1,)) == (2,)
    # entries are reduced, so equal maps compare equal
    assert GroupHom(cyclic(5), cyclic(5), [[7]]) == GroupHom(cyclic(5), cyclic(5), [[2]])


def test_kernel_image_free():
    f = GroupHom(free(1), free(1), [[2]])
    assert f.is_injective() and not f.is_surjective()
    assert (1,) not in f.image() and (4,) in f.image()
    g = GroupHom(free(2), free(1), [[1, 1]])
    assert (1, -1) in g.kernel() and (1, 0) not in g.kernel()


def test_kernel_and_image_against_enumeration(rng):
    seen = 0
    for _ in range(300):
        G, H = rng.choice(SMALL), rng.choice(SMALL)
        f = random_hom(rng, G, H)
        if f is None:
            continue
        seen += 1
        img = brute_image(f)
        ker = brute_kernel(f)
        assert all((y in f.image()) == (y in img) for y in elements(H))
        assert all((x in f.kernel()) == (x in ker) for x in elements(G))
        assert f.image().order() == len(img)
        assert f.is_injective() == (len(ker) == 1)
        assert f.is_surjective() == (len(img) == len(elements(H)))
    assert seen > 100


def test_exactness_against_enumeration(rng):
    exact_seen = 0
    for _ in range(600):
        A, B, C = rng.choice(SMALL), rng.choice(SMALL), rng.choice(SMALL)
        f, g = random_hom(rng, A, B), random_hom(rng, B, C)
        if f is None or g is None:
            continue
        expect = brute_image(f) == brute_kernel(g)
        assert is_exact_at(f, g) == expect
        exact_seen += expect
    # multiplication by 2 on Z/4 is exact at the middle
    two = GroupHom(cyclic(4), cyclic(4), [[2]])
    assert is_exact_at(two, two)
    assert is_exact_at(GroupHom(free(1), free(1), [[2]]),
                       GroupHom(free(1), cyclic(2), [[1]]))
    assert exact_seen > 5


def test_exactness_needs_composable_maps():
    with pytest.raises(ValueError):
        is_exact_at(GroupHom.identity(cyclic(2)), GroupHom.identity(cyclic(3)))


def test_inverse():
    f = GroupHom(cyclic(5), cyclic(5), [[2]])
    assert f.inverse().matrix.tolist() == [[3]]
    assert f.compose(f.inverse()) == GroupHom.identity(cyclic(5))
    with pytest.raises(ValueError):
        GroupHom(cyclic(4), cyclic(4), [[2]]).inverse()


def test_graph_round_trip(rng):
    for _ in range(100):
        G = rng.choice(SMALL)
        f = random_hom(rng, G, G)
        if f is None:
            continue
        got = is_graph_of_isomorphism(graph_of(f))
        assert (got == f) if f.is_isomorphism() else got is None


def test_graph_recognition_free():
    phi = GroupHom(free(2), free(2), [[1, 1], [0, 1]])
    assert is_graph_of_isomorphism(graph_of(phi)) == phi
    # span of (1, 0) in Z x Z is not a graph over all of Z
    assert is_graph_of_isomorphism(SubgroupInProduct((free(1), free(1)), ((2, 0),))) is None
    assert is_graph_of_isomorphism(SubgroupInProduct((free(1), free(1)), ((1, 2),))) is None
    assert is_graph_of_isomorphism(SubgroupInProduct((free(1), free(1)), ((1, 0), (0, 1)))) is None
    neg = is_graph_of_isomorphism(SubgroupInProduct((cyclic(3), cyclic(3)), ((1, 2),)))
    assert neg.matrix.tolist() == [[2]]


def test_graph_recognition_rejects_mixed_ambient():
    with pytest.raises(ValueError):
        is_graph_of_isomorphism(SubgroupInProduct((free(1), cyclic(2)), ((1, 1),)))


def test_subgroup_in_product_elements():
    H = SubgroupInProduct((cyclic(2), cyclic(4)), ((1, 1),))
    assert H.elements() == {(0, 0), (1, 1), (0, 2), (1, 3)}
    assert H.order() == 4
    with pytest.raises(ValueError):
        SubgroupInProduct((free(1), cyclic(2)), ((1, 1),)).elements()


def test_subgroup_contains_relations():
    S = Subgroup.generated_by((4,), [(2,)])
    assert (0,) in S and (6,) in S and (1,) not in S
    assert S.order() == 2 and not S.is_whole() and not S.is_trivial()
