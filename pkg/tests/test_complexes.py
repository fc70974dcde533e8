import random

import pytest

from smallmodel.complexes import (
    ComplexError,
    SimplicialComplex,
    chain_complex,
    homology,
    tensor_total,
)


def circle(n=3):
    verts = list(range(n))
    edges = [[i, (i + 1) % n] for i in range(n)]
    return SimplicialComplex(verts, edges)


def sphere2():
    return SimplicialComplex(
        "abcd", [["a", "b", "c"], ["a", "b", "d"], ["a", "c", "d"], ["b", "c", "d"]]
    )


def projective_plane():
    facets = [
        (1, 2, 6), (2, 3, 6), (3, 4, 6), (4, 5, 6), (1, 5, 6),
        (1, 2, 4), (2, 4, 5), (2, 3, 5), (1, 3, 5), (1, 3, 4),
    ]
    return SimplicialComplex(range(1, 7), facets)


def test_downward_closure_and_f_vector():
    K = SimplicialComplex("abc", [["a", "b", "c"]])
    assert K.f_vector() == (3, 3, 1)
    assert K.has_simplex(K.simplex_indices("ab"))
    assert K.dim == 2


def test_empty_and_bad_inputs():
    with pytest.raises(ComplexError):
        SimplicialComplex("ab", [])
    with pytest.raises(ComplexError):
        SimplicialComplex("ab", [["a", "z"]])
    with pytest.raises(ComplexError):
        SimplicialComplex("aab", [["a", "b"]])


def test_circle_sphere_homology():
    assert homology(circle()).to_json() == [{"degree": 1, "rank": 1, "torsion": []}]
    assert homology(sphere2()).to_json() == [{"degree": 2, "rank": 1, "torsion": []}]


def test_projective_plane_torsion():
    h = homology(projective_plane())
    assert h.to_json() == [{"degree": 1, "rank": 0, "torsion": [2]}]
    # over F_2 the torsion becomes visible in two degrees
    h2 = homology(projective_plane(), ring=2)
    assert h2.rank(1) == 1 and h2.rank(2) == 1


def test_unreduced_vs_reduced():
    two_points = SimplicialComplex("ab", [["a"], ["b"]])
    assert homology(two_points, reduced=False).rank(0) == 2
    assert homology(two_points, reduced=True).rank(0) == 1


def test_flag_detection():
    filled = SimplicialComplex("abc", [["a", "b", "c"]])
    hollow = circle()
    assert filled.is_flag()
    assert not hollow.is_flag()


def test_link_star_neighborhood():
    K = sphere2()
    v = K.simplex_indices("a")
    link = K.link(v)
    assert homology(link).to_json() == [{"degree": 1, "rank": 1, "torsion": []}]
    star = K.delta_sigma(v)
    assert homology(star).is_trivial()  # a cone
    nb = K.neighborhood(v)  # every facet through a: a cone, misses only bcd
    assert homology(nb).is_trivial()
    with pytest.raises(ComplexError):
        K.link(K.simplex_indices("abc"))  # link of a facet is empty


def test_join_of_circles_is_three_sphere():
    J = circle().join(circle())
    assert homology(J).to_json() == [{"degree": 3, "rank": 1, "torsion": []}]


def test_relabel_preserves_homology():
    K = projective_plane()
    mapping = {v: f"x{v * 7 % 13}" for v in K.vertices}
    assert homology(K).same_groups(homology(K.relabel(mapping)))


def test_json_round_trip():
    K = sphere2()
    K2 = SimplicialComplex.from_json(K.to_json())
    assert homology(K).same_groups(homology(K2))
    assert K2.f_vector() == K.f_vector()


def test_euler_characteristic_agreement():
    rng = random.Random(7)
    for _ in range(10):
        n = rng.randint(3, 6)
        facets = set()
        for _ in range(rng.randint(2, 6)):
            size = rng.randint(1, min(4, n))
            facets.add(tuple(sorted(rng.sample(range(n), size))))
        K = SimplicialComplex(range(n), [list(f) for f in facets])
        chi_f = sum((-1) ** d * f for d, f in enumerate(K.f_vector()))
        h = homology(K, reduced=False)
        assert h.euler_characteristic() == chi_f


def test_tensor_total_matches_product_sphere():
    # S2 x S2 has ranks 1, 0, 2, 0, 1 in degrees 0..4 over F_2
    c = chain_complex(sphere2(), 2)
    prod = tensor_total(c, c)
    h = prod.homology()
    assert [h.rank(n) for n in range(5)] == [1, 0, 2, 0, 1]


def test_dd_zero_enforced():
    c = chain_complex(projective_plane(), "Z")
    c.check_dd_zero()
    # corrupt a boundary entry and expect the check to fire
    c.boundaries[2][0][0] += 1
    with pytest.raises(ComplexError):
        c.check_dd_zero()
