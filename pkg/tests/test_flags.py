import random
from fractions import Fraction

import pytest

from smallmodel.complexes import homology
from smallmodel.flags import (
    CoordinateFlagSpec,
    FlagError,
    RationalFlag,
    complete_flag_count,
    coordinate_flag,
    f0_subflag,
    finite_building,
    forced_zero_count,
    gf_subspaces,
    induced_flags,
    orbit_codim,
    prefix_chains,
    random_disjoint_pair,
    random_flag,
    slm_inequality,
    split_dims,
    stab_dim,
    stab_pair_dim,
    subset_chains,
)


def test_flag_canonicalization_and_validation():
    f1 = RationalFlag.make(3, [[[2, 0, 0]]])
    f2 = RationalFlag.make(3, [[[1, 0, 0]]])
    assert f1 == f2
    with pytest.raises(FlagError):
        RationalFlag.make(3, [[[1, 0, 0], [0, 1, 0], [0, 0, 1]]])  # not proper
    with pytest.raises(FlagError):
        RationalFlag.make(3, [[[1, 0, 0]], [[0, 1, 0]]])  # not nested
    with pytest.raises(FlagError):
        RationalFlag.make(3, [[[0, 0, 0]]])


def test_json_round_trip_preserves_rationals():
    f = RationalFlag.make(3, [[[Fraction(1, 2), Fraction(1, 3), 0]]])
    g = RationalFlag.from_json(f.to_json())
    assert f == g


def coordinate_stab_dim_oracle(m, chain):
    """Combinatorial count: entry (i,j) survives unless some set separates
    j from i."""
    forbidden = 0
    for i in range(m):
        for j in range(m):
            if any(j in s and i not in s for s in chain):
                forbidden += 1
    return m * m - forbidden


def test_stab_dim_matches_zero_pattern_count():
    for m in (2, 3, 4):
        for chain in subset_chains(m):
            f = coordinate_flag(m, chain)
            assert stab_dim(f) == coordinate_stab_dim_oracle(m, chain), chain


def test_pair_dim_combinatorial_oracle():
    m = 4
    chains = subset_chains(m)
    rng = random.Random(1)
    for _ in range(25):
        ce, cf = rng.choice(chains), rng.choice(chains)
        e, f = coordinate_flag(m, ce), coordinate_flag(m, cf)
        assert stab_pair_dim(e, f) == coordinate_stab_dim_oracle(m, list(ce) + list(cf))


def test_forced_zero_examples():
    assert forced_zero_count(CoordinateFlagSpec(3, (1,), (2, 1, 0))) == 2
    assert forced_zero_count(CoordinateFlagSpec(3, (1, 2), (1, 2, 0))) == 2
    with pytest.raises(FlagError):
        forced_zero_count(CoordinateFlagSpec(3, (1,), (0, 2, 1)))  # fixes <e1>


def test_split_dims_cross_check():
    f = coordinate_flag(4, [{0}, {0, 1, 2}])
    sd = split_dims(f)
    assert sd.graded_dims == (1, 2, 1)
    assert sd.dim_n == 1 * 2 + 1 * 1 + 2 * 1
    assert sd.dim_levi == 1 + 4 + 1
    assert sd.dim_stab == stab_dim(f)


def test_split_dims_cross_check_random():
    rng = random.Random(5)
    for m in (3, 4):
        for _ in range(5):
            f = random_flag(m, sorted(rng.sample(range(1, m), rng.randint(1, m - 1))), rng)
            assert split_dims(f).dim_stab == stab_dim(f)


def test_orbit_codim_basic():
    e = coordinate_flag(2, [{0}])
    f = coordinate_flag(2, [{1}])
    assert orbit_codim(e, f) == 1


def test_induced_and_inert():
    m = 3
    e = coordinate_flag(m, [{0}])
    f = coordinate_flag(m, [{1}])
    pieces, lengths = induced_flags(e, f)
    # <e2> misses <e1> and cuts the 2-dimensional graded piece
    assert lengths == [0, 1]
    f0 = f0_subflag(e, f)
    assert f0.length == 0


def test_slm_report_consistency():
    e = coordinate_flag(4, [{0}, {0, 1}])
    f = coordinate_flag(4, [{3}])
    rep = slm_inequality(e, f)
    assert rep.codim_ok and rep.inequality_ok and rep.chain_ok
    assert rep.dim_gk == 4 * 5 // 2 - rep.codim
    assert rep.lhs == rep.dim_gk + (e.length - 1) + (f.length - 1)


def test_slm_rejects_shared_subspace():
    e = coordinate_flag(3, [{0}])
    with pytest.raises(FlagError):
        slm_inequality(e, e)


def test_chain_enumeration_counts():
    # chains of nonempty proper subsets of an m-set
    assert len(subset_chains(2)) == 2
    assert len(subset_chains(3)) == 12
    # prefix chains: one per nonempty subset of {1..m-1}
    assert len(prefix_chains(4)) == 7
    assert len(prefix_chains(5)) == 15


def test_random_pair_is_disjoint():
    rng = random.Random(11)
    for m in (3, 4):
        e, f = random_disjoint_pair(m, rng)
        assert e.disjoint_from(f)
        assert orbit_codim(e, f) >= f.length


def gaussian_binomial(m, d, q):
    num = den = 1
    for i in range(d):
        num *= q ** (m - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def test_gf_subspace_counts():
    for m, q in ((3, 2), (3, 3), (4, 2)):
        for d in range(1, m):
            assert len(gf_subspaces(m, q, d)) == gaussian_binomial(m, d, q)


def test_building_3_2():
    K = finite_building(3, 2)
    assert len(K.vertices) == 7 + 7
    assert len(K.facets) == complete_flag_count(3, 2) == 21
    h = homology(K, "Z", reduced=True)
    assert h.to_json() == [{"degree": 1, "rank": 8, "torsion": []}]


def test_building_size_guard():
    with pytest.raises(FlagError):
        finite_building(5, 2)
    with pytest.raises(FlagError):
        finite_building(3, 5)
