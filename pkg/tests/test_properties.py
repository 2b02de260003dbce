"""Invariants on random inverse subsemigroups of the symmetric inverse monoid on 3 points."""

from fractions import Fraction

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

import oracles
from chiralgroupoid.algebra import build_algebra, mirror_algebra, pullback_map
from chiralgroupoid.chirality import (
    DecoratedSemigroup,
    GroupoidIso,
    Isotopism,
    WeightFunction,
    chirality_index,
    conjugate_componentwise,
    inversion_iso,
    mirror_set_groupoid,
    mirror_set_semigroup,
    verify_transport,
)
from chiralgroupoid.corpus import inverse_semigroup_of_maps
from chiralgroupoid.groupoid import (
    build_germ_groupoid,
    build_universal_groupoid,
    canonical_universal_mirror,
    enumerate_characters,
    germ_mirror_square,
    germ_to_universal,
    opposite_groupoid,
    relabel_groupoid,
    validate_groupoid,
)
from chiralgroupoid.semigroup import PartialBijection, compose_partial, invert_partial, validate_semigroup, wagner_preston
from chiralgroupoid.twists import mirror_cocycle, trivial_cocycle, trivial_twist, verify_universal_bridge

SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])


@st.composite
def partial_bijections(draw, n=3):
    dom = draw(st.sets(st.integers(0, n - 1)))
    img = draw(st.permutations(range(n)))
    m = [None] * n
    for x, y in zip(sorted(dom), img):
        m[x] = y
    return PartialBijection(n, tuple(m))


def close(gens):
    maps = set(gens) | {invert_partial(f) for f in gens}
    while True:
        new = {compose_partial(f, g) for f in maps for g in maps} | {invert_partial(f) for f in maps}
        if new <= maps:
            return sorted(maps, key=lambda f: (len(f.domain), tuple(-1 if y is None else y for y in f.map)))
        maps |= new


@st.composite
def inverse_semigroups(draw, max_size=10):
    gens = draw(st.lists(partial_bijections(), min_size=1, max_size=2))
    maps = close(gens)
    assume(len(maps) <= max_size)
    return inverse_semigroup_of_maps(maps)


@SETTINGS
@given(inverse_semigroups())
def test_random_semigroups_validate(S):
    assert validate_semigroup(S).valid
    assert oracles.is_inverse_semigroup(S.table, S.star)
    assert sorted(enumerate_characters(S).characters) == oracles.characters(S.table)


@SETTINGS
@given(inverse_semigroups())
def test_random_universal_and_germ_groupoids(S):
    gu = build_universal_groupoid(S)
    assert (gu.groupoid.n_units, gu.groupoid.n_arrows) == oracles.universal_germ_counts(S.table, S.star)
    assert validate_groupoid(gu.groupoid).valid
    rho = wagner_preston(S)
    assert canonical_universal_mirror(S, gu=gu).ok
    assert germ_to_universal(S, rho, universal=gu).ok
    assert germ_mirror_square(S, rho).ok
    assert verify_universal_bridge(S, trivial_twist(S)).ok


@SETTINGS
@given(inverse_semigroups(max_size=7))
def test_star_triple_always_mirrors(S):
    star = Isotopism(S.star, S.star, S.star)
    rep = mirror_set_semigroup(DecoratedSemigroup(S))
    assert star in set(rep.mir_set)


@SETTINGS
@given(inverse_semigroups(max_size=6))
def test_semigroup_search_matches_oracle(S):
    A = DecoratedSemigroup(S)
    found = [(h.alpha, h.beta, h.gamma) for h in mirror_set_semigroup(A).mir_set]
    mirror_table = [[S.table[y][x] for y in S.elements] for x in S.elements]
    assert found == oracles.isotopisms(S.table, mirror_table)


@SETTINGS
@given(inverse_semigroups(), st.randoms(use_true_random=False))
def test_untwisted_groupoid_is_self_opposite(S, rnd):
    gg = build_germ_groupoid(S, wagner_preston(S))
    G = gg.groupoid
    rep = mirror_set_groupoid(G)
    assert inversion_iso(G) in set(rep.mir_set)
    # vanishing criterion under random positive weights
    w = WeightFunction({m.serialize(): Fraction(rnd.randint(1, 50), rnd.randint(1, 50)) for m in rep.mir_set})
    assert (chirality_index(rep.mir_set, w) == 0) == (not rep.mir_set)
    sigma = trivial_cocycle(G)
    A, B = build_algebra(G, sigma), mirror_algebra(G, sigma)
    assert pullback_map(rep.mir_set[0], A, B).ok


@SETTINGS
@given(inverse_semigroups(max_size=8), st.randoms(use_true_random=False))
def test_groupoid_transport_under_relabeling(S, rnd):
    G = build_universal_groupoid(S).groupoid
    up, ap = list(range(G.n_units)), list(range(G.n_arrows))
    rnd.shuffle(up)
    rnd.shuffle(ap)
    H = relabel_groupoid(G, up, ap)
    mir_g, mir_h = mirror_set_groupoid(G).mir_set, mirror_set_groupoid(H).mir_set
    assert len(mir_g) == len(mir_h)
    assert verify_transport(GroupoidIso(tuple(ap), tuple(up)), mir_g, mir_h, conjugate_componentwise).ok


@SETTINGS
@given(inverse_semigroups(max_size=8))
def test_groupoid_search_matches_oracle(S):
    G = build_universal_groupoid(S).groupoid
    s = trivial_cocycle(G)
    found = [(p.arrow_map, p.unit_map) for p in mirror_set_groupoid(G, s).mir_set]
    sm = mirror_cocycle(s)
    expected = oracles.groupoid_isos(G, {k: v.angle for k, v in s.values.items()}, opposite_groupoid(G),
                                     {k: v.angle for k, v in sm.values.items()})
    assert found == expected
