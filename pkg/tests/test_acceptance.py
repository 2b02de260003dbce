"""The twelve acceptance criteria, one test each.

Each test records a PASS/FAIL line (with wall time) that is printed in the
terminal summary, so ``pytest tests/test_acceptance.py`` ends with a
twelve-line scoreboard.  Running this file directly does the same.
"""

import functools
import random
import time
from fractions import Fraction

import oracles
from conftest import DECORATED, GROUPS, INVERSE_CORPUS, SEMILATTICES, TWISTED
from chiralgroupoid.algebra import build_algebra, mirror_algebra, pullback_map
from chiralgroupoid.chirality import (
    DecoratedSemigroup,
    GroupoidIso,
    Isotopism,
    RepresentedSemigroup,
    WeightFunction,
    chirality_index,
    conjugate_componentwise,
    enumerate_represented_isotopisms,
    inversion_iso,
    mirror_represented,
    mirror_set_groupoid,
    mirror_set_represented,
    mirror_set_semigroup,
    self_oppositeness_verdict,
    verify_transport,
)
from chiralgroupoid.corpus import builtin
from chiralgroupoid.groupoid import (
    build_germ_groupoid,
    build_universal_groupoid,
    canonical_universal_mirror,
    enumerate_characters,
    germ_mirror_square,
    germ_to_universal,
    opposite_groupoid,
    relabel_groupoid,
)
from chiralgroupoid.semigroup import Representation, relabel_semigroup, validate_inverse_semigroup, wagner_preston
from chiralgroupoid.twists import (
    induce_cocycle,
    mirror_cocycle,
    transport_cocycle,
    trivial_twist,
    validate_cocycle,
    validate_twist_data,
    verify_universal_bridge,
)

RESULTS: dict[int, str] = {}


def criterion(number, title, limit=None):
    def wrap(fn):
        @functools.wraps(fn)
        def run():
            t0 = time.perf_counter()
            try:
                fn()
                elapsed = time.perf_counter() - t0
                if limit is not None:
                    assert elapsed < limit, f"took {elapsed:.2f} s, limit {limit} s"
            except BaseException as exc:
                RESULTS[number] = f"criterion {number:2d} FAIL  {title} ({time.perf_counter() - t0:.2f} s): {exc}"
                print(RESULTS[number])
                raise
            RESULTS[number] = f"criterion {number:2d} PASS  {title} ({elapsed:.2f} s)"
            print(RESULTS[number])

        return run

    return wrap


# -- corpus instances ---------------------------------------------------------


def decorated_instances():
    for name in INVERSE_CORPUS + sorted(DECORATED):
        yield name, DecoratedSemigroup(builtin(name), DECORATED.get(name))


def represented_instances():
    for name in INVERSE_CORPUS:
        S = builtin(name)
        yield name, RepresentedSemigroup(S, wagner_preston(S))


def groupoid_instances():
    """(key, groupoid, cocycle) for both models, untwisted and twisted."""
    jobs = [(name, name, None) for name in INVERSE_CORPUS]
    jobs += [(key, name, make) for key, (name, make) in sorted(TWISTED.items())]
    for key, name, make in jobs:
        S = builtin(name)
        omega = trivial_twist(S) if make is None else make()
        for kind, gg in (("universal", build_universal_groupoid(S)), ("germ", build_germ_groupoid(S, wagner_preston(S)))):
            yield f"{key}/{kind}", gg, induce_cocycle(gg, omega)


def angles(sigma):
    return {k: v.angle for k, v in sigma.values.items()}


# -- 1 ------------------------------------------------------------------------


def mutated_rejects(count, seed=2024):
    rnd = random.Random(seed)
    out = []
    pool = ["trivial", "Z2", "Z3", "Z4", "chain2", "chain3", "I1", "I2"]
    while len(out) < count:
        S = builtin(rnd.choice(pool))
        if S.n == 1:
            continue
        table = [list(r) for r in S.table]
        i, j = rnd.randrange(S.n), rnd.randrange(S.n)
        table[i][j] = rnd.choice([v for v in range(S.n) if v != table[i][j]])
        if not oracles.is_inverse_semigroup(table, S.star):
            out.append((table, S.star))
    return out


@criterion(1, "axiom suite matches naive oracle", limit=5)
def test_criterion_01_axiom_suite():
    cases = [(builtin(n).table, builtin(n).star, True) for n in ["trivial", "Z2", "Z3", "Z4", "chain2", "chain3", "I1", "I2"]]
    cases += [(t, s, False) for t, s in mutated_rejects(5)]
    for table, star, expected in cases:
        assert oracles.is_inverse_semigroup(table, star) is expected
        assert validate_inverse_semigroup(table, star).valid is expected, table


# -- 2 ------------------------------------------------------------------------


@criterion(2, "characters equal brute force over {0,1} maps", limit=1)
def test_criterion_02_characters():
    for name in SEMILATTICES + INVERSE_CORPUS:
        S = builtin(name)
        space = enumerate_characters(S)
        assert len(space.idempotents) <= 6
        assert sorted(space.characters) == oracles.characters(S.table), name


# -- 3 ------------------------------------------------------------------------


@criterion(3, "universal groupoid sanity", limit=10)
def test_criterion_03_universal_groupoid():
    for name in GROUPS:
        S = builtin(name)
        gu = build_universal_groupoid(S)
        G = gu.groupoid
        assert (G.n_units, G.n_arrows) == (1, S.n)
        assert sorted(gu.word(g) for g in G.arrows()) == list(S.elements)
        for g in G.arrows():
            for h in G.arrows():
                assert gu.word(G.comp[g][h]) == S.table[gu.word(g)][gu.word(h)]
    for name in ["I1", "I2"]:
        S = builtin(name)
        G = build_universal_groupoid(S).groupoid
        assert (G.n_units, G.n_arrows) == oracles.universal_germ_counts(S.table, S.star), name


# -- 4 ------------------------------------------------------------------------


@criterion(4, "canonical identification of the universal mirror")
def test_criterion_04_canonical_mirror():
    for name in INVERSE_CORPUS:
        ident = canonical_universal_mirror(builtin(name))
        assert ident.ok, (name, ident.counterexample)
        assert ident.report.checked["composable_pairs"] == len(list(ident.source.groupoid.composable_pairs()))


# -- 5 ------------------------------------------------------------------------


@criterion(5, "induced cocycles are normalized 2-cocycles")
def test_criterion_05_cocycles():
    jobs = [(n, trivial_twist(builtin(n))) for n in INVERSE_CORPUS]
    jobs += [(key, make()) for key, (_, make) in sorted(TWISTED.items())]
    assert any(not make().is_trivial for name, make in TWISTED.values() if name in GROUPS)
    for key, omega in jobs:
        S = omega.semigroup
        assert validate_twist_data(S, omega).valid, key
        for gg in (build_universal_groupoid(S), build_germ_groupoid(S, wagner_preston(S))):
            G = gg.groupoid
            sigma = induce_cocycle(gg, omega)
            assert validate_cocycle(G, sigma).valid, key
            # direct recheck
            val = angles(sigma)
            for (g, h), a in val.items():
                if G.is_unit(g) or G.is_unit(h):
                    assert a == 0, (key, g, h)
                # value does not depend on the chosen representatives
                assert {omega(s, t).angle for s, _ in gg.reps[g] for t, _ in gg.reps[h]} == {a}, (key, g, h)
            for (g, h) in val:
                gh = G.comp[g][h]
                for k in G.arrows():
                    if G.comp[h][k] < 0:
                        continue
                    lhs = val[(g, h)] + val[(gh, k)]
                    rhs = val[(h, k)] + val[(g, G.comp[h][k])]
                    assert (lhs - rhs).denominator == 1, (key, g, h, k)


# -- 6 ------------------------------------------------------------------------


@criterion(6, "bridge check corpus-wide")
def test_criterion_06_bridge():
    jobs = [(n, trivial_twist(builtin(n))) for n in INVERSE_CORPUS]
    jobs += [(key, make()) for key, (_, make) in sorted(TWISTED.items())]
    for key, omega in jobs:
        br = verify_universal_bridge(omega.semigroup, omega)
        if not br.ok:
            print("bridge failure", key, br.to_json())
        assert br.ok, (key, br.to_json())
        assert br.pairs_checked > 0


# -- 7 ------------------------------------------------------------------------


def all_mirror_sets():
    for name, A in decorated_instances():
        yield f"{name}/semigroup", mirror_set_semigroup(A).mir_set
    for name, A in represented_instances():
        yield f"{name}/represented", mirror_set_represented(A).mir_set
    for key, gg, sigma in groupoid_instances():
        yield key, mirror_set_groupoid(gg.groupoid, sigma).mir_set


@criterion(7, "index vanishes exactly when Mir is empty")
def test_criterion_07_vanishing():
    rnd = random.Random(7)
    seen_empty = seen_full = False
    for key, mir in all_mirror_sets():
        for _ in range(20):
            w = WeightFunction({m.serialize(): Fraction(rnd.randint(1, 10**6), rnd.randint(1, 10**6)) for m in mir})
            idx = chirality_index(mir, w)
            assert idx >= 0
            assert (idx == 0) == (len(mir) == 0), key
        seen_empty |= not mir
        seen_full |= bool(mir)
    assert seen_empty and seen_full


# -- 8 ------------------------------------------------------------------------


@criterion(8, "Mir transports along relabelings", limit=60)
def test_criterion_08_transport():
    rnd = random.Random(8)
    for name, A in decorated_instances():
        mir_a = mirror_set_semigroup(A).mir_set
        for _ in range(10):
            perm = list(range(A.n))
            rnd.shuffle(perm)
            dec = None if A.decoration is None else {perm[x] for x in A.decoration}
            B = DecoratedSemigroup(relabel_semigroup(A.semigroup, perm), dec)
            h = Isotopism(tuple(perm), tuple(perm), tuple(perm))
            mir_b = mirror_set_semigroup(B).mir_set
            rep = verify_transport(h, mir_a, mir_b)
            assert rep.ok and len(mir_a) == len(mir_b), (name, rep.counterexample)
    for name, A in represented_instances():
        mir_a = mirror_set_represented(A).mir_set
        S, rho = A.semigroup, A.rep
        for _ in range(10):
            perm = list(range(S.n))
            rnd.shuffle(perm)
            images = [None] * S.n
            for s in S.elements:
                images[perm[s]] = rho.images[s]
            T = relabel_semigroup(S, perm)
            B = RepresentedSemigroup(T, Representation(T, rho.carrier, tuple(images)))
            h = Isotopism(tuple(perm), tuple(perm), tuple(perm))
            rep = verify_transport(h, mir_a, mirror_set_represented(B).mir_set, conjugate_componentwise)
            assert rep.ok, (name, rep.counterexample)
    for key, gg, sigma in groupoid_instances():
        G = gg.groupoid
        mir_g = mirror_set_groupoid(G, sigma).mir_set
        for _ in range(10):
            up, ap = list(range(G.n_units)), list(range(G.n_arrows))
            rnd.shuffle(up)
            rnd.shuffle(ap)
            H = relabel_groupoid(G, up, ap)
            mir_h = mirror_set_groupoid(H, transport_cocycle(sigma, H, ap)).mir_set
            rep = verify_transport(GroupoidIso(tuple(ap), tuple(up)), mir_g, mir_h, conjugate_componentwise)
            assert rep.ok, (key, rep.counterexample)


# -- 9 ------------------------------------------------------------------------


def triples(isos):
    return [(h.alpha, h.beta, h.gamma) for h in isos]


@criterion(9, "pruned searches equal full enumeration")
def test_criterion_09_completeness():
    checked = 0
    for name, A in decorated_instances():
        S = A.semigroup
        if S.n > 6:
            continue
        mirror_table = [[S.table[y][x] for y in S.elements] for x in S.elements]
        expected = oracles.isotopisms(S.table, mirror_table, A.decoration, A.decoration)
        assert triples(mirror_set_semigroup(A).mir_set) == expected, name
        checked += 1
    for name, A in represented_instances():
        S = A.semigroup
        if S.n > 6:
            continue
        B = mirror_represented(A)
        keys = [B.rep.images.index(f) for f in B.rep.images]
        assert triples(enumerate_represented_isotopisms(A, B)) == oracles.isotopisms(S.table, S.table, key=keys), name
        checked += 1
    for key, gg, sigma in groupoid_instances():
        G = gg.groupoid
        if G.n_arrows > 24:
            continue
        found = [(p.arrow_map, p.unit_map) for p in mirror_set_groupoid(G, sigma).mir_set]
        expected = oracles.groupoid_isos(G, angles(sigma), opposite_groupoid(G), angles(mirror_cocycle(sigma)))
        assert found == expected, key
        checked += 1
    assert checked >= 50


# -- 10 -----------------------------------------------------------------------


@criterion(10, "every mirror witness pulls back to an algebra map")
def test_criterion_10_pullback():
    total = 0
    for key, gg, sigma in groupoid_instances():
        G = gg.groupoid
        A, B = build_algebra(G, sigma), mirror_algebra(G, sigma)
        for phi in mirror_set_groupoid(G, sigma).mir_set:
            res = pullback_map(phi, A, B)
            assert res.ok, (key, phi, res.report.violations[:1])
            total += 1
    assert total > 0


# -- 11 -----------------------------------------------------------------------


@criterion(11, "chirality regression")
def test_criterion_11_regression():
    L2 = DecoratedSemigroup(builtin("L2"), DECORATED["L2"])
    rep = mirror_set_semigroup(L2)
    assert rep.is_chiral and rep.index == 0
    for name in INVERSE_CORPUS:
        S = builtin(name)
        for gg in (build_universal_groupoid(S), build_germ_groupoid(S, wagner_preston(S))):
            v = self_oppositeness_verdict(gg.groupoid)
            assert not v.chiral and v.witness_source == "inversion", name
            assert v.witness == inversion_iso(gg.groupoid)


# -- 12 -----------------------------------------------------------------------


@criterion(12, "germ model compatibility", limit=10)
def test_criterion_12_germ_compatibility():
    for name in INVERSE_CORPUS:
        S = builtin(name)
        rho = wagner_preston(S)
        ident = germ_to_universal(S, rho)
        assert ident.ok, (name, ident.counterexample)
        sq = germ_mirror_square(S, rho)
        assert sq.ok, (name, sq.report.violations[:1])


if __name__ == "__main__":
    for fn in [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]:
        try:
            fn()
        except BaseException:
            pass
