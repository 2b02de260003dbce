"""Small named semigroups used as the regression corpus and by ``builtin:`` CLI inputs."""

from __future__ import annotations

from itertools import combinations, permutations

from .semigroup import FiniteInverseSemigroup, PartialBijection, compose_partial, invert_partial


def trivial_group() -> FiniteInverseSemigroup:
    return FiniteInverseSemigroup(((0,),), (0,), ("e",))


def cyclic_group(n: int) -> FiniteInverseSemigroup:
    table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    star = tuple((-i) % n for i in range(n))
    labels = tuple("e" if i == 0 else f"a{i}" if i > 1 else "a" for i in range(n))
    return FiniteInverseSemigroup(table, star, labels)


def symmetric_group(n: int) -> FiniteInverseSemigroup:
    perms = sorted(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    # (p q)(x) = p(q(x))
    table = tuple(tuple(index[tuple(p[q[x]] for x in range(n))] for q in perms) for p in perms)
    star = []
    for p in perms:
        inv = [0] * n
        for x, y in enumerate(p):
            inv[y] = x
        star.append(index[tuple(inv)])
    labels = tuple("".join(map(str, p)) for p in perms)
    return FiniteInverseSemigroup(table, tuple(star), labels)


def chain_semilattice(k: int) -> FiniteInverseSemigroup:
    """``0 < 1 < ... < k-1`` under meet."""
    table = tuple(tuple(min(i, j) for j in range(k)) for i in range(k))
    return FiniteInverseSemigroup(table, tuple(range(k)), tuple(f"c{i}" for i in range(k)))


def v_semilattice() -> FiniteInverseSemigroup:
    """Two incomparable atoms ``e``, ``f`` over the bottom ``ef``."""
    # 0 = ef, 1 = e, 2 = f
    table = ((0, 0, 0), (0, 1, 0), (0, 0, 2))
    return FiniteInverseSemigroup(table, (0, 1, 2), ("ef", "e", "f"))


def _partial_bijections(n: int) -> list[PartialBijection]:
    maps = []
    for k in range(n + 1):
        for dom in combinations(range(n), k):
            for img in permutations(range(n), k):
                m = [None] * n
                for x, y in zip(dom, img):
                    m[x] = y
                maps.append(PartialBijection(n, tuple(m)))
    return maps


def inverse_semigroup_of_maps(maps: list[PartialBijection], labels=None) -> FiniteInverseSemigroup:
    """Cayley table of a composition-closed, inverse-closed list of partial bijections."""
    index = {f: i for i, f in enumerate(maps)}
    table = tuple(tuple(index[compose_partial(f, g)] for g in maps) for f in maps)
    star = tuple(index[invert_partial(f)] for f in maps)
    if labels is None:
        labels = tuple(_map_label(f) for f in maps)
    return FiniteInverseSemigroup(table, star, labels)


def _map_label(f: PartialBijection) -> str:
    d = f.as_dict()
    if not d:
        return "0"
    return "{" + ",".join(f"{x}>{y}" for x, y in sorted(d.items())) + "}"


def symmetric_inverse_monoid(n: int) -> FiniteInverseSemigroup:
    """All partial bijections of ``{0..n-1}`` under composition ``(s t)(x) = s(t(x))``."""
    return inverse_semigroup_of_maps(_partial_bijections(n))


def brandt_b2() -> FiniteInverseSemigroup:
    """Zero plus the 2x2 matrix units."""
    maps = [PartialBijection.from_dict(2, d) for d in ({}, {0: 0}, {1: 0}, {0: 1}, {1: 1})]
    return inverse_semigroup_of_maps(maps, ("0", "e11", "e12", "e21", "e22"))


def left_zero(n: int) -> FiniteInverseSemigroup:
    """Plain semigroup ``x y = x`` (no involution)."""
    table = tuple(tuple(i for _ in range(n)) for i in range(n))
    return FiniteInverseSemigroup(table, None, tuple(f"l{i}" for i in range(n)))


def adjoin_identity(S: FiniteInverseSemigroup, label: str = "1") -> FiniteInverseSemigroup:
    n = S.n
    table = [list(row) + [i] for i, row in enumerate(S.table)]
    table.append(list(range(n + 1)))
    star = None if S.star is None else tuple(S.star) + (n,)
    labels = tuple(S.label(i) for i in range(n)) + (label,)
    return FiniteInverseSemigroup(tuple(map(tuple, table)), star, labels)


BUILTINS = {
    "trivial": trivial_group,
    "Z2": lambda: cyclic_group(2),
    "Z3": lambda: cyclic_group(3),
    "Z4": lambda: cyclic_group(4),
    "S3": lambda: symmetric_group(3),
    "chain2": lambda: chain_semilattice(2),
    "chain3": lambda: chain_semilattice(3),
    "V3": v_semilattice,
    "I1": lambda: symmetric_inverse_monoid(1),
    "I2": lambda: symmetric_inverse_monoid(2),
    "B2": brandt_b2,
    "Z3+1": lambda: adjoin_identity(cyclic_group(3)),
    "L2": lambda: left_zero(2),
}

# decorations attached to builtin names (element indices)
BUILTIN_DECORATIONS = {
    "L2": (0, 1),
}


def builtin(name: str) -> FiniteInverseSemigroup:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise KeyError(f"unknown builtin {name!r}; choose from {', '.join(BUILTINS)}") from None
