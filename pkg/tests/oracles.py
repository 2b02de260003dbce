"""Naive reference computations.

Nothing here imports the search or validation code of the package; the
oracles read raw tables and enumerate everything without pruning.
"""

from itertools import permutations, product

import numpy as np


def is_inverse_semigroup(table, star):
    n = len(table)
    r = range(n)
    for a, b, c in product(r, r, r):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            return False
    if star is None:
        return True
    for s in r:
        inverses = [x for x in r if table[table[s][x]][s] == s and table[table[x][s]][x] == x]
        if inverses != [star[s]]:
            return False
    return True


def idempotents(table):
    return [e for e in range(len(table)) if table[e][e] == e]


def characters(table):
    """Every nonzero multiplicative {0,1}-map on the idempotents, as bit tuples."""
    E = idempotents(table)
    out = []
    for bits in product((0, 1), repeat=len(E)):
        if not any(bits):
            continue
        val = dict(zip(E, bits))
        if all(val[table[e][f]] == val[e] * val[f] for e in E for f in E):
            out.append(bits)
    return sorted(out)


def universal_germ_counts(table, star):
    """(units, arrows) of the groupoid of germs by direct classification.

    A germ is a pair (s, chi) with chi(s*s) = 1; (s, chi) and (t, chi) agree
    when s e = t e for some idempotent e with chi(e) = 1.
    """
    E = idempotents(table)
    chars = characters(table)
    arrows = 0
    units = set()
    for bits in chars:
        chi = dict(zip(E, bits))
        members = [s for s in range(len(table)) if chi[table[star[s]][s]] == 1]
        if members:
            units.add(bits)
        classes = []
        for s in members:
            for cls in classes:
                t = cls[0]
                if any(chi[e] == 1 and table[s][e] == table[t][e] for e in E):
                    cls.append(s)
                    break
            else:
                classes.append([s])
        arrows += len(classes)
    return len(units), arrows


def _perm_array(n):
    return np.array(list(permutations(range(n))), dtype=np.int64)


def isotopisms(table_a, table_b, dec_a=None, dec_b=None, key=None):
    """All (alpha, beta, gamma) with alpha(x) beta(y) = gamma(xy), no pruning.

    Up to 4 elements every triple of permutations is tested.  Beyond that all
    (alpha, beta) pairs are tested with numpy and gamma is read off the
    equation (for tables whose products cover every element gamma is then
    the only candidate).
    """
    n = len(table_a)
    if n != len(table_b):
        return []
    A = np.array(table_a)
    B = np.array(table_b)
    out = []

    def decorated_ok(a, b, g):
        if dec_a is None and dec_b is None:
            return True
        if dec_a is None or dec_b is None:
            return False
        return all({p[x] for x in dec_a} == set(dec_b) for p in (a, b, g))

    def key_ok(a, b, g):
        return key is None or all(key[a[s]] == key[b[s]] == key[g[s]] for s in range(n))

    if n <= 4:
        perms = list(permutations(range(n)))
        for a, b, g in product(perms, perms, perms):
            if all(B[a[x]][b[y]] == g[A[x][y]] for x in range(n) for y in range(n)):
                if decorated_ok(a, b, g) and key_ok(a, b, g):
                    out.append((a, b, g))
        return sorted(out)

    assert len(set(A.flatten())) == n, "product-closure shortcut needs a surjective table"
    P = _perm_array(n)
    xs, ys = np.meshgrid(range(n), range(n), indexing="ij")
    flat_z = A[xs, ys].flatten()
    reps = np.array([np.argmax(flat_z == z) for z in range(n)])
    for a in P:
        V = B[a[xs][None], P[:, ys]].reshape(len(P), n * n)  # V[b, (x, y)] = B[a(x), b(y)]
        G = V[:, reps]  # gamma candidates
        ok = np.all(V == G[:, flat_z], axis=1)
        ok &= np.all(np.sort(G, axis=1) == np.arange(n), axis=1)
        for i in np.nonzero(ok)[0]:
            b, g = tuple(int(x) for x in P[i]), tuple(int(x) for x in G[i])
            a_t = tuple(int(x) for x in a)
            if decorated_ok(a_t, b, g) and key_ok(a_t, b, g):
                out.append((a_t, b, g))
    return sorted(out)


def groupoid_isos(G, sigma, H, tau):
    """Every unit bijection combined with every bijection of each hom-set onto
    its image hom-set, checked against composition and the twist.

    ``G``/``H`` are FiniteGroupoid records (plain data); ``sigma``/``tau`` are
    dicts of angles (Fractions) on composable pairs or None.
    """
    k, n = len(G.units), len(G.src)
    if k != len(H.units) or n != len(H.src):
        return []

    def hom(X, u, v):
        return [g for g in range(len(X.src)) if X.src[g] == u and X.rng[g] == v]

    out = []
    pairs = [(u, v) for u in range(k) for v in range(k)]
    for pi in permutations(range(k)):
        blocks = []
        feasible = True
        for u, v in pairs:
            dom, cod = hom(G, u, v), hom(H, pi[u], pi[v])
            if len(dom) != len(cod):
                feasible = False
                break
            blocks.append((dom, [list(p) for p in permutations(cod)]))
        if not feasible:
            continue
        for choice in product(*(imgs for _, imgs in blocks)):
            f = [0] * n
            for (dom, _), img in zip(blocks, choice):
                for g, a in zip(dom, img):
                    f[g] = a
            if _is_twisted_iso(G, sigma, H, tau, f):
                out.append((tuple(f), tuple(pi)))
    return sorted(out)


def _is_twisted_iso(G, sigma, H, tau, f):
    n = len(G.src)
    for g in range(n):
        for h in range(n):
            gh = G.comp[g][h]
            img = H.comp[f[g]][f[h]]
            if (gh < 0) != (img < 0):
                return False
            if gh < 0:
                continue
            if img != f[gh]:
                return False
            s = 0 if sigma is None else sigma[(g, h)]
            t = 0 if tau is None else tau[(f[g], f[h])]
            if (s - t) % 1 != 0:
                return False
    return True


def twisted_algebra_tables(G, sigma):
    """Structure constants of the convolution algebra straight from the
    convolution formula applied to indicator functions (angles mod 1)."""
    n = len(G.src)
    mult = {}
    # (d_a * d_b)(x) = sum over x = p q of d_a(p) d_b(q) sigma(p, q): only p = a, q = b survives
    for a in range(n):
        for b in range(n):
            x = G.comp[a][b]
            if x >= 0:
                mult[(a, b)] = (x, sigma[(a, b)] % 1)
    star = {}
    for b in range(n):
        # d_b*(x) = conj(sigma(x, x^-1)) conj(d_b(x^-1)), nonzero at x = b^-1
        x = G.inv[b]
        star[b] = (x, (-sigma[(x, G.inv[x])]) % 1)
    return mult, star


def represented_germ_counts(table, images):
    """(units, arrows) for germs [s, x] of a representation given as dicts.

    (s, x) needs x in dom(s); (s, x) and (t, x) agree when s e = t e for an
    idempotent e whose domain contains x.
    """
    E = idempotents(table)
    n = len(table)
    units, arrows = set(), 0
    points = sorted({x for img in images for x in img})
    for x in points:
        members = [s for s in range(n) if x in images[s]]
        if members:
            units.add(x)
        classes = []
        for s in members:
            for cls in classes:
                t = cls[0]
                if any(x in images[e] and table[s][e] == table[t][e] for e in E):
                    cls.append(s)
                    break
            else:
                classes.append([s])
        arrows += len(classes)
    return len(units), arrows
