"""Slow, independent reference computations used to freeze expected values.

Nothing here reuses the package's batched matrix code: matrices are nested
tuples and arithmetic goes element by element through the ring methods.
"""

import itertools


def poly_mul_mod(a, b, modulus, p):
    """Multiply coefficient lists a, b (lowest first) modulo a monic modulus."""
    out = [0] * (len(a) + len(b))
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    d = len(modulus) - 1
    for k in range(len(out) - 1, d - 1, -1):
        c = out[k]
        if c:
            for i in range(d + 1):
                out[k - d + i] = (out[k - d + i] - c * modulus[i]) % p
    return out[:d]


def mat_mul(R, A, B):
    n, m, k = len(A), len(B), len(B[0])
    return tuple(tuple(R.sum(R.mul(A[i][l], B[l][j]) for l in range(m)) for j in range(k))
                 for i in range(n))


def mat_act(GR, g, A):
    return tuple(tuple(GR.act(g, x) for x in row) for row in A)


def mat_identity(R, n):
    return tuple(tuple(R.one if i == j else R.zero for j in range(n)) for i in range(n))


def all_mats(R, n):
    for entries in itertools.product(range(R.size), repeat=n * n):
        yield tuple(tuple(entries[i * n:(i + 1) * n]) for i in range(n))


def gl(R, n):
    """Invertible matrices, found by searching for a two-sided inverse."""
    mats = list(all_mats(R, n))
    I = mat_identity(R, n)
    out = []
    for A in mats:
        if any(mat_mul(R, A, B) == I and mat_mul(R, B, A) == I for B in mats):
            out.append(A)
    return out


def cocycles(GR, H, n):
    """All maps H -> GL_n(R) satisfying A_e = I and A_gh = A_g A_h^g, by full search."""
    G, R = GR.group, GR.ring
    H = sorted(H)
    GL = gl(R, n)
    I = mat_identity(R, n)
    out = []
    for vals in itertools.product(GL, repeat=len(H)):
        A = dict(zip(H, vals))
        if A[G.identity] != I:
            continue
        if all(A[G.mul(g, h)] == mat_mul(R, A[g], mat_act(GR, g, A[h])) for g in H for h in H):
            out.append(tuple(A[h] for h in H))
    return out


def cocycle_classes(GR, H, n):
    """Orbits under A_h -> B A_h (B^h)^-1 for every invertible B."""
    R = GR.ring
    H = sorted(H)
    GL = gl(R, n)
    I = mat_identity(R, n)
    inv = {A: next(B for B in GL if mat_mul(R, A, B) == I) for A in GL}
    todo = set(cocycles(GR, H, n))
    classes = []
    while todo:
        A = min(todo)
        orbit = set()
        for B in GL:
            orbit.add(tuple(mat_mul(R, mat_mul(R, B, A[i]), inv[mat_act(GR, h, B)])
                            for i, h in enumerate(H)))
        classes.append(sorted(orbit))
        todo -= orbit
    return classes


def hom_conjugacy_classes(G, H, R, n):
    """Homomorphisms H -> GL_n(R) up to conjugation, ignoring any action."""
    H = sorted(H)
    GL = gl(R, n)
    I = mat_identity(R, n)
    homs = [tuple(v) for v in itertools.product(GL, repeat=len(H))
            if dict(zip(H, v))[G.identity] == I
            and all(dict(zip(H, v))[G.mul(a, b)] == mat_mul(R, dict(zip(H, v))[a], dict(zip(H, v))[b])
                    for a in H for b in H)]
    inv = {A: next(B for B in GL if mat_mul(R, A, B) == I) for A in GL}
    todo, count = set(homs), 0
    while todo:
        A = min(todo)
        todo -= {tuple(mat_mul(R, mat_mul(R, B, a), inv[B]) for a in A) for B in GL}
        count += 1
    return count


# crossed homomorphisms for an abstract action

def crossed_classes(action, H):
    """(number of crossed homs H -> Pi, number of classes), by search over all maps."""
    G, Pi = action.G, action.Pi
    H = sorted(H)
    homs = []
    for vals in itertools.product(range(Pi.order), repeat=len(H)):
        f = dict(zip(H, vals))
        if all(f[G.mul(g, h)] == Pi.mul(f[g], action.act(g, f[h])) for g in H for h in H):
            homs.append(tuple(f[h] for h in H))
    todo, count = set(homs), 0
    while todo:
        f = min(todo)
        todo -= {tuple(Pi.mul(Pi.mul(s, v), Pi.inv(action.act(h, s))) for v, h in zip(f, H))
                 for s in range(Pi.order)}
        count += 1
    return len(homs), count


# Galois extensions

def gamma_image(ext):
    """The image of gamma on all pure tensors a (x) b, closed under addition."""
    S, G = ext.ring, ext.group
    image = {tuple(S.mul(ext.total.act(g, a), b) for g in G) for a in S for b in S}
    while True:
        new = {tuple(S.add(x, y) for x, y in zip(u, v)) for u in image for v in image} | image
        if new == image:
            return image
        image = new


# S^{-1}S over a field, where isomorphism classes are ranks

def rank_pair_components(N):
    """Components of pairs (m, n), m, n <= N, under (m, n) -> (r + m, r + n)."""
    parent = {(m, n): (m, n) for m in range(N + 1) for n in range(N + 1)}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for m, n in list(parent):
        for r in range(N + 1):
            if r + m <= N and r + n <= N:
                parent[find((m, n))] = find((r + m, r + n))
    return len({find(x) for x in parent})


def gl_order(q, n):
    """|GL_n(F_q)| = prod (q^n - q^i)."""
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out
