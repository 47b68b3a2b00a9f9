"""Finite rings given by tables, finite fields, and G-rings."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .groups import FiniteGroup, cyclic_group


class RingError(ValueError):
    pass


class ReducibleModulusError(RingError):
    def __init__(self, modulus, factor):
        self.modulus = modulus
        self.factor = factor
        super().__init__(
            f"modulus {poly_str(modulus)} is reducible: divisible by {poly_str(factor)}")


@dataclass(frozen=True)
class FieldInfo:
    p: int
    d: int
    modulus: tuple  # monic, coefficients lowest degree first, length d+1


class FiniteRing:
    """A finite ring with elements ``0 .. size-1`` and table arithmetic.

    Ring axioms are checked exhaustively on construction.
    """

    def __init__(self, add, mul, zero, one, name=None, labels=None, field=None,
                 check=True):
        self.add_table = np.array(add, dtype=np.int64)
        self.mul_table = np.array(mul, dtype=np.int64)
        self.size = len(self.add_table)
        self.zero = int(zero)
        self.one = int(one)
        self.name = name or f"R{self.size}"
        self.labels = list(labels) if labels is not None else [str(i) for i in range(self.size)]
        self.field = field
        if check:
            self._check_axioms()
        n = self.size
        neg = np.empty(n, dtype=np.int64)
        for a in range(n):
            neg[a] = int(np.nonzero(self.add_table[a] == self.zero)[0][0])
        self.neg_table = neg
        inv = np.full(n, -1, dtype=np.int64)
        for a in range(n):
            hits = np.nonzero(self.mul_table[a] == self.one)[0]
            for b in hits:
                if self.mul_table[b, a] == self.one:
                    inv[a] = b
                    break
        self.inv_table = inv
        self.is_commutative = bool((self.mul_table == self.mul_table.T).all())
        if field is not None and n > 1 and (inv[np.arange(n) != self.zero] < 0).any():
            raise RingError(f"{self.name} is flagged as a field but has non-invertible elements")

    def __repr__(self):
        return f"FiniteRing({self.name}, size={self.size})"

    def __len__(self):
        return self.size

    def __iter__(self):
        return iter(range(self.size))

    def _check_axioms(self):
        A, M, n = self.add_table, self.mul_table, self.size
        if A.shape != (n, n) or M.shape != (n, n):
            raise RingError("tables must be square of equal size")
        idx = np.arange(n)
        i, j = idx[:, None, None], idx[None, :, None]
        k = idx[None, None, :]
        if not (A[A[i, j], k] == A[i, A[j, k]]).all():
            raise RingError("addition is not associative")
        if not (A == A.T).all():
            raise RingError("addition is not commutative")
        if not ((A[self.zero] == idx).all()):
            raise RingError("zero is not an additive identity")
        if not all((A[a] == self.zero).any() for a in range(n)):
            raise RingError("missing additive inverses")
        if not (M[M[i, j], k] == M[i, M[j, k]]).all():
            raise RingError("multiplication is not associative")
        if not ((M[self.one] == idx).all() and (M[:, self.one] == idx).all()):
            raise RingError("one is not a multiplicative identity")
        if not (M[i, A[j, k]] == A[M[i, j], M[i, k]]).all():
            raise RingError("left distributivity fails")
        if not (M[A[i, j], k] == A[M[i, k], M[j, k]]).all():
            raise RingError("right distributivity fails")

    def add(self, a, b):
        return int(self.add_table[a, b])

    def mul(self, a, b):
        return int(self.mul_table[a, b])

    def neg(self, a):
        return int(self.neg_table[a])

    def sub(self, a, b):
        return int(self.add_table[a, self.neg_table[b]])

    def is_unit(self, a):
        return self.inv_table[a] >= 0

    def inverse(self, a):
        b = int(self.inv_table[a])
        if b < 0:
            raise ZeroDivisionError(f"{self.labels[a]} is not a unit in {self.name}")
        return b

    def units(self):
        return tuple(int(a) for a in np.nonzero(self.inv_table >= 0)[0])

    def sum(self, elems):
        out = self.zero
        for a in elems:
            out = int(self.add_table[out, a])
        return out

    def integer(self, k):
        """The image of the integer k."""
        out = self.zero
        step = self.one if k >= 0 else self.neg(self.one)
        for _ in range(abs(k)):
            out = self.add(out, step)
        return out

    def characteristic(self):
        k, x = 1, self.one
        while x != self.zero:
            x = self.add(x, self.one)
            k += 1
        return k

    def is_automorphism(self, perm):
        perm = np.asarray(perm)
        if sorted(perm.tolist()) != list(range(self.size)) or perm[self.one] != self.one:
            return False
        A, M = self.add_table, self.mul_table
        return bool((perm[A] == A[perm[:, None], perm[None, :]]).all()
                    and (perm[M] == M[perm[:, None], perm[None, :]]).all())


# polynomials over F_p, coefficient lists lowest degree first

def poly_trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_str(f, var="x"):
    f = poly_trim(f)
    if not f:
        return "0"
    terms = []
    for k in range(len(f) - 1, -1, -1):
        c = f[k]
        if c == 0:
            continue
        mono = "" if k == 0 else var if k == 1 else f"{var}^{k}"
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms)


def poly_mod(f, m, p):
    """Remainder of f by monic m over F_p."""
    f = [c % p for c in f]
    dm = len(m) - 1
    for k in range(len(f) - 1, dm - 1, -1):
        c = f[k]
        if c:
            for i in range(dm + 1):
                f[k - dm + i] = (f[k - dm + i] - c * m[i]) % p
    return poly_trim(f[:dm]) if dm else []


def poly_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return poly_trim(out)


def _is_prime(p):
    return p >= 2 and all(p % q for q in range(2, int(p**0.5) + 1))


def normalize_modulus(p, d, modulus):
    """Accept either the d lower coefficients of a monic polynomial or all d+1 coefficients."""
    coeffs = [int(c) % p for c in modulus]
    if len(coeffs) == d:
        coeffs = coeffs + [1]
    if len(coeffs) != d + 1 or coeffs[-1] == 0:
        raise RingError(f"modulus {modulus} does not have degree {d}")
    lead_inv = pow(coeffs[-1], p - 2, p)
    return tuple((c * lead_inv) % p for c in coeffs)


def find_factor(p, modulus):
    """A monic proper factor of the given monic polynomial, or None if irreducible."""
    d = len(modulus) - 1
    for k in range(1, d // 2 + 1):
        for low in itertools.product(range(p), repeat=k):
            cand = list(low) + [1]
            if not poly_mod(list(modulus), cand, p):
                return tuple(cand)
    return None


def first_irreducible(p, d):
    """Smallest monic irreducible of degree d, ordered by its lower coefficients read as base-p digits."""
    for code in range(p**d):
        low = [(code // p**i) % p for i in range(d)]
        mod = tuple(low) + (1,)
        if d == 1 or find_factor(p, mod) is None:
            return mod
    raise RingError(f"no irreducible polynomial of degree {d} over F_{p}")


def make_finite_field(p, d, modulus=None):
    """F_{p^d} as F_p[x]/(modulus).

    Elements are encoded as integers whose base-p digits are the polynomial
    coefficients, lowest degree first; so ``0`` is zero, ``1`` is one and
    ``p`` is the class of ``x``.
    """
    if not _is_prime(p):
        raise RingError(f"{p} is not prime")
    if d < 1:
        raise RingError("degree must be positive")
    mod = normalize_modulus(p, d, modulus) if modulus is not None else first_irreducible(p, d)
    factor = find_factor(p, mod) if d > 1 else None
    if factor is not None:
        raise ReducibleModulusError(mod, factor)
    q = p**d
    polys = [[(a // p**i) % p for i in range(d)] for a in range(q)]

    def encode(f):
        f = list(f) + [0] * (d - len(f))
        return sum(c * p**i for i, c in enumerate(f[:d]))

    add = np.empty((q, q), dtype=np.int64)
    mul = np.empty((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(q):
            add[a, b] = encode([(x + y) % p for x, y in zip(polys[a], polys[b])])
            mul[a, b] = encode(poly_mod(poly_mul(poly_trim(polys[a]), poly_trim(polys[b]), p),
                                        list(mod), p))
    labels = [poly_str(f) for f in polys]
    return FiniteRing(add, mul, 0, 1, name=f"F{q}", labels=labels,
                      field=FieldInfo(p, d, mod))


def product_ring(R, S, name=None):
    """R x S, element (a, b) encoded as ``a * |S| + b``."""
    n, m = R.size, S.size
    pairs = [(a, b) for a in range(n) for b in range(m)]
    add = np.array([[R.add(a, c) * m + S.add(b, d) for (c, d) in pairs] for (a, b) in pairs])
    mul = np.array([[R.mul(a, c) * m + S.mul(b, d) for (c, d) in pairs] for (a, b) in pairs])
    labels = [f"({R.labels[a]},{S.labels[b]})" for a, b in pairs]
    ring = FiniteRing(add, mul, R.zero * m + S.zero, R.one * m + S.one,
                      name=name or f"{R.name}x{S.name}", labels=labels)
    ring.factors = (R, S)
    return ring


def integers_mod(n):
    idx = np.arange(n)
    return FiniteRing((idx[:, None] + idx[None, :]) % n, (idx[:, None] * idx[None, :]) % n,
                      0, 1 % n, name=f"Z/{n}")


class GRing:
    """A finite ring with a group acting by ring automorphisms.

    ``act_table[g, r]`` is ``r^g``.  The convention ``r^(gh) = (r^h)^g``
    is enforced on construction.
    """

    def __init__(self, ring, group, act, name=None):
        self.ring = ring
        self.group = group
        self.act_table = np.array(act, dtype=np.int64)
        self.name = name or f"{ring.name}/{group.name}"
        self._validate()

    def __repr__(self):
        return f"GRing({self.name})"

    def _validate(self):
        R, G, T = self.ring, self.group, self.act_table
        if T.shape != (G.order, R.size):
            raise RingError("need one ring permutation per group element")
        if not (T[G.identity] == np.arange(R.size)).all():
            raise RingError("identity must act trivially")
        for g in G:
            if not R.is_automorphism(T[g]):
                raise RingError(f"group element {g} does not act by a ring automorphism")
        for g in G:
            for h in G:
                if not (T[G.mul(g, h)] == T[g][T[h]]).all():
                    raise RingError(f"action convention r^(gh) = (r^h)^g fails at ({g}, {h})")

    def act(self, g, r):
        return int(self.act_table[g, r])

    def fixed_subring(self, H=None):
        H = H if H is not None else self.group.whole()
        T = self.act_table
        return tuple(r for r in self.ring if all(T[h, r] == r for h in H))

    def is_trivial_action(self, H=None):
        H = H if H is not None else self.group.whole()
        return all((self.act_table[h] == np.arange(self.ring.size)).all() for h in H)


def make_galois_gring(p, d_total, d_sub, modulus=None):
    """F_{p^d_total} with the cyclic group generated by the p^d_sub-power Frobenius."""
    if d_sub < 1 or d_total % d_sub:
        raise RingError(f"d_sub={d_sub} does not divide d_total={d_total}")
    F = make_finite_field(p, d_total, modulus)
    m = d_total // d_sub
    G = cyclic_group(m)
    q = p**d_sub
    frob = np.array([_power(F, a, q) for a in F], dtype=np.int64)
    act = [np.arange(F.size)]
    for _ in range(1, m):
        act.append(frob[act[-1]])
    R = GRing(F, G, act, name=f"{F.name}/{G.name}")
    if len(R.fixed_subring()) != q:
        raise RingError("fixed subring has the wrong size")
    return R


def trivial_gring(ring, group):
    return GRing(ring, group, [np.arange(ring.size)] * group.order,
                 name=f"{ring.name}/{group.name}(triv)")


def swap_gring(ring):
    """R x R with C2 interchanging the factors."""
    S = product_ring(ring, ring)
    n = ring.size
    swap = [(a % n) * n + a // n for a in range(S.size)]
    return GRing(S, cyclic_group(2), [list(range(S.size)), swap], name=f"{S.name}/swap")


def _power(R, a, k):
    out = R.one
    for _ in range(k):
        out = R.mul(out, a)
    return out


def field_power(R, a, k):
    return _power(R, a, k)
