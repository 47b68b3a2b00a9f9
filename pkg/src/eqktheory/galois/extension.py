"""Ring extensions R -> S with a group acting on S over R, the Galois criterion and theta.

Tensor products ``S (x)_R S`` are computed in coordinates: an R-basis
``e_1 .. e_k`` of S is found first, and an element of the tensor product
is a ``k x k`` array of coefficients in R.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from ..algebra import matrices as mx
from ..algebra.rings import make_finite_field, make_galois_gring, swap_gring, trivial_gring
from ..algebra.twisted import module_generators, theta_hom
from ..ktheory.mackey import is_field_like
from ..rectify.models import field_inclusion


class GaloisError(ValueError):
    pass


class RingExtension:
    """A base ring R, a G-ring S and the inclusion ``R -> S`` (``inclusion[r]`` in S)."""

    def __init__(self, base, total, inclusion, name=None):
        self.base = base
        self.total = total
        self.inclusion = np.asarray(inclusion, dtype=np.int64)
        self.name = name or f"{total.ring.name}/{base.name}"
        self._coords = None

    def __repr__(self):
        return f"RingExtension({self.name})"

    @property
    def ring(self):
        return self.total.ring

    @property
    def group(self):
        return self.total.group

    def violations(self):
        """The inclusion must be an injective ring map whose image G fixes pointwise."""
        R, S, inc = self.base, self.ring, self.inclusion
        out = []
        if inc[R.one] != S.one:
            out.append("inclusion does not preserve 1")
        if len(set(inc.tolist())) != R.size:
            out.append("inclusion is not injective")
        for a in R:
            for b in R:
                if inc[R.add(a, b)] != S.add(inc[a], inc[b]) or inc[R.mul(a, b)] != S.mul(inc[a], inc[b]):
                    out.append(f"inclusion is not a ring map at ({a}, {b})")
                    return out
        for g in self.group:
            if any(self.total.act(g, int(x)) != x for x in inc):
                out.append(f"element {g} moves the image of the base")
        return out

    def fixed_ring_is_base(self):
        return set(self.total.fixed_subring()) == set(int(x) for x in self.inclusion)

    # coordinates

    def basis(self):
        """An R-basis of S; raises if the generating set found is not a basis."""
        if self._coords is None:
            self._basis = self._default_basis()
            self._coords = self._coordinates(self._basis)
        return list(self._basis)

    def _default_basis(self):
        return module_generators(self.ring, [int(x) for x in self.inclusion])

    def _coordinates(self, basis):
        R, S, inc = self.base, self.ring, self.inclusion
        coords = {}
        for c in itertools.product(range(R.size), repeat=len(basis)):
            x = S.zero
            for r, e in zip(c, basis):
                x = S.add(x, S.mul(int(inc[r]), e))
            if x in coords:
                raise GaloisError(f"{list(basis)} is not linearly independent over {R.name}")
            coords[x] = c
        if len(coords) != S.size:
            raise GaloisError(f"{list(basis)} does not span {S.name} over {R.name}")
        return coords

    def coordinates(self, x, basis=None):
        if basis is None:
            self.basis()
            return self._coords[x]
        return self._coordinates(basis)[x]

    def coordinate_table(self, basis):
        return self._coordinates(list(basis))


def galois_field_extension(p, d_total, d_sub, modulus=None):
    """``F_{p^d_sub} -> F_{p^d_total}`` with the cyclic Galois group."""
    GR = make_galois_gring(p, d_total, d_sub, modulus)
    F = make_finite_field(p, d_sub)
    return RingExtension(F, GR, field_inclusion(F, GR.ring), name=f"{GR.ring.name}/{F.name}")


def diagonal_extension(R):
    """The diagonal ``R -> R x R`` with C2 swapping the factors."""
    GR = swap_gring(R)
    n = R.size
    return RingExtension(R, GR, [a * n + a for a in R], name=f"{R.name}x{R.name}/{R.name}")


def trivial_extension(R, G):
    """R over itself with G acting trivially: Galois only for the trivial group."""
    return RingExtension(R, trivial_gring(R, G), np.arange(R.size), name=f"{R.name}/{R.name}(triv {G.name})")


# the Galois criterion

@dataclass
class GaloisReport:
    is_galois: bool
    tensor_size: int
    product_size: int
    injective: bool
    surjective: bool
    multiplicative: bool
    fixed_ring_is_base: bool
    order_count: bool  # |S| = |R|^|G|
    basis: list = field(default_factory=list)
    counterexample: object = None

    def as_dict(self):
        return {"is_galois": self.is_galois, "tensor_size": self.tensor_size,
                "product_size": self.product_size, "injective": self.injective,
                "surjective": self.surjective, "multiplicative": self.multiplicative,
                "fixed_ring_is_base": self.fixed_ring_is_base, "order_count": self.order_count,
                "basis": self.basis, "counterexample": self.counterexample}


def _require_supported(ext):
    if not is_field_like(ext.base):
        raise GaloisError(f"{ext.base.name} is not a finite field or a product of finite fields")
    bad = ext.violations()
    if bad:
        raise GaloisError(bad[0])


def gamma_table(ext):
    """``P[g, i, j] = (g.e_i) e_j``; gamma of ``sum r_ij e_i (x) e_j`` is ``sum r_ij P[g, i, j]``."""
    S, G = ext.ring, ext.group
    basis = ext.basis()
    return np.array([[[S.mul(ext.total.act(g, ei), ej) for ej in basis] for ei in basis] for g in G],
                    dtype=np.int64)


def _gamma(ext, P, coeffs):
    S, inc = ext.ring, ext.inclusion
    out = []
    for g in range(P.shape[0]):
        v = S.zero
        for (i, j), r in np.ndenumerate(coeffs):
            v = S.add(v, S.mul(int(inc[r]), int(P[g, i, j])))
        out.append(v)
    return tuple(out)


def check_galois(ext):
    """Whether ``gamma: S (x)_R S -> prod_G S``, ``a (x) b -> ((g.a) b)_g``, is bijective."""
    _require_supported(ext)
    R, S, G = ext.base, ext.ring, ext.group
    basis = ext.basis()
    k = len(basis)
    P = gamma_table(ext)
    images = {}
    counterexample = None
    for flat in itertools.product(range(R.size), repeat=k * k):
        c = np.array(flat, dtype=np.int64).reshape(k, k)
        v = _gamma(ext, P, c)
        if v in images and counterexample is None:
            counterexample = {"kind": "not injective", "tensors": [images[v], list(flat)]}
        images.setdefault(v, list(flat))
    tensor_size = R.size ** (k * k)
    product_size = S.size ** G.order
    injective = len(images) == tensor_size
    surjective = len(images) == product_size
    if injective and not surjective and counterexample is None:
        missing = next(t for t in itertools.product(range(S.size), repeat=G.order) if t not in images)
        counterexample = {"kind": "not surjective", "missing": list(missing)}
    # gamma respects products of basis tensors
    mult = True
    for i, j, a, b in itertools.product(range(k), repeat=4):
        left = np.full((k, k), R.zero, dtype=np.int64)
        left[i, j] = R.one
        right = np.full((k, k), R.zero, dtype=np.int64)
        right[a, b] = R.one
        ci = ext.coordinates(S.mul(basis[i], basis[a]))
        cj = ext.coordinates(S.mul(basis[j], basis[b]))
        prod = np.array([[R.mul(x, y) for y in cj] for x in ci], dtype=np.int64)
        lhs = _gamma(ext, P, prod)
        gl, gr = _gamma(ext, P, left), _gamma(ext, P, right)
        if lhs != tuple(S.mul(x, y) for x, y in zip(gl, gr)):
            mult = False
            break
    fixed = ext.fixed_ring_is_base()
    ok = injective and surjective and mult and fixed
    return GaloisReport(ok, tensor_size, product_size, injective, surjective, mult, fixed,
                        S.size == R.size ** G.order, list(basis), counterexample)


# theta as a matrix ring isomorphism

@dataclass
class ThetaIso:
    basis: list
    matrices: list  # matrices[x]: k x k array over the base ring, the matrix of theta(x)
    bijective: bool
    ring_map: bool
    source_size: int
    target_size: int
    counterexample: object = None

    def as_dict(self):
        return {"basis": self.basis, "bijective": self.bijective, "ring_map": self.ring_map,
                "source_size": self.source_size, "target_size": self.target_size,
                "counterexample": self.counterexample}


def theta_matrix_iso(ext, basis=None, require_galois=True):
    """theta: S_G[G] -> End_R(S) with the matrix of each theta(x) in an R-basis of S.

    Bijectivity is checked against the exhaustive list of R-linear
    endomorphisms and again against all ``k x k`` matrices over R.
    """
    if require_galois and not check_galois(ext).is_galois:
        raise GaloisError(f"{ext.name} is not Galois")
    R, S = ext.base, ext.ring
    basis = list(basis) if basis is not None else ext.basis()
    coords = ext.coordinate_table(basis)
    k = len(basis)
    th = theta_hom(ext.total)
    mats = []
    for x in range(th.twisted.size):
        f = th(x)
        mats.append(np.array([coords[f[e]] for e in basis], dtype=np.int64).T)
    codes = [int(mx.encode(R, M)) for M in mats]
    bij = th.is_bijective and len(set(codes)) == len(codes) == R.size ** (k * k)
    T = th.twisted.ring
    ring_map = th.additive and th.multiplicative and all(
        np.array_equal(mats[T.mul(x, y)], mx.matmul(R, mats[x], mats[y]))
        and np.array_equal(mats[T.add(x, y)], mx.add(R, mats[x], mats[y]))
        for x in range(T.size) for y in range(T.size))
    return ThetaIso(basis, mats, bij, ring_map, T.size, R.size ** (k * k), th.counterexample())


def change_of_basis(ext, old, new):
    """The matrix whose columns are the coordinates of ``new`` in ``old``."""
    coords = ext.coordinate_table(old)
    return np.array([coords[e] for e in new], dtype=np.int64).T
