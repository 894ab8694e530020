"""Exact realizations of the finite crystallographic root systems.

All coordinates are rational (fractions.Fraction) in a fixed ambient
euclidean space; the scalar product is the plain coordinate dot product.
Roots are indexed deterministically by sorting coordinate tuples, so every
permutation-level object downstream is reproducible byte for byte.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import _linalg as la
from ._linalg import Vector, vadd, vdot, vneg, vscale, vsub

HALF = Fraction(1, 2)

FAMILIES = ("A", "B", "C", "D", "E6", "E7", "E8", "F4", "G2")

_RANK_RANGE = {
    "A": (1, None),
    "B": (2, None),
    "C": (3, None),
    "D": (4, None),
    "E6": (6, 6),
    "E7": (7, 7),
    "E8": (8, 8),
    "F4": (4, 4),
    "G2": (2, 2),
}


class RootSystemError(ValueError):
    """Invalid family/rank/realization combination or malformed input."""


@dataclass(frozen=True)
class RootSystemSpec:
    family: str | None = None
    rank: int | None = None
    realization: str = "standard"
    factors: tuple["RootSystemSpec", ...] | None = None

    def __post_init__(self):
        if self.factors is not None:
            if self.family is not None:
                raise RootSystemError("a union spec carries no family of its own")
            for f in self.factors:
                if f.factors is not None:
                    raise RootSystemError("nested unions are not supported")
            return
        fam = self.family
        if fam not in FAMILIES:
            raise RootSystemError("unknown family %r" % (fam,))
        lo, hi = _RANK_RANGE[fam]
        rk = self.rank if self.rank is not None else lo
        if fam in ("E6", "E7", "E8", "F4", "G2"):
            rk = int(fam[1]) if fam[0] == "E" else (4 if fam == "F4" else 2)
            object.__setattr__(self, "rank", rk)
        else:
            if self.rank is None or self.rank < lo:
                raise RootSystemError("family %s needs rank >= %d" % (fam, lo))
        if self.realization not in ("standard", "prime"):
            raise RootSystemError("unknown realization %r" % (self.realization,))
        if self.realization == "prime" and fam not in ("E6", "E7"):
            raise RootSystemError("prime realization exists only for E6/E7")

    @property
    def label(self) -> str:
        if self.factors is not None:
            return "+".join(f.label for f in self.factors)
        base = self.family if self.family not in ("A", "B", "C", "D") else "%s%d" % (self.family, self.rank)
        return base + ("'" if self.realization == "prime" else "")


def zeta(plus_indices, n: int = 8) -> Vector:
    """Half-integer vector with +1/2 at the given 1-based positions, -1/2 elsewhere."""
    plus = set(plus_indices)
    return tuple(HALF if i + 1 in plus else -HALF for i in range(n))


def _e(i: int, n: int) -> Vector:
    return la.unit_vec(n, i - 1)


def _pm_pairs(n: int):
    out = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for si in (1, -1):
                for sj in (1, -1):
                    out.append(vadd(vscale(si, _e(i, n)), vscale(sj, _e(j, n))))
    return out


def _roots_for(spec: RootSystemSpec) -> tuple[list[Vector], list[Vector]]:
    """Return (roots, canonical basis) for an irreducible spec."""
    fam, rk = spec.family, spec.rank
    if fam == "A":
        n = rk + 1
        roots = []
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i != j:
                    roots.append(vsub(_e(i, n), _e(j, n)))
        basis = [vsub(_e(i, n), _e(i + 1, n)) for i in range(1, n)]
        return roots, basis
    if fam == "B":
        n = rk
        roots = [vscale(s, _e(i, n)) for i in range(1, n + 1) for s in (1, -1)]
        roots += _pm_pairs(n)
        basis = [vsub(_e(i, n), _e(i + 1, n)) for i in range(1, n)] + [_e(n, n)]
        return roots, basis
    if fam == "C":
        n = rk
        roots = [vscale(2 * s, _e(i, n)) for i in range(1, n + 1) for s in (1, -1)]
        roots += _pm_pairs(n)
        basis = [vsub(_e(i, n), _e(i + 1, n)) for i in range(1, n)] + [vscale(2, _e(n, n))]
        return roots, basis
    if fam == "D":
        n = rk
        roots = _pm_pairs(n)
        basis = [vsub(_e(i, n), _e(i + 1, n)) for i in range(1, n)] + [vadd(_e(n - 1, n), _e(n, n))]
        return roots, basis
    if fam == "G2":
        n = 3
        roots = []
        for i in range(1, 4):
            for j in range(1, 4):
                if i != j:
                    roots.append(vsub(_e(i, n), _e(j, n)))
        for i, j, k in itertools.permutations((1, 2, 3)):
            if j < k:
                for s in (1, -1):
                    roots.append(vscale(s, vsub(vscale(2, _e(i, n)), vadd(_e(j, n), _e(k, n)))))
        basis = [vsub(_e(1, n), _e(2, n)),
                 vsub(vadd(_e(2, n), _e(3, n)), vscale(2, _e(1, n)))]
        return roots, basis
    if fam == "F4":
        n = 4
        roots = [vscale(s, _e(i, n)) for i in range(1, 5) for s in (1, -1)]
        roots += _pm_pairs(n)
        for signs in itertools.product((1, -1), repeat=4):
            roots.append(tuple(HALF * s for s in signs))
        basis = [vsub(_e(1, n), _e(2, n)), vsub(_e(2, n), _e(3, n)), _e(3, n),
                 vscale(HALF, vsub(_e(4, n), vadd(_e(1, n), vadd(_e(2, n), _e(3, n)))))]
        return roots, basis
    if fam == "E8":
        roots = list(_pm_pairs(8))
        for k in range(0, 10, 2):
            for plus in itertools.combinations(range(1, 9), k):
                roots.append(zeta(plus))
        basis = [zeta(()), vadd(_e(1, 8), _e(2, 8))] + \
                [vsub(_e(i - 1, 8), _e(i - 2, 8)) for i in range(3, 9)]
        return roots, basis
    if fam == "E7" and spec.realization == "standard":
        e8, _ = _roots_for(RootSystemSpec("E8"))
        w = vsub(_e(7, 8), _e(8, 8))
        roots = [r for r in e8 if vdot(r, w) == 0]
        basis = [zeta(()), vadd(_e(1, 8), _e(2, 8))] + \
                [vsub(_e(i - 1, 8), _e(i - 2, 8)) for i in range(3, 8)]
        return roots, basis
    if fam == "E6" and spec.realization == "standard":
        e8, _ = _roots_for(RootSystemSpec("E8"))
        w1 = vsub(_e(7, 8), _e(8, 8))
        w2 = vsub(_e(6, 8), _e(7, 8))
        roots = [r for r in e8 if vdot(r, w1) == 0 and vdot(r, w2) == 0]
        basis = [zeta(()), vadd(_e(1, 8), _e(2, 8))] + \
                [vsub(_e(i - 1, 8), _e(i - 2, 8)) for i in range(3, 7)]
        return roots, basis
    if fam == "E7" and spec.realization == "prime":
        e8, _ = _roots_for(RootSystemSpec("E8"))
        w = zeta(())
        roots = [r for r in e8 if vdot(r, w) == 0]
        basis = [vsub(_e(i, 8), _e(i + 1, 8)) for i in range(1, 7)] + [zeta((4, 5, 6, 7))]
        return roots, basis
    if fam == "E6" and spec.realization == "prime":
        e8, _ = _roots_for(RootSystemSpec("E8"))
        w1 = zeta(())
        w2 = vadd(_e(7, 8), _e(8, 8))
        roots = [r for r in e8 if vdot(r, w1) == 0 and vdot(r, w2) == 0]
        basis = [vsub(_e(i, 8), _e(i + 1, 8)) for i in range(1, 6)] + [zeta((4, 5, 6, 7))]
        return roots, basis
    raise RootSystemError("unhandled spec %r" % (spec,))


@dataclass(frozen=True)
class Chamber:
    """A Weyl chamber: positive roots, simple basis and a regular witness."""

    system: "RootSystem"
    positive_set: frozenset[int]
    basis: tuple[int, ...]
    witness: Vector

    def coords(self, idx: int) -> tuple[int, ...]:
        """Integer coordinates of a root in this chamber's simple basis."""
        return self.system._coords_in(self.basis, idx)

    def q_degree(self, idx: int) -> int:
        return sum(self.coords(idx))

    def support(self, idx: int) -> frozenset[int]:
        cs = self.coords(idx)
        return frozenset(self.basis[i] for i in range(len(cs)) if cs[i] != 0)

    def is_positive(self, idx: int) -> bool:
        return idx in self.positive_set


class RootSystem:
    """A root system realization with deterministic root indexing."""

    def __init__(self, spec: RootSystemSpec):
        self.spec = spec
        if spec.factors is not None:
            blocks = [RootSystem(f) for f in spec.factors]
            dims = [b.dim for b in blocks]
            self.dim = sum(dims)
            roots: list[Vector] = []
            basis_vecs: list[Vector] = []
            self.block_slices = []
            offset = 0
            for b, d in zip(blocks, dims):
                pad = lambda v, off=offset, dd=d: tuple(
                    [la.ZERO] * off + list(v) + [la.ZERO] * (self.dim - off - dd))
                roots += [pad(r) for r in b.roots]
                basis_vecs += [pad(b.roots[i]) for i in b.canonical_basis]
                self.block_slices.append((offset, offset + d))
                offset += d
            self.rank = sum(b.rank for b in blocks)
            self.factors = tuple(blocks)
        else:
            roots, basis_vecs = _roots_for(spec)
            self.dim = len(roots[0]) if roots else 0
            self.rank = spec.rank
            self.factors = None
        self.roots: tuple[Vector, ...] = tuple(sorted(set(roots)))
        if len(self.roots) != len(roots):
            raise RootSystemError("duplicate roots in realization")
        self.index: dict[Vector, int] = {r: i for i, r in enumerate(self.roots)}
        self.canonical_basis: tuple[int, ...] = tuple(self.index[b] for b in basis_vecs)
        self.negation_map: tuple[int, ...] = tuple(self.index[vneg(r)] for r in self.roots)
        self._norms = tuple(vdot(r, r) for r in self.roots)
        self._long_norm = max(self._norms) if self.roots else None
        self._coords_cache: dict[tuple[tuple[int, ...], int], tuple[int, ...]] = {}
        self._canonical_chamber: Chamber | None = None

    # -- basic queries ---------------------------------------------------

    def __len__(self) -> int:
        return len(self.roots)

    def norm2(self, idx: int) -> Fraction:
        return self._norms[idx]

    def is_long(self, idx: int) -> bool:
        """Maximal length within the irreducible factor of the root."""
        if self.factors is None:
            return self._norms[idx] == self._long_norm
        lo, hi = next(s for s in self.block_slices
                      if any(self.roots[idx][i] != 0 for i in range(s[0], s[1])))
        block_norms = [self._norms[i] for i in range(len(self.roots))
                       if any(self.roots[i][j] != 0 for j in range(lo, hi))]
        return self._norms[idx] == max(block_norms)

    def root_index(self, v: Vector) -> int:
        try:
            return self.index[tuple(Fraction(x) for x in v)]
        except KeyError:
            raise RootSystemError("%r is not a root of %s" % (v, self.spec.label))

    def contains_vector(self, v: Vector) -> bool:
        return tuple(Fraction(x) for x in v) in self.index

    # -- scalar products -------------------------------------------------

    def dot(self, i: int, j: int) -> Fraction:
        return vdot(self.roots[i], self.roots[j])

    def pairing_vec(self, xi: Vector, eta: Vector) -> Fraction:
        d = vdot(eta, eta)
        if d == 0:
            raise ValueError("pairing against the zero vector")
        return 2 * vdot(xi, eta) / d

    def pairing(self, i: int, j: int) -> int:
        p = self.pairing_vec(self.roots[i], self.roots[j])
        if p.denominator != 1:
            raise RootSystemError("non-integral pairing between roots")
        return int(p)

    # -- reflections -----------------------------------------------------

    def reflect_vec(self, xi: Vector, alpha: Vector) -> Vector:
        return vsub(xi, vscale(self.pairing_vec(xi, alpha), alpha))

    def reflect(self, xi: Vector, alpha_idx: int) -> Vector:
        return self.reflect_vec(xi, self.roots[alpha_idx])

    def reflection_perm(self, alpha_idx: int) -> tuple[int, ...]:
        a = self.roots[alpha_idx]
        return tuple(self.index[self.reflect_vec(r, a)] for r in self.roots)

    def perm_of_matrix(self, m: la.Matrix) -> tuple[int, ...] | None:
        """Permutation induced on roots by an ambient linear map, if any."""
        images = []
        for r in self.roots:
            img = la.mat_vec(m, r)
            j = self.index.get(img)
            if j is None:
                return None
            images.append(j)
        if len(set(images)) != len(images):
            return None
        return tuple(images)

    def matrix_of_perm(self, perm) -> la.Matrix:
        """Ambient matrix inducing the permutation (identity off the span)."""
        src = [self.roots[i] for i in self.canonical_basis]
        img = [self.roots[perm[i]] for i in self.canonical_basis]
        return la.map_from_images(src, img)

    # -- strings and coordinates ------------------------------------------

    def root_string(self, beta_idx: int, alpha_idx: int) -> tuple[int, int]:
        """(p, q) with {j : beta + j*alpha a root} = [-q, p]."""
        if beta_idx == alpha_idx or beta_idx == self.negation_map[alpha_idx]:
            raise RootSystemError("root string undefined against +-alpha")
        a = self.roots[alpha_idx]
        b = self.roots[beta_idx]
        p = 0
        v = vadd(b, a)
        while v in self.index:
            p += 1
            v = vadd(v, a)
        q = 0
        v = vsub(b, a)
        while v in self.index:
            q += 1
            v = vsub(v, a)
        return p, q

    def _coords_in(self, basis: tuple[int, ...], idx: int) -> tuple[int, ...]:
        key = (basis, idx)
        got = self._coords_cache.get(key)
        if got is None:
            cols = [self.roots[b] for b in basis]
            sol = la.solve(cols, self.roots[idx])
            if sol is None or any(c.denominator != 1 for c in sol):
                raise RootSystemError("root %d has no integral coordinates in basis" % idx)
            got = tuple(int(c) for c in sol)
            self._coords_cache[key] = got
        return got

    def is_strongly_orthogonal(self, i: int, j: int) -> bool:
        if j == i or j == self.negation_map[i]:
            return False
        s = vadd(self.roots[i], self.roots[j])
        d = vsub(self.roots[i], self.roots[j])
        return s not in self.index and d not in self.index

    def strongly_orthogonal_set(self, idxs) -> bool:
        idxs = list(idxs)
        return all(self.is_strongly_orthogonal(a, b)
                   for k, a in enumerate(idxs) for b in idxs[k + 1:])

    # -- chambers ----------------------------------------------------------

    def is_regular(self, h: Vector) -> bool:
        return all(vdot(r, h) != 0 for r in self.roots)

    def chamber_from_witness(self, h: Vector) -> Chamber:
        h = tuple(Fraction(x) for x in h)
        if not self.is_regular(h):
            raise RootSystemError("witness is not regular")
        pos = frozenset(i for i, r in enumerate(self.roots) if vdot(r, h) > 0)
        basis = self._basis_of_positive(pos)
        return Chamber(self, pos, basis, h)

    def _basis_of_positive(self, pos: frozenset[int]) -> tuple[int, ...]:
        pos_vecs = {self.roots[i]: i for i in pos}
        basis = []
        for i in pos:
            r = self.roots[i]
            decomposable = any(vsub(r, v) in pos_vecs for v in pos_vecs if v != r)
            if not decomposable:
                basis.append(i)
        return tuple(sorted(basis))

    def chamber_from_simple_basis(self, vectors) -> Chamber:
        """Chamber whose simple basis is the given set of root vectors."""
        vecs = [tuple(Fraction(x) for x in v) for v in vectors]
        idxs = {self.root_index(v) for v in vecs}
        cols = [tuple(bv[j] for bv in vecs) for j in range(self.dim)]
        w = la.solve(cols, tuple(la.ONE for _ in vecs))
        if w is None:
            raise RootSystemError("no witness vector for the requested basis")
        ch = self.chamber_from_witness(tuple(w))
        if set(ch.basis) != idxs:
            raise RootSystemError("vectors are not a simple basis of a chamber")
        return ch

    def canonical_chamber(self) -> Chamber:
        if self._canonical_chamber is None:
            basis = self.canonical_basis
            witness = la.zero_vec(self.dim)
            pos = []
            for i in range(len(self.roots)):
                cs = self._coords_in(basis, i)
                if all(c >= 0 for c in cs):
                    pos.append(i)
            for i in pos:
                witness = vadd(witness, self.roots[i])
            ch = Chamber(self, frozenset(pos), basis, witness)
            for b in basis:
                assert vdot(self.roots[b], witness) > 0
            self._canonical_chamber = ch
        return self._canonical_chamber

    def fundamental_coweight_sum(self) -> Vector:
        """Regular vector pairing to 1 with every canonical simple root."""
        basis_vecs = [self.roots[b] for b in self.canonical_basis]
        cols = [tuple(bv[j] for bv in basis_vecs) for j in range(self.dim)]
        sol = la.solve(cols, tuple(la.ONE for _ in basis_vecs))
        if sol is None:
            raise RootSystemError("no coweight vector found")
        return tuple(sol)

    def in_dual_lattice(self, omega: Vector) -> bool:
        omega = tuple(Fraction(x) for x in omega)
        if len(omega) != self.dim:
            raise ValueError("dimension mismatch")
        return all(vdot(r, omega).denominator == 1 for r in self.roots)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "family": self.spec.label,
            "rank": self.rank,
            "realization": self.spec.realization if self.spec.factors is None else "union",
            "ambient_dim": self.dim,
            "roots": [[str(c) for c in r] for r in self.roots],
            "basis": list(self.canonical_basis),
        }

    def to_json_str(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def __repr__(self):
        return "RootSystem(%s, %d roots)" % (self.spec.label, len(self.roots))


@lru_cache(maxsize=None)
def build_cached(family: str, rank: int | None = None, realization: str = "standard") -> RootSystem:
    return RootSystem(RootSystemSpec(family, rank, realization))


def build(spec: RootSystemSpec | str, rank: int | None = None,
          realization: str = "standard") -> RootSystem:
    """Construct the root system for a spec (or family shorthand)."""
    if isinstance(spec, RootSystemSpec):
        if spec.factors is not None:
            return RootSystem(spec)
        return build_cached(spec.family, spec.rank, spec.realization)
    return build_cached(spec, rank, realization)
