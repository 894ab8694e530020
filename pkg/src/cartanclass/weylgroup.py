"""Weyl and full automorphism groups as permutation groups on root indices.

The engine is a deterministic Schreier-Sims stabilizer chain.  Backtrack
searches (set transporters, pair transporters, conjugating elements) walk
the chain level by level; since group elements are linear maps, committing
images of a spanning set pins the whole permutation, so search depth never
exceeds the rank by much.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import _linalg as la
from .rootsys import RootSystem

Perm = tuple[int, ...]


def perm_mul(p: Perm, q: Perm) -> Perm:
    """Composition applying q first: (p*q)(x) = p(q(x))."""
    return tuple(p[x] for x in q)


def perm_inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


@dataclass(frozen=True)
class RootPermutation:
    """A root-set automorphism: index permutation plus the induced matrix."""

    system: RootSystem
    images: Perm

    def matrix(self) -> la.Matrix:
        return self.system.matrix_of_perm(self.images)

    def validate(self) -> None:
        neg = self.system.negation_map
        for i in range(len(self.images)):
            if self.images[neg[i]] != neg[self.images[i]]:
                raise ValueError("permutation does not commute with negation")
        m = self.matrix()
        if not la.is_orthogonal(m):
            raise ValueError("induced matrix is not orthogonal")
        if self.system.perm_of_matrix(m) != self.images:
            raise ValueError("matrix does not reproduce the permutation")

    def __call__(self, idx: int) -> int:
        return self.images[idx]


class _Level:
    __slots__ = ("point", "gens", "orbit")

    def __init__(self, point: int, n: int):
        self.point = point
        self.gens: list[Perm] = []
        self.orbit: dict[int, Perm] = {point: identity_perm(n)}

    def recompute_orbit(self, n: int) -> None:
        self.orbit = {self.point: identity_perm(n)}
        queue = [self.point]
        while queue:
            new_queue = []
            for p in queue:
                t = self.orbit[p]
                for g in self.gens:
                    q = g[p]
                    if q not in self.orbit:
                        self.orbit[q] = perm_mul(g, t)
                        new_queue.append(q)
            queue = new_queue


class StabChain:
    """Deterministic stabilizer chain.

    forced_prefix points become the first base points even when their
    orbits turn out trivial, so coset searches can walk them in order.
    """

    def __init__(self, n: int, gens: list[Perm], base_hint: tuple[int, ...],
                 order_target: int | None = None,
                 forced_prefix: tuple[int, ...] = ()):
        self.n = n
        self.levels: list[_Level] = []
        self._base_hint = tuple(base_hint)
        self._order_target = order_target
        for p in forced_prefix:
            if all(lev.point != p for lev in self.levels):
                self._add_level(p)
        ident = identity_perm(n)
        gens = [g for g in gens if g != ident]
        if gens:
            if not self.levels:
                self._add_level(self._pick_point(gens[0]))
            for g in gens:
                self._add_generator(0, g)
            self._schreier_sims()

    # -- construction ----------------------------------------------------

    def _pick_point(self, g: Perm) -> int:
        used = {lev.point for lev in self.levels}
        for b in self._base_hint:
            if g[b] != b and b not in used:
                return b
        for b in range(self.n):
            if g[b] != b and b not in used:
                return b
        raise AssertionError("no moved point for a non-identity permutation")

    def _add_level(self, point: int) -> None:
        self.levels.append(_Level(point, self.n))

    def _add_generator(self, level: int, g: Perm) -> None:
        lev = self.levels[level]
        if g not in lev.gens:
            lev.gens.append(g)
            lev.recompute_orbit(self.n)

    def _sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        for i in range(start, len(self.levels)):
            lev = self.levels[i]
            img = g[lev.point]
            t = lev.orbit.get(img)
            if t is None:
                return g, i
            g = perm_mul(perm_inv(t), g)
        return g, len(self.levels)

    def _schreier_sims(self) -> None:
        ident = identity_perm(self.n)
        i = len(self.levels) - 1
        while i >= 0:
            if self._order_target is not None and self.order() == self._order_target:
                return
            lev = self.levels[i]
            inserted = False
            for p in sorted(lev.orbit):
                t = lev.orbit[p]
                for g in lev.gens:
                    u = lev.orbit[g[p]]
                    schreier = perm_mul(perm_inv(u), perm_mul(g, t))
                    if schreier == ident:
                        continue
                    residue, j = self._sift(schreier, i + 1)
                    if residue == ident:
                        continue
                    if j == len(self.levels):
                        self._add_level(self._pick_point(residue))
                    for k in range(i + 1, j + 1):
                        self._add_generator(k, residue)
                    i = j
                    inserted = True
                    break
                if inserted:
                    break
            if not inserted:
                i -= 1

    # -- queries -----------------------------------------------------------

    def order(self) -> int:
        out = 1
        for lev in self.levels:
            out *= len(lev.orbit)
        return out

    def contains(self, g: Perm) -> bool:
        residue, _ = self._sift(g)
        return residue == identity_perm(self.n)

    def base(self) -> tuple[int, ...]:
        return tuple(lev.point for lev in self.levels)

    def iter_elements(self):
        """All group elements (use only on small groups)."""
        if not self.levels:
            yield identity_perm(self.n)
            return
        transversals = [[lev.orbit[p] for p in sorted(lev.orbit)] for lev in self.levels]
        for combo in itertools.product(*transversals):
            g = combo[0]
            for t in combo[1:]:
                g = perm_mul(g, t)
            yield g


class PermGroup:
    """A group of root-set automorphisms with stabilizer-chain services."""

    def __init__(self, system: RootSystem, generators: list[Perm], name: str = ""):
        self.system = system
        self.n = len(system.roots)
        self.generators = [tuple(g) for g in generators]
        self.name = name
        self._chains: dict[tuple[int, ...], StabChain] = {}
        self._order: int | None = None

    def __repr__(self):
        return "%s<order %s>" % (self.name or "PermGroup", self._order)

    # -- chains ------------------------------------------------------------

    def chain(self, base_prefix: tuple[int, ...] = ()) -> StabChain:
        key = tuple(base_prefix)
        got = self._chains.get(key)
        if got is None:
            hint = key + tuple(b for b in self.system.canonical_basis if b not in key)
            got = StabChain(self.n, self.generators, hint,
                            order_target=self._order, forced_prefix=key)
            self._chains[key] = got
            if self._order is None:
                self._order = got.order()
            if len(self._chains) > 24:  # keep the cache bounded
                for k in list(self._chains):
                    if k != () and k != key:
                        del self._chains[k]
                        break
        return got

    @property
    def order(self) -> int:
        if self._order is None:
            self.chain()
        return self._order

    def contains(self, g) -> bool:
        images = g.images if isinstance(g, RootPermutation) else tuple(g)
        if len(images) != self.n:
            raise ValueError("permutation acts on a different root set")
        return self.chain().contains(images)

    def wrap(self, images: Perm) -> RootPermutation:
        return RootPermutation(self.system, tuple(images))

    def iter_elements(self):
        return self.chain().iter_elements()

    # -- searches ------------------------------------------------------------

    def _profile(self, xs):
        R = self.system
        norms = sorted(R.norm2(x) for x in xs)
        gram = sorted(sorted(R.dot(a, b) for b in xs) for a in xs)
        return norms, gram

    def transporter_set(self, xs, ys) -> RootPermutation | None:
        """Some g in G with g(X) = Y as sets, or None."""
        X = tuple(sorted(set(xs)))
        Y = frozenset(ys)
        if len(X) != len(Y):
            return None
        if not X:
            return self.wrap(identity_perm(self.n))
        if self._profile(X) != self._profile(sorted(Y)):
            return None
        res = self._search_blocks([(X, Y)])
        return None if res is None else self.wrap(res)

    def transporter_pair(self, xpair, ypair) -> RootPermutation | None:
        """Some g with g(X1) = Y1 and g(X2) = Y2 as sets, or None."""
        (x1, x2), (y1, y2) = xpair, ypair
        b1 = (tuple(sorted(set(x1))), frozenset(y1))
        b2 = (tuple(sorted(set(x2))), frozenset(y2))
        if len(b1[0]) != len(b1[1]) or len(b2[0]) != len(b2[1]):
            return None
        if b1[0] and self._profile(b1[0]) != self._profile(sorted(b1[1])):
            return None
        if b2[0] and self._profile(b2[0]) != self._profile(sorted(b2[1])):
            return None
        res = self._search_blocks([b1, b2])
        return None if res is None else self.wrap(res)

    def _search_blocks(self, blocks) -> Perm | None:
        """Backtrack for g mapping each block's X onto its Y setwise.

        First-found result with candidates tried in increasing index order,
        so ties break lexicographically and results are deterministic.
        """
        R = self.system
        points: list[int] = []
        block_of: list[int] = []
        for bi, (X, _) in enumerate(blocks):
            for x in X:
                if x not in points:
                    points.append(x)
                    block_of.append(bi)
        chain = self.chain(tuple(points))
        levels = chain.levels
        committed: list[int] = []

        def rec(pi: int, g: Perm, used: list[set[int]]) -> Perm | None:
            if pi == len(points):
                for (X, Y) in blocks:
                    if {g[x] for x in X} != set(Y):
                        return None
                return g
            x = points[pi]
            bi = block_of[pi]
            lev = levels[pi]
            assert lev.point == x
            targets = blocks[bi][1]
            nx = R.norm2(x)
            for c in sorted(lev.orbit):
                y = g[c]
                if y not in targets or y in used[bi] or R.norm2(y) != nx:
                    continue
                if any(R.dot(x, points[j]) != R.dot(y, committed[j])
                       for j in range(pi)):
                    continue
                g2 = perm_mul(g, lev.orbit[c])
                committed.append(y)
                used[bi].add(y)
                out = rec(pi + 1, g2, used)
                used[bi].remove(y)
                committed.pop()
                if out is not None:
                    return out
            return None

        return rec(0, identity_perm(self.n), [set() for _ in blocks])

    def conjugator(self, theta, theta2, pairs=()) -> Perm | None:
        """Some g in G with g o theta o g^-1 = theta2 (and likewise for
        every extra (s, s2) pair), or None.

        Exhausts the stabilizer chain with partial-consistency pruning, so a
        None answer is a proof that no conjugating element exists in G.
        """

        def unwrap(t):
            return t.images if isinstance(t, RootPermutation) else tuple(t)

        conds = [(unwrap(theta), unwrap(theta2))]
        conds += [(unwrap(a), unwrap(b)) for a, b in pairs]
        n = self.n
        neg = self.system.negation_map

        def point_class(t, i):
            if t[i] == i:
                return 0
            if t[i] == neg[i]:
                return 1
            return 2

        classes = []
        for t1, t2 in conds:
            cls1 = [point_class(t1, i) for i in range(n)]
            cls2 = [point_class(t2, i) for i in range(n)]
            if sorted(cls1) != sorted(cls2):
                return None
            classes.append((cls1, cls2))

        chain = self.chain()
        levels = chain.levels
        base = [lev.point for lev in levels]
        base_pos = {b: j for j, b in enumerate(base)}

        def rec(li: int, g: Perm) -> Perm | None:
            if li == len(levels):
                for t1, t2 in conds:
                    for i in range(n):
                        if t2[g[i]] != g[t1[i]]:
                            return None
                return g
            lev = levels[li]
            b = lev.point
            for c in sorted(lev.orbit):
                if any(cls2[g[c]] != cls1[b] for cls1, cls2 in classes):
                    continue
                g2 = perm_mul(g, lev.orbit[c])
                ok = True
                for t1, t2 in conds:
                    for bj in base[: li + 1]:
                        tb = t1[bj]
                        if base_pos.get(tb, len(levels)) <= li:
                            if t2[g2[bj]] != g2[tb]:
                                ok = False
                                break
                    if not ok:
                        break
                if ok:
                    out = rec(li + 1, g2)
                    if out is not None:
                        return out
            return None

        return rec(0, identity_perm(n))


# -- group constructors ------------------------------------------------------

_WEYL_CACHE: dict[int, PermGroup] = {}
_AUT_CACHE: dict[int, PermGroup] = {}


def weyl_group(system: RootSystem) -> PermGroup:
    got = _WEYL_CACHE.get(id(system))
    if got is None:
        gens = [system.reflection_perm(b) for b in system.canonical_basis]
        got = PermGroup(system, gens, name="W(%s)" % system.spec.label)
        _WEYL_CACHE[id(system)] = got
    return got


def diagram_automorphisms(system: RootSystem) -> list[Perm]:
    """Root permutations induced by symmetries of the canonical diagram."""
    basis = list(system.canonical_basis)
    k = len(basis)
    R = system
    out = []
    for perm in itertools.permutations(range(k)):
        if any(R.norm2(basis[i]) != R.norm2(basis[perm[i]]) for i in range(k)):
            continue
        if any(R.dot(basis[i], basis[j]) != R.dot(basis[perm[i]], basis[perm[j]])
               for i in range(k) for j in range(i + 1, k)):
            continue
        try:
            m = la.map_from_images([R.roots[b] for b in basis],
                                   [R.roots[basis[perm[i]]] for i in range(k)])
        except ValueError:
            continue
        p = R.perm_of_matrix(m)
        if p is not None:
            out.append(p)
    return out


def full_aut_group(system: RootSystem) -> PermGroup:
    got = _AUT_CACHE.get(id(system))
    if got is not None:
        return got
    gens = [system.reflection_perm(b) for b in system.canonical_basis]
    if system.factors is None:
        gens += diagram_automorphisms(system)
    else:
        for bi, blk in enumerate(system.factors):
            for p in diagram_automorphisms(blk):
                m = _embed_block(system, bi, blk.matrix_of_perm(p))
                q = system.perm_of_matrix(m)
                if q is not None:
                    gens.append(q)
        for bi in range(len(system.factors)):
            for bj in range(bi + 1, len(system.factors)):
                if system.factors[bi].spec == system.factors[bj].spec:
                    q = system.perm_of_matrix(_swap_blocks(system, bi, bj))
                    if q is not None:
                        gens.append(q)
    got = PermGroup(system, gens, name="A(%s)" % system.spec.label)
    _AUT_CACHE[id(system)] = got
    return got


def _embed_block(system: RootSystem, bi: int, m_blk: la.Matrix) -> la.Matrix:
    n = system.dim
    lo, hi = system.block_slices[bi]
    rows = []
    for i in range(n):
        if lo <= i < hi:
            rows.append(tuple([la.ZERO] * lo + list(m_blk[i - lo]) + [la.ZERO] * (n - hi)))
        else:
            rows.append(la.unit_vec(n, i))
    return tuple(rows)


def _swap_blocks(system: RootSystem, bi: int, bj: int) -> la.Matrix:
    n = system.dim
    lo1, hi1 = system.block_slices[bi]
    lo2, hi2 = system.block_slices[bj]
    assert hi1 - lo1 == hi2 - lo2
    perm = list(range(n))
    for k in range(hi1 - lo1):
        perm[lo1 + k], perm[lo2 + k] = perm[lo2 + k], perm[lo1 + k]
    return tuple(la.unit_vec(n, perm[i]) for i in range(n))


def reflection_matrix(n: int, v: la.Vector) -> la.Matrix:
    """Matrix of the reflection across the hyperplane orthogonal to v."""
    d = la.vdot(v, v)
    if d == 0:
        raise ValueError("reflection across the zero vector")
    cols = []
    for i in range(n):
        e = la.unit_vec(n, i)
        cols.append(la.vsub(e, la.vscale(2 * la.vdot(e, v) / d, v)))
    return tuple(zip(*cols))


def klein_in_weyl(system: RootSystem, quad) -> bool:
    """Whether the three double reflections attached to a 4-set of pairwise
    orthogonal roots all lie in the Weyl group.

    The reflections are taken across the differences v_i - v_j, which need
    not be roots; the literal orthogonal map is tested for membership."""
    q = list(quad)
    if len(q) != 4:
        raise ValueError("need exactly four roots")
    vs = [system.roots[i] for i in q]
    for a in range(4):
        for b in range(a + 1, 4):
            if la.vdot(vs[a], vs[b]) != 0:
                raise ValueError("roots are not pairwise orthogonal")
    W = weyl_group(system)
    for (i, j), (k, l) in [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))]:
        m1 = reflection_matrix(system.dim, la.vsub(vs[i], vs[j]))
        m2 = reflection_matrix(system.dim, la.vsub(vs[k], vs[l]))
        perm = system.perm_of_matrix(la.mat_mul(m1, m2))
        if perm is None or not W.contains(perm):
            return False
    return True
