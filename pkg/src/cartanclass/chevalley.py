"""Integer structure constants and a dense exact Lie-algebra oracle.

The constant table is built positive-height-first: each extraspecial pair
gets the positive sign, every other pair follows from the two- and
four-term bracket identities.  The dense oracle realizes the split form on
the basis {H_1..H_l} + {X_alpha} and is used to verify involutions, lifts
and quarter-turn exponentials exactly over Q(sqrt2).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import _linalg as la
from .rootsys import RootSystem

# -- the field Q(sqrt 2) -------------------------------------------------------


class Qrt2:
    """Exact numbers a + b*sqrt(2) with rational a, b."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @staticmethod
    def of(x) -> "Qrt2":
        return x if isinstance(x, Qrt2) else Qrt2(x)

    def __add__(self, other):
        o = Qrt2.of(other)
        return Qrt2(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return Qrt2(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-Qrt2.of(other))

    def __rsub__(self, other):
        return Qrt2.of(other) + (-self)

    def __mul__(self, other):
        o = Qrt2.of(other)
        return Qrt2(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def inverse(self) -> "Qrt2":
        d = self.a * self.a - 2 * self.b * self.b
        if d == 0:
            raise ZeroDivisionError("inverse of 0 in Q(sqrt2)")
        return Qrt2(self.a / d, -self.b / d)

    def __truediv__(self, other):
        return self * Qrt2.of(other).inverse()

    def __eq__(self, other):
        o = Qrt2.of(other)
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def is_rational(self) -> bool:
        return self.b == 0

    def rational(self) -> Fraction:
        if self.b != 0:
            raise ValueError("%r is irrational" % (self,))
        return self.a

    def __repr__(self):
        if self.b == 0:
            return str(self.a)
        return "(%s+%s*r2)" % (self.a, self.b)


SQRT2_HALF = Qrt2(0, Fraction(1, 2))  # sqrt(2)/2


def _qrt2_solve(rows: list[list[Qrt2]], target: list[Qrt2]) -> list[Qrt2]:
    """Solve a small square system over Q(sqrt2) by elimination."""
    n = len(rows)
    m = [list(r) + [t] for r, t in zip(rows, target)]
    for c in range(n):
        piv = next(i for i in range(c, n) if m[i][c])
        m[c], m[piv] = m[piv], m[c]
        inv = m[c][c].inverse()
        m[c] = [x * inv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [m[i][n] for i in range(n)]


# -- structure constants -------------------------------------------------------


class ChevalleyError(ValueError):
    pass


class ChevalleySystem:
    """Structure constants N(alpha,beta) over a root system."""

    def __init__(self, system: RootSystem):
        self.system = system
        self._table: dict[tuple[int, int], int] = {}
        self._build()

    # total order on positive roots: height then coordinate tuple
    def _positive_order(self):
        R = self.system
        ch = R.canonical_chamber()
        pos = sorted(ch.positive_set, key=lambda i: (ch.q_degree(i), R.roots[i]))
        return ch, pos

    def _build(self) -> None:
        R = self.system
        ch, pos = self._positive_order()
        rank_of = {idx: k for k, idx in enumerate(pos)}
        self._pos_rank = rank_of
        index = R.index
        roots = R.roots
        neg = R.negation_map
        table = self._table

        def norm2(i):
            return R.norm2(i)

        def nfun(x: int, y: int) -> int:
            """N for arbitrary sign pattern, reduced to the positive table."""
            s = la.vadd(roots[x], roots[y])
            if s not in index:
                return 0
            got = table.get((x, y))
            if got is not None:
                return got
            xp = x in rank_of
            yp = y in rank_of
            if xp and yp:
                raise AssertionError("positive pair missing from table")
            if not xp and not yp:
                val = nfun(neg[x], neg[y])
            elif xp and not yp:
                z = index[s]
                if z in rank_of:
                    # triple (x, y, -z): N(x,y)/|z|^2 = N(y,-z)/|x|^2
                    val_f = norm2(z) * nfun(y, neg[z]) / norm2(x)
                    assert val_f.denominator == 1
                    val = int(val_f)
                else:
                    val = nfun(neg[x], neg[y])
            else:
                val = -nfun(y, x)
            table[(x, y)] = val
            return val

        for gi in pos:
            if ch.q_degree(gi) < 2:
                continue
            gamma = roots[gi]
            specials = []
            for ai in pos:
                if rank_of[ai] >= rank_of[gi]:
                    continue
                rem = la.vsub(gamma, roots[ai])
                bi = index.get(rem)
                if bi is None or bi not in rank_of:
                    continue
                if rank_of[ai] < rank_of[bi]:
                    specials.append((ai, bi))
            specials.sort(key=lambda ab: rank_of[ab[0]])
            if not specials:
                raise ChevalleyError("no special pair for a composite root")
            a1, b1 = specials[0]
            _, q = R.root_string(b1, a1)
            n1 = q + 1
            table[(a1, b1)] = n1
            table[(b1, a1)] = -n1
            for (a, b) in specials[1:]:
                # four roots a1, b1, -a, -b summing to zero
                t1 = Fraction(0)
                if la.vadd(roots[b1], roots[neg[a]]) in index:
                    t1 = Fraction(nfun(b1, neg[a]) * nfun(a1, neg[b]),
                                  )
                    t1 = t1 / la.vdot(la.vsub(roots[b1], roots[a]), la.vsub(roots[b1], roots[a]))
                t2 = Fraction(0)
                if la.vadd(roots[neg[a]], roots[a1]) in index:
                    t2 = Fraction(nfun(neg[a], a1) * nfun(b1, neg[b]))
                    t2 = t2 / la.vdot(la.vsub(roots[a1], roots[a]), la.vsub(roots[a1], roots[a]))
                val_f = -(norm2(gi) * (t1 + t2)) / n1
                if val_f.denominator != 1:
                    raise ChevalleyError("non-integral structure constant")
                val = int(val_f)
                _, qq = R.root_string(b, a)
                if abs(val) != qq + 1:
                    raise ChevalleyError("constant violates the string law")
                table[(a, b)] = val
                table[(b, a)] = -val
        # fill every remaining pair
        for i in range(len(roots)):
            for j in range(len(roots)):
                if j == i or j == neg[i]:
                    continue
                if la.vadd(roots[i], roots[j]) in index:
                    nfun(i, j)

    def n(self, i: int, j: int) -> int:
        """N(alpha_i, alpha_j); zero when the sum is not a root."""
        R = self.system
        if j == R.negation_map[i] or j == i:
            raise ChevalleyError("N is undefined against +-alpha")
        return self._table.get((i, j), 0)

    def coroot(self, i: int) -> la.Vector:
        r = self.system.roots[i]
        return la.vscale(Fraction(2) / la.vdot(r, r), r)

    def coroot_coords(self, i: int) -> tuple[Fraction, ...]:
        """Coordinates of H_alpha over the simple coroots H_{alpha_k}."""
        cols = [self.coroot(b) for b in self.system.canonical_basis]
        sol = la.solve(cols, self.coroot(i))
        assert sol is not None
        return sol

    def verify_identities(self) -> None:
        """Full scan of the defining constant identities."""
        R = self.system
        neg = R.negation_map
        n_roots = len(R.roots)
        for i in range(n_roots):
            for j in range(n_roots):
                if j == i or j == neg[i]:
                    continue
                nij = self.n(i, j)
                s = la.vadd(R.roots[i], R.roots[j])
                if s not in R.index:
                    if nij != 0:
                        raise ChevalleyError("nonzero constant for a non-root sum")
                    continue
                p, q = R.root_string(j, i)
                if abs(nij) != q + 1:
                    raise ChevalleyError("|N| != q+1 at (%d,%d)" % (i, j))
                if nij != self.n(neg[i], neg[j]):
                    raise ChevalleyError("N(a,b) != N(-a,-b) at (%d,%d)" % (i, j))
                if nij != -self.n(j, i):
                    raise ChevalleyError("antisymmetry fails at (%d,%d)" % (i, j))
                k = R.index[s]
                if nij * self.n(neg[i], k) != -p * (q + 1):
                    raise ChevalleyError("product law fails at (%d,%d)" % (i, j))

    def csv_dump(self) -> str:
        lines = ["alpha_index,beta_index,N"]
        for (i, j) in sorted(self._table):
            v = self._table[(i, j)]
            if v != 0:
                lines.append("%d,%d,%d" % (i, j, v))
        return "\n".join(lines) + "\n"


_CHEV_CACHE: dict[int, ChevalleySystem] = {}


def structure_constants(system: RootSystem) -> ChevalleySystem:
    got = _CHEV_CACHE.get(id(system))
    if got is None:
        got = ChevalleySystem(system)
        _CHEV_CACHE[id(system)] = got
    return got


# -- dense algebra -------------------------------------------------------------


def _poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return tuple(out)


# characteristic polynomials admitted for the quarter-turn blocks,
# coefficient tuples in increasing degree
POLY_LAMBDA = (0, 1)
POLY_L2P1 = (1, 0, 1)
POLY_L2P4 = (4, 0, 1)
POLY_L_L2P4 = (0, 4, 0, 1)
POLY_L2P1_L2P9 = _poly_mul((1, 0, 1), (9, 0, 1))
ADMITTED_POLYS = {POLY_LAMBDA, POLY_L2P1, POLY_L2P4, POLY_L_L2P4, POLY_L2P1_L2P9}


@dataclass
class MapReport:
    is_automorphism: bool
    is_involution: bool
    violations: list


class DenseAlgebra:
    """The split form on the basis h_1..h_l, x_alpha with exact brackets.

    Elements are sparse dicts {basis index: coefficient}; indices < rank are
    the simple coroots, index rank+i is the root vector of root i.
    """

    def __init__(self, constants: ChevalleySystem):
        self.constants = constants
        R = constants.system
        self.system = R
        self.rank = len(R.canonical_basis)
        self.dim = self.rank + len(R.roots)
        # integer pairing of every root against the simple coroots
        basis = R.canonical_basis
        self._cartan_act = [
            tuple(R.pairing(i, b) for b in basis) for i in range(len(R.roots))
        ]
        self._coroot_coords = [constants.coroot_coords(i) for i in range(len(R.roots))]
        self._neg = R.negation_map
        self._sum_index = {}
        for i in range(len(R.roots)):
            for j in range(len(R.roots)):
                if j == i or j == self._neg[i]:
                    continue
                s = la.vadd(R.roots[i], R.roots[j])
                k = R.index.get(s)
                if k is not None:
                    self._sum_index[(i, j)] = k

    def x(self, root_idx: int) -> dict:
        return {self.rank + root_idx: Fraction(1)}

    def h(self, k: int) -> dict:
        return {k: Fraction(1)}

    def coroot_elem(self, root_idx: int) -> dict:
        return {k: c for k, c in enumerate(self._coroot_coords[root_idx]) if c}

    def k_elem(self, root_idx: int) -> dict:
        out = dict(self.x(root_idx))
        out.update(self.x(self._neg[root_idx]))
        return out

    def t_elem(self, root_idx: int) -> dict:
        out = dict(self.x(root_idx))
        out[self.rank + self._neg[root_idx]] = Fraction(-1)
        return out

    def bracket_basis(self, i: int, j: int) -> dict:
        """Bracket of two basis elements as a sparse dict."""
        rank = self.rank
        if i < rank and j < rank:
            return {}
        if i < rank:
            a = j - rank
            c = self._cartan_act[a][i]
            return {j: Fraction(c)} if c else {}
        if j < rank:
            a = i - rank
            c = self._cartan_act[a][j]
            return {i: Fraction(-c)} if c else {}
        a, b = i - rank, j - rank
        if b == a:
            return {}
        if b == self._neg[a]:
            return {k: -c for k, c in self.coroot_elem(a).items()}
        k = self._sum_index.get((a, b))
        if k is None:
            return {}
        n = self.constants.n(a, b)
        return {rank + k: Fraction(n)}

    def bracket(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for i, ci in u.items():
            if not ci:
                continue
            for j, cj in v.items():
                if not cj:
                    continue
                for k, ck in self.bracket_basis(i, j).items():
                    val = out.get(k, 0) + ci * cj * ck
                    if val:
                        out[k] = val
                    elif k in out:
                        del out[k]
        return out

    # -- verification ----------------------------------------------------------

    def verify_defining_items(self) -> None:
        R = self.system
        for b in R.canonical_basis:
            hh = self.coroot_elem(b)
            xb = self.x(b)
            got = self.bracket(hh, xb)
            want = {self.rank + b: Fraction(2)}
            if got != want:
                raise ChevalleyError("[H_a, X_a] != 2 X_a")
            got = self.bracket(xb, self.x(self._neg[b]))
            want = {k: -c for k, c in hh.items()}
            if got != want:
                raise ChevalleyError("[X_a, X_-a] != -H_a")

    def _jacobi_triple(self, i: int, j: int, k: int) -> bool:
        t = {}
        for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
            inner = self.bracket_basis(b, c)
            for idx, coeff in self.bracket({a: Fraction(1)}, inner).items():
                val = t.get(idx, 0) + coeff
                if val:
                    t[idx] = val
                elif idx in t:
                    del t[idx]
        return not t

    def verify_jacobi_full(self) -> None:
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                for k in range(j + 1, self.dim):
                    if not self._jacobi_triple(i, j, k):
                        raise ChevalleyError("Jacobi fails at (%d,%d,%d)" % (i, j, k))

    def verify_jacobi_sampled(self, samples: int, seed: int = 0) -> None:
        rng = random.Random(seed)
        d = self.dim
        for _ in range(samples):
            i = rng.randrange(d)
            j = rng.randrange(d)
            k = rng.randrange(d)
            if not self._jacobi_triple(i, j, k):
                raise ChevalleyError("Jacobi fails at (%d,%d,%d)" % (i, j, k))

    def verify_antisymmetry(self) -> None:
        for i in range(self.dim):
            for j in range(i, self.dim):
                lhs = self.bracket_basis(i, j)
                rhs = self.bracket_basis(j, i)
                if lhs != {k: -c for k, c in rhs.items()}:
                    raise ChevalleyError("antisymmetry fails at (%d,%d)" % (i, j))


_DENSE_CACHE: dict[int, DenseAlgebra] = {}

FULL_JACOBI_DIM_LIMIT = 140


def dense_algebra(constants: ChevalleySystem, verify: str = "basic") -> DenseAlgebra:
    """Build (and cache) the dense oracle.

    verify: "none", "basic" (defining items + antisymmetry), "full"
    (full Jacobi for dims within reach, sampled beyond).
    """
    got = _DENSE_CACHE.get(id(constants))
    if got is None:
        got = DenseAlgebra(constants)
        if verify != "none":
            got.verify_defining_items()
        if verify == "full":
            if got.dim <= FULL_JACOBI_DIM_LIMIT:
                got.verify_jacobi_full()
            else:
                got.verify_jacobi_sampled(100_000)
        _DENSE_CACHE[id(constants)] = got
    return got


# -- linear maps over Q(sqrt2) -------------------------------------------------


class LinearMap:
    """Sparse linear self-map of a dense algebra, entries in Q(sqrt2)."""

    def __init__(self, algebra: DenseAlgebra, cols: dict[int, dict[int, Qrt2]]):
        self.algebra = algebra
        self.cols = cols

    @staticmethod
    def identity(algebra: DenseAlgebra) -> "LinearMap":
        return LinearMap(algebra, {i: {i: Qrt2(1)} for i in range(algebra.dim)})

    def col(self, i: int) -> dict[int, Qrt2]:
        return self.cols.get(i, {})

    def apply(self, v: dict) -> dict:
        out: dict[int, Qrt2] = {}
        for i, c in v.items():
            c = Qrt2.of(c)
            if not c:
                continue
            for j, m in self.col(i).items():
                val = out.get(j, Qrt2(0)) + c * m
                if val:
                    out[j] = val
                elif j in out:
                    del out[j]
        return out

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self after other."""
        cols = {}
        for i in range(self.algebra.dim):
            c = self.apply(other.col(i))
            if c:
                cols[i] = c
        return LinearMap(self.algebra, cols)

    def equals(self, other: "LinearMap") -> bool:
        for i in range(self.algebra.dim):
            a = {k: v for k, v in self.col(i).items() if v}
            b = {k: v for k, v in other.col(i).items() if v}
            if a != b:
                return False
        return True

    def is_identity(self) -> bool:
        return self.equals(LinearMap.identity(self.algebra))


def apply_map(algebra: DenseAlgebra, m: LinearMap, check_involution: bool = True,
              pair_limit: int | None = None) -> MapReport:
    """Check the automorphism law [Mx,My] = M[x,y] on basis pairs and,
    optionally, involutivity; returns a report listing violations."""
    violations = []
    d = algebra.dim
    pairs = ((i, j) for i in range(d) for j in range(i + 1, d))
    count = 0
    for i, j in pairs:
        lhs = m.apply(algebra.bracket_basis(i, j))
        rhs = algebra.bracket(
            {k: v for k, v in m.col(i).items()},
            {k: v for k, v in m.col(j).items()})
        rhs = {k: Qrt2.of(v) for k, v in rhs.items() if Qrt2.of(v)}
        lhs = {k: Qrt2.of(v) for k, v in lhs.items() if Qrt2.of(v)}
        if lhs != rhs:
            violations.append((i, j))
        count += 1
        if pair_limit is not None and count >= pair_limit:
            break
    is_inv = True
    if check_involution:
        is_inv = m.compose(m).is_identity()
    return MapReport(is_automorphism=not violations, is_involution=is_inv,
                     violations=violations)


def _bracket_qrt2(algebra: DenseAlgebra, u: dict, v: dict) -> dict:
    out: dict[int, Qrt2] = {}
    for i, ci in u.items():
        ci = Qrt2.of(ci)
        if not ci:
            continue
        for j, cj in v.items():
            cj = Qrt2.of(cj)
            if not cj:
                continue
            for k, ck in algebra.bracket_basis(i, j).items():
                val = out.get(k, Qrt2(0)) + ci * cj * Qrt2.of(ck)
                if val:
                    out[k] = val
                elif k in out:
                    del out[k]
    return out


# patched in as a method for convenience
DenseAlgebra.bracket_qrt2 = lambda self, u, v: _bracket_qrt2(self, u, v)


def ad_k_char_polys(constants: ChevalleySystem, alpha_idx: int):
    """Characteristic polynomials of the invariant blocks of ad(K_alpha).

    Returns (label, coeff tuple) pairs with coefficients listed in
    increasing degree; the kernel block is reported by its minimal
    polynomial lambda.
    """
    A = dense_algebra(constants, verify="none")
    R = constants.system
    neg = R.negation_map
    k_elem = A.k_elem(alpha_idx)
    out = []
    # kernel block: K_alpha and the alpha-orthogonal part of the Cartan
    if A.bracket(k_elem, k_elem):
        raise ChevalleyError("K does not commute with itself")
    pair_row = [Fraction(R.pairing(alpha_idx, b)) for b in R.canonical_basis]
    for h_coords in la.nullspace([tuple(pair_row)]):
        h_el = {k: c for k, c in enumerate(h_coords) if c}
        if A.bracket(k_elem, h_el):
            raise ChevalleyError("Cartan kernel piece is not killed by ad(K)")
    out.append(("kernel", POLY_LAMBDA))
    # H/T block
    h_el = A.coroot_elem(alpha_idx)
    t_el = A.t_elem(alpha_idx)
    m = _block_matrix(A, k_elem, [h_el, t_el])
    out.append(("cartan_pair", _char_poly(m)))
    # V_beta blocks: strings through beta with beta - alpha not a root
    seen = set()
    for b in range(len(R.roots)):
        if b == alpha_idx or b == neg[alpha_idx] or b in seen:
            continue
        if la.vsub(R.roots[b], R.roots[alpha_idx]) in R.index:
            continue
        chain = [b]
        v = la.vadd(R.roots[b], R.roots[alpha_idx])
        while v in R.index:
            chain.append(R.index[v])
            v = la.vadd(v, R.roots[alpha_idx])
        seen.update(chain)
        vecs = [A.x(c) for c in chain]
        m = _block_matrix(A, k_elem, vecs)
        out.append(("string_%d" % b, _char_poly(m)))
    for label, poly in out:
        if poly not in ADMITTED_POLYS:
            raise ChevalleyError("unexpected block polynomial %r at %s" % (poly, label))
    return out


def _block_matrix(A: DenseAlgebra, k_elem: dict, vecs: list[dict]):
    """Matrix of ad(k_elem) on the span of vecs, exact rational entries."""
    cols = []
    basis_cols = [tuple(v.get(i, Fraction(0)) for i in range(A.dim)) for v in vecs]
    for v in vecs:
        w = A.bracket(k_elem, v)
        wt = tuple(Fraction(w.get(i, 0)) for i in range(A.dim))
        sol = la.solve(basis_cols, wt)
        if sol is None:
            raise ChevalleyError("block is not invariant")
        cols.append(sol)
    n = len(vecs)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def _char_poly(m) -> tuple:
    """Characteristic polynomial det(xI - M), coefficients by increasing
    degree, via sums of principal minors (dims <= 4)."""
    import itertools as it
    n = len(m)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    for k in range(1, n + 1):
        s = Fraction(0)
        for rows in it.combinations(range(n), k):
            s += _det([[m[i][j] for j in rows] for i in rows])
        coeffs[n - k] = s * (-1) ** k
    # det(xI - M) expansion: coefficient of x^(n-k) is (-1)^k e_k(minors)
    out = tuple(int(c) if c.denominator == 1 else c for c in coeffs)
    return out


def _det(m) -> Fraction:
    n = len(m)
    if n == 1:
        return Fraction(m[0][0])
    if n == 2:
        return Fraction(m[0][0] * m[1][1] - m[0][1] * m[1][0])
    out = Fraction(0)
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [[m[i][jj] for jj in range(n) if jj != j] for i in range(1, n)]
        out += (-1) ** j * m[0][j] * _det(minor)
    return out


# -- exact quarter-turn exponentials -------------------------------------------


def _interp_coeffs(sign: int) -> list[Qrt2]:
    """Coefficients a_0..a_6 with p(M) = exp(sign * pi/4 * M) for any M
    annihilated by M(M^2+1)(M^2+4)(M^2+9)."""
    s = SQRT2_HALF
    one = Qrt2(1)
    zero = Qrt2(0)
    # even part: a0 + a2 (ik)^2 + a4 (ik)^4 + a6 (ik)^6 = cos(k pi/4), k=0..3
    rows = [[one, Qrt2(-(k * k)), Qrt2(k ** 4), Qrt2(-(k ** 6))] for k in range(4)]
    cos_vals = [one, s, zero, -s]
    even = _qrt2_solve(rows, cos_vals)
    # odd part: a1 k - a3 k^3 + a5 k^5 = sign*sin(k pi/4), k=1..3
    rows = [[Qrt2(k), Qrt2(-(k ** 3)), Qrt2(k ** 5)] for k in range(1, 4)]
    sin_vals = [s, one, s]
    if sign < 0:
        sin_vals = [-v for v in sin_vals]
    odd = _qrt2_solve(rows, sin_vals)
    return [even[0], odd[0], even[1], odd[1], even[2], odd[2], even[3]]


def _exp_single(A: DenseAlgebra, beta_idx: int, sign: int) -> LinearMap:
    k_elem = A.k_elem(beta_idx)

    def ad(v: dict) -> dict:
        return {i: Qrt2.of(c) for i, c in _bracket_qrt2(A, k_elem, v).items()}

    coeffs = _interp_coeffs(sign)
    cols: dict[int, dict[int, Qrt2]] = {}
    for i in range(A.dim):
        v: dict[int, Qrt2] = {i: Qrt2(1)}
        acc: dict[int, Qrt2] = {}
        w = dict(v)
        for j, a in enumerate(coeffs):
            if j > 0:
                w = ad(w)
            if a:
                for idx, c in w.items():
                    val = acc.get(idx, Qrt2(0)) + a * c
                    if val:
                        acc[idx] = val
                    elif idx in acc:
                        del acc[idx]
        # annihilator check: M(M^2+1)(M^2+4)(M^2+9) v = 0
        w1 = ad(v)
        m2 = lambda u: ad(ad(u))
        chk = w1
        for shift in (1, 4, 9):
            chk = {k: c for k, c in _dict_add(m2(chk), {k: Qrt2.of(shift) * c for k, c in chk.items()}).items() if c}
        if chk:
            raise ChevalleyError("ad(K) spectrum escapes {0,+-i,+-2i,+-3i}")
        cols[i] = acc
    return LinearMap(A, cols)


def _dict_add(u: dict, v: dict) -> dict:
    out = dict(u)
    for k, c in v.items():
        val = out.get(k, Qrt2(0)) + c
        if val:
            out[k] = val
        elif k in out:
            del out[k]
    return out


def exp_quarter_pi_adk(algebra: DenseAlgebra, b_indices, sign: int = 1) -> LinearMap:
    """Exact matrix of exp(sign * pi/4 * ad(K_B)) for a strongly orthogonal
    set B, computed as the product of the commuting single-root turns."""
    b = list(b_indices)
    R = algebra.system
    for x in range(len(b)):
        for y in range(x + 1, len(b)):
            if not R.is_strongly_orthogonal(b[x], b[y]):
                raise ChevalleyError("set is not strongly orthogonal")
    out = LinearMap.identity(algebra)
    for beta in b:
        out = _exp_single(algebra, beta, sign).compose(out)
    return out
