"""Real forms over a fixed split/compact pair, encoded by sign functions.

A real form with a chosen Cartan subalgebra is the pair (theta, f): the
root-system involution plus a sign on every root, subject to the cocycle
conditions tying the signs to the structure constants.  Negated roots
split into compact (+1) and noncompact (-1); quarter-turn conjugations on
the dense oracle move between Cartan subalgebras of the same form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import _linalg as la
from .chevalley import (ChevalleySystem, DenseAlgebra, LinearMap, Qrt2,
                        dense_algebra, exp_quarter_pi_adk, structure_constants)
from .involution import (Involution, InvolutionError, antipodal_involution,
                         decompose)
from .rootsys import RootSystem
from .weylgroup import Perm, identity_perm, perm_mul, weyl_group


class RealFormError(ValueError):
    pass


# -- sign homomorphisms -------------------------------------------------------------


class SignHom:
    """Multiplicative sign character of the root lattice, cut out by a
    vector pairing integrally with every root."""

    def __init__(self, system: RootSystem, omega):
        self.system = system
        self.omega = tuple(Fraction(x) for x in omega)
        if not system.in_dual_lattice(self.omega):
            raise RealFormError("vector does not pair integrally with the roots")

    def on_vec(self, v) -> int:
        d = la.vdot(tuple(Fraction(x) for x in v), self.omega)
        if d.denominator != 1:
            raise RealFormError("sign undefined off the root lattice")
        return -1 if int(d) % 2 else 1

    def __call__(self, idx: int) -> int:
        return self.on_vec(self.system.roots[idx])


def eta_from_omega(system: RootSystem, omega) -> SignHom:
    return SignHom(system, omega)


def in_hom_theta(theta: Involution, omega) -> bool:
    """Whether the sign character respects the involution: the pairing of
    alpha - theta(alpha) against omega is even for every root."""
    R = theta.system
    om = tuple(Fraction(x) for x in omega)
    if not R.in_dual_lattice(om):
        return False
    for i in range(len(R.roots)):
        d = la.vdot(la.vsub(R.roots[i], R.roots[theta(i)]), om)
        if d.denominator != 1 or int(d) % 2:
            return False
    return True


# -- the sign-function datum ---------------------------------------------------------


class AntiInvolution:
    """(theta, f): a real form fixing the split/compact reference pair,
    together with the Cartan subalgebra cut out by theta.

    f maps root indices to +-1; it always covers the negated roots; when
    full=True it covers every root and the cocycle laws are verified."""

    def __init__(self, theta: Involution, f: dict[int, int],
                 constants: ChevalleySystem | None = None, full: bool | None = None):
        self.theta = theta
        self.system = theta.system
        self.f = dict(f)
        self.constants = constants or structure_constants(self.system)
        if full is None:
            full = len(self.f) == len(self.system.roots)
        self.full = full
        missing = [i for i in theta.imaginary_set if i not in self.f]
        if missing:
            raise RealFormError("signs missing on negated roots")
        self.compact_set = frozenset(i for i in theta.imaginary_set if self.f[i] == 1)
        self.noncompact_set = frozenset(i for i in theta.imaginary_set if self.f[i] == -1)
        self._verify()

    def _verify(self) -> None:
        R = self.system
        neg = R.negation_map
        for i, v in self.f.items():
            if v not in (1, -1):
                raise RealFormError("sign values must be +-1")
            j = self.theta(i)
            if j in self.f and self.f[i] * self.f[j] != 1:
                raise RealFormError("sign is not constant along the involution")
            if neg[i] in self.f and self.f[neg[i]] != self.f[i]:
                raise RealFormError("sign differs at opposite roots")
        if self.full:
            n = self.constants
            for (i, j), nij in n._table.items():
                if nij == 0:
                    continue
                k = R.index.get(la.vadd(R.roots[i], R.roots[j]))
                if k is None:
                    continue
                lhs = nij * self.f[k]
                rhs = n.n(self.theta(i), self.theta(j)) * self.f[i] * self.f[j]
                if lhs != rhs:
                    raise RealFormError("cocycle law fails at roots (%d,%d)" % (i, j))

    def f_at(self, idx: int) -> int:
        got = self.f.get(idx)
        if got is None:
            raise RealFormError("sign unknown at root %d (partial datum)" % idx)
        return got

    def to_json(self) -> dict:
        out = {
            "theta": self.theta.to_json(),
            "compact": sorted(self.compact_set),
            "noncompact": sorted(self.noncompact_set),
            "signature": signature(self).to_json(),
        }
        if self.full:
            ch = self.system.canonical_chamber()
            out["f_on_simple"] = {str(b): self.f[b] for b in ch.basis}
        try:
            out["name"] = identify(self).name
        except (RealFormError, InvolutionError):
            out["name"] = None
        return out

    def __repr__(self):
        return "AntiInvolution(%s, compact=%d, noncompact=%d)" % (
            self.system.spec.label, len(self.compact_set), len(self.noncompact_set))


# -- dense-oracle bridge --------------------------------------------------------------


def sigma_dense(algebra: DenseAlgebra, sigma: AntiInvolution) -> LinearMap:
    if not sigma.full:
        raise RealFormError("dense form needs the full sign function")
    R = algebra.system
    cols: dict[int, dict[int, Qrt2]] = {}
    for k, b in enumerate(R.canonical_basis):
        tgt = sigma.theta(b)
        cols[k] = {kk: Qrt2.of(c) for kk, c in algebra.coroot_elem(tgt).items()}
    for i in range(len(R.roots)):
        cols[algebra.rank + i] = {algebra.rank + sigma.theta(i): Qrt2.of(sigma.f[i])}
    return LinearMap(algebra, cols)


def f_from_dense(algebra: DenseAlgebra, m: LinearMap) -> tuple[Perm, dict[int, int]]:
    """Read (theta, f) off a monomial dense map; errors on any entry that
    is not exactly 0 or +-1 on the root-vector block."""
    R = algebra.system
    rank = algebra.rank
    images = []
    f = {}
    for i in range(len(R.roots)):
        col = m.col(rank + i)
        entries = [(k, v) for k, v in col.items() if v]
        if len(entries) != 1:
            raise RealFormError("root column is not monomial")
        k, v = entries[0]
        if k < rank:
            raise RealFormError("root vector mapped into the torus part")
        if not v.is_rational() or v.rational() not in (1, -1):
            raise RealFormError("irrational or non-unit sign in the dense map")
        images.append(k - rank)
        f[i] = int(v.rational())
    for k, b in enumerate(R.canonical_basis):
        want = {kk: Qrt2.of(c) for kk, c in algebra.coroot_elem(images[b]).items()}
        got = {kk: v for kk, v in m.col(k).items() if v}
        if got != want:
            raise RealFormError("torus block inconsistent with the root images")
    return tuple(images), f


def psi_map(algebra: DenseAlgebra, eta: SignHom) -> LinearMap:
    cols: dict[int, dict[int, Qrt2]] = {}
    for k in range(algebra.rank):
        cols[k] = {k: Qrt2(1)}
    for i in range(len(algebra.system.roots)):
        cols[algebra.rank + i] = {algebra.rank + i: Qrt2.of(eta(i))}
    return LinearMap(algebra, cols)


def eps_sharp_map(algebra: DenseAlgebra, eps: Involution, chamber) -> LinearMap:
    """The canonical lift fixing the chosen simple root vectors."""
    R = algebra.system
    n = algebra.constants.n
    pos = sorted(chamber.positive_set, key=lambda i: (chamber.q_degree(i), R.roots[i]))
    sign: dict[int, int] = {}
    for b in chamber.basis:
        sign[b] = 1
    for g in pos:
        if g in sign:
            continue
        piece = next((b for b in chamber.basis
                      if la.vsub(R.roots[g], R.roots[b]) in R.index
                      and R.index[la.vsub(R.roots[g], R.roots[b])] in sign), None)
        if piece is None:
            raise RealFormError("no height reduction found for a positive root")
        rest = R.index[la.vsub(R.roots[g], R.roots[piece])]
        num = n(eps(piece), eps(rest))
        den = n(piece, rest)
        if num % den:
            raise RealFormError("sign recursion hit a non-unit ratio")
        sign[g] = sign[piece] * sign[rest] * (num // den)
        if abs(sign[g]) != 1:
            raise RealFormError("sign recursion left the unit group")
    neg = R.negation_map
    for g in pos:
        sign[neg[g]] = sign[g]
    cols: dict[int, dict[int, Qrt2]] = {}
    for k, b in enumerate(R.canonical_basis):
        cols[k] = {kk: Qrt2.of(c) for kk, c in algebra.coroot_elem(eps(b)).items()}
    for i in range(len(R.roots)):
        cols[algebra.rank + i] = {algebra.rank + eps(i): Qrt2.of(sign[i])}
    return LinearMap(algebra, cols)


# -- dual-lattice vectors -------------------------------------------------------------


def _coweight_vectors(system: RootSystem) -> list[la.Vector]:
    basis_vecs = [system.roots[b] for b in system.canonical_basis]
    out = []
    for j in range(len(basis_vecs)):
        cols = [tuple(bv[m] for bv in basis_vecs) for m in range(system.dim)]
        target = tuple(la.ONE if i == j else la.ZERO for i in range(len(basis_vecs)))
        w = la.solve(cols, target)
        if w is None:
            raise RealFormError("no coweight vector")
        out.append(tuple(w))
    return out


def omega_for_targets(system: RootSystem, b_indices, targets,
                      parity_of: Involution | None = None) -> la.Vector | None:
    """A dual-lattice vector with prescribed pairings against the given
    roots; with parity_of set, the vector additionally pairs evenly with
    alpha - parity_of(alpha) for every root (so its sign character is
    compatible with that involution).  None when no such vector exists."""
    ch = system.canonical_chamber()
    coweights = _coweight_vectors(system)
    ncw = len(coweights)
    rows = []
    rhs = []
    slack = 0
    for b, t in zip(b_indices, targets):
        rows.append(list(ch.coords(b)))
        rhs.append(t)
    if parity_of is not None:
        for b in system.canonical_basis:
            diff = la.vsub(system.roots[b], system.roots[parity_of(b)])
            sol = la.solve([system.roots[x] for x in ch.basis], diff)
            row = [int(c) for c in sol]
            if any(c % 2 for c in row):
                rows.append(row)
                rhs.append(0)
                slack += 1
    if not rows:
        return la.zero_vec(system.dim)
    n_parity = slack
    full_rows = []
    for k, row in enumerate(rows):
        pad = [0] * n_parity
        parity_index = k - (len(rows) - n_parity)
        if parity_index >= 0:
            pad[parity_index] = -2
        full_rows.append(row + pad)
    sol = la.solve_integer(full_rows, rhs)
    if sol is None:
        return None
    out = la.zero_vec(system.dim)
    for c, w in zip(sol[:ncw], coweights):
        out = la.vadd(out, la.vscale(c, w))
    return out


def omega_for_set(system: RootSystem, b_indices) -> la.Vector:
    """A dual-lattice vector pairing to one with every root of a strongly
    orthogonal set (integer solve over the coweight basis)."""
    out = omega_for_targets(system, b_indices, [1] * len(list(b_indices)))
    if out is None:
        raise RealFormError("no integral vector pairs to one with the set")
    return out


# -- quasi-split lifts ----------------------------------------------------------------


def quasi_split_lift(theta: Involution) -> AntiInvolution:
    """The quasi-split sign datum over an involution: conjugate a sign
    character by the quarter turn of the decomposition set, times the
    canonical lift of the special part."""
    R = theta.system
    if R.factors is not None:
        raise RealFormError("lifts are computed per irreducible factor")
    constants = structure_constants(R)
    A = dense_algebra(constants)
    eps, b_set = decompose(theta)
    ident = identity_perm(len(R.roots))
    special = eps.perm != ident

    def sharp_of(omega):
        psi = psi_map(A, SignHom(R, omega))
        if not b_set:
            return psi
        e_plus = exp_quarter_pi_adk(A, b_set, 1)
        e_minus = exp_quarter_pi_adk(A, b_set, -1)
        return e_plus.compose(psi).compose(e_minus)

    candidates = []
    if not special:
        candidates.append(sharp_of(omega_for_set(R, b_set)))
    else:
        from .diagram import find_s_chamber
        ch_eps = find_s_chamber(eps)
        esh = eps_sharp_map(A, eps, ch_eps)
        # sign of the canonical special lift on the decomposition roots
        s_signs = []
        for b in b_set:
            col = esh.col(A.rank + b)
            s_signs.append(int(col[A.rank + eps(b)].rational()))
        omega = omega_for_targets(R, b_set, [1] * len(b_set), parity_of=eps)
        mu = omega_for_targets(R, b_set,
                               [0 if s > 0 else 1 for s in s_signs],
                               parity_of=eps)
        if omega is not None and mu is not None:
            candidates.append(esh.compose(psi_map(A, SignHom(R, mu)))
                              .compose(sharp_of(omega)))
        plain = omega_for_set(R, b_set)
        candidates.append(esh.compose(sharp_of(plain)))
        candidates.append(esh.compose(psi_map(A, SignHom(R, plain)))
                          .compose(sharp_of(plain)))
    last_err = None
    for cand in candidates:
        try:
            perm, f = f_from_dense(A, cand)
            if perm != theta.perm:
                raise RealFormError("candidate lift induces the wrong involution")
            sigma = AntiInvolution(theta, f, constants, full=True)
        except RealFormError as exc:
            last_err = exc
            continue
        if any(b not in sigma.noncompact_set for b in b_set):
            last_err = RealFormError("decomposition roots came out compact")
            continue
        return sigma
    raise RealFormError("no quasi-split lift candidate verified: %s" % last_err)


def twist(sigma: AntiInvolution, eta: SignHom) -> AntiInvolution:
    if not in_hom_theta(sigma.theta, eta.omega):
        raise RealFormError("character is not compatible with the involution")
    f2 = {i: v * eta(i) for i, v in sigma.f.items()}
    return AntiInvolution(sigma.theta, f2, sigma.constants, full=sigma.full)


# -- signature ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SignatureCounts:
    n1: int
    n2: int
    n3: int
    n3k: int
    n3p: int
    ell: int
    ellk: int
    ellp: int
    dim_k: int
    dim_p: int

    def to_json(self) -> dict:
        return dict(vars(self))

    def __post_init__(self):
        assert self.n3 == self.n3k + self.n3p
        assert self.ell == self.ellk + self.ellp
        assert self.dim_k == self.ellk + self.n1 + 2 * self.n2 + 2 * self.n3k
        assert self.dim_p == self.ellp + self.n1 + 2 * self.n2 + 2 * self.n3p


def signature(sigma: AntiInvolution) -> SignatureCounts:
    theta = sigma.theta
    R = theta.system
    rank = R.rank
    tr = sum(theta.matrix[i][i] for i in range(R.dim)) - (R.dim - rank)
    assert (rank + tr) % 2 == 0
    ellp = int(rank + tr) // 2
    ellk = rank - ellp
    n1 = len(theta.real_set) // 2
    n2 = len(theta.complex_set) // 4
    n3k = len(sigma.compact_set) // 2
    n3p = len(sigma.noncompact_set) // 2
    return SignatureCounts(
        n1=n1, n2=n2, n3=n3k + n3p, n3k=n3k, n3p=n3p,
        ell=rank, ellk=ellk, ellp=ellp,
        dim_k=ellk + n1 + 2 * n2 + 2 * n3k,
        dim_p=ellp + n1 + 2 * n2 + 2 * n3p,
    )


# -- Cayley transforms ---------------------------------------------------------------------


def cayley(sigma: AntiInvolution, beta: int, verify_dense: bool = True) -> AntiInvolution:
    """Move the Cartan subalgebra along a noncompact negated root.

    The involution becomes theta o s_beta; negated roots orthogonal to
    beta keep their sign when strongly orthogonal and flip it when the sum
    or difference with beta is a root.  With verify_dense the same data is
    recomputed by a quarter-turn conjugation on the dense oracle."""
    R = sigma.system
    if beta not in sigma.noncompact_set:
        raise RealFormError("transform root must be negated and noncompact")
    theta2 = Involution(R, perm_mul(sigma.theta.perm, R.reflection_perm(beta)))
    f2: dict[int, int] = {}
    for i in sigma.theta.imaginary_set:
        if i not in theta2.imaginary_set:
            continue
        if R.is_strongly_orthogonal(i, beta):
            f2[i] = sigma.f[i]
        else:
            f2[i] = -sigma.f[i]
    for i in theta2.imaginary_set:
        if i not in f2:
            raise RealFormError("new negated root outside the old negated set")
    if verify_dense and sigma.full:
        A = dense_algebra(sigma.constants)
        e_plus = exp_quarter_pi_adk(A, [beta], 1)
        e_minus = exp_quarter_pi_adk(A, [beta], -1)
        dense2 = e_plus.compose(sigma_dense(A, sigma)).compose(e_minus)
        perm, f_full = f_from_dense(A, dense2)
        if perm != theta2.perm:
            raise RealFormError("dense transform induces the wrong involution")
        for i in theta2.imaginary_set:
            if f_full[i] != f2[i]:
                raise RealFormError("dense and combinatorial signs disagree")
        return AntiInvolution(theta2, f_full, sigma.constants, full=True)
    return AntiInvolution(theta2, f2, sigma.constants, full=False)


def _max_long_sos_in(system: RootSystem, pool: list[int]) -> list[int]:
    """Inclusion-maximal strongly orthogonal subset of the pool with the
    largest number of long roots, longs ordered first."""
    longs = [i for i in pool if system.is_long(i)]
    shorts = [i for i in pool if not system.is_long(i)]
    best: list[int] = []

    def dfs(chosen, cands):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        if len(chosen) + len(cands) <= len(best):
            return
        for k, c in enumerate(cands):
            dfs(chosen + [c],
                [d for d in cands[k + 1:] if system.is_strongly_orthogonal(c, d)])

    dfs([], longs)
    out = list(best)
    for s in shorts:
        if all(system.is_strongly_orthogonal(s, x) for x in out):
            out.append(s)
    return out


def reduce_noncompact(sigma: AntiInvolution, verify_dense: bool = True) -> AntiInvolution:
    """Cayley chain emptying the noncompact set; the result has the same
    form with a maximally vector Cartan subalgebra."""
    cur = sigma
    guard = 0
    while cur.noncompact_set:
        guard += 1
        if guard > len(sigma.system.roots):
            raise RealFormError("transform chain did not terminate")
        from .involution import positive_representatives
        pool = positive_representatives(cur.system, cur.noncompact_set)
        chain = _max_long_sos_in(cur.system, pool)
        if not chain:
            raise RealFormError("no transform root available")
        for b in chain:
            if b not in cur.noncompact_set:
                raise RealFormError("chain root turned compact prematurely")
            cur = cayley(cur, b, verify_dense=verify_dense)
    return cur


def is_quasi_split(sigma: AntiInvolution) -> bool:
    """Whether the noncompact set contains a maximal strongly orthogonal
    system of the negated subsystem.

    Maximality is measured inside the negated subsystem: no negated root
    may stay orthogonal to the whole set (such a survivor would stay
    negated after the transform chain and blacken the reduced diagram)."""
    R = sigma.system
    from .involution import positive_representatives
    nc = positive_representatives(R, sigma.noncompact_set)
    imag = positive_representatives(R, sigma.theta.imaginary_set)
    if not imag:
        return True

    def nothing_survives(S):
        return not any(all(R.dot(g, s) == 0 for s in S) for g in imag
                       if g not in S)

    def dfs(S, cands):
        if S and nothing_survives(S):
            return True
        for k, c in enumerate(cands):
            if dfs(S + [c], [d for d in cands[k + 1:]
                             if R.is_strongly_orthogonal(c, d)]):
                return True
        return False

    return dfs([], nc)


# -- isomorphism and identification ------------------------------------------------------


def isomorphic(s1: AntiInvolution, s2: AntiInvolution) -> bool:
    """Same form with conjugate Cartan data: the (compact, noncompact)
    pairs must be conjugate under the Weyl group."""
    if s1.system is not s2.system:
        raise RealFormError("data live on different systems")
    if len(s1.compact_set) != len(s2.compact_set) or \
            len(s1.noncompact_set) != len(s2.noncompact_set):
        return False
    if s1.theta.perm == s2.theta.perm:
        from .diagram import find_s_chamber
        ch = find_s_chamber(s1.theta)
        bullets = [b for b in ch.basis if b in s1.theta.imaginary_set]
        if all(s1.f[b] == s2.f[b] for b in bullets):
            return True
    W = weyl_group(s1.system)
    got = W.transporter_pair((tuple(s1.compact_set), tuple(s1.noncompact_set)),
                             (frozenset(s2.compact_set), frozenset(s2.noncompact_set)))
    return got is not None


@dataclass(frozen=True)
class RealFormName:
    name: str
    aliases: tuple[str, ...]
    family: str
    rank: int
    dim_k: int
    is_compact: bool
    is_split: bool

    def __str__(self):
        return self.name


def _name_table(family: str, rank: int) -> dict[int, list[str]]:
    out: dict[int, list[str]] = {}

    def add(dim_k: int, name: str):
        out.setdefault(dim_k, []).append(name)

    if family == "A":
        n = rank + 1
        for p in range(0, n // 2 + 1):
            q = n - p
            name = "su(%d)" % n if p == 0 else "su(%d,%d)" % (p, q)
            add(p * p + q * q - 1, name)
        add(n * (n - 1) // 2, "sl(%d,R)" % n)
        if n % 2 == 0:
            m = n // 2
            add(m * (2 * m + 1), "su*(%d)" % n)
    elif family == "B":
        n = 2 * rank + 1
        for p in range(0, rank + 1):
            q = n - p
            name = "so(%d)" % n if p == 0 else "so(%d,%d)" % (p, q)
            add(p * (p - 1) // 2 + q * (q - 1) // 2, name)
    elif family == "C":
        for p in range(0, rank // 2 + 1):
            q = rank - p
            name = "sp(%d)" % rank if p == 0 else "sp(%d,%d)" % (p, q)
            add(p * (2 * p + 1) + q * (2 * q + 1), name)
        add(rank * rank, "sp(%d,R)" % (2 * rank))
    elif family == "D":
        n = 2 * rank
        for p in range(0, rank + 1):
            q = n - p
            name = "so(%d)" % n if p == 0 else "so(%d,%d)" % (p, q)
            add(p * (p - 1) // 2 + q * (q - 1) // 2, name)
        add(rank * rank, "so*(%d)" % n)
    elif family == "E6":
        for d, nm in [(78, "e6"), (36, "EI"), (38, "EII"), (46, "EIII"), (52, "EIV")]:
            add(d, nm)
    elif family == "E7":
        for d, nm in [(133, "e7"), (63, "EV"), (69, "EVI"), (79, "EVII")]:
            add(d, nm)
    elif family == "E8":
        for d, nm in [(248, "e8"), (120, "EVIII"), (136, "EIX")]:
            add(d, nm)
    elif family == "F4":
        for d, nm in [(52, "f4"), (24, "FI"), (36, "FII")]:
            add(d, nm)
    elif family == "G2":
        for d, nm in [(14, "g2"), (6, "G")]:
            add(d, nm)
    else:
        raise RealFormError("no name table for family %r" % family)
    return out


_SPLIT_DIM_K = {
    "A": lambda r: (r + 1) * r // 2,
    "B": lambda r: r * (r - 1) // 2 + (r + 1) * r // 2,
    "C": lambda r: r * r,
    "D": lambda r: r * (r - 1),
    "E6": lambda r: 36, "E7": lambda r: 63, "E8": lambda r: 120,
    "F4": lambda r: 24, "G2": lambda r: 6,
}


def identify(sigma: AntiInvolution) -> RealFormName:
    """Canonical name of the real form from its maximal-compact dimension."""
    R = sigma.system
    if R.factors is not None:
        raise RealFormError("identification handles irreducible systems")
    fam, rank = R.spec.family, R.rank
    sig = signature(sigma)
    table = _name_table(fam, rank)
    names = table.get(sig.dim_k)
    if not names:
        raise RealFormError("no real form of %s with dim k = %d"
                            % (R.spec.label, sig.dim_k))
    total = rank + len(R.roots)
    return RealFormName(
        name=names[0], aliases=tuple(names[1:]), family=fam, rank=rank,
        dim_k=sig.dim_k,
        is_compact=(sig.dim_k == total),
        is_split=(sig.dim_k == _SPLIT_DIM_K[fam](rank)),
    )


# -- Cartan subalgebra classes --------------------------------------------------------------


def cartan_classes(sigma: AntiInvolution) -> list[Involution]:
    """Involution classes of the Cartan subalgebras of the form.

    Transform chains extend the decomposition set of the maximally vector
    datum by pairwise orthogonal fixed roots of the special part; the
    classes of the resulting involutions (modulo Weyl elements commuting
    with the special part) stand for the Cartan subalgebras."""
    R = sigma.system
    reduced = reduce_noncompact(sigma, verify_dense=False)
    eps, base = decompose(reduced.theta)
    W = weyl_group(R)
    from .involution import positive_representatives
    pool = [i for i in positive_representatives(R, eps.real_set)
            if all(R.dot(i, b) == 0 for b in base)]

    def theta_of(S) -> Involution:
        perm = eps.perm
        for b in S:
            perm = perm_mul(perm, R.reflection_perm(b))
        return Involution(R, perm)

    ident = identity_perm(len(R.roots))
    special = eps.perm != ident

    def same_class(t1: Involution, t2: Involution) -> bool:
        if t1.perm == t2.perm:
            return True
        if (len(t1.imaginary_set), len(t1.real_set)) != \
                (len(t2.imaginary_set), len(t2.real_set)):
            return False
        pairs = [(eps.perm, eps.perm)] if special else []
        return W.conjugator(t1.perm, t2.perm, pairs=pairs) is not None

    reps: list[tuple[tuple[int, ...], Involution]] = [(tuple(base), theta_of(base))]
    frontier = [tuple(base)]
    while frontier:
        new_frontier = []
        for S in frontier:
            for g in pool:
                if g in S or not all(R.dot(g, s) == 0 for s in S):
                    continue
                S2 = tuple(sorted(S + (g,)))
                t2 = theta_of(S2)
                if any(same_class(t2, t) for _, t in reps):
                    continue
                reps.append((S2, t2))
                new_frontier.append(S2)
        frontier = new_frontier
    return [t for _, t in sorted(reps, key=lambda st: (len(st[0]), st[0]))]


def sigma_from_chamber_signs(theta: Involution, chamber,
                             signs: dict[int, int]) -> AntiInvolution:
    """Sign datum from prescribed values on (part of) a chamber basis.

    Extends the given signs through the cocycle recurrence by height and
    verifies the result; unspecified basis signs are solved for (first
    consistent assignment in +1-first order).  Raises when the
    prescription is inconsistent."""
    free = [b for b in chamber.basis if b not in signs]
    if free:
        last = None
        for bits in itertools.product((1, -1), repeat=len(free)):
            full_signs = dict(signs)
            full_signs.update(zip(free, bits))
            try:
                return sigma_from_chamber_signs(theta, chamber, full_signs)
            except RealFormError as exc:
                last = exc
        raise RealFormError("no consistent completion of the signs: %s" % last)
    R = theta.system
    n = structure_constants(R).n
    f: dict[int, int] = {}
    for b in chamber.basis:
        v = signs[b]
        if v not in (1, -1):
            raise RealFormError("sign values must be +-1")
        f[b] = v
    pos = sorted(chamber.positive_set,
                 key=lambda i: (chamber.q_degree(i), R.roots[i]))
    for g in pos:
        if g in f:
            continue
        piece = next((b for b in chamber.basis
                      if la.vsub(R.roots[g], R.roots[b]) in R.index
                      and R.index[la.vsub(R.roots[g], R.roots[b])] in f), None)
        if piece is None:
            raise RealFormError("no height reduction for a positive root")
        rest = R.index[la.vsub(R.roots[g], R.roots[piece])]
        num = n(theta(piece), theta(rest))
        den = n(piece, rest)
        if num % den:
            raise RealFormError("sign recurrence hit a non-unit ratio")
        f[g] = (num // den) * f[piece] * f[rest]
    for g in pos:
        f[R.negation_map[g]] = f[g]
    return AntiInvolution(theta, f, full=True)


# -- compact Cartan enumeration -----------------------------------------------------------


def sigma_from_basis_signs(system: RootSystem, signs: dict[int, int],
                           theta: Involution | None = None) -> AntiInvolution:
    """Multiplicative sign datum over the all-negating involution from
    signs on the canonical simple roots."""
    if theta is None:
        theta = antipodal_involution(system)
    ch = system.canonical_chamber()
    f = {}
    for i in range(len(system.roots)):
        cs = ch.coords(i)
        v = 1
        for k, b in enumerate(ch.basis):
            if cs[k] % 2:
                v *= signs[b]
        f[i] = v
    return AntiInvolution(theta, f, full=True)


def compact_cartan_enumeration(system: RootSystem, dedupe: bool = True) -> list[AntiInvolution]:
    """Sign data over the all-negating involution, one per form when
    dedupe is set; each entry may be queried with is_quasi_split."""
    if system.factors is not None:
        raise RealFormError("enumeration handles irreducible systems")
    ch = system.canonical_chamber()
    theta = antipodal_involution(system)
    out: list[AntiInvolution] = []
    for bits in itertools.product((1, -1), repeat=len(ch.basis)):
        signs = dict(zip(ch.basis, bits))
        sigma = sigma_from_basis_signs(system, signs, theta)
        if dedupe and any(isomorphic(sigma, other) for other in out):
            continue
        out.append(sigma)
    return out


# -- parity constraints (mod-2 description of the twist group) ------------------------------


def hom_theta_constraints(theta: Involution, chamber) -> tuple[list[int], list[int]]:
    """Mod-2 description of the compatible sign characters on a chamber.

    Returns (rows, bullet_mask): each row is a bitmask over the chamber
    basis positions encoding one parity condition sum(c_j) = 0; the mask
    marks the positions of the negated simple roots."""
    R = theta.system
    basis = list(chamber.basis)
    rows = []
    for b in basis:
        if b in theta.imaginary_set or b in theta.real_set:
            continue
        diff = la.vsub(R.roots[b], R.roots[theta(b)])
        sol = la.solve([R.roots[x] for x in basis], diff)
        if sol is None or any(c.denominator != 1 for c in sol):
            raise RealFormError("difference left the root lattice")
        mask = 0
        for k, c in enumerate(sol):
            if int(c) % 2:
                mask |= 1 << k
        if mask:
            rows.append(mask)
    bullet_mask = 0
    for k, b in enumerate(basis):
        if b in theta.imaginary_set:
            bullet_mask |= 1 << k
    return rows, bullet_mask


def f2_solution_space(rows: list[int], nbits: int) -> list[int]:
    """Basis of the mod-2 solution space of the given parity rows."""
    reduced: list[int] = []
    for row in rows:
        r = row
        for pr in reduced:
            if r >> (pr.bit_length() - 1) & 1:
                r ^= pr
        if r:
            p = r.bit_length() - 1
            reduced = [br ^ r if br >> p & 1 else br for br in reduced]
            reduced.append(r)
    pivots = {pr.bit_length() - 1: pr for pr in reduced}
    basis = []
    for free in range(nbits):
        if free in pivots:
            continue
        v = 1 << free
        for p, pr in pivots.items():
            if _parity(v & (pr ^ (1 << p))):
                v ^= 1 << p
        basis.append(v)
    return basis


def _parity(x: int) -> int:
    return bin(x).count("1") & 1


def project_span(vectors: list[int], mask: int) -> set[int]:
    """All elements of the span of the bit-vectors, restricted to mask."""
    out = {0}
    for v in vectors:
        vm = v & mask
        out |= {x ^ vm for x in out}
    return out
