"""Involutions of a root system: partition into fixed / negated / moved
roots, decomposition into a special part and strongly orthogonal
reflections, classification of strongly orthogonal sets, and the catalog
of involution class representatives per family.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from . import _linalg as la
from .rootsys import RootSystem, RootSystemError
from .weylgroup import (Perm, full_aut_group, identity_perm, klein_in_weyl,
                        perm_mul, reflection_matrix, weyl_group)


class InvolutionError(ValueError):
    pass


class Involution:
    """An order-two orthogonal symmetry of a root system."""

    def __init__(self, system: RootSystem, perm: Perm):
        self.system = system
        self.perm = tuple(perm)
        if perm_mul(self.perm, self.perm) != identity_perm(len(system.roots)):
            raise InvolutionError("permutation does not square to the identity")
        neg = system.negation_map
        real, imag, cplx = [], [], []
        for i, j in enumerate(self.perm):
            if j == i:
                real.append(i)
            elif j == neg[i]:
                imag.append(i)
            else:
                cplx.append(i)
        self.real_set = frozenset(real)
        self.imaginary_set = frozenset(imag)
        self.complex_set = frozenset(cplx)

    def __call__(self, idx: int) -> int:
        return self.perm[idx]

    def __eq__(self, other):
        return isinstance(other, Involution) and self.system is other.system \
            and self.perm == other.perm

    def __hash__(self):
        return hash((id(self.system), self.perm))

    def apply_vec(self, v: la.Vector) -> la.Vector:
        return la.mat_vec(self.matrix, v)

    @cached_property
    def matrix(self) -> la.Matrix:
        return self.system.matrix_of_perm(self.perm)

    @cached_property
    def in_weyl(self) -> bool:
        return weyl_group(self.system).contains(self.perm)

    @cached_property
    def length(self) -> int:
        pool = positive_representatives(self.system, self.imaginary_set)
        return len(max_orthogonal_subset(self.system, pool))

    def is_special(self) -> bool:
        return not self.imaginary_set

    def invariants(self):
        """Conjugation invariants used to separate classes cheaply."""
        return (
            len(self.real_set), len(self.imaginary_set), self.length,
            self.in_weyl,
            subsystem_type(self.system, self.real_set),
            subsystem_type(self.system, self.imaginary_set),
        )

    def to_json(self, with_class_label: bool = False) -> dict:
        out = {
            "matrix": [[str(c) for c in row] for row in self.matrix],
            "partition": {
                "real": len(self.real_set),
                "imaginary": len(self.imaginary_set),
                "complex": len(self.complex_set),
            },
            "length": self.length,
            "in_weyl": self.in_weyl,
        }
        if with_class_label:
            try:
                out["class_label"] = class_label(self)
            except InvolutionError:
                out["class_label"] = None
        return out

    def __repr__(self):
        return "Involution(%s, r=%d/i=%d/c=%d)" % (
            self.system.spec.label, len(self.real_set),
            len(self.imaginary_set), len(self.complex_set))


# -- constructors --------------------------------------------------------------


def identity_involution(system: RootSystem) -> Involution:
    return Involution(system, identity_perm(len(system.roots)))


def antipodal_involution(system: RootSystem) -> Involution:
    return Involution(system, tuple(system.negation_map))


def involution_from_matrix(system: RootSystem, m: la.Matrix) -> Involution:
    if not la.is_orthogonal(m):
        raise InvolutionError("map is not an isometry")
    perm = system.perm_of_matrix(m)
    if perm is None:
        raise InvolutionError("map does not preserve the root set")
    return Involution(system, perm)


def involution_from_images(system: RootSystem, images) -> Involution:
    """Involution from the images of the canonical simple roots.

    Images are coordinate vectors in the ambient space; the induced map
    must be an isometry of order at most two preserving the root set.
    """
    srcs = [system.roots[b] for b in system.canonical_basis]
    imgs = [tuple(Fraction(x) for x in v) for v in images]
    if len(imgs) != len(srcs):
        raise InvolutionError("expected %d images" % len(srcs))
    try:
        m = la.map_from_images(srcs, imgs)
    except ValueError as exc:
        raise InvolutionError(str(exc))
    return involution_from_matrix(system, m)


def from_reflections(system: RootSystem, vectors) -> Involution:
    """Product of reflections across the given (not necessarily root)
    vectors; raises unless the result is an involution preserving roots."""
    m = la.identity(system.dim)
    for v in vectors:
        vv = tuple(Fraction(x) for x in v)
        m = la.mat_mul(reflection_matrix(system.dim, vv), m)
    return involution_from_matrix(system, m)


def complex_type_involution(system: RootSystem, iso: la.Matrix | None = None) -> Involution:
    """The factor-swapping involution of a two-factor union.

    iso maps the first factor's ambient space onto the second's (identity
    by default); the swap sends (a', a'') to (iso^-1 a'', iso a')."""
    if system.factors is None or len(system.factors) != 2:
        raise InvolutionError("complex type needs a two-factor union")
    f1, f2 = system.factors
    d = f1.dim
    if f2.dim != d:
        raise InvolutionError("factors have different ambient dimensions")
    if iso is None:
        iso = la.identity(d)
    iso_inv = la.invert(iso)
    n = system.dim
    rows = []
    for i in range(n):
        row = [la.ZERO] * n
        if i < d:
            for j in range(d):
                row[d + j] = iso_inv[i][j]
        else:
            for j in range(d):
                row[j] = iso[i - d][j]
        rows.append(tuple(row))
    theta = involution_from_matrix(system, tuple(rows))
    if theta.complex_set != frozenset(range(len(system.roots))):
        raise InvolutionError("swap did not make every root complex")
    return theta


# -- orthogonal set machinery ---------------------------------------------------


def positive_representatives(system: RootSystem, subset) -> list[int]:
    pos = system.canonical_chamber().positive_set
    out = [i for i in subset if i in pos]
    out.sort(key=lambda i: (system.norm2(i), i))
    return out


def max_orthogonal_subset(system: RootSystem, pool: list[int]) -> list[int]:
    """Largest pairwise orthogonal subset; deterministic first maximum with
    shortest-norm-then-index greedy order and backtracking."""
    if not pool:
        return []
    bound = la.rank([system.roots[i] for i in pool])
    best: list[int] = []

    def dfs(chosen: list[int], cands: list[int]) -> bool:
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
            if len(best) == bound:
                return True
        if len(chosen) + len(cands) <= len(best):
            return False
        for k, c in enumerate(cands):
            rest = [d for d in cands[k + 1:] if system.dot(c, d) == 0]
            if dfs(chosen + [c], rest):
                return True
        return False

    dfs([], pool)
    return best


def strongly_orthogonalize(system: RootSystem, idxs) -> tuple[int, ...]:
    """Replace a pairwise orthogonal set by a strongly orthogonal one with
    the same span (and cardinality)."""
    cur = list(idxs)
    for a in range(len(cur)):
        for b in range(a + 1, len(cur)):
            if system.dot(cur[a], cur[b]) != 0:
                raise InvolutionError("set is not pairwise orthogonal")
    changed = True
    while changed:
        changed = False
        for a in range(len(cur)):
            for b in range(a + 1, len(cur)):
                if not system.is_strongly_orthogonal(cur[a], cur[b]):
                    s = la.vadd(system.roots[cur[a]], system.roots[cur[b]])
                    d = la.vsub(system.roots[cur[a]], system.roots[cur[b]])
                    cur[a] = system.root_index(s)
                    cur[b] = system.root_index(d)
                    changed = True
        # loop until stable; each swap strictly increases total norm
    pos = system.canonical_chamber().positive_set
    neg = system.negation_map
    return tuple(sorted(i if i in pos else neg[i] for i in cur))


def decompose(theta: Involution) -> tuple[Involution, tuple[int, ...]]:
    """Split theta into a special involution and strongly orthogonal
    reflections: theta = eps o s_B with B inside the negated set."""
    R = theta.system
    pool = positive_representatives(R, theta.imaginary_set)
    b_orth = max_orthogonal_subset(R, pool)
    b_strong = strongly_orthogonalize(R, b_orth) if b_orth else ()
    s_b = identity_perm(len(R.roots))
    for b in b_strong:
        s_b = perm_mul(R.reflection_perm(b), s_b)
    eps = Involution(R, perm_mul(theta.perm, s_b))
    if not eps.is_special():
        raise InvolutionError("decomposition failed to erase the negated set")
    if perm_mul(eps.perm, s_b) != theta.perm:
        raise InvolutionError("decomposition does not recompose")
    if len(b_strong) != theta.length:
        raise InvolutionError("decomposition size differs from the length")
    return eps, b_strong


# -- subsystem typing ------------------------------------------------------------


def subsystem_type(system: RootSystem, subset) -> tuple:
    """Multiset of irreducible types spanned by a closed subset of roots,
    each reported as (rank, size, long_count)."""
    idxs = sorted(subset)
    if not idxs:
        return ()
    # span closure
    span = [system.roots[i] for i in idxs]
    closed = [i for i in range(len(system.roots))
              if la.solve(span, system.roots[i]) is not None]
    # split into orthogonal components
    comps: list[list[int]] = []
    for i in closed:
        hit = [c for c in comps if any(system.dot(i, j) != 0 for j in c)]
        merged = [i]
        for c in hit:
            merged.extend(c)
            comps.remove(c)
        comps.append(merged)
    out = []
    for c in comps:
        rank = la.rank([system.roots[i] for i in c])
        top = max(system.norm2(j) for j in c)
        longs = sum(1 for i in c if system.norm2(i) == top)
        out.append((rank, len(c), longs, top))
    return tuple(sorted(out))


# -- strongly orthogonal set classification --------------------------------------


@dataclass(frozen=True)
class SosClass:
    family: str
    label: tuple

    def __str__(self):
        fam = self.family
        if fam == "A" or fam == "E6":
            return "S_%d(%s)" % (self.label[0], fam)
        if fam in ("B", "C", "D"):
            return "S_%d,%d(%s)" % (self.label[0], self.label[1], fam)
        if fam in ("E7", "E8"):
            if len(self.label) == 2:
                return "S_%d^%s(%s)" % (self.label[0], "I" if self.label[1] else "II", fam)
            return "S_%d(%s)" % (self.label[0], fam)
        return "S_%d,%d(%s)" % (self.label[0], self.label[1], fam)


def _supports(system: RootSystem, idxs):
    return [frozenset(k for k, c in enumerate(system.roots[i]) if c != 0) for i in idxs]


def classify_sos(system: RootSystem, idxs) -> SosClass:
    """Equivalence-class label of a strongly orthogonal set."""
    S = sorted(set(idxs))
    if not system.strongly_orthogonal_set(S):
        raise InvolutionError("set is not strongly orthogonal")
    fam = system.spec.family
    if fam is None:
        raise InvolutionError("classification needs an irreducible system")
    k = len(S)
    if fam == "A":
        return SosClass("A", (k,))
    if fam == "E6":
        return SosClass("E6", (k,))
    if fam in ("E7", "E8"):
        if k == 4:
            return SosClass(fam, (4, klein_in_weyl(system, S)))
        if fam == "E7" and k == 3:
            flag = _completes_to_klein(system, S)
            return SosClass(fam, (3, flag))
        return SosClass(fam, (k,))
    if fam in ("F4", "G2"):
        longs = sum(1 for i in S if system.is_long(i))
        return SosClass(fam, (longs, k - longs))
    if fam == "C":
        longs = sum(1 for i in S if system.is_long(i))
        return SosClass("C", (k - longs, longs))
    if fam in ("B", "D"):
        sups = _supports(system, S)
        paired = 0
        seen = {}
        for s in sups:
            seen[s] = seen.get(s, 0) + 1
        shorts = sum(1 for s in sups if len(s) == 1)
        paired = sum(c for c in seen.values() if c == 2)
        unpaired_longs = sum(1 for s in sups if len(s) == 2 and seen[s] == 1)
        if fam == "B":
            return SosClass("B", (unpaired_longs, paired + shorts))
        return SosClass("D", (unpaired_longs, paired // 2))
    raise InvolutionError("unhandled family %r" % fam)


def _completes_to_klein(system: RootSystem, triple) -> bool:
    for g in range(len(system.roots)):
        if g in triple:
            continue
        if all(system.dot(g, s) == 0 for s in triple):
            if klein_in_weyl(system, list(triple) + [g]):
                return True
    return False


def max_sos_class_count(family: str, rank: int) -> int:
    """Number of equivalence classes of maximal strongly orthogonal
    systems, with the convention used by the source classification
    (type C counts the classes containing a short root)."""
    if family == "A":
        return 1
    if family == "B":
        return 2 if rank % 2 == 0 else 1
    if family == "C":
        return rank // 2
    if family in ("D", "E6", "E7", "E8", "G2"):
        return 1
    if family == "F4":
        return 2
    raise RootSystemError("unknown family %r" % family)


def sos_classes_by_size(system: RootSystem):
    """Enumerate one representative per equivalence class, with maximality.

    Returns a dict {SosClass: (representative tuple, is_maximal)}.
    Representatives are grown size by size; the family label is a complete
    class invariant, so label dedup realizes the classification (every
    class of size s+1 is reached by extending some size-s representative).
    """
    n = len(system.roots)

    def extensions_of(S):
        return [g for g in range(n) if g not in S
                and all(system.is_strongly_orthogonal(g, s) for s in S)]

    reps: dict[SosClass, tuple[int, ...]] = {}
    frontier: list[tuple[int, ...]] = [()]
    while frontier:
        new_frontier = []
        for S in frontier:
            seen_here = set()
            for g in extensions_of(S):
                S2 = tuple(sorted(S + (g,)))
                lab2 = classify_sos(system, S2)
                if lab2 in reps or lab2 in seen_here:
                    continue
                seen_here.add(lab2)
                reps[lab2] = S2
                new_frontier.append(S2)
        frontier = new_frontier
    return {lab: (S, not extensions_of(S)) for lab, S in reps.items()}


def maximal_sos_classes(system: RootSystem) -> list[tuple[SosClass, tuple[int, ...]]]:
    reps = sos_classes_by_size(system)
    return sorted(((lab, S) for lab, (S, is_max) in reps.items() if is_max),
                  key=lambda t: (len(t[1]), str(t[0])))


# -- special involutions ----------------------------------------------------------


def special_involutions(system: RootSystem) -> list[Involution]:
    """Class representatives of involutions without negated roots."""
    if system.factors is not None:
        raise InvolutionError("special census handles irreducible systems")
    fam = system.spec.family
    out = [identity_involution(system)]
    eps = None
    n = system.dim
    if fam == "A" and system.rank >= 2:
        m = tuple(tuple(-la.ONE if j == n - 1 - i else la.ZERO for j in range(n))
                  for i in range(n))
        eps = involution_from_matrix(system, m)
    elif fam == "D":
        m = tuple(tuple((la.ONE if (i == j and i < n - 1) else
                         (-la.ONE if (i == j == n - 1) else la.ZERO))
                        for j in range(n)) for i in range(n))
        eps = involution_from_matrix(system, m)
    elif fam == "E6":
        if system.spec.realization == "prime":
            rows = []
            for i in range(8):
                row = [la.ZERO] * 8
                if i < 6:
                    row[6 - i - 1] = -la.ONE
                elif i == 6:
                    row[7] = -la.ONE
                else:
                    row[6] = -la.ONE
                rows.append(tuple(row))
            eps = involution_from_matrix(system, tuple(rows))
        else:
            # the diagram flip of the canonical positive system
            from .weylgroup import diagram_automorphisms
            for p in diagram_automorphisms(system):
                if p != identity_perm(len(system.roots)) and \
                        perm_mul(p, p) == identity_perm(len(system.roots)):
                    eps = Involution(system, p)
                    break
    if eps is not None and not eps.is_special():
        raise InvolutionError("census produced a non-special involution")
    if eps is not None and eps.perm != identity_perm(len(system.roots)):
        out.append(eps)
    return out


# -- the catalog of involution classes ---------------------------------------------


def _e(i, n):
    return la.unit_vec(n, i - 1)


def _table2_rows(system: RootSystem):
    """(label, list of reflection vectors) rows for the family catalog."""
    fam, rank = system.spec.family, system.rank
    if fam == "E7" and system.spec.realization == "prime":
        raise InvolutionError("the catalog is stated on the standard "
                              "realization of E7")
    n = system.dim
    rows = []
    if fam == "A":
        half = (rank + 1) // 2
        for h in range(1, half + 1):
            rows.append(("w%d" % h,
                         [la.vsub(_e(2 * i - 1, n), _e(2 * i, n)) for i in range(1, h + 1)]))
        for p in range(0, half + 1):
            vecs = [la.vadd(_e(i, n), _e(rank + 2 - i, n)) for i in range(1, p + 1)]
            vecs += [_e(k, n) for k in range(p + 1, rank + 2 - p)]
            rows.append(("e%d" % p, vecs))
    elif fam in ("B", "C", "D"):
        for r1 in range(0, rank // 2 + 1):
            for r2 in range(0, rank - 2 * r1 + 1):
                if r1 == r2 == 0:
                    continue
                vecs = [la.vsub(_e(2 * i - 1, n), _e(2 * i, n)) for i in range(1, r1 + 1)]
                vecs += [_e(k, n) for k in range(rank - r2 + 1, rank + 1)]
                rows.append(("r%d,%d" % (r1, r2), vecs))
    elif fam == "E6" and system.spec.realization == "standard":
        rows = [
            ("w1", [la.vsub(_e(1, n), _e(2, n))]),
            ("w2", [_e(1, n), _e(2, n)]),
            ("w3", [_e(1, n), _e(2, n), la.vsub(_e(3, n), _e(4, n))]),
            ("w4", [_e(1, n), _e(2, n), _e(3, n), _e(4, n)]),
        ]
    elif fam == "E6" and system.spec.realization == "prime":
        rows = [
            ("e1", [la.vadd(_e(1, n), _e(6, n)), la.vadd(_e(2, n), _e(5, n)),
                    la.vadd(_e(3, n), _e(4, n))]),
            ("e2", [la.vadd(_e(1, n), _e(6, n)), la.vadd(_e(2, n), _e(5, n)),
                    _e(3, n), _e(4, n)]),
            ("e3", [la.vadd(_e(1, n), _e(6, n)), _e(2, n), _e(3, n), _e(4, n), _e(5, n)]),
            ("e4", [_e(i, n) for i in range(1, 7)]),
        ]
    elif fam == "E7":
        rows = [
            ("1", [la.vsub(_e(1, n), _e(2, n))]),
            ("2", [_e(1, n), _e(2, n)]),
            ("3", [_e(1, n), _e(2, n), la.vsub(_e(3, n), _e(4, n))]),
            ("4", [la.vsub(_e(1, n), _e(2, n)), la.vsub(_e(3, n), _e(4, n)),
                   la.vsub(_e(5, n), _e(6, n))]),
            ("5", [_e(1, n), _e(2, n), _e(3, n), _e(4, n)]),
            ("6", [_e(1, n), _e(2, n), la.vsub(_e(3, n), _e(4, n)),
                   la.vsub(_e(5, n), _e(6, n))]),
            ("7", [_e(1, n), _e(2, n), _e(3, n), _e(4, n), la.vsub(_e(5, n), _e(6, n))]),
            ("8", [_e(i, n) for i in range(1, 7)]),
            ("9", [_e(i, n) for i in range(1, 7)] + [la.vadd(_e(7, n), _e(8, n))]),
        ]
    elif fam == "E8":
        rows = [
            ("1", [la.vsub(_e(1, n), _e(2, n))]),
            ("2", [_e(1, n), _e(2, n)]),
            ("3", [_e(1, n), _e(2, n), la.vsub(_e(3, n), _e(4, n))]),
            ("4", [_e(1, n), _e(2, n), _e(3, n), _e(4, n)]),
            ("5", [_e(1, n), _e(2, n), la.vsub(_e(3, n), _e(4, n)),
                   la.vsub(_e(5, n), _e(6, n))]),
            ("6", [_e(1, n), _e(2, n), _e(3, n), _e(4, n), la.vsub(_e(5, n), _e(6, n))]),
            ("7", [_e(i, n) for i in range(1, 7)]),
            ("8", [_e(i, n) for i in range(1, 7)] + [la.vsub(_e(7, n), _e(8, n))]),
            ("9", [_e(i, n) for i in range(1, 9)]),
        ]
    elif fam == "F4":
        rows = [
            ("1", [_e(1, n)]),
            ("2", [la.vsub(_e(1, n), _e(2, n))]),
            ("3", [_e(1, n), la.vsub(_e(2, n), _e(3, n))]),
            ("4", [_e(1, n), _e(2, n)]),
            ("5", [_e(1, n), _e(2, n), _e(3, n)]),
            ("6", [_e(2, n), _e(3, n), la.vadd(_e(1, n), _e(4, n))]),
            ("7", [_e(1, n), _e(2, n), _e(3, n), _e(4, n)]),
        ]
    elif fam == "G2":
        rows = [
            ("1", [la.vsub(_e(1, n), _e(2, n))]),
            ("2", [la.vsub(la.vscale(2, _e(1, n)), la.vadd(_e(2, n), _e(3, n)))]),
            ("3", [_e(1, n), _e(2, n), _e(3, n)]),
        ]
    else:
        raise InvolutionError("no catalog for %r" % (system.spec,))
    return rows


def table2_representatives(system: RootSystem) -> list[tuple[str, Involution]]:
    """The catalog involutions, instantiated and checked involutive.

    Rows whose maps coincide on the root set (degenerate low ranks) are
    listed once; rows acting as the identity are dropped."""
    out = []
    seen: set[Perm] = set()
    ident = identity_perm(len(system.roots))
    for label, vecs in _table2_rows(system):
        theta = from_reflections(system, vecs)
        if theta.perm == ident or theta.perm in seen:
            continue
        seen.add(theta.perm)
        out.append((label, theta))
    return out


# -- equivalence ------------------------------------------------------------------


def equivalent_involutions(t1: Involution, t2: Involution, group: str = "W") -> bool:
    """Conjugacy inside the Weyl group ("W") or the full group ("A")."""
    if t1.system is not t2.system:
        raise InvolutionError("involutions live on different systems")
    if t1.perm == t2.perm:
        return True
    G = weyl_group(t1.system) if group == "W" else full_aut_group(t1.system)
    return G.conjugator(t1.perm, t2.perm) is not None


def class_label(theta: Involution, group: str = "W") -> str:
    """Catalog label of the involution class (identity labeled 'id').

    Matching runs against the catalog of theta's realization; invariant
    vectors prefilter before any conjugacy search.  When no catalog row
    matches under W-conjugacy, the full automorphism group is tried (the
    D4 triality orbit folds several W-classes onto one catalog row)."""
    if theta.perm == identity_perm(len(theta.system.roots)):
        return "id"
    rows = table2_representatives(theta.system)
    inv = theta.invariants()
    candidates = [(lab, rep) for lab, rep in rows if rep.invariants() == inv]
    for lab, rep in candidates:
        if equivalent_involutions(theta, rep, group):
            return lab
    if group == "W":
        for lab, rep in candidates:
            if equivalent_involutions(theta, rep, "A"):
                return lab
    raise InvolutionError("involution matches no catalog row")
