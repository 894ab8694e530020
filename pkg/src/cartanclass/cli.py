"""Command-line front end.

Verbs: build, involutions, sos, diagram, sigma, cayley, realforms,
cartans, verify.  All output is deterministic for fixed arguments; JSON
goes to stdout, errors to stderr.  Exit codes: 0 success, 2 usage error
(argparse), 3 mathematical-input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import diagram as dg
from . import involution as iv
from . import realform as rf
from . import rootsys as rs
from .chevalley import ChevalleyError, dense_algebra, structure_constants

MATH_ERRORS = (rs.RootSystemError, iv.InvolutionError, dg.DiagramError,
               rf.RealFormError, ChevalleyError, ValueError, KeyError)


def _system(args) -> rs.RootSystem:
    return rs.build(args.type, getattr(args, "rank", None),
                    getattr(args, "realization", "standard"))


def _parse_vectors(text: str):
    data = json.loads(text)
    return [[Fraction(str(x)) for x in row] for row in data]


def _involution_from_args(args, system: rs.RootSystem) -> iv.Involution:
    if getattr(args, "label", None):
        if args.label == "id":
            return iv.identity_involution(system)
        for lab, rep in iv.table2_representatives(system):
            if lab == args.label:
                return rep
        raise iv.InvolutionError("unknown catalog label %r" % args.label)
    if getattr(args, "images", None):
        text = sys.stdin.read() if args.images == "-" else args.images
        return iv.involution_from_images(system, _parse_vectors(text))
    raise iv.InvolutionError("provide --label or --images")


def _sigma_from_args(args, system: rs.RootSystem):
    theta = _involution_from_args(args, system)
    chamber = dg.find_s_chamber(theta)
    signs_arg = getattr(args, "signs", None)
    if signs_arg:
        order = dg.canonical_node_order(system, chamber.basis)
        if len(signs_arg) != len(order):
            raise rf.RealFormError("expected %d signs" % len(order))
        signs = {b: (1 if ch == "+" else -1) for b, ch in zip(order, signs_arg)}
        sigma = rf.sigma_from_chamber_signs(theta, chamber, signs)
    else:
        sigma = rf.quasi_split_lift(theta)
    return sigma, chamber


def _emit(obj, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print(obj if isinstance(obj, str) else json.dumps(obj, indent=2, sort_keys=True))


# -- verbs ----------------------------------------------------------------------


def cmd_build(args) -> int:
    system = _system(args)
    if args.format == "json":
        print(system.to_json_str())
    else:
        print("%s: %d roots in R^%d, rank %d" %
              (system.spec.label, len(system.roots), system.dim, system.rank))
        ch = system.canonical_chamber()
        for b in ch.basis:
            print("  simple %s" % (tuple(map(str, system.roots[b])),))
    return 0


def cmd_involutions(args) -> int:
    system = _system(args)
    rows = []
    for lab, rep in iv.table2_representatives(system):
        rows.append({
            "label": lab,
            "real": len(rep.real_set),
            "imaginary": len(rep.imaginary_set),
            "complex": len(rep.complex_set),
            "length": rep.length,
            "in_weyl": rep.in_weyl,
        })
    if args.format == "json":
        _emit(rows, "json")
    else:
        for r in rows:
            print("%-8s real=%-4d imag=%-4d complex=%-4d length=%d %s" %
                  (r["label"], r["real"], r["imaginary"], r["complex"],
                   r["length"], "W" if r["in_weyl"] else "A\\W"))
    return 0


def cmd_sos(args) -> int:
    system = _system(args)
    reps = iv.sos_classes_by_size(system)
    rows = []
    for lab, (S, is_max) in sorted(reps.items(), key=lambda kv: (len(kv[1][0]), str(kv[0]))):
        if args.size is not None and len(S) != args.size:
            continue
        row = {
            "label": str(lab),
            "size": len(S),
            "maximal": is_max,
            "representative": [[str(c) for c in system.roots[i]] for i in S],
        }
        if lab.family in ("E7", "E8") and len(lab.label) == 2:
            row["klein"] = bool(lab.label[1])
        rows.append(row)
    if args.format == "json":
        _emit(rows, "json")
    else:
        for r in rows:
            extra = " klein=%s" % r["klein"] if "klein" in r else ""
            print("%-14s size=%d maximal=%s%s" % (r["label"], r["size"], r["maximal"], extra))
    return 0


def cmd_diagram(args) -> int:
    system = _system(args)
    theta = _involution_from_args(args, system)
    chamber = dg.find_s_chamber(theta)
    d = dg.s_diagram(theta, chamber)
    print(d.render(args.format), end="" if args.format != "json" else "\n")
    return 0


def cmd_sigma(args) -> int:
    system = _system(args)
    sigma, chamber = _sigma_from_args(args, system)
    if args.restricted:
        sigma, chamber = dg.restrict_sigma(sigma, chamber)
    d = dg.sigma_diagram(sigma, chamber)
    print(d.render(args.format), end="" if args.format != "json" else "\n")
    return 0


def cmd_cayley(args) -> int:
    system = _system(args)
    sigma, _ = _sigma_from_args(args, system)
    if args.root:
        beta = system.root_index([Fraction(str(x)) for x in json.loads(args.root)])
        sigma = rf.cayley(sigma, beta)
    else:
        sigma = rf.reduce_noncompact(sigma)
    _emit(sigma.to_json(), args.format)
    return 0


def cmd_realforms(args) -> int:
    system = _system(args)
    names: dict[str, dict] = {}
    thetas = [("id", iv.identity_involution(system))] + iv.table2_representatives(system)
    for lab, theta in thetas:
        lift = rf.quasi_split_lift(theta)
        chamber = dg.find_s_chamber(theta)
        rows, _ = rf.hom_theta_constraints(theta, chamber)
        basis = list(chamber.basis)
        for mask in rf.project_span(rf.f2_solution_space(rows, len(basis)), (1 << len(basis)) - 1):
            eta_signs = {b: (-1 if mask >> k & 1 else 1) for k, b in enumerate(basis)}
            try:
                sigma = rf.sigma_from_chamber_signs(
                    theta, chamber,
                    {b: lift.f[b] * eta_signs[b] for b in basis})
            except rf.RealFormError:
                continue
            red = rf.reduce_noncompact(sigma, verify_dense=False)
            name = rf.identify(red)
            entry = names.setdefault(name.name, {
                "name": name.name, "aliases": list(name.aliases),
                "dim_k": name.dim_k, "compact": name.is_compact,
                "split": name.is_split, "cartan_involutions": []})
            if lab not in entry["cartan_involutions"]:
                entry["cartan_involutions"].append(lab)
    rows = [names[k] for k in sorted(names)]
    if args.format == "json":
        _emit(rows, "json")
    else:
        for r in rows:
            print("%-12s dim_k=%-4d cartans=%s" % (r["name"], r["dim_k"],
                                                   ",".join(r["cartan_involutions"])))
    return 0


def cmd_cartans(args) -> int:
    system = _system(args)
    sigma, _ = _sigma_from_args(args, system)
    classes = rf.cartan_classes(sigma)
    rows = [{
        "real": len(t.real_set), "imaginary": len(t.imaginary_set),
        "complex": len(t.complex_set), "length": t.length,
    } for t in classes]
    if args.format == "json":
        _emit(rows, "json")
    else:
        print("%d Cartan subalgebra classes" % len(rows))
        for r in rows:
            print("  real=%-4d imag=%-4d complex=%-4d length=%d" %
                  (r["real"], r["imaginary"], r["complex"], r["length"]))
    return 0


# -- verify suites ----------------------------------------------------------------


def _verify_table2(args) -> list[tuple[str, bool]]:
    system = _system(args)
    out = []
    reps = iv.table2_representatives(system)
    for lab, rep in reps:
        ok = True
        try:
            iv.Involution(system, rep.perm)
        except iv.InvolutionError:
            ok = False
        out.append(("table2[%s] involutive" % lab, ok))
    invs = [rep.invariants() for _, rep in reps]
    out.append(("table2 invariant separation", len(set(invs)) == len(invs)))
    return out


def _verify_chevalley(args) -> list[tuple[str, bool]]:
    system = _system(args)
    out = []
    C = structure_constants(system)
    try:
        C.verify_identities()
        out.append(("structure-constant identities", True))
    except ChevalleyError:
        out.append(("structure-constant identities", False))
    A = dense_algebra(C)
    try:
        A.verify_antisymmetry()
        if A.dim <= 140:
            A.verify_jacobi_full()
        else:
            A.verify_jacobi_sampled(100_000, seed=0)
        out.append(("bracket table jacobi", True))
    except ChevalleyError:
        out.append(("bracket table jacobi", False))
    return out


def _verify_sos_table(args) -> list[tuple[str, bool]]:
    out = []
    for fam, rank in [("A", 4), ("B", 4), ("B", 5), ("C", 4), ("C", 5),
                      ("D", 4), ("D", 5), ("F4", 4), ("G2", 2), ("E6", 6)]:
        system = rs.build(fam, rank if fam in "ABCD" else None)
        mx = iv.maximal_sos_classes(system)
        if fam == "C":
            got = sum(1 for lab, _ in mx if lab.label[0] >= 1)
        else:
            got = len(mx)
        out.append(("max-sos-count %s" % system.spec.label,
                    got == iv.max_sos_class_count(fam, system.rank)))
    return out


def _verify_empty(args) -> list[tuple[str, bool]]:
    system = rs.build(rs.RootSystemSpec(factors=()))
    ok = len(system.roots) == 0
    from .weylgroup import weyl_group
    ok = ok and weyl_group(system).order == 1
    return [("empty-system vacuous checks", ok)]


def _verify_lemma_dual(args) -> list[tuple[str, bool]]:
    from ._linalg import vdot
    from .tables import dual_vector_table
    out = []
    for label, system, omega, msys in dual_vector_table():
        ok = system.in_dual_lattice(omega)
        ok = ok and all(vdot(system.roots[i], omega) == 1 for i in msys)
        out.append(("dual-vector %s" % label, ok))
    return out


SUITES = {
    "table2": _verify_table2,
    "chevalley": _verify_chevalley,
    "sos-table": _verify_sos_table,
    "empty-system": _verify_empty,
    "dual-vectors": _verify_lemma_dual,
}


def cmd_verify(args) -> int:
    fn = SUITES.get(args.suite)
    if fn is None:
        print("unknown suite %r (have: %s)" % (args.suite, ", ".join(sorted(SUITES))),
              file=sys.stderr)
        return 2
    results = fn(args)
    failed = 0
    for name, ok in results:
        print("%s %s" % ("PASS" if ok else "FAIL", name))
        if not ok:
            failed += 1
    return 1 if failed else 0


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cartanclass")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, need_type=True):
        if need_type:
            sp.add_argument("--type", required=True, choices=rs.FAMILIES)
            sp.add_argument("--rank", type=int, default=None)
            sp.add_argument("--realization", default="standard",
                            choices=("standard", "prime"))
        sp.add_argument("--format", default="text",
                        choices=("text", "json", "ascii", "dot"))

    sp = sub.add_parser("build", help="construct a root system")
    common(sp)
    sp.set_defaults(fn=cmd_build)

    sp = sub.add_parser("involutions", help="catalog of involution classes")
    common(sp)
    sp.set_defaults(fn=cmd_involutions)

    sp = sub.add_parser("sos", help="strongly orthogonal set classes")
    common(sp)
    sp.add_argument("--size", type=int, default=None)
    sp.add_argument("--list-classes", action="store_true")
    sp.set_defaults(fn=cmd_sos)

    for verb, fn in (("diagram", cmd_diagram), ("sigma", cmd_sigma),
                     ("cayley", cmd_cayley), ("cartans", cmd_cartans)):
        sp = sub.add_parser(verb)
        common(sp)
        sp.add_argument("--label", default=None,
                        help="catalog label of the involution (or 'id')")
        sp.add_argument("--images", default=None,
                        help="JSON list of simple-root images ('-' for stdin)")
        if verb in ("sigma", "cayley", "cartans"):
            sp.add_argument("--signs", default=None,
                            help="signs (+/-) on the S-chamber basis")
        if verb == "sigma":
            sp.add_argument("--restricted", action="store_true")
        if verb == "cayley":
            sp.add_argument("--root", default=None,
                            help="JSON coordinates of the transform root")
        sp.set_defaults(fn=fn)

    sp = sub.add_parser("realforms", help="real forms by quasi-split twisting")
    common(sp)
    sp.set_defaults(fn=cmd_realforms)

    sp = sub.add_parser("verify", help="run a named check suite")
    sp.add_argument("suite")
    sp.add_argument("--type", default="A", choices=rs.FAMILIES)
    sp.add_argument("--rank", type=int, default=None)
    sp.add_argument("--realization", default="standard",
                    choices=("standard", "prime"))
    sp.set_defaults(fn=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except MATH_ERRORS as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
