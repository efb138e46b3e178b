"""Command-line front end: ``semirep <command> INPUT [flags]``.

Each command reads one JSON document and prints one JSON report (``dot``
prints DOT text).  Exit status is 0 when the property holds or the
construction succeeds, 1 when it fails (the report carries a witness) and
2 on bad input.
"""

from __future__ import annotations

import argparse
import random
import sys

from . import bergman, boolean, monoid, order, temperate
from .dot import emit_dot
from .semilattice import (AxiomError, FiniteSemilattice, NotALatticeError,
                          NotDistributiveError, SemilatticeHom, boolean_structure,
                          distributivity_counterexample, is_distributive, subset_label)
from .serialization import (DocumentError, LowerSetHom, PartialHom, RipInstance,
                            _read, dumps, load, to_document)

COMMANDS = ("check", "birkhoff", "embed", "extend", "factor", "tower", "verify-cone",
            "nabla", "idc", "rip-witness", "temperate", "lift", "bergman", "dot")

CHECK_FLAGS = ("distributive", "lattice", "boolean", "refinement", "riesz",
               "conical", "cancellative")


class InputError(ValueError):
    pass


def _expect(obj, typ, what):
    if not isinstance(obj, typ):
        raise InputError(f"expected {what}, got a {type(obj).__name__}")
    return obj


def _labels(S, xs):
    return [S.labels[x] for x in xs]


def _hom_table(h: SemilatticeHom) -> dict:
    return {h.source.labels[x]: h.target.labels[h(x)] for x in h.source}


def _certificate(rep: boolean.ConeReport, system, cone) -> dict:
    out = {"ok": rep.ok, "depth": rep.depth,
           "stabilization_offset": rep.stabilization_offset,
           "merges": [[i, system.stages[i].labels[x], system.stages[i].labels[y], k]
                      for i, x, y, k in rep.merges],
           "unchecked_pairs": rep.unchecked_pairs, "defect": None}
    if rep.defect is not None:
        d = rep.defect
        where = cone.apex if d.condition == "surjectivity" else system.stages[d.stage]
        out["defect"] = {"condition": d.condition, "stage": d.stage,
                         "witness": _labels(where, d.witness), "message": d.message}
    return out


# -- commands ----------------------------------------------------------------

def cmd_check(obj, args):
    wanted = [f for f in CHECK_FLAGS if getattr(args, f)]
    report, props, witness = {"valid": True}, {}, {}
    if isinstance(obj, FiniteSemilattice):
        report.update(kind="semilattice", size=len(obj))
        ce = distributivity_counterexample(obj)
        props = {"distributive": ce is None, "lattice": obj.is_lattice,
                 "boolean": boolean_structure(obj) is not None}
        if ce is not None:
            witness["distributive"] = _labels(obj, ce)
    elif isinstance(obj, monoid.FiniteCommutativeMonoid):
        report.update(kind="monoid", size=len(obj))
        pr = monoid.property_report(obj)
        props = {k: getattr(pr, k) for k in ("refinement", "riesz", "conical", "cancellative")}
        witness = {k: _labels(obj, v) for k, v in pr.witnesses.items()}
    else:
        kind = to_document(obj)["kind"]
        report["kind"] = kind
    bad = [f for f in wanted if f not in props]
    if bad:
        raise InputError(f"--{bad[0]} does not apply to a {report['kind']}")
    report.update(props)
    if len(wanted) == 1:
        report["witness"] = witness.get(wanted[0])
    else:
        report["witnesses"] = {k: witness[k] for k in wanted or props if k in witness}
    return report, all(props[f] for f in wanted)


def cmd_birkhoff(obj, args):
    S = _expect(obj, FiniteSemilattice, "a semilattice")
    try:
        P, tau = order.birkhoff(S)
    except NotDistributiveError as e:
        return {"distributive": False, "witness": _labels(S, e.witness)}, False
    except NotALatticeError as e:
        return {"lattice": False, "reason": str(e)}, False
    return {"distributive": True, "poset": to_document(P),
            "join_irreducibles": _labels(S, order.join_irreducibles(S)),
            "tau": _hom_table(tau)}, True


def cmd_embed(obj, args):
    S = _expect(obj, FiniteSemilattice, "a semilattice")
    B, j = boolean.embed_boolean(S, args.mode)
    atoms = [B.labels[1 << i][1:-1] for i in range(len(B).bit_length() - 1)]
    return {"mode": args.mode, "atoms": atoms, "size": len(B),
            "j": _hom_table(j), "injective": j.is_injective()}, True


def cmd_extend(obj, args):
    if isinstance(obj, SemilatticeHom):
        obj = PartialHom(obj.source, obj.target, tuple(enumerate(obj.map)))
    p = _expect(obj, PartialHom, "a hom document")
    ce = distributivity_counterexample(p.target)
    if ce is not None:
        return {"extended": False, "reason": "target is not distributive",
                "witness": _labels(p.target, ce)}, False
    g = boolean.extend_hom(p.source, dict(p.mapping), p.target)
    return {"extended": True, "map": list(g.map), "extension": _hom_table(g)}, True


def cmd_factor(obj, args):
    f = _expect(obj, SemilatticeHom, "a total hom document")
    ce = distributivity_counterexample(f.target)
    if ce is not None:
        return {"factored": False, "reason": "target is not distributive",
                "witness": _labels(f.target, ce)}, False
    B, phi, g = boolean.triangle_factor(f)
    ok = g.compose(phi).map == f.map and phi.kernel() == f.kernel()
    return {"factored": ok, "boolean_size": len(B), "phi": _hom_table(phi), "g": _hom_table(g),
            "kernel": [_labels(f.source, b) for b in f.kernel().blocks]}, ok


def _tower_for(S, args):
    depth = args.depth if args.depth is not None else 3
    return boolean.synth_boolean_tower(S, depth, args.variant)


def cmd_tower(obj, args):
    S = _expect(obj, FiniteSemilattice, "a semilattice")
    ce = distributivity_counterexample(S)
    if ce is not None:
        return {"distributive": False, "witness": _labels(S, ce)}, False
    system, cone = _tower_for(S, args)
    rep = boolean.verify_cone(system, cone)
    return {"variant": args.variant,
            "stages": [list(B.labels) for B in system.stages],
            "transitions": [_hom_table(t) for t in system.transitions],
            "cone": [_hom_table(l) for l in cone.legs],
            "certificate": _certificate(rep, system, cone),
            "system": to_document((system, cone))}, rep.ok


def cmd_verify_cone(obj, args):
    if isinstance(obj, FiniteSemilattice):
        system, cone = _tower_for(obj, args)
        depth = None
    else:
        if not (isinstance(obj, tuple) and len(obj) == 2):
            raise InputError("expected a system document or a semilattice")
        system, cone = obj
        if cone is None:
            raise InputError("system document has no cone")
        depth = args.depth
    rep = boolean.verify_cone(system, cone, depth)
    return _certificate(rep, system, cone), rep.ok


def cmd_nabla(obj, args):
    M = _expect(obj, monoid.FiniteCommutativeMonoid, "a monoid")
    N, proj = monoid.nabla(M)
    return {"semilattice": to_document(N),
            "projection": {M.labels[x]: N.labels[c] for x, c in enumerate(proj)}}, True


def cmd_idc(obj, args):
    M = _expect(obj, monoid.FiniteCommutativeMonoid, "a monoid")
    L, theta = monoid.idc(M)
    iso = theta.is_injective() and theta.is_surjective()
    dist = is_distributive(L)
    return {"ideals": list(L.labels), "theta": _hom_table(theta), "isomorphism": iso,
            "distributive": dist, "riesz": monoid.riesz_counterexample(M) is None}, iso and dist


def cmd_rip_witness(obj, args):
    r = _expect(obj, RipInstance, "a rip document")
    u, v, w, z = monoid.strong_rip_witness(r.n, r.a, r.b, r.c, r.d)
    return {"u": list(u), "v": list(v), "w": list(w), "z": list(z)}, True


def cmd_temperate(obj, args):
    D = _expect(obj, temperate.SetLatticeD, "a set_lattice")
    rep = temperate.verify_lift_dlat(D)
    closure = sorted(sorted(D.ground[i] for i in s) for s in temperate.bd_closure(D))
    report = {"members": list(D.as_semilattice().labels),
              "bd_closure": [subset_label(s) for s in sorted(closure, key=lambda s: (len(s), s))],
              "lift_dlat": {"ok": rep.ok, "checked": rep.checked,
                            "failures": [list(map(str, f)) for f in rep.failures[:10]]}}
    ok = rep.ok
    if args.seed is not None:
        rng = random.Random(args.seed)
        failures = []
        for k in range(args.samples):
            inst = temperate.random_refinement_instance(D, rng)
            bad = temperate.refinement_audit(*inst, D)
            if bad:
                failures.append({"instance": k, "failed": bad})
        report["refinement"] = {"seed": args.seed, "instances": args.samples,
                                "failures": failures[:10], "failed": len(failures)}
        ok = ok and not failures
    return report, ok


def cmd_lift(obj, args, raw):
    if isinstance(obj, LowerSetHom):
        checked, failures = temperate.verify_lift_maps(obj.P, obj.Q, obj.hom)
        return {"matrix": temperate.lift_hom(obj.P, obj.Q, obj.hom), "checked": checked,
                "failures": [list(f) for f in failures[:10]]}, not failures
    S = _expect(obj, FiniteSemilattice, "a poset hom or a semilattice with a chain")
    chain = raw.get("chain")
    if not isinstance(chain, list) or not chain:
        raise InputError("chain: expected a list of stages (lists of element labels)")
    stages = []
    for st in chain:
        if not isinstance(st, list) or any(str(x) not in S.labels for x in st):
            raise InputError(f"chain: {st!r} is not a list of element labels")
        stages.append([S.index(str(x)) for x in st])
    t = temperate.lift_tower(S, stages)
    return {"posets": [to_document(P) for P in t.posets], "matrices": t.matrices,
            "failures": [list(map(str, f)) for f in t.failures]}, t.ok


def cmd_bergman(obj, args):
    if isinstance(obj, FiniteSemilattice):
        ce = distributivity_counterexample(obj)
        if ce is not None:
            return {"distributive": False, "witness": _labels(obj, ce)}, False
        depth = args.depth if args.depth is not None else 3
        variant = "zero_one" if args.unital and args.variant == "plain" else args.variant
        system, _ = boolean.synth_boolean_tower(obj, depth, variant)
    else:
        if not (isinstance(obj, tuple) and len(obj) == 2):
            raise InputError("expected a semilattice or a system document")
        system = obj[0]
        depth = args.depth if args.depth is not None else len(system)
    mode = "af-cstar" if args.af_cstar else "matricial"
    tower = bergman.synth_tower(system, depth, args.unital, mode)
    rep = bergman.verify_squares(tower, system)
    return {"tower": to_document(tower),
            "sizes": [list(s.block_sizes) for s in tower.levels],
            "certificate": {"ok": rep.ok, "levels": rep.levels,
                            "defect": list(rep.defect) if rep.defect else None}}, rep.ok


# -- argument handling ----------------------------------------------------------

COMMAND_HELP = {
    "check": "validate a document and test order or monoid properties",
    "birkhoff": "join-irreducibles of a distributive lattice and the lower-set isomorphism",
    "embed": "0-preserving embedding into a Boolean semilattice",
    "extend": "extend a partial hom from a Boolean semilattice",
    "factor": "factor a hom through a Boolean semilattice with the same kernel",
    "tower": "Boolean resolution tower with a certified cone",
    "verify-cone": "certify a cone over a sequential system",
    "nabla": "maximal semilattice quotient of a monoid",
    "idc": "ideal semilattice of a monoid and the comparison map",
    "rip-witness": "nonnegative u, v, w, z with a = u+v, b = nw+z, c = u+w, d = nv+z",
    "temperate": "refinement witnesses in a temperate power",
    "lift": "lift a lower-set hom, or a chain, to positive linear maps",
    "bergman": "Bratteli tower realizing a Boolean tower",
    "dot": "Graphviz text for a Hasse or Bratteli diagram",
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="JSON document (path, or '-' for standard input)")
    common.add_argument("--depth", type=int, help="number of stages or levels")
    common.add_argument("--variant", choices=("plain", "zero", "zero-one"), default="plain")
    common.add_argument("--unital", action="store_true", help="unital Bratteli tower")
    common.add_argument("--mode", choices=("powerset", "meet-irreducible"),
                        default="meet-irreducible", help="index set of the Boolean embedding")
    common.add_argument("--af-cstar", action="store_true",
                        help="tag the Bratteli tower as AF C*-algebra data")
    common.add_argument("--seed", type=int, help="seed for randomized suites")
    common.add_argument("--samples", type=int, default=100,
                        help="instances per randomized suite (with --seed)")
    common.add_argument("--out", help="write the report here instead of standard output")
    for f in CHECK_FLAGS:
        common.add_argument(f"--{f}", action="store_true", help=f"require {f} (check only)")
    p = argparse.ArgumentParser(prog="semirep", description=__doc__.split("\n\n")[1].replace("``", "'"))
    sub = p.add_subparsers(dest="command", required=True, metavar="command")
    for c in COMMANDS:
        sub.add_parser(c, parents=[common], help=COMMAND_HELP[c])
    return p


def _dispatch(args, obj, raw):
    handlers = {"check": cmd_check, "birkhoff": cmd_birkhoff, "embed": cmd_embed,
                "extend": cmd_extend, "factor": cmd_factor, "tower": cmd_tower,
                "verify-cone": cmd_verify_cone, "nabla": cmd_nabla, "idc": cmd_idc,
                "rip-witness": cmd_rip_witness, "temperate": cmd_temperate,
                "bergman": cmd_bergman}
    if args.command == "lift":
        return cmd_lift(obj, args, raw)
    return handlers[args.command](obj, args)


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    args.variant = args.variant.replace("-", "_")
    args.mode = args.mode.replace("-", "_")
    try:
        source = sys.stdin.read() if args.input == "-" else args.input
        raw, _ = _read(source, None)
        obj = load(source)
        if args.command == "dot":
            if isinstance(obj, tuple):
                raise InputError("dot draws posets, semilattices and towers")
            _emit(emit_dot(obj), args.out)
            return 0
        if args.command in ("birkhoff", "embed", "factor", "tower", "verify-cone", "bergman") \
                and args.depth is not None and args.depth < 1:
            raise InputError("--depth must be positive")
        report, ok = _dispatch(args, obj, raw)
    except (DocumentError, AxiomError, InputError, NotALatticeError, TypeError) as e:
        print(f"semirep {args.command}: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"semirep {args.command}: {e}", file=sys.stderr)
        return 2
    report = {"command": args.command, "ok": ok, **report}
    _emit(dumps(report), args.out)
    if not ok:
        print(f"semirep {args.command}: property does not hold", file=sys.stderr)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
