"""Command-line front end: one subcommand per invocation, JSON report on stdout.

Exit codes: 0 success/holds, 1 fails or violation, 2 unknown or bound
exceeded, 64 usage error (including unreadable or malformed input).
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time

from . import __version__
from .amalgamation import (
    MissingSigma,
    OrderedChains,
    OrderedPosets,
    WtcNotFound,
    check_nabla,
    nabla,
    two_generated,
    verify_wtc_instance,
    wtc_check,
)
from .arrows import (
    BACKENDS,
    NotFoundWithinBound,
    Outcome,
    check_arrow,
    find_min_pi_arrow,
    verify_refutation,
)
from .census import census, posets_up_to_iso
from .io import (
    StructureFormatError,
    StructureViolation,
    dumps,
    structure_from_dict,
    structure_to_dict,
    template_from_dict,
)
from .multiposets import (
    Multiposet,
    Template,
    TemplateClass,
    validate_multiposet,
    verify_op_witness_multi,
    wtc_tau_for_template,
)
from .ordering_property import op_witness_via_arrow, verify_op_witness
from .param_words import InvalidWord, ParamWord, phi
from .powerset_pi import pi, pi_labels
from .structures import (
    FiniteLattice,
    FinitePoset,
    LinearlyOrderedPoset,
    embedding_violation,
    validate,
)
from .varieties import (
    NAMED_IDENTITIES,
    AmalgamNotFound,
    check_ap,
    parse_identity,
    satisfies_identity,
)

EXIT_OK, EXIT_FAIL, EXIT_UNKNOWN, EXIT_USAGE = 0, 1, 2, 64
NODE_LIMIT_ENV = "RAMSEY_POSETS_NODE_LIMIT"


class UsageError(Exception):
    pass


class InputViolation(UsageError):
    """An input file parses but breaks a structural invariant."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _default_node_limit() -> int:
    raw = os.environ.get(NODE_LIMIT_ENV)
    if raw is None:
        return 2_000_000
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{NODE_LIMIT_ENV} must be an integer") from None


class Run:
    """Collects the report fields for one command."""

    def __init__(self, command: str):
        self.command = command
        self.inputs: dict[str, str] = {}
        self.started = time.perf_counter()

    def read(self, name: str, path: str, template=None):
        try:
            with open(path, "rb") as fh:
                data = fh.read()
        except OSError as e:
            raise UsageError(f"cannot read {path}: {e.strerror}") from None
        self.inputs[name] = "sha256:" + hashlib.sha256(data).hexdigest()
        try:
            doc = json.loads(data.decode("utf-8"))
        except UnicodeDecodeError:
            raise UsageError(f"{path} is not UTF-8") from None
        except json.JSONDecodeError as e:
            raise UsageError(f"{path}: malformed JSON: {e}") from None
        if template is not None and isinstance(doc, dict):
            doc = dict(doc, template=structure_to_dict(template.poset))
        try:
            return structure_from_dict(doc)
        except StructureViolation as e:
            raise InputViolation(f"{path}: {e}") from None
        except StructureFormatError as e:
            raise UsageError(f"{path}: {e}") from None

    def note(self, name: str, value: str):
        self.inputs[name] = value

    def report(self, args, verdict: str, **fields) -> dict:
        out = {"command": self.command, "tool_version": __version__, "inputs": self.inputs,
               "verdict": verdict}
        out.update(fields)
        if not args.deterministic:
            out["wall_clock_seconds"] = round(time.perf_counter() - self.started, 6)
        return out


def _need(s, types, what: str):
    if not isinstance(s, types):
        raise UsageError(f"{what} has the wrong kind ({getattr(s, 'kind', type(s).__name__)})")
    return s


def _ordered(s, what):
    return _need(s, LinearlyOrderedPoset, what + " (expected ordered_poset)")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


# -- subcommands ------------------------------------------------------------

def cmd_validate(args, run: Run):
    template = None
    if args.template is not None:
        t, _ = run.read("template", args.template)
        template = Template(_need(t, FinitePoset, "--template"))
    try:
        s, _ = run.read("structure", args.structure, template)
    except InputViolation as e:
        return run.report(args, "violation", violation=str(e)), EXIT_FAIL
    return run.report(args, "valid", kind=s.kind, size=s.n), EXIT_OK


def cmd_pi(args, run: Run):
    run.note("n", str(args.n))
    try:
        p = pi(args.n)
    except ValueError as e:
        return run.report(args, "bound", error=str(e)), EXIT_UNKNOWN
    doc = structure_to_dict(p, pi_labels(args.n))
    v = validate(p)
    if args.emit:
        _emit(args.emit, doc)
    return run.report(args, "valid" if v is None else "invalid", structure=doc), EXIT_OK if v is None else EXIT_FAIL


def cmd_phi(args, run: Run):
    a, labels = run.read("structure", args.structure)
    _ordered(a, "--structure")
    run.note("word", args.word)
    try:
        u = ParamWord.parse(args.word)
    except InvalidWord as e:
        raise UsageError(str(e)) from None
    try:
        f = phi(a, u)
    except ValueError as e:
        raise UsageError(str(e)) from None
    v = embedding_violation(a, f.target, f.map, "ordered-order")
    images = {str(labels[i]): [p + 1 for p in range(u.n) if f.map[i] >> p & 1] for i in range(a.n)}
    if args.emit:
        _emit(args.emit, {"source": structure_to_dict(a, labels), "word": str(u), "images": images})
    return (run.report(args, "embedding" if v is None else "violation", n=u.n, images=images,
                       violation=None if v is None else str(v)),
            EXIT_OK if v is None else EXIT_FAIL)


def _emit(path: str, doc) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(dumps(doc))
    except OSError as e:
        raise UsageError(f"cannot write {path}: {e.strerror}") from None


def _host(args, run):
    if args.host_pi is not None:
        run.note("host", f"pi({args.host_pi})")
        return pi(args.host_pi)
    if args.host is None:
        raise UsageError("give --host FILE or --host-pi N")
    c, _ = run.read("host", args.host)
    return c


def cmd_arrow(args, run: Run):
    if args.pi_search is not None and (args.host or args.host_pi is not None):
        raise UsageError("--pi-search replaces --host/--host-pi")
    c = _host(args, run) if args.pi_search is None else None
    a, _ = run.read("pattern", args.a)
    b, _ = run.read("target", args.b)
    run.note("colors", str(args.k))
    if args.k < 2:
        raise UsageError("--colors must be at least 2")
    fields = {}
    if args.pi_search is not None:
        for s, name in ((a, "--pattern"), (b, "--target")):
            _ordered(s, name)
        run.note("pi_search", str(args.pi_search))
        try:
            found = find_min_pi_arrow(a, b, args.k, args.pi_search, node_limit=args.node_limit,
                                      backend=args.backend)
        except NotFoundWithinBound as e:
            return run.report(args, "not_found_within_bound", tried_up_to=e.n_max,
                              last=None if e.last is None else e.last.outcome.value), EXIT_UNKNOWN
        verdict = found.verdict
        fields["n"] = found.n
        fields["tried"] = [{"n": n, "outcome": o} for n, o in found.tried]
    else:
        if not (type(a) is type(b) is type(c)):
            raise UsageError("host, pattern and target must have the same kind")
        verdict = check_arrow(c, a, b, args.k, node_limit=args.node_limit, backend=args.backend)
    fields.update({"k": args.k, "a_copies": len(verdict.a_copies), "b_copies": len(verdict.b_copies),
                   "nodes": verdict.nodes, "backend": verdict.stats.get("backend")})
    if verdict.outcome is Outcome.FAILS:
        if not verify_refutation(verdict):
            raise AssertionError("refutation failed independent re-verification")
        fields["refutation"] = [{"copy": list(s), "color": col} for s, col in verdict.refutation_by_image()]
        return run.report(args, "fails", **fields), EXIT_FAIL
    if verdict.outcome is Outcome.HOLDS:
        return run.report(args, "holds", **fields), EXIT_OK
    return run.report(args, "unknown", **fields), EXIT_UNKNOWN


def _op_fields(report):
    out = {"verified": report.verified, "checked_pairs": report.checked_pairs, "nodes": report.nodes}
    if report.arrow_n is not None:
        out["arrow_n"] = report.arrow_n
    if report.counterexample is not None:
        out["counterexample"] = {"base_order": list(report.counterexample[0]),
                                 "witness_order": list(report.counterexample[1])}
    return out


def _op_exit(report):
    return {True: EXIT_OK, False: EXIT_FAIL, None: EXIT_UNKNOWN}[report.verified]


def cmd_op_witness(args, run: Run):
    b, _ = run.read("structure", args.structure)
    _need(b, (FinitePoset, LinearlyOrderedPoset), "--structure")
    if args.verify_only is not None:
        w, _ = run.read("candidate", args.verify_only)
        w = _need(w, (FinitePoset, LinearlyOrderedPoset), "--verify-only")
        report = verify_op_witness(b, w, node_limit=args.node_limit)
        return run.report(args, _verdict_word(report.verified), **_op_fields(report)), _op_exit(report)
    if isinstance(b, FinitePoset):
        # an unordered base: every linear extension is a base order
        report = verify_op_witness(b, b, node_limit=args.node_limit)
        if report.verified:
            witness = structure_to_dict(b)
            return run.report(args, "verified", witness=witness, **_op_fields(report)), EXIT_OK
        raise UsageError("the arrow construction needs an ordered_poset; give the base with an order")
    try:
        report = op_witness_via_arrow(b, n_max=args.n_max, node_limit=args.node_limit,
                                      arrow_node_limit=args.node_limit, backend=args.backend)
    except NotFoundWithinBound as e:
        return run.report(args, "bound", error=str(e)), EXIT_UNKNOWN
    wpos = report.witness.poset if isinstance(report.witness, LinearlyOrderedPoset) else report.witness
    witness = (structure_to_dict(wpos, pi_labels(report.arrow_n)) if report.arrow_n is not None
               else structure_to_dict(wpos))
    return run.report(args, _verdict_word(report.verified), witness=witness, **_op_fields(report)), _op_exit(report)


def _verdict_word(v):
    return {True: "verified", False: "refuted", None: "unknown"}[v]


def _class_from_spec(spec: str, run: Run):
    if spec == "ordered_poset":
        return OrderedPosets()
    if spec == "chain":
        return OrderedChains()
    if spec.startswith("multiposet:"):
        path = spec.split(":", 1)[1]
        try:
            with open(path, "rb") as fh:
                data = fh.read()
            t = template_from_dict(json.loads(data.decode("utf-8")))
        except (OSError, ValueError) as e:
            raise UsageError(f"template {path}: {e}") from None
        run.note("template", "sha256:" + hashlib.sha256(data).hexdigest())
        return TemplateClass(t)
    raise UsageError("--class is ordered_poset, chain or multiposet:TEMPLATE.json")


def cmd_wtc(args, run: Run):
    cls = _class_from_spec(args.cls, run)
    if args.tau is not None:
        tau, _ = run.read("tau", args.tau)
    elif isinstance(cls, TemplateClass):
        tau = wtc_tau_for_template(cls.template)
    else:
        raise UsageError("--tau is required outside multiposet classes")
    if not cls.contains(tau):
        raise UsageError("tau is not a member of the class")
    if args.sigmas == "auto":
        sigmas = two_generated(cls.members(args.sigma_size))
        run.note("sigmas", f"auto:{args.sigma_size}")
    else:
        sigmas = []
        for k, path in enumerate(args.sigmas.split(",")):
            s, _ = run.read(f"sigma{k}", path)
            sigmas.append(s)
    try:
        inst = wtc_check(sigmas, tau, cls, bound=args.bound)
    except WtcNotFound as e:
        return run.report(args, "not_found", sigma=structure_to_dict(e.sigma)), EXIT_UNKNOWN
    if not verify_wtc_instance(inst, cls):
        raise AssertionError("witness failed independent re-verification")
    witnesses = [{"sigma": structure_to_dict(w.sigma), "d": structure_to_dict(w.d),
                  "x": w.x, "y": w.y, "z": w.z} for w in inst.witnesses]
    return run.report(args, "found", witnesses=witnesses), EXIT_OK


def cmd_nabla(args, run: Run):
    b, _ = run.read("structure", args.structure)
    tau, _ = run.read("tau", args.tau)
    if type(b) is not type(tau):
        raise UsageError("structure and tau must have the same kind")
    cls = OrderedPosets() if isinstance(b, LinearlyOrderedPoset) else None
    if cls is None:
        raise UsageError("nabla expects ordered posets; use the library for multiposets")
    sigmas = two_generated([b]) if b.n >= 2 else []
    if not sigmas:
        return run.report(args, "built", structure=structure_to_dict(b), middles=[]), EXIT_OK
    try:
        inst = wtc_check(sigmas, tau, cls, bound=args.bound)
        result = nabla(b, inst)
    except (WtcNotFound, MissingSigma) as e:
        return run.report(args, "not_found", error=str(e)), EXIT_UNKNOWN
    if not check_nabla(b, result.structure, tau):
        raise AssertionError("nabla result failed independent re-verification")
    return run.report(args, "built", structure=structure_to_dict(result.structure),
                      middles=[list(m) for m in result.middles]), EXIT_OK


def _identity(spec: str, run: Run):
    if spec in NAMED_IDENTITIES:
        return NAMED_IDENTITIES[spec]
    if spec.startswith("custom:"):
        path = spec.split(":", 1)[1]
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise UsageError(f"cannot read {path}: {e.strerror}") from None
        run.note("identity", "sha256:" + hashlib.sha256(text.encode()).hexdigest())
        try:
            return parse_identity(text.strip())
        except ValueError as e:
            raise UsageError(f"{path}: {e}") from None
    raise UsageError("--check is distributive, modular or custom:FILE")


def cmd_identity(args, run: Run):
    lat, labels = run.read("lattice", args.lattice)
    _need(lat, FiniteLattice, "--lattice")
    lhs, rhs = _identity(args.check, run)
    res = satisfies_identity(lat, lhs, rhs)
    fields = {"identity": f"{lhs} = {rhs}"}
    if res.holds:
        return run.report(args, "holds", **fields), EXIT_OK
    fields["countermodel"] = {k: labels[v] for k, v in res.countermodel.items()}
    fields["values"] = {"lhs": labels[res.values[0]], "rhs": labels[res.values[1]]}
    return run.report(args, "fails", **fields), EXIT_FAIL


def cmd_ap_search(args, run: Run):
    a, _ = run.read("a", args.a)
    b1, _ = run.read("b1", args.b1)
    b2, _ = run.read("b2", args.b2)
    for s, name in ((a, "--a"), (b1, "--b1"), (b2, "--b2")):
        _need(s, FiniteLattice, name)
    f1, f2 = _int_list(args.f1), _int_list(args.f2)
    run.note("f1", args.f1)
    run.note("f2", args.f2)
    ident = _identity(args.identity, run) if args.identity else None
    try:
        found = check_ap(a, b1, b2, f1, f2, ident, size_bound=args.bound)
    except ValueError as e:
        raise UsageError(str(e)) from None
    except AmalgamNotFound as e:
        return run.report(args, "not_found_within_bound", bound=args.bound, error=str(e)), EXIT_UNKNOWN
    ok = (embedding_violation(b1, found.d, found.g1, "lattice") is None
          and embedding_violation(b2, found.d, found.g2, "lattice") is None
          and all(found.g1[f1[i]] == found.g2[f2[i]] for i in range(a.n))
          and (ident is None or satisfies_identity(found.d, *ident).holds))
    if not ok:
        raise AssertionError("amalgam failed independent re-verification")
    return run.report(args, "found", d=structure_to_dict(found.d), g1=list(found.g1), g2=list(found.g2)), EXIT_OK


def cmd_multiposet(args, run: Run):
    t_doc, _ = run.read("template", args.template)
    _need(t_doc, FinitePoset, "--template")
    t = Template(t_doc)
    if args.action == "validate":
        try:
            m, _ = run.read("structure", args.structure, t)
        except InputViolation as e:
            return run.report(args, "violation", violation=str(e)), EXIT_FAIL
        _need(m, Multiposet, "--structure")
        return run.report(args, "valid", size=m.n), EXIT_OK
    if args.a is None or args.b is None:
        raise UsageError("op-witness needs --a and --b")
    a, _ = run.read("a", args.a)
    b, _ = run.read("b", args.b)
    _need(a, Multiposet, "--a")
    _need(b, Multiposet, "--b")
    for s in (a, b):
        if validate_multiposet(s.unordered(), t) is not None:
            raise UsageError("structure does not conform to the template")
    report = verify_op_witness_multi(a, b, t, node_limit=args.node_limit)
    return run.report(args, _verdict_word(report.verified), **_op_fields(report)), _op_exit(report)


def cmd_gen(args, run: Run):
    run.note("n", str(args.n))
    try:
        ps = posets_up_to_iso(args.n)
    except ValueError as e:
        return run.report(args, "bound", error=str(e)), EXIT_UNKNOWN
    return run.report(args, "generated", count=len(ps), posets=[structure_to_dict(p) for p in ps]), EXIT_OK


def cmd_census(args, run: Run):
    run.note("max_n", str(args.max_n))
    try:
        rows = census(args.max_n)
    except ValueError as e:
        return run.report(args, "bound", error=str(e)), EXIT_UNKNOWN
    return run.report(args, "counted", rows=rows), EXIT_OK


# -- argument parsing ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ramsey-posets", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--deterministic", action="store_true",
                        help="omit wall-clock fields so identical inputs give identical bytes")
    common.add_argument("--out", help="write the JSON report here instead of stdout")
    common.add_argument("--node-limit", type=int, default=None,
                        help=f"search budget (default from ${NODE_LIMIT_ENV} or 2000000)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", parents=[common], help="check a structure file")
    s.add_argument("--structure", required=True)
    s.add_argument("--template")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("pi", parents=[common], help="print Π_n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--emit", help="also write Π_n as a structure file")
    s.set_defaults(func=cmd_pi)

    s = sub.add_parser("phi", parents=[common], help="Φ of an ordered poset under a parameter word")
    s.add_argument("--structure", required=True)
    s.add_argument("--word", required=True, help='e.g. "x1 0 x2"')
    s.add_argument("--emit", help="also write the map as JSON")
    s.set_defaults(func=cmd_phi)

    s = sub.add_parser("arrow", parents=[common], help="decide C ⟶ (B)^A_k")
    s.add_argument("--host", help="host structure C")
    s.add_argument("--host-pi", type=int, metavar="N", help="use Π_N as the host")
    s.add_argument("--pattern", "--a", dest="a", required=True, help="the structure A being colored")
    s.add_argument("--target", "--b", dest="b", required=True, help="the structure B sought monochromatic")
    s.add_argument("--colors", "--k", dest="k", type=int, default=2)
    s.add_argument("--backend", choices=BACKENDS, default="auto",
                   help="refutation search: SAT solver if installed (auto), backtracking, or SAT")
    s.add_argument("--pi-search", type=int, metavar="N_MAX",
                   help="instead of a host, find the least n <= N_MAX with Π_n arrowing")
    s.set_defaults(func=cmd_arrow)

    s = sub.add_parser("op-witness", parents=[common], help="ordering-property witness")
    s.add_argument("--structure", required=True)
    s.add_argument("--n-max", type=int, default=6)
    s.add_argument("--backend", choices=BACKENDS, default="auto")
    s.add_argument("--verify-only")
    s.set_defaults(func=cmd_op_witness)

    s = sub.add_parser("wtc", parents=[common], help="weak triangle condition witnesses")
    s.add_argument("--class", dest="cls", required=True)
    s.add_argument("--tau")
    s.add_argument("--sigmas", default="auto", help="auto, or comma-separated structure files")
    s.add_argument("--sigma-size", type=int, default=4, help="member size used by --sigmas auto")
    s.add_argument("--bound", type=int, default=3)
    s.set_defaults(func=cmd_wtc)

    s = sub.add_parser("nabla", parents=[common], help="the ∇ construction")
    s.add_argument("--structure", required=True)
    s.add_argument("--tau", required=True)
    s.add_argument("--bound", type=int, default=3)
    s.set_defaults(func=cmd_nabla)

    s = sub.add_parser("ap-search", parents=[common], help="bounded lattice amalgam search")
    s.add_argument("--a", required=True)
    s.add_argument("--b1", required=True)
    s.add_argument("--b2", required=True)
    s.add_argument("--f1", required=True, help="images of a's elements in b1, comma-separated")
    s.add_argument("--f2", required=True)
    s.add_argument("--identity", help="distributive, modular or custom:FILE")
    s.add_argument("--bound", type=int, default=6)
    s.set_defaults(func=cmd_ap_search)

    s = sub.add_parser("identity", parents=[common], help="check a lattice identity")
    s.add_argument("--lattice", required=True)
    s.add_argument("--check", required=True)
    s.set_defaults(func=cmd_identity)

    s = sub.add_parser("multiposet", parents=[common], help="multiposets over a template")
    s.add_argument("action", choices=("validate", "op-witness"))
    s.add_argument("--template", required=True)
    s.add_argument("--structure")
    s.add_argument("--a")
    s.add_argument("--b")
    s.set_defaults(func=cmd_multiposet)

    s = sub.add_parser("gen", parents=[common], help="posets on n points up to isomorphism")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("census", parents=[common], help="counts of small posets, lattices, ordered posets")
    s.add_argument("--max-n", type=int, default=5)
    s.set_defaults(func=cmd_census)
    return p


def run(argv=None) -> tuple[str, int, str | None]:
    """Execute one command line; returns (report text, exit code, --out path)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "multiposet" and args.action == "validate" and not args.structure:
        parser.error("multiposet validate needs --structure")
    try:
        if args.node_limit is None:
            args.node_limit = _default_node_limit()
        report, code = args.func(args, Run(args.command))
    except UsageError as e:
        return dumps({"command": args.command, "verdict": "usage_error", "error": str(e)}), EXIT_USAGE, None
    return dumps(report), code, args.out


def main(argv=None) -> int:
    text, code, out = run(argv)
    if code == EXIT_USAGE:
        sys.stderr.write(text)
    elif out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
