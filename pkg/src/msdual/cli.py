"""Command-line interface: ``msdual <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from .config import DEFAULT_BOUNDS, ResourceGuardError
from .core import (
    Label,
    MultisegmentSyntaxError,
    VertexRing,
    degree,
    flat,
    format_multisegment,
    from_label,
    is_aperiodic,
    parse_multisegment,
    reduce_mod,
    to_label,
)
from .crystal import crystal_graph, e_tilde, epsilon, f_tilde, highest_weight_path, string_sums
from .involution import NonAperiodicError, mullineux, mw_dual, partition_to_multisegment, sharp, tau
from .laurent import LaurentPoly, format_laurent

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2, 3
DEFAULT_FORMATS = {"graph": "dot", "canonical": "table"}


class UsageError(Exception):
    pass


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def parse_dim(text: str, ring: VertexRing) -> dict[int, int]:
    """``1,1`` lists ``d_0, d_1, ...``; ``-1:2,0:1`` gives explicit vertices."""
    out: dict[int, int] = {}
    if ":" in text:
        for part in text.split(","):
            try:
                i, k = part.split(":")
                out[ring.norm(int(i))] = out.get(ring.norm(int(i)), 0) + int(k)
            except ValueError:
                raise UsageError(f"bad degree entry {part!r}") from None
    else:
        for i, k in enumerate(_ints(text)):
            if k:
                out[ring.norm(i)] = out.get(ring.norm(i), 0) + k
    if any(k < 0 for k in out.values()):
        raise UsageError("degree entries must be nonnegative")
    return {i: k for i, k in out.items() if k}


def _emit(args, text: str, payload) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _ms(args, text: str):
    return parse_multisegment(text, args.ring)


# ---------------------------------------------------------------------------
# subcommands


def cmd_dual(args) -> int:
    m = _ms(args, args.multisegment)
    ops = {"tau": tau, "sharp": sharp, "flat": flat, "mw": mw_dual}
    out = ops[args.op](m)
    _emit(args, format_multisegment(out), {"input": format_multisegment(m), "op": args.op, "ring": str(args.ring), "result": format_multisegment(out), "segments": out.to_json()})
    return EXIT_OK


def cmd_crystal_op(args) -> int:
    m = _ms(args, args.multisegment)
    op = args.op
    if op == "path":
        path = highest_weight_path(m)
        text = f"rebuild {' '.join(map(str, path.rebuild)) or '(empty)'} from {format_multisegment(path.top)}"
        _emit(args, text, {"rebuild": list(path.rebuild), "removal": list(path.removal), "top": format_multisegment(path.top)})
        return EXIT_OK
    if args.i is None:
        raise UsageError(f"--i is required for --op {op}")
    i = args.i
    if op == "f":
        out = f_tilde(m, i)
        _emit(args, format_multisegment(out), {"result": format_multisegment(out)})
    elif op == "e":
        out = e_tilde(m, i)
        text = "undefined" if out is None else format_multisegment(out)
        _emit(args, text, {"result": None if out is None else format_multisegment(out)})
    elif op == "eps":
        k = epsilon(m, i)
        _emit(args, str(k), {"epsilon": k})
    elif op == "strings":
        sums = string_sums(m, i)
        _emit(args, " ".join(map(str, sums)), {"string_sums": sums})
    return EXIT_OK


def cmd_graph(args) -> int:
    if args.format not in ("dot", "json"):
        raise UsageError("graph output format must be dot or json")
    bound = DEFAULT_BOUNDS.graph_max_degree
    graph = crystal_graph(args.ring, args.max_degree if args.max_degree is not None else 3, args.component, bound=bound)
    graph.check()
    print(graph.to_dot() if args.format == "dot" else graph.to_json(), end="" if args.format == "dot" else "\n")
    return EXIT_OK


def cmd_canonical(args) -> int:
    from .canonical import canonical_basis

    d = parse_dim(args.dim, args.ring)
    table = canonical_basis(args.ring, d, order=args.order, seed=args.seed, bound=args.max_degree)
    if args.format == "json":
        print(json.dumps(table.to_json(), indent=2))
    else:
        print("\n".join(table.format_rows()))
    return EXIT_OK


def cmd_act(args) -> int:
    from .hallpbw import PBWVector, e_prime_action, f_action, format_pbw

    if args.basis is not None:
        u = PBWVector.basis(_ms(args, args.basis))
    else:
        raw = sys.stdin.read() if args.input in (None, "-") else open(args.input).read()
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise UsageError(f"invalid PBW JSON: {exc}") from None
        data.setdefault("ring", str(args.ring))
        u = PBWVector.from_json(data)
    for _ in range(args.times):
        u = f_action(args.i, u) if args.op == "f" else e_prime_action(args.i, u)
    if args.format == "json":
        print(json.dumps(u.to_json(), indent=2))
    else:
        print(format_pbw(u))
    return EXIT_OK


def cmd_oracle(args) -> int:
    from .hallpbw import aut_order, hall_polynomial
    from .quiverrep import aut_count_orbit, classify, count_submodules, generic_commutant_dual, realize, NilpotentRep
    from .linalg import GF, QQ

    op = args.op
    if op == "hall-count":
        if not (args.Q and args.P is not None and args.O is not None):
            raise UsageError("hall-count needs --Q, --P and --O")
        Q, P, O = _ms(args, args.Q), _ms(args, args.P), _ms(args, args.O)
        if args.q:
            count = count_submodules(Q, P, O, args.q, bound=args.max_dim)
            _emit(args, str(count), {"q": args.q, "count": count})
        else:
            poly = hall_polynomial(O, P, Q, bound=args.max_dim)
            text = format_laurent(LaurentPoly(dict(enumerate(poly)))).replace("v", "q")
            _emit(args, text, {"hall_polynomial": poly})
    elif op == "aut-count":
        m = _ms(args, args.multisegment or "")
        q = args.q or 2
        counted, formula = aut_count_orbit(m, q), aut_order(m, q)
        _emit(args, f"{counted} (formula {formula})", {"q": q, "counted": counted, "formula": formula})
        return EXIT_OK if counted == formula else EXIT_FAIL
    elif op == "geom-dual":
        m = _ms(args, args.multisegment or "")
        res = generic_commutant_dual(m, seed=args.seed, detail=True)
        _emit(args, format_multisegment(res.dual), {"result": format_multisegment(res.dual), "samples": res.samples, "draws": res.draws, "commutant_dim": res.commutant_dim})
    elif op == "realize":
        m = _ms(args, args.multisegment or "")
        rep = realize(m, GF(args.q) if args.q else QQ)
        print(json.dumps(rep.to_json(), indent=2))
    elif op == "classify":
        raw = sys.stdin.read() if args.multisegment in (None, "-") else args.multisegment
        try:
            rep = NilpotentRep.from_json(json.loads(raw))
        except (json.JSONDecodeError, KeyError) as exc:
            raise UsageError(f"invalid representation JSON: {exc}") from None
        m = classify(rep)
        _emit(args, format_multisegment(m), {"result": format_multisegment(m)})
    return EXIT_OK


def cmd_label(args) -> int:
    if args.partition is not None:
        la = tuple(_ints(args.partition))
        if list(la) != sorted(la, reverse=True) or any(p <= 0 for p in la):
            raise UsageError("partition parts must be positive and weakly decreasing")
        m = partition_to_multisegment(la, args.ring)
        payload = {"partition": list(la), "multisegment": format_multisegment(m)}
        text = format_multisegment(m)
        if args.mullineux:
            if not args.ring.cyclic:
                raise UsageError("--mullineux needs a cyclic ring")
            image = mullineux(la, args.ring.n)
            payload["mullineux"] = list(image)
            text += f"\nmullineux {','.join(map(str, image))}"
        _emit(args, text, payload)
        return EXIT_OK
    if args.multisegment is not None:
        m = _ms(args, args.multisegment)
        lab = to_label(m)
        text = f"mu={','.join(map(str, lab.mu))} a={','.join(map(str, lab.a))}"
        payload = {"mu": list(lab.mu), "a": list(lab.a), "degree": {str(k): v for k, v in sorted(degree(m).items())}}
        if args.ring.cyclic:
            payload["aperiodic"] = is_aperiodic(m)
            text += f" aperiodic={is_aperiodic(m)}"
        _emit(args, text, payload)
        return EXIT_OK
    if args.mu is None or args.a is None:
        raise UsageError("label needs --mu and --a, --partition, or a multisegment")
    lab = Label(tuple(_ints(args.mu)), tuple(_ints(args.a)))
    m = from_label(lab, args.ring)
    if args.reduce is not None:
        if args.ring.cyclic:
            raise UsageError("--reduce applies to labels over z")
        m = reduce_mod(m, args.reduce)
    _emit(args, format_multisegment(m), {"multisegment": format_multisegment(m), "ring": str(m.ring), "segments": m.to_json()})
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import SuiteOptions, run_verify

    opts = SuiteOptions(
        rings=[args.ring] if args.ring_given else None,
        max_degree=args.max_degree,
        max_dim=args.max_dim,
        ns=[args.n] if args.n else None,
        seed=args.seed,
        quick=args.quick,
    )
    report = run_verify(args.suite, opts)
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        for c in report["checks"]:
            status = "PASS" if c["ok"] else "FAIL"
            print(f"{status} [{c['criterion']}] {c['name']}: {c['cases']} cases, {c['failure_count']} failures, {c['seconds']}s")
            for f in c["failures"][:5]:
                print(f"    {f}")
        print(f"{report['passed']} passed, {report['failed']} failed")
    return report["exit_code"]


# ---------------------------------------------------------------------------


def _ring(text: str) -> VertexRing:
    try:
        return VertexRing.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", type=_ring, default=None, help="z or zmod:N (default z)")
    common.add_argument("--format", default=None, choices=["text", "json", "dot", "table"])
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-degree", type=int, default=None)
    common.add_argument("--max-dim", type=int, default=None)
    common.add_argument("--quick", action="store_true")

    parser = argparse.ArgumentParser(prog="msdual", description="Multisegment dualities, crystals and canonical bases.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dual", parents=[common], help="apply tau, sharp, flat or the MW descent")
    p.add_argument("--op", choices=["tau", "sharp", "flat", "mw"], default="tau")
    p.add_argument("--json", action="store_const", const="json", dest="format")
    p.add_argument("multisegment")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("crystal-op", parents=[common], help="Kashiwara operators and string data")
    p.add_argument("--op", choices=["f", "e", "eps", "strings", "path"], required=True)
    p.add_argument("--i", type=int, default=None)
    p.add_argument("multisegment")
    p.set_defaults(func=cmd_crystal_op)

    p = sub.add_parser("graph", parents=[common], help="crystal graph export")
    p.add_argument("--component", choices=["empty", "all"], default="empty")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("canonical", parents=[common], help="canonical basis in one degree")
    p.add_argument("--dim", required=True, help="d_0,d_1,... or vertex:count pairs")
    p.add_argument("--order", choices=["dim", "dim-reversed", "random"], default="dim")
    p.set_defaults(func=cmd_canonical)

    p = sub.add_parser("act", parents=[common], help="f_i or e'_i on PBW vectors")
    p.add_argument("--op", choices=["f", "eprime"], required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--times", type=int, default=1)
    p.add_argument("--basis", default=None, help="start from a single PBW basis element")
    p.add_argument("--input", default=None, help="PBW vector JSON file ('-' for stdin)")
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("oracle", parents=[common], help="brute-force representation oracles")
    p.add_argument("--op", choices=["hall-count", "aut-count", "geom-dual", "realize", "classify"], required=True)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--Q", default=None)
    p.add_argument("--P", default=None)
    p.add_argument("--O", default=None)
    p.add_argument("multisegment", nargs="?", default=None)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("label", parents=[common], help="labels, partitions and multisegments")
    p.add_argument("--mu", default=None)
    p.add_argument("--a", default=None)
    p.add_argument("--reduce", type=int, default=None, help="reduce a z label modulo N")
    p.add_argument("--partition", default=None)
    p.add_argument("--mullineux", action="store_true")
    p.add_argument("multisegment", nargs="?", default=None)
    p.set_defaults(func=cmd_label)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=["involution", "crystal", "hall", "canonical", "geometry", "mullineux", "all"])
    p.add_argument("--n", type=int, default=None, help="restrict to Z/nZ")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    if args.format is None:
        args.format = DEFAULT_FORMATS.get(args.command, "text")
    args.ring_given = args.ring is not None
    if args.ring is None:
        args.ring = VertexRing.parse("z")
    try:
        return args.func(args)
    except (UsageError, MultisegmentSyntaxError, NonAperiodicError, ResourceGuardError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"invariant violation: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except ArithmeticError as exc:
        print(f"invariant violation: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
