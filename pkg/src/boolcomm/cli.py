"""Command-line front end.

Exit codes: 0 success, 2 bad input (parse or domain error), 3 budget
exceeded, 4 a check failed or an internal invariant was violated.  On a
nonzero exit a one-line JSON failure record is written to stderr.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from . import complexity, foolingset, protocol
from .errors import BudgetExceeded, DomainError, InvariantViolation, SpecParseError
from .symfunc import format_spec, make_delta, make_interval, make_threshold, parse_spec

EXIT_OK, EXIT_PARSE, EXIT_BUDGET, EXIT_INVARIANT = 0, 2, 3, 4


class CheckFailed(Exception):
    """A verification command ran fine but its check did not pass."""

    def __init__(self, message, rendered):
        super().__init__(message)
        self.rendered = rendered


def _g(x):
    return f"{x:.12g}"


def _emit(text, out):
    if not text.endswith("\n"):
        text += "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rate_dict(f, r):
    d = {
        "function": format_spec(f),
        "kind": r.kind,
        "lower_bits": _g(r.lower_bound),
        "achievable_bits": _g(r.achievable),
        "upper_bits": _g(r.upper_bound),
        "exact": r.exact,
        "codebook_size": r.codebook_size,
    }
    if r.kind == "interval" and r.params[0] >= 1:
        diag = complexity.diagnostics(f.n, *r.params)
        d["gap_bits"] = _g(diag.gap)
        d["residual_ratio"] = _g(diag.residual_ratio)
    return d


def cmd_complexity(args):
    f = parse_spec(args.function)
    r = complexity.rate(f)
    if args.format == "csv":
        return complexity.rate_csv([r])
    d = _rate_dict(f, r)
    if args.format == "json":
        return json.dumps(d, indent=2)
    return "\n".join(f"{k}: {str(v).lower() if isinstance(v, bool) else v}" for k, v in d.items())


def _read_matrix(path):
    if path == "-":
        return protocol.MeasurementMatrix.from_strings(sys.stdin)
    with open(path) as fh:
        return protocol.MeasurementMatrix.from_strings(fh)


def cmd_simulate(args):
    f = parse_spec(args.function)
    if args.matrix:
        M = _read_matrix(args.matrix)
    elif args.N is not None and args.seed is not None:
        M = next(protocol.sample_matrices(f.n, args.N, 1, args.seed))
    else:
        raise DomainError("simulate needs --matrix, or --N with --seed")
    tr = protocol.run(f, M)
    if args.format == "text":
        lines = [f"function: {tr.function}", "matrix:"] + [f"  {r}" for r in M.to_strings()]
        lines += [f"node {e.node} depth {e.depth} group {e.group_ones}: {e.bits or '(empty)'}"
                  for e in tr.events]
        lines.append(f"total_bits: {tr.total_bits}")
        lines.append("output: " + "".join(map(str, tr.outputs[0])))
        return "\n".join(lines)
    return tr.to_json()


def _mode(args):
    if args.trials is not None:
        return "sampled"
    if args.brute:
        return "brute"
    return "exhaustive"


def cmd_verify(args):
    f = parse_spec(args.function)
    if args.N is None:
        raise DomainError("verify needs --N")
    rep = protocol.verify(f, args.N, _mode(args), args.trials, args.seed, args.budget)
    if args.format == "json":
        text = json.dumps(rep.to_dict(), indent=2)
    else:
        text = rep.summary()
    if not rep.ok:
        raise CheckFailed(f"{rep.failures} inputs decoded wrongly", text)
    return text


def cmd_fooling(args):
    f = parse_spec(args.function)
    fam = foolingset.construct_family(f)
    N = 1 if args.N is None else args.N
    v = foolingset.verify_fooling(f, fam, N, args.budget)
    d = {"function": format_spec(f), "weights": list(fam.weights),
         "size_per_column": fam.size_per_column,
         "lower_bound_bits": _g(foolingset.lower_bound_bits(fam)), "N": N}
    d.update(v.to_dict())
    if args.format == "json":
        text = json.dumps(d, indent=2)
    else:
        text = (f"{'valid' if v.valid else 'INVALID'}: weights={list(fam.weights)} "
                f"size_per_column={fam.size_per_column} lower_bound_bits={d['lower_bound_bits']} "
                f"pairs_checked={v.pairs_checked} single_row_sufficient={str(v.single_row_sufficient).lower()}")
    if not v.valid:
        raise CheckFailed("family is not a fooling set", text)
    return text


def table_rows(kind: str, n_max: int):
    """Rate results for a sweep over ``(n, theta)`` or ``(n, a, b)``."""
    for n in range(1, n_max + 1):
        if kind == "threshold":
            cases = [((t,), make_threshold(n, t)) for t in range(n + 1)]
        elif kind == "delta":
            cases = [((t,), make_delta(n, t)) for t in range(n + 1)]
        elif kind == "interval":
            cases = [((a, b), make_interval(n, a, b)) for a in range(1, n + 1) for b in range(a, n + 1)]
        else:
            raise DomainError(f"unknown table kind {kind!r}")
        for params, f in cases:
            r = complexity.rate(f)
            yield dataclasses.replace(r, kind=kind, params=params)


def cmd_table(args):
    rows = list(table_rows(args.kind, args.n_max))
    inexact = [r for r in rows if r.kind in ("threshold", "delta") and not r.exact]
    if inexact:
        raise InvariantViolation(f"{len(inexact)} threshold/delta rows are not exact")
    return complexity.rate_csv(rows)


def build_parser():
    p = argparse.ArgumentParser(prog="boolcomm",
                                description="Block computation of symmetric Boolean functions in a broadcast network.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("text", "json")):
        sp.add_argument("--out", help="write output to this file instead of stdout")
        sp.add_argument("--format", choices=formats, default=formats[0])

    sp = sub.add_parser("complexity", help="bounds and achievable rate for one function")
    sp.add_argument("function")
    common(sp, ("text", "json", "csv"))
    sp.set_defaults(handler=cmd_complexity)

    sp = sub.add_parser("simulate", help="run the protocol on one measurement matrix")
    sp.add_argument("function")
    sp.add_argument("--matrix", help="file with one 0/1 row per node ('-' for stdin)")
    sp.add_argument("--N", type=int, help="block length for a random matrix")
    sp.add_argument("--seed", type=int)
    common(sp, ("json", "text"))
    sp.set_defaults(handler=cmd_simulate)

    sp = sub.add_parser("verify", help="zero-error check and worst-case bits over many inputs")
    sp.add_argument("function")
    sp.add_argument("--N", type=int)
    sp.add_argument("--exhaustive", action="store_true", help="cover every input (default)")
    sp.add_argument("--brute", action="store_true", help="exhaustive, simulating every matrix literally")
    sp.add_argument("--trials", type=int, help="sample this many random inputs instead")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--budget", type=int)
    common(sp)
    sp.set_defaults(handler=cmd_verify)

    sp = sub.add_parser("fooling", help="brute-force check of the fooling-set construction")
    sp.add_argument("function")
    sp.add_argument("--N", type=int)
    sp.add_argument("--budget", type=int)
    common(sp)
    sp.set_defaults(handler=cmd_fooling)

    sp = sub.add_parser("table", help="CSV sweep of complexities")
    sp.add_argument("kind", choices=("threshold", "delta", "interval"))
    sp.add_argument("--n-max", type=int, default=10)
    common(sp, ("csv",))
    sp.set_defaults(handler=cmd_table)
    return p


def _fail(code, kind, message, **extra):
    sys.stderr.write(json.dumps({"error": kind, "exit_code": code, "message": message, **extra}) + "\n")
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify" and args.trials is not None and args.seed is None:
        return _fail(EXIT_PARSE, "parse", "--trials requires --seed")
    try:
        text = args.handler(args)
    except SpecParseError as e:
        return _fail(EXIT_PARSE, "parse", str(e), position=e.position)
    except DomainError as e:
        return _fail(EXIT_PARSE, "domain", str(e))
    except BudgetExceeded as e:
        return _fail(EXIT_BUDGET, "budget", str(e))
    except CheckFailed as e:
        _emit(e.rendered, args.out)
        return _fail(EXIT_INVARIANT, "check", str(e))
    except InvariantViolation as e:
        return _fail(EXIT_INVARIANT, "invariant", str(e))
    _emit(text, args.out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
