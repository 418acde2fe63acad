"""Command-line front end: ``wdescend <subcommand> ...``."""

import argparse
import json
import sys
from fractions import Fraction

from . import oracle, suites
from .chambers import COARSE, FINE, enumerate_chambers, perturbed_pair
from .complexes import CapacityError, SimplicialComplex, build_complex, realize
from .core import format_rational, parse_rational
from .descend import (generating_polynomial, kappa_number, weighted_descendant)
from .oracle import UNIT, OracleIncomplete, TargetError, load_target
from .weights import in_domain, parse_weights

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError("expected comma-separated integers, got %r" % text) from None


def _weights(args):
    eps = parse_rational(args.epsilon) if args.epsilon else None
    return parse_weights(args.weights, args.genus, args.beta, eps)


def _target(args):
    if not getattr(args, "target", None):
        return oracle.POINT
    with open(args.target, encoding="utf-8") as fh:
        return load_target(fh.read())


def _classes(args, n):
    if not getattr(args, "classes", None):
        return None
    ids = [c.strip() for c in args.classes.split(",")]
    if len(ids) != n:
        raise UsageError("need %d class ids, got %d" % (n, len(ids)))
    return ids


def _json_value(x):
    if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
        return format_rational(Fraction(x))
    if isinstance(x, dict):
        return {k: _json_value(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_json_value(v) for v in x]
    if isinstance(x, (str, bool)) or x is None:
        return x
    return str(x)


# subcommands ----------------------------------------------------------------

def cmd_complex(args):
    w = _weights(args)
    c = build_complex(w)
    return EXIT_OK, {"complex": str(c), "in_domain": in_domain(w)}, [str(c)]


def cmd_realize(args):
    c = SimplicialComplex.parse(args.faces, args.n)
    domain = None
    if args.domain:
        g, b = _int_list(args.domain)
        domain = (g, b)
    w = realize(c, domain=domain)
    if w is None:
        return EXIT_OK, {"complex": str(c), "feasible": False, "weights": None}, ["infeasible"]
    return EXIT_OK, {"complex": str(c), "feasible": True, "weights": str(w)}, [str(w)]


def cmd_descendant(args):
    target = _target(args)
    args.beta = target.beta if args.target else args.beta
    w = _weights(args)
    ks = _int_list(args.ks)
    if len(ks) != len(w):
        raise UsageError("need %d ks, got %d" % (len(w), len(ks)))
    trace = [] if args.trace else None
    value = weighted_descendant(args.genus, build_complex(w), ks,
                                _classes(args, len(ks)), target, trace)
    doc = {"value": value}
    if trace is None:
        return EXIT_OK, doc, [format_rational(value)]
    doc["trace"] = [{"blocks": str(t.partition), "sign": t.sign, "ksigma": list(t.ksigma),
                     "oracle": t.oracle, "term": t.value} for t in trace]
    return EXIT_OK, doc, [str(t) for t in trace] + ["value = " + format_rational(value)]


def cmd_genpoly(args):
    target = _target(args)
    w = _weights(args)
    poly = generating_polynomial(args.genus, build_complex(w), target,
                                 _classes(args, len(w)), args.exponential)
    return EXIT_OK, {"polynomial": str(poly)}, [str(poly)]


def cmd_kappa(args):
    value = kappa_number(args.genus, _int_list(args.ks))
    return EXIT_OK, {"value": value}, [format_rational(value)]


def cmd_unweighted(args):
    ks = _int_list(args.ks)
    target = _target(args)
    classes = _classes(args, len(ks)) or [UNIT] * len(ks)
    value = oracle.unweighted_lookup(target, args.genus, list(zip(ks, classes)))
    return EXIT_OK, {"value": value}, [format_rational(value)]


def cmd_path(args):
    eps = parse_rational(args.epsilon) if args.epsilon else None
    a = parse_weights(getattr(args, "from"), args.genus, args.beta, eps)
    b = parse_weights(args.to, args.genus, args.beta, eps)
    a2, b2, events = perturbed_pair(a, b, args.seed)
    doc = {"from": str(a2), "to": str(b2),
           "events": [{"t": e.t, "direction": e.direction, "subset": str(e)[str(e).index("I="):]}
                      for e in events]}
    return EXIT_OK, doc, [str(e) for e in events]


def cmd_verify(args):
    params = {}
    if args.params:
        for item in args.params.split(","):
            if "=" not in item:
                raise UsageError("parameters look like key=value, got %r" % item)
            k, v = item.split("=", 1)
            params[k.strip()] = v.strip()
    if "seed" not in params and args.suite in ("wallcross", "genpoly", "path"):
        params["seed"] = str(args.seed)
    reports = suites.run_suite(args.suite, params)
    failed = [r for r in reports if not r.holds]
    lines = [str(r) for r in (failed if args.failures_only else reports)]
    lines.append("%s %s: %d checks, %d failed"
                 % ("FAIL" if failed else "PASS", args.suite, len(reports), len(failed)))
    doc = {"suite": args.suite, "checks": len(reports), "failed": len(failed),
           "reports": [{"name": r.name, "holds": r.holds, "lhs": r.lhs, "rhs": r.rhs,
                        "details": r.details} for r in reports]}
    return (EXIT_FAIL if failed else EXIT_OK), doc, lines


def cmd_chambers(args):
    found = enumerate_chambers(args.n, args.decomposition, args.genus, args.beta)
    lines = ["%s  weights=%s" % (c, w) for c, w in found]
    doc = {"n": args.n, "decomposition": args.decomposition,
           "chambers": [{"complex": str(c), "weights": str(w)} for c, w in found]}
    return EXIT_OK, doc, lines


# parser -----------------------------------------------------------------------

def build_parser():
    p = _Parser(prog="wdescend", description="Weighted gravitational descendants.")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--epsilon", help="value substituted for 'e' entries in weight lists")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def data_opts(q, weights=True):
        if weights:
            q.add_argument("--weights", required=True)
        q.add_argument("--genus", type=int, default=0)
        q.add_argument("--beta", type=int, default=0)

    q = sub.add_parser("complex", help="maximal faces of the complex of a weight vector")
    data_opts(q)
    q.set_defaults(func=cmd_complex)

    q = sub.add_parser("realize", help="weights realizing a complex, or 'infeasible'")
    q.add_argument("--faces", required=True)
    q.add_argument("--n", type=int)
    q.add_argument("--domain", help="genus,beta whose domain the witness must lie in")
    q.set_defaults(func=cmd_realize)

    q = sub.add_parser("descendant", help="weighted descendant invariant")
    data_opts(q)
    q.add_argument("--ks", required=True)
    q.add_argument("--target")
    q.add_argument("--classes")
    q.add_argument("--trace", action="store_true")
    q.set_defaults(func=cmd_descendant)

    q = sub.add_parser("genpoly", help="generating polynomial")
    data_opts(q)
    q.add_argument("--exponential", action="store_true")
    q.add_argument("--target")
    q.add_argument("--classes")
    q.set_defaults(func=cmd_genpoly)

    q = sub.add_parser("kappa", help="kappa number via the small-weight chamber")
    q.add_argument("--genus", type=int, required=True)
    q.add_argument("--ks", required=True)
    q.set_defaults(func=cmd_kappa)

    q = sub.add_parser("unweighted", help="unweighted descendant invariant")
    q.add_argument("--genus", type=int, required=True)
    q.add_argument("--ks", required=True)
    q.add_argument("--target")
    q.add_argument("--classes")
    q.set_defaults(func=cmd_unweighted)

    q = sub.add_parser("path", help="wall crossings from one weight vector to a smaller one")
    q.add_argument("--from", required=True)
    q.add_argument("--to", required=True)
    q.add_argument("--genus", type=int, default=0)
    q.add_argument("--beta", type=int, default=0)
    q.set_defaults(func=cmd_path)

    q = sub.add_parser("verify", help="run a randomized verification suite")
    q.add_argument("--suite", required=True, choices=suites.SUITES)
    q.add_argument("--params", default="")
    q.add_argument("--failures-only", action="store_true")
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("chambers", help="enumerate realizable chambers (n <= 5)")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--decomposition", choices=(FINE, COARSE), default=FINE)
    q.add_argument("--genus", type=int, default=2)
    q.add_argument("--beta", type=int, default=0)
    q.set_defaults(func=cmd_chambers)
    return p


def run(argv, out=None, err=None):
    """Execute one command; returns the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    fmt = "json" if "--format" in argv and "json" in argv else "text"
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format
        # subcommands may lack these when given before the subcommand only
        code, doc, lines = args.func(args)
    except UsageError as exc:
        return _fail(err, fmt, EXIT_USAGE, "usage", exc)
    except (CapacityError, OracleIncomplete) as exc:
        return _fail(err, fmt, EXIT_CAPACITY, "capacity", exc)
    except (ValueError, TargetError, OSError, KeyError) as exc:
        return _fail(err, fmt, EXIT_USAGE, "error", exc)
    if fmt == "json":
        out.write(json.dumps(_json_value(doc), indent=2, sort_keys=True) + "\n")
    else:
        for line in lines:
            out.write(line + "\n")
    return code


def _fail(err, fmt, code, kind, exc):
    message = exc.args[0] if exc.args else str(exc)
    if fmt == "json":
        err.write(json.dumps({"error": kind, "message": str(message), "exit": code}) + "\n")
    else:
        err.write("error: %s\n" % message)
    return code


def main():
    sys.exit(run(sys.argv[1:]))
