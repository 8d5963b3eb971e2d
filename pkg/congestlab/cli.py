"""
Command-line interface: `congestlab {detect,enumerate,genlb,bench}`.

Reports are JSON on stdout (CSV for bench). Exit status is 0 when every
requested check passes, 1 when a check fails and 2 on errors.
"""
import argparse
import json
import logging
import sys
from dataclasses import dataclass, field, asdict
from fractions import Fraction
from typing import Optional
from .core import CoreNetwork
from .supported import SupportedNetwork
from ._orient import DEFAULT_C
from . import _bench as bench
from . import lowerbound as lb
from . import graphs
from .exceptions import *


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_ERROR = 2


@dataclass
class RunReport:
    command: list
    graph: dict
    result: dict
    metrics: dict = field(default_factory=dict)
    oracle_agreement: Optional[bool] = None
    config: dict = field(default_factory=dict)

    def to_json(self):
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    @property
    def passed(self):
        return self.oracle_agreement is not False


def _int_list(text):
    return [int(x) for x in text.split(",") if x.strip()]


def _both(a, b):
    """Combine two optional check outcomes; a failure wins."""
    if a is False or b is False:
        return False
    if a is None:
        return b
    return a if b is None else a and b


def _metrics(metrics, budget):
    return {
        "rounds_used": metrics.rounds_used,
        "budget": budget,
        "max_message_bits": metrics.max_message_bits,
        "total_bits": metrics.total_bits,
        "phases": dict(metrics.phases),
    }


def _config(args, net, k, model, convention="edges"):
    return {
        "bandwidth_factor": net.cfg.bandwidth_factor,
        "C": str(Fraction(args.C)),
        "k": k,
        "convention": convention,
        "model": model,
    }


def cmd_detect(args):
    net = CoreNetwork(
        args.graph, bandwidth_factor=args.bandwidth_factor, max_rounds=args.max_rounds, C=args.C
    )
    kind, *rest = args.target
    if kind in ("tree", "pseudotree"):
        if len(rest) != 1:
            raise ValueError(f"--target {kind} needs a target graph file")
        h = graphs.read_graph(rest[0])
        result = net.detect(kind, check=args.check, h=h)
        k = h.n
    elif kind in ("path", "cycle"):
        if rest:
            raise ValueError(f"--target {kind} takes no further values")
        if args.k is None:
            raise ValueError(f"--k is required for --target {kind}")
        kwargs = {"k": args.k}
        if kind == "path":
            kwargs["convention"] = args.convention
        elif args.anchor is not None:
            kwargs["anchor"] = args.anchor
        result = net.detect(kind, check=args.check, **kwargs)
        k = args.k
    else:
        raise ValueError(f"Unknown detection target: {kind}")
    detected = result.as_dict()
    return RunReport(
        command=list(args.argv),
        graph=net.summary(),
        result={
            "target": result.target,
            "found": detected["found"],
            "found_nodes": detected["found_nodes"],
            "copies": [],
            "witnesses": detected["witnesses"],
        },
        metrics=_metrics(result.metrics, result.budget),
        oracle_agreement=result.agreement,
        config=_config(args, net, k, "congest", args.convention),
    )


def cmd_enumerate(args):
    kind, *rest = args.target
    if kind == "clique":
        if len(rest) != 1:
            raise ValueError("--target clique needs the clique size, e.g. --target clique 3")
        target, k = f"clique/{int(rest[0])}", int(rest[0])
    elif rest:
        raise ValueError(f"--target {kind} takes no further values")
    else:
        target, k = kind, None
    if args.model == "supported":
        if args.support is None:
            raise ValueError("--model supported requires --support")
        net = SupportedNetwork(
            args.support,
            input=args.graph,
            bandwidth_factor=args.bandwidth_factor,
            max_rounds=args.max_rounds,
            d=args.d,
        )
        copies, m = net.enumerate(target, dedup=args.dedup, check=args.check)
    else:
        net = CoreNetwork(
            args.graph,
            bandwidth_factor=args.bandwidth_factor,
            max_rounds=args.max_rounds,
            C=args.C,
            d=args.d,
        )
        copies, m = net.enumerate(target, dedup=args.dedup, check=args.check)
    listed = copies.as_dict()
    return RunReport(
        command=list(args.argv),
        graph=net.summary(),
        result={
            "target": listed["target"],
            "found": None,
            "found_nodes": [],
            "count": len(copies),
            "copies": listed["copies"],
            "owners": listed["owners"],
            "witnesses": {},
        },
        metrics=_metrics(m, copies.budget),
        oracle_agreement=copies.agreement,
        config=_config(args, net, k if k is not None else copies.target.graph.n, args.model),
    )


def cmd_genlb(args):
    if args.A is not None or args.B is not None:
        A, B = args.A or [], args.B or []
    elif args.random_disjoint or args.random_intersecting:
        A, B = lb.random_sets(args.N, args.seed, intersecting=args.random_intersecting)
    else:
        raise ValueError("Give --A/--B, --random-disjoint or --random-intersecting")
    inst = lb.build_instance(args.k, args.N, A, B)
    files = lb.write_instance(inst, args.out) if args.out else []
    result = {
        "A": list(inst.A),
        "B": list(inst.B),
        "intersecting": inst.intersecting,
        "cut_size": inst.cut_size,
        "files": files,
    }
    agreement = None
    if args.verify:
        report = lb.verify_instance(inst)
        result["properties"] = report.properties
        result["failures"] = report.failures
        result["has_cycle"] = report.details["has_cycle"]
        agreement = report.ok
    metrics = {}
    if args.supported_target:
        support = inst.base_graph()
        net = SupportedNetwork(support, bandwidth_factor=args.bandwidth_factor, max_rounds=args.max_rounds)
        copies, m = net.enumerate(args.supported_target, input=inst.graph, check=args.check)
        listed = copies.as_dict()
        result["supported"] = {
            "target": listed["target"],
            "count": len(copies),
            "copies": listed["copies"],
            "support": {"n": support.n, "m": support.m},
        }
        metrics = _metrics(m, copies.budget)
        agreement = _both(agreement, copies.agreement)
    d, _ = graphs.degeneracy(inst.graph)
    return RunReport(
        command=list(args.argv),
        graph={"n": inst.graph.n, "m": inst.graph.m, "degeneracy": d},
        result=result,
        metrics=metrics,
        oracle_agreement=agreement,
        config={"k": args.k, "N": args.N, "seed": args.seed},
    )


def cmd_bench(args):
    df = bench.bench(
        args.suite,
        args.sizes,
        args.seeds,
        k=args.k,
        degeneracies=args.degeneracies,
        model=args.model,
        bandwidth_factor=args.bandwidth_factor,
        check=args.check,
    )
    return df


def build_parser():
    parser = argparse.ArgumentParser(
        prog="congestlab", description="Broadcast CONGEST algorithm simulator"
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verbose", action="store_true", help="log at DEBUG level")
    common.add_argument("--bandwidth-factor", type=int, default=None)
    common.add_argument("--max-rounds", type=int, default=None)
    common.add_argument("--C", type=Fraction, default=Fraction(DEFAULT_C))
    common.add_argument("--check", action="store_true", help="compare with the oracle")
    common.add_argument("--out", default=None, help="output file (default stdout)")
    subparsers = parser.add_subparsers(dest="command", required=True)

    detect = subparsers.add_parser("detect", parents=[common])
    detect.add_argument("--graph", required=True)
    detect.add_argument("--target", nargs="+", required=True, metavar="TARGET")
    detect.add_argument("--k", type=int, default=None)
    detect.add_argument("--anchor", type=int, default=None)
    detect.add_argument("--convention", choices=["edges", "nodes"], default="edges")
    detect.set_defaults(func=cmd_detect)

    enumerate_ = subparsers.add_parser("enumerate", parents=[common])
    enumerate_.add_argument("--graph", required=True)
    enumerate_.add_argument("--target", nargs="+", required=True, metavar="TARGET")
    enumerate_.add_argument("--model", choices=["congest", "supported"], default="congest")
    enumerate_.add_argument("--support", default=None)
    enumerate_.add_argument("--dedup", action="store_true")
    enumerate_.add_argument("--d", type=int, default=None, help="degeneracy bound")
    enumerate_.set_defaults(func=cmd_enumerate)

    genlb = subparsers.add_parser("genlb", parents=[common])
    genlb.add_argument("--k", type=int, required=True)
    genlb.add_argument("--N", type=int, required=True)
    genlb.add_argument("--A", type=_int_list, default=None)
    genlb.add_argument("--B", type=_int_list, default=None)
    genlb.add_argument("--random-disjoint", action="store_true")
    genlb.add_argument("--random-intersecting", action="store_true")
    genlb.add_argument("--seed", type=int, default=0)
    genlb.add_argument("--verify", action="store_true")
    genlb.add_argument(
        "--enumerate",
        dest="supported_target",
        default=None,
        metavar="TARGET",
        help="supported enumeration with the full instance as support, e.g. c4 or clique/3",
    )
    genlb.set_defaults(func=cmd_genlb)

    bench_ = subparsers.add_parser("bench", parents=[common])
    bench_.add_argument("--suite", choices=list(bench.SUITES), required=True)
    bench_.add_argument("--sizes", type=_int_list, required=True)
    bench_.add_argument("--seeds", type=_int_list, required=True)
    bench_.add_argument("--k", type=int, default=None)
    bench_.add_argument("--degeneracies", type=_int_list, default=None)
    bench_.add_argument("--model", choices=["congest", "supported"], default="congest")
    bench_.set_defaults(func=cmd_bench)
    return parser


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(argv)
    args.argv = argv
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(name)s %(levelname)s: %(message)s",
    )
    try:
        if args.command == "bench":
            df = args.func(args)
            _emit(bench.to_csv(df), args.out)
            if args.check and not df["agreement"].fillna(True).astype(bool).all():
                return EXIT_CHECK_FAILED
            return EXIT_OK
        report = args.func(args)
        # --out is the instance prefix for genlb
        if args.command == "genlb":
            _emit(report.to_json() + "\n", None)
        else:
            _emit(report.to_json() + "\n", args.out)
    except (CongestException, ValueError, OSError) as e:
        logger.debug("Command failed", exc_info=True)
        sys.stderr.write(f"congestlab {args.command}: {e}\n")
        return EXIT_ERROR
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
