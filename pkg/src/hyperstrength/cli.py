"""Batch command-line front end.

Subcommands: stats, certificate, strengths, sparsify, mincut, verify.
Reports are line-oriented key=value (or one JSON document with --json).
Exit codes: 0 success, 1 validation or parse errors, 2 guard refusals.
"""

import argparse
import json
import os
import sys

import numpy as np

from . import mincut as mincut_mod
from .errors import HypergraphError, OracleLimitError
from .hypergraph import Hypergraph, parse, serialize
from .ordering import certificate_unweighted, certificate_weighted
from .sparsifier import SamplingParams, sparsify, verify_cut_approx
from .windowing import approximate_strengths, rough_strengths, windows

ENV_SEED = "HYPERSTRENGTH_SEED"


class _Parser(argparse.ArgumentParser):
    # Usage problems are validation errors, not guard refusals.
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        sys.exit(1)


def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="hypergraph text file")
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    common.add_argument("--threads", type=int, default=1,
                        help="worker count; results are thread-count-invariant")

    sampling = argparse.ArgumentParser(add_help=False)
    sampling.add_argument("--epsilon", type=float, default=0.1)
    sampling.add_argument("--d", type=int, default=2, dest="d",
                          help="failure probability exponent")
    sampling.add_argument("--seed", type=int, default=None,
                          help=f"RNG seed; overrides ${ENV_SEED}")
    sampling.add_argument("--mode", choices=("approx", "exact"), default="approx",
                          help="strength estimates used for sampling")
    sampling.add_argument("--oracle-limit", type=int, default=64,
                          help="max vertices for exact-strength and enumeration oracles")

    p = _Parser(prog="hyperstrength",
                description="Approximate hyperedge strengths, cut sparsifiers, and mincuts.")
    sub = p.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    sub.add_parser("stats", parents=[common], help="basic size statistics")

    cert = sub.add_parser("certificate", parents=[common],
                          help="k-sparse connectivity certificate")
    cert.add_argument("--k", type=int, required=True)
    cert.add_argument("--output", help="write the certificate here instead of stdout")

    st = sub.add_parser("strengths", parents=[common],
                        help="per-edge strength estimates")
    st.add_argument("--mode", choices=("approx", "exact"), default="approx")
    st.add_argument("--oracle-limit", type=int, default=64)
    st.add_argument("--window-debug", action="store_true",
                    help="also report rough strengths and window intervals")

    sp = sub.add_parser("sparsify", parents=[common, sampling],
                        help="sample a reweighted cut sparsifier")
    sp.add_argument("--output", help="write the sparsifier here instead of stdout")
    sp.add_argument("--verify", action="store_true",
                    help="enumerate all cuts of the input and compare")

    mc = sub.add_parser("mincut", parents=[common, sampling],
                        help="global minimum cut")
    mc.add_argument("--approx", action="store_true",
                    help="cut a sparsified sample instead of the full input")

    sub.add_parser("verify", parents=[common, sampling],
                   help="sparsify and check every cut against the original")
    return p


def _resolve_seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get(ENV_SEED)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise HypergraphError(f"${ENV_SEED} must be an integer, got {env!r}") from None
    return 0


def _load(path: str) -> Hypergraph:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise HypergraphError(f"cannot read {path}: {exc.strerror}") from None
    return parse(text)


def _emit_graph(h: Hypergraph, output: str | None, force_weighted: bool = False):
    text = serialize(h, force_weighted=force_weighted)
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _params(args) -> SamplingParams:
    return SamplingParams(
        epsilon=args.epsilon,
        failure_exponent=args.d,
        seed=_resolve_seed(args),
        strength_source=args.mode,
        oracle_limit=args.oracle_limit,
    )


def _cmd_stats(args) -> int:
    h = _load(args.input)
    fields = {"n": h.n, "m": h.m, "p": h.size, "r": h.rank, "W": h.total_weight}
    if args.json:
        print(json.dumps(fields))
    else:
        print(" ".join(f"{k}={v}" for k, v in fields.items()))
    return 0


def _cmd_certificate(args) -> int:
    h = _load(args.input)
    if h.is_unit_weighted:
        keep = sorted(certificate_unweighted(h, args.k))
        edges = [(h.edge(e), 1) for e in keep]
    else:
        wprime = certificate_weighted(h, args.k).weights
        keep = [int(e) for e in np.nonzero(wprime > 0)[0]]
        edges = [(h.edge(e), int(wprime[e])) for e in keep]
    cert = Hypergraph(h.n, edges)
    if args.json:
        print(json.dumps({
            "k": args.k,
            "edges": [{"id": e, "vertices": [v + 1 for v in vs], "weight": w}
                      for e, (vs, w) in zip(keep, edges)],
        }))
        return 0
    _emit_graph(cert, args.output, force_weighted=not h.is_unit_weighted)
    return 0


def _cmd_strengths(args) -> int:
    h = _load(args.input)
    if args.mode == "exact":
        gamma = mincut_mod.strength_exact(h, limit=args.oracle_limit).gamma
        level = np.zeros(h.m, dtype=np.int64)
    else:
        sm = approximate_strengths(h)
        gamma, level = sm.gamma, sm.level
    cost = float(np.sum(np.asarray(h.weights, dtype=np.float64) / gamma)) if h.m else 0.0
    bound = 8 * h.rank * max(h.n - 1, 0)
    if args.json:
        print(json.dumps({
            "mode": args.mode,
            "strengths": [{"edge_id": i, "gamma_prime": int(gamma[i]), "level": int(level[i])}
                          for i in range(h.m)],
            "cost": cost,
            "bound": bound,
        }))
        return 0
    for i in range(h.m):
        print(f"{i} {int(gamma[i])} {int(level[i])}")
    print(f"cost={cost:.6g} bound={bound}")
    if args.window_debug and args.mode == "approx" and h.m:
        d = rough_strengths(h)
        ws = windows(d, h.size)
        for i in range(h.m):
            print(f"d {i} {int(d[i])}")
        for j, (a, b) in enumerate(ws.intervals):
            count = int(np.sum(ws.assignment == j))
            print(f"window {j} {a} {b} edges={count}")
    return 0


def _cmd_sparsify(args) -> int:
    h = _load(args.input)
    result = sparsify(h, _params(args))
    if args.json:
        doc = {
            "kept": int(len(result.kept_ids)),
            "of": h.m,
            "kept_ids": [int(e) for e in result.kept_ids],
            "probabilities": [float(p) for p in result.probabilities],
            "hypergraph": serialize(result.hypergraph, force_weighted=True),
        }
        if args.verify:
            report = verify_cut_approx(h, result, args.epsilon)
            doc["verify"] = {
                "max_rel_err": report.max_rel_err,
                "passed": report.passed,
                "cuts": [{"cut_mask": c.mask, "true_w": c.true_weight,
                          "sparse_w": c.sparse_weight, "rel_err": c.rel_err}
                         for c in report.cuts],
            }
        print(json.dumps(doc))
        return 0
    _emit_graph(result.hypergraph, args.output, force_weighted=True)
    if args.output:
        print(f"kept={len(result.kept_ids)} of={h.m}")
    if args.verify:
        report = verify_cut_approx(h, result, args.epsilon)
        for c in report.cuts:
            print(f"{c.mask} {c.true_weight} {c.sparse_weight:.12g} {c.rel_err:.12g}")
        print(f"max_rel_err={report.max_rel_err:.12g} passed={report.passed}")
    return 0


def _cmd_mincut(args) -> int:
    h = _load(args.input)
    if args.approx:
        cut, _ = mincut_mod.mincut_approx(h, args.epsilon, _params(args))
    else:
        cut = mincut_mod.mincut_exact(h)
    side = ",".join(str(v + 1) for v in cut.side)
    if args.json:
        print(json.dumps({"value": cut.value, "side": [v + 1 for v in cut.side]}))
    else:
        print(f"value={cut.value}")
        print(f"side={side}")
    return 0


def _cmd_verify(args) -> int:
    h = _load(args.input)
    result = sparsify(h, _params(args))
    report = verify_cut_approx(h, result, args.epsilon)
    if args.json:
        print(json.dumps({
            "max_rel_err": report.max_rel_err,
            "passed": report.passed,
            "cuts": [{"cut_mask": c.mask, "true_w": c.true_weight,
                      "sparse_w": c.sparse_weight, "rel_err": c.rel_err}
                     for c in report.cuts],
        }))
        return 0
    for c in report.cuts:
        print(f"{c.mask} {c.true_weight} {c.sparse_weight:.12g} {c.rel_err:.12g}")
    print(f"max_rel_err={report.max_rel_err:.12g} passed={report.passed}")
    return 0


_COMMANDS = {
    "stats": _cmd_stats,
    "certificate": _cmd_certificate,
    "strengths": _cmd_strengths,
    "sparsify": _cmd_sparsify,
    "mincut": _cmd_mincut,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.threads < 1:
        sys.stderr.write("error: --threads must be >= 1\n")
        return 1
    try:
        return _COMMANDS[args.subcommand](args)
    except OracleLimitError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except HypergraphError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
