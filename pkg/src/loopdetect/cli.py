"""Command-line front end: simulation traces, collision tables, latency
tables, and header encode/decode, all as deterministic CSV/text.

Exit codes: 0 success, 2 simulation budget exhausted or hop overflow,
3 internal invariant breach (predictor disagrees with simulation),
64 usage error, 65 malformed input data. Randomized subcommands take a
seed (defaulted if omitted) and echo it, so every output is replayable.
"""

import argparse
import sys
from typing import Optional, Sequence

from . import analysis, codec, simulator
from .core import LoopHeader
from .reference import CycleStructure

EX_OK = 0
EX_RUNTIME = 2
EX_INVARIANT = 3
EX_USAGE = 64
EX_DATAERR = 65

DEFAULT_SEED = 0
DEFAULT_TTL = 255


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage by default; the documented code is 64
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except _UsageError as exc:
        parser.error(str(exc))
        raise AssertionError("unreachable")  # parser.error always exits


class _UsageError(Exception):
    pass


def _build_parser() -> _Parser:
    parser = _Parser(prog="loopdetect", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="forward one packet and print its trace")
    p_sim.add_argument("--mu", type=int, help="tail length of a rho topology")
    p_sim.add_argument("--lambda", dest="lam", type=int, help="cycle length of a rho topology")
    p_sim.add_argument("--chain", type=int, help="loop-free chain of this many nodes")
    p_sim.add_argument("--seed", type=int, default=DEFAULT_SEED, help="node-id seed (default 0)")
    p_sim.add_argument("--max-hops", type=int, default=None, help="hop budget (default 4*(n+1))")
    p_sim.add_argument("--out", help="write output here instead of stdout")
    p_sim.set_defaults(handler=_cmd_simulate)

    p_col = sub.add_parser("collisions", help="node-id collision probability grid")
    p_col.add_argument("--bits", type=int, nargs="+", default=list(analysis.DEFAULT_ID_BITS),
                       help="id widths in bits")
    p_col.add_argument("--lengths", type=int, nargs="+",
                       default=list(analysis.DEFAULT_PATH_LENGTHS), help="path lengths")
    p_col.add_argument("--out", help="write output here instead of stdout")
    p_col.set_defaults(handler=_cmd_collisions)

    p_lat = sub.add_parser("latency", help="detection hop vs hop-limit baseline")
    p_lat.add_argument("--mu", type=int, required=True, help="tail length")
    p_lat.add_argument("--lambda", dest="lam", type=int, required=True, help="cycle length")
    p_lat.add_argument("--ttl", type=int, default=DEFAULT_TTL, help="baseline hop limit")
    p_lat.add_argument("--out", help="write output here instead of stdout")
    p_lat.set_defaults(handler=_cmd_latency)

    p_hdr = sub.add_parser("header", help="encode or decode the 14-byte wire header")
    hdr_sub = p_hdr.add_subparsers(dest="mode", required=True)

    p_enc = hdr_sub.add_parser("encode")
    p_enc.add_argument("--tortoise", type=_int_any_base, default=0)
    p_enc.add_argument("--hops", type=_int_any_base, default=0)
    p_enc.add_argument("--nonce", type=_int_any_base, default=0)
    p_enc.add_argument("--out", help="write output here instead of stdout")
    p_enc.set_defaults(handler=_cmd_header_encode)

    p_dec = hdr_sub.add_parser("decode")
    p_dec.add_argument("hex", help="header as hex, at least 28 chars")
    p_dec.add_argument("--out", help="write output here instead of stdout")
    p_dec.set_defaults(handler=_cmd_header_decode)

    return parser


def _cmd_simulate(args) -> int:
    if args.chain is not None:
        if args.mu is not None or args.lam is not None:
            raise _UsageError("--chain excludes --mu/--lambda")
        if args.chain < 1:
            raise _UsageError("--chain must be >= 1")
        graph = simulator.build_chain(args.chain, seed=args.seed)
    else:
        if args.mu is None or args.lam is None:
            raise _UsageError("simulate needs --mu and --lambda, or --chain")
        if args.mu < 0 or args.lam < 1:
            raise _UsageError("need --mu >= 0 and --lambda >= 1")
        graph = simulator.build_rho(args.mu, args.lam, seed=args.seed)
    if args.max_hops is not None and args.max_hops < 1:
        raise _UsageError("--max-hops must be >= 1")
    trace = simulator.simulate(graph, 0, args.max_hops)
    _emit(args.out, f"# seed={args.seed}\n" + simulator.trace_csv(trace))
    if trace.outcome in (simulator.Outcome.DETECTED, simulator.Outcome.TERMINATED):
        return EX_OK
    return EX_RUNTIME


def _cmd_collisions(args) -> int:
    for bits in args.bits:
        if not 1 <= bits <= 128:
            raise _UsageError(f"--bits values must be within [1, 128], got {bits}")
    for length in args.lengths:
        if length < 1:
            raise _UsageError(f"--lengths values must be >= 1, got {length}")
    rows = analysis.collision_table(args.bits, args.lengths)
    _emit(args.out, analysis.collision_csv(rows))
    return EX_OK


def _cmd_latency(args) -> int:
    if args.mu < 0 or args.lam < 1:
        raise _UsageError("need --mu >= 0 and --lambda >= 1")
    if args.ttl < 1:
        raise _UsageError("--ttl must be >= 1")
    case = CycleStructure(args.mu, args.lam)
    rows = analysis.latency_table([case], args.ttl)
    # never emit a predicted hop that a live run does not reproduce
    graph = simulator.build_rho(case.mu, case.lam, seed=DEFAULT_SEED)
    trace = simulator.simulate(graph, 0)
    if trace.outcome is not simulator.Outcome.DETECTED or trace.at_hop != rows[0].brent_hop:
        print(
            f"loopdetect: predictor/simulation mismatch for mu={case.mu} "
            f"lambda={case.lam}: predicted {rows[0].brent_hop}, "
            f"simulated {trace.outcome.value}({trace.at_hop})",
            file=sys.stderr,
        )
        return EX_INVARIANT
    _emit(args.out, analysis.latency_csv(rows))
    return EX_OK


def _cmd_header_encode(args) -> int:
    try:
        wire = codec.encode(LoopHeader(args.tortoise, args.hops), args.nonce)
    except ValueError as exc:
        raise _UsageError(str(exc))
    _emit(args.out, wire.hex() + "\n")
    return EX_OK


def _cmd_header_decode(args) -> int:
    try:
        wire = bytes.fromhex(args.hex)
    except ValueError:
        print(f"loopdetect: not valid hex: {args.hex!r}", file=sys.stderr)
        return EX_DATAERR
    try:
        header, nonce = codec.decode(wire)
    except codec.Truncated as exc:
        print(f"loopdetect: {exc}", file=sys.stderr)
        return EX_DATAERR
    _emit(
        args.out,
        f"tortoise=0x{header.tortoise:016x}\nhops=0x{header.hops:04x}\nnonce=0x{nonce:08x}\n",
    )
    return EX_OK


def _int_any_base(text: str) -> int:
    return int(text, 0)


def _emit(out: Optional[str], text: str) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
