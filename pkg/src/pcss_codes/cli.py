"""Command-line interface: ``pcss <subcommand> ...``.

Exit codes: 0 success, 2 invalid input, 3 instance too large for the
exact methods. Every output starts with (text/CSV) or contains (JSON) an
echo of the full configuration, seed included.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import bounds, fixtures, gf2, pcss, sim
from .alist import load_alist
from .channel import ChannelEntropies, PauliChannelIID, SingleQubitPauli, depolarizing, identity_channel
from .classical import BPDecoder, LeaderTable, LinearCode, epsilon_exact, epsilon_monte_carlo
from .errors import InstanceTooLarge
from .gf2k import FieldSpec, HashRealization, sample_hash
from .montecarlo import default_workers


# ---------------------------------------------------------------------------
# argument helpers


def _add_code_args(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--code", default="hamming7", help=f"named code: {', '.join(fixtures.CODES)}")
    g.add_argument("--generator", type=Path, help="text file with G (n x k)")
    g.add_argument("--parity", type=Path, help="text file with H ((n-k) x n)")
    g.add_argument("--alist", type=Path, help="alist file with H")


def _add_hash_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--hash", help=f"named hash: {', '.join(fixtures.HASHES)}")
    p.add_argument(
        "--field", help="GF(2^k) as 'k4' or 'k:modulus-bits' (low degree first); default k matches the code"
    )
    p.add_argument("--a", default="zeta^-2", help="multiplier, e.g. 'zeta^-2', 'zeta', '0b0110', '6'")
    p.add_argument("--b", default="0", help="offset element")
    p.add_argument("--m", type=int, default=1, help="number of logical qubits")
    p.add_argument("--random-hash", action="store_true", help="draw (a, b) from --seed")


def _add_channel_args(p: argparse.ArgumentParser, default: str) -> None:
    p.add_argument(
        "--channel",
        default=default,
        help="'depolarizing:P', 'pauli:pI,pX,pY,pZ' or 'identity'",
    )


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", "-o", type=Path, help="write here instead of stdout")


def load_code(args) -> LinearCode:
    if args.generator:
        return LinearCode.from_generator(gf2.read_matrix(args.generator.read_text()), args.generator.name)
    if args.parity:
        return LinearCode.from_parity(gf2.read_matrix(args.parity.read_text()), args.parity.name)
    if args.alist:
        return LinearCode.from_parity(load_alist(args.alist.read_text()), args.alist.name)
    return fixtures.load_code(args.code)


def load_hash(args, k: int) -> HashRealization:
    if args.hash:
        if args.hash not in fixtures.HASHES:
            raise ValueError(f"unknown hash {args.hash!r}; choose from {sorted(fixtures.HASHES)}")
        return fixtures.HASHES[args.hash]()
    spec = FieldSpec.parse(args.field or f"k{k}")
    if spec.k != k:
        raise ValueError(f"field degree {spec.k} must equal the code dimension k={k}")
    if args.random_hash:
        return sample_hash(spec, args.m, args.seed)
    a = spec.parse_element(args.a)
    if a == 0:
        raise ValueError("a must be nonzero")
    return HashRealization.from_field(spec, a, spec.parse_element(args.b), args.m)


def parse_channel(text: str) -> SingleQubitPauli:
    kind, _, rest = text.partition(":")
    kind = kind.strip().lower()
    try:
        if kind == "identity":
            return identity_channel()
        if kind in ("depolarizing", "depol"):
            return depolarizing(float(rest))
        if kind == "pauli":
            pI, pX, pY, pZ = (float(t) for t in rest.split(","))
            return SingleQubitPauli.from_probs(pI, pX, pY, pZ)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"bad channel {text!r}: {exc}") from None
    raise ValueError(f"unknown channel kind {kind!r}")


def _config(args) -> dict:
    out = {}
    for k, v in sorted(vars(args).items()):
        if k == "func":
            continue
        out[k] = str(v) if isinstance(v, Path) else v
    return out


def _config_line(args) -> str:
    return "# config " + json.dumps(_config(args), sort_keys=True)


def _emit(args, text: str) -> None:
    if args.output:
        args.output.write_text(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, payload: dict) -> None:
    payload = {"config": _config(args), **payload}
    _emit(args, json.dumps(payload, indent=2, sort_keys=False, default=_json_default) + "\n")


def _json_default(o):
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (np.floating,)):
        return float(o)
    if isinstance(o, tuple):
        return list(o)
    raise TypeError(f"cannot serialize {type(o)}")


def _build(args) -> pcss.PcssCode:
    code = load_code(args)
    return pcss.construct(code, load_hash(args, code.k))


# ---------------------------------------------------------------------------
# subcommands


def cmd_construct(args) -> None:
    q = _build(args)
    strings = pcss.stabilizer_strings(q, canonical=args.canonical)
    if args.format == "json":
        report = pcss.verify_css(q)
        _emit_json(args, {"code": q.to_json(), "stabilizers": strings, "verify": report.to_json()})
    else:
        _emit(args, _config_line(args) + "\n" + "\n".join(strings) + "\n")


def cmd_distance(args) -> None:
    q = _build(args)
    _emit_json(args, {"n": q.n, "k": q.k, "m": q.m, **pcss.distance(q).to_json()})


def _bound_inputs(args, m: int | None = None) -> bounds.BoundInputs:
    if args.params:
        if args.params not in fixtures.PARAMS:
            raise ValueError(f"unknown parameter set {args.params!r}")
        g = fixtures.PARAMS[args.params]
        n, k, eps = g.n, g.k, g.epsilon
        ch = depolarizing(g.depolarizing) if args.channel is None else parse_channel(args.channel)
    else:
        if args.n is None or args.k is None or args.epsilon is None:
            raise ValueError("give --params or all of --n, --k, --epsilon")
        n, k, eps = args.n, args.k, args.epsilon
        ch = parse_channel(args.channel or "depolarizing:0.114")
    n = args.n if args.n is not None else n
    k = args.k if args.k is not None else k
    eps = args.epsilon if args.epsilon is not None else eps
    return bounds.BoundInputs(n, k, 0 if m is None else m, eps, ch, args.delta)


def cmd_bounds(args) -> None:
    inp = _bound_inputs(args, args.m)
    res = bounds.eta_for(inp, args.mode)
    ent = ChannelEntropies.of(inp.iid)
    _emit_json(
        args,
        {
            "n": inp.n,
            "k": inp.k,
            "m": inp.m,
            "epsilon": inp.epsilon,
            **res.to_json(),
            "log2_epsilon_prime_exact": bounds.log2_epsilon_prime_exact(inp),
            "log2_epsilon_prime_asymptotic": bounds.log2_epsilon_prime_asymptotic(inp),
            "entropies": ent.to_json(),
        },
    )


def _grid(text: str) -> np.ndarray:
    parts = text.split(":")
    if len(parts) == 3:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
        return np.linspace(lo, hi, count)
    return np.array([float(t) for t in text.split(",")])


def cmd_curve(args) -> None:
    inp = _bound_inputs(args)
    grid = _grid(args.grid) if args.grid else np.linspace(1 / inp.n, inp.k / inp.n, 200)
    pts = bounds.rate_curve(inp.channel, inp.n, inp.k, inp.epsilon, grid, args.mode, args.delta)
    _emit(args, bounds.curve_csv(pts, {"args": json.dumps(_config(args), sort_keys=True)}))


def cmd_simulate(args) -> None:
    q = _build(args)
    ch = PauliChannelIID(parse_channel(args.channel), q.n)
    if args.exhaustive:
        report = sim.logical_error_exhaustive(q, ch)
    else:
        report = sim.logical_error_mc(q, ch, args.trials, args.seed, workers=args.threads)
    payload = {"report": report.to_json()}
    if args.epsilon is not None:
        inp = bounds.BoundInputs(q.n, q.k, q.m, args.epsilon, ch.single)
        res = bounds.eta_for(inp, args.mode)
        payload["bound"] = res.to_json()
        payload["verdict"] = sim.compare_to_eta(report, res, inp).to_json()
        payload["report"]["eta_reference"] = res.eta
    _emit_json(args, payload)


def cmd_epsilon(args) -> None:
    code = load_code(args)
    if args.decoder == "bp":
        if not 0 < args.q < 0.5:
            raise ValueError("BP needs 0 < q < 1/2")
        dec = BPDecoder(code.H, args.q, args.max_iters)
    else:
        dec = LeaderTable(code.H)
    if args.exact:
        stats = epsilon_exact(code, dec, args.q, args.undetected_only)
    else:
        stats = epsilon_monte_carlo(code, dec, args.q, args.trials, args.seed, args.threads, args.undetected_only)
    _emit_json(args, {"n": code.n, "k": code.k, "decoder": args.decoder, "stats": stats.to_json()})


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pcss", description="P-CSS quantum codes from classical codes and affine hashes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a code and print its stabilizers")
    _add_code_args(p)
    _add_hash_args(p)
    _add_common(p)
    p.add_argument("--canonical", action="store_true", help="row-reduce generators before printing")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("distance", help="exact distance with minimal logical operators")
    _add_code_args(p)
    _add_hash_args(p)
    _add_common(p)
    p.set_defaults(func=cmd_distance)

    for name, func, help_ in (
        ("bounds", cmd_bounds, "epsilon' and eta for one parameter point"),
        ("curve", cmd_curve, "eta against the quantum rate, as CSV"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--params", help=f"named parameter set: {', '.join(fixtures.PARAMS)}")
        p.add_argument("--n", type=int)
        p.add_argument("--k", type=int)
        p.add_argument("--epsilon", type=float, help="classical block error probability")
        p.add_argument("--mode", choices=bounds.MODES, default="asymptotic")
        p.add_argument("--delta", type=float, help="smoothing parameter for --mode smooth")
        p.add_argument("--channel", default=None, help="'depolarizing:P', 'pauli:pI,pX,pY,pZ' or 'identity'")
        _add_common(p)
        if name == "bounds":
            p.add_argument("--m", type=int, required=True)
        else:
            p.add_argument("--grid", help="'lo:hi:count' or comma-separated rates")
        p.set_defaults(func=func)

    p = sub.add_parser("simulate", help="logical failure rates under an i.i.d. Pauli channel")
    _add_code_args(p)
    _add_hash_args(p)
    _add_channel_args(p, "depolarizing:0.01")
    _add_common(p)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--exhaustive", action="store_true", help="enumerate all 4^n errors (n <= 10)")
    p.add_argument("--threads", type=int, default=default_workers())
    p.add_argument("--epsilon", type=float, help="classical block error; adds the eta comparison")
    p.add_argument("--mode", choices=bounds.MODES[:2], default="exact")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("epsilon", help="classical bit-flip misidentification probability")
    _add_code_args(p)
    _add_common(p)
    p.add_argument("--q", type=float, required=True, help="bit-flip probability")
    p.add_argument("--decoder", choices=("leader", "bp"), default="leader")
    p.add_argument("--max-iters", type=int, default=100)
    p.add_argument("--exact", action="store_true", help="enumerate all 2^n errors (n <= 20)")
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--threads", type=int, default=default_workers())
    p.add_argument("--undetected-only", action="store_true")
    p.set_defaults(func=cmd_epsilon)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except InstanceTooLarge as exc:
        print(f"error: instance too large: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
