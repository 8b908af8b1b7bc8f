"""Command-line entry point.

Exit codes: 0 on success, 1 on bad input or usage, 2 when an internal
invariant fails.  Errors go to stderr as ``error[code]: message``.
JSON arguments may be given inline or as a path to a file.
"""

import argparse
import json
import os
import sys

import numpy as np

from . import oracle
from .abacus import abacus_from_partition, core_from_params, n0_of_core, params_of_core
from .binmat import rectify_block_sums
from .errors import ConfigError, DomainError, InternalInvariantError, StutterError
from .multipartitions import (
    LevelConfig,
    Multipartition,
    alpha_kappa,
    compatible_multicharges,
    is_stable,
    normalize_kappa,
    orbit_size_alpha,
    orbit_size_multipartition,
    shift_alpha,
    shift_multipartition,
)
from .partitions import Partition, check_modulus, e_core_and_weight
from .stuttering import find_minimal_orbit, find_power_stable, find_stuttering


class UsageError(StutterError):
    code = "usage"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _compact(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _load_json(value: str, what: str):
    if os.path.isfile(value):
        with open(value) as fh:
            text = fh.read()
    else:
        text = value
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"{what}: not valid JSON ({exc.msg})") from exc


def _int_list(value: str, what: str) -> list:
    value = value.strip()
    try:
        if value.startswith("["):
            out = json.loads(value)
        else:
            out = [int(t) for t in value.split(",") if t.strip()]
        return [int(t) for t in out]
    except (ValueError, TypeError, json.JSONDecodeError) as exc:
        raise DomainError(f"{what}: expected a comma-separated list of integers, got {value!r}") from exc


def _partition(value: str) -> Partition:
    data = _load_json(value, "partition")
    if not isinstance(data, list):
        raise DomainError(f"partition must be a JSON list, got {data!r}")
    return Partition(data)


def _multipartition(value: str) -> Multipartition:
    data = _load_json(value, "multipartition")
    if not isinstance(data, list) or not all(isinstance(c, list) for c in data):
        raise DomainError("multipartition must be a JSON list of lists")
    return Multipartition(data)


def _config(value: str):
    """Return ``(config, kappa or None)`` from ``{d, eta, p[, kappa]}``."""
    data = _load_json(value, "config")
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    missing = [k for k in ("d", "eta", "p") if k not in data]
    if missing:
        raise ConfigError(f"config is missing {', '.join(missing)}")
    config = LevelConfig(data["d"], data["eta"], data["p"])
    kappa = data.get("kappa")
    if kappa is not None:
        kappa = normalize_kappa(kappa, config)
    return config, kappa


def _need_kappa(config, kappa):
    if kappa is None:
        raise ConfigError("config needs a kappa entry for this command")
    return kappa


def _emit(obj, out=None):
    text = json.dumps(obj, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# handlers

def cmd_abacus_show(args):
    lam = _partition(args.partition)
    e = check_modulus(args.e)
    ab = abacus_from_partition(lam, e)
    if args.json:
        core, weight = e_core_and_weight(lam, e)
        params = list(params_of_core(core, e))
        print(_compact({"e": e, "params": params, "core": list(core), "n0": n0_of_core(params)}))
    else:
        print(ab.render(args.window))


def cmd_core_from_params(args):
    x = _int_list(args.x, "x")
    lam = core_from_params(x, args.e)
    print(_compact(list(lam)) if args.json else repr(lam))


def cmd_core_of(args):
    lam = _partition(args.partition)
    core, weight = e_core_and_weight(lam, check_modulus(args.e))
    if args.json:
        print(_compact({"core": list(core), "weight": weight}))
    else:
        print(f"{core!r} weight {weight}")


def cmd_core_params(args):
    lam = _partition(args.partition)
    print(_compact(list(params_of_core(lam, check_modulus(args.e)))))


def cmd_alpha(args):
    e = check_modulus(args.e)
    mp = _multipartition(args.mp)
    kappa = [k % e for k in _int_list(args.kappa, "kappa")]
    print(_compact(list(alpha_kappa(mp, kappa, e))))


def cmd_shift(args):
    config, _ = _config(args.config)
    if args.mp is not None:
        print(_compact(shift_multipartition(_multipartition(args.mp), config, args.times).to_json()))
    else:
        alpha = _int_list(args.alpha, "alpha")
        print(_compact(list(shift_alpha(alpha, config, args.times))))


def cmd_stutter_find(args):
    config, kappa = _config(args.config)
    kappa = _need_kappa(config, kappa)
    lam = _multipartition(args.multipartition)
    if len(lam) != config.r:
        raise ConfigError(f"{len(lam)} components, expected r = {config.r}")
    alpha = alpha_kappa(lam, kappa, config.e)
    if args.minimal:
        mu = find_minimal_orbit(lam, kappa, config)
        fixed = orbit_size_multipartition(mu, config) == orbit_size_alpha(alpha, config)
    elif args.power is not None:
        mu = find_power_stable(lam, kappa, config, args.power)
        fixed = shift_multipartition(mu, config, args.power) == mu
    else:
        mu = find_stuttering(lam, kappa, config)
        fixed = shift_multipartition(mu, config) == mu
    # recomputed from scratch, not taken from the pipeline
    same_block = alpha_kappa(mu, kappa, config.e) == alpha
    if not (same_block and fixed):
        raise InternalInvariantError(f"witness {mu!r} failed verification")
    report = {
        "alpha": list(alpha),
        "orbit_before": orbit_size_multipartition(lam, config),
        "orbit_after": orbit_size_multipartition(mu, config),
        "checks": "all-pass",
    }
    if args.json:
        print(_compact({"witness": mu.to_json(), "report": report}))
    else:
        print(_compact(mu.to_json()))
        print(_compact(report))


def cmd_binmat_rectify(args):
    data = _load_json(args.input, "input")
    if not isinstance(data, dict) or "E" not in data:
        raise DomainError("input must be an object with an E entry")
    try:
        E = np.array(data["E"], dtype=np.int64)
    except (ValueError, TypeError) as exc:
        raise DomainError(f"E is not a rectangular integer array: {exc}") from exc
    width = int(data.get("blockWidth", data.get("p", 0)))
    if E.ndim == 3 and "p" in data and E.shape[0] != data["p"]:
        raise DomainError(f"E has {E.shape[0]} members but p = {data['p']}")
    if E.ndim == 3 and "d" in data and E.shape[1] != data["d"]:
        raise DomainError(f"E has {E.shape[1]} rows but d = {data['d']}")
    out, log = rectify_block_sums(E, width)
    p, d, _ = out.shape
    _emit({"p": p, "d": d, "blockWidth": width, "E": out.tolist(), "log": log}, args.output)


def _verify(n, config, kappas, cap):
    blocks, failures = [], []
    for kappa in kappas:
        rep = oracle.verify_main_theorem(n, kappa, config, cap)
        for b in rep["blocks"]:
            blocks.append({"kappa": list(kappa), **b})
        for f in rep["failures"]:
            failures.append({"kappa": list(kappa), **f})
    mm = oracle.verify_minmax(n, config, cap)
    failures.extend({"check": f"orbit-{f['check']}", "got": f["got"], "want": f["want"]} for f in mm["failures"])
    return blocks, failures, mm


def cmd_oracle_verify(args):
    config, kappa = _config(args.config)
    kappas = [kappa] if kappa is not None else list(compatible_multicharges(config))
    blocks, failures, mm = _verify(args.n, config, kappas, args.cap)
    report = {"config": config.to_json(kappa), "n": args.n, "blocks": blocks, "failures": failures,
              "orbits": {"min": mm["min"], "max": mm["max"]}}
    if args.report:
        _emit(report, args.report)
    print(f"n={args.n} {_compact(config.to_json(kappa))}: {len(blocks)} blocks over "
          f"{len(kappas)} multicharge(s), {len(failures)} failure(s)")
    if failures:
        print(_compact(failures[:5]), file=sys.stderr)
        return 2
    return 0


def cmd_oracle_grid(args):
    grid = oracle.load_grid(args.grid) if args.grid else oracle.load_grid()
    n_max = grid["n_max"] if args.n_max is None else args.n_max
    bad = 0
    for config in oracle.grid_levels(grid):
        kappas = list(compatible_multicharges(config))
        nblocks = nfail = 0
        for n in range(n_max + 1):
            blocks, failures, _ = _verify(n, config, kappas, args.cap)
            nblocks += len(blocks)
            nfail += len(failures)
        bad += nfail
        print(f"{_compact(config.to_json())}: {len(kappas)} multicharges, {nblocks} blocks, {nfail} failures")
    return 2 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="stutterblocks", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ab = sub.add_parser("abacus", help="abacus diagrams").add_subparsers(dest="action", required=True)
    p = ab.add_parser("show", help="render the e-abacus of a partition")
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--partition", required=True, help="JSON list, e.g. [3,2,2,1]")
    p.add_argument("--window", type=int, default=6, help="heights shown on each side of 0")
    p.add_argument("--json", action="store_true", help="emit {e, params, core, n0}")
    p.set_defaults(func=cmd_abacus_show)

    core = sub.add_parser("core", help="e-cores").add_subparsers(dest="action", required=True)
    p = core.add_parser("from-params", help="e-core with given abacus parameters")
    p.add_argument("--e", type=int)
    p.add_argument("--x", required=True, help="zero-sum integers, e.g. 2,-1,-1,0")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_core_from_params)
    p = core.add_parser("of", help="e-core and e-weight of a partition")
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--partition", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_core_of)
    p = core.add_parser("params", help="abacus parameters of an e-core")
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--partition", required=True)
    p.set_defaults(func=cmd_core_params)

    p = sub.add_parser("alpha", help="residue vector of a multipartition")
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--kappa", required=True, help="multicharge, e.g. 0,2")
    p.add_argument("--mp", required=True, help="JSON list of partitions")
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("shift", help="apply the shift to a multipartition or residue vector")
    p.add_argument("--config", required=True, help="JSON {d, eta, p}")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--mp")
    g.add_argument("--alpha")
    p.add_argument("--times", type=int, default=1)
    p.set_defaults(func=cmd_shift)

    st = sub.add_parser("stutter", help="shift-invariant witnesses").add_subparsers(dest="action", required=True)
    p = st.add_parser("find", help="witness in the block of a multipartition")
    p.add_argument("--config", required=True, help="JSON {d, eta, p, kappa}")
    p.add_argument("--multipartition", required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--power", type=int, help="only require invariance under this power of the shift")
    mode.add_argument("--minimal", action="store_true", help="smallest possible orbit instead of invariance")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_stutter_find)

    bm = sub.add_parser("binmat", help="binary matrix families").add_subparsers(dest="action", required=True)
    p = bm.add_parser("rectify", help="equalise block sums of a (p, d, e) family")
    p.add_argument("--input", required=True, help="JSON {p, d, blockWidth, E}")
    p.add_argument("--output")
    p.set_defaults(func=cmd_binmat_rectify)

    orc = sub.add_parser("oracle", help="exhaustive verification").add_subparsers(dest="action", required=True)
    p = orc.add_parser("verify", help="check every block of one size")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--config", required=True, help="JSON {d, eta, p[, kappa]}; all compatible kappa when absent")
    p.add_argument("--report")
    p.add_argument("--cap", type=int, help="enumeration cap (default: STUTTER_CAP or 1e6)")
    p.set_defaults(func=cmd_oracle_verify)
    p = orc.add_parser("grid", help="run the bundled configuration grid")
    p.add_argument("--grid", help="manifest name inside the package data")
    p.add_argument("--n-max", type=int)
    p.add_argument("--cap", type=int)
    p.set_defaults(func=cmd_oracle_grid)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        rc = args.func(args)
    except InternalInvariantError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 2
    except StutterError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error[io]: {exc}", file=sys.stderr)
        return 1
    return rc or 0


if __name__ == "__main__":
    sys.exit(main())
