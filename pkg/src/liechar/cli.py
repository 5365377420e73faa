"""Command-line surface: character evaluation, CJ tables, verification sweeps.

Exit codes: 0 success, 1 verification mismatch, 2 input or validation error.
Progress and timing go to stderr; the data stream stays machine-readable
and deterministic.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import pims
from .characters import (
    Character,
    formal_dual,
    frobenius_twist,
    steinberg_character,
    weyl_character,
)
from .decomp import Sl2DecompositionProvider, load_decomposition_data
from .errors import LiecharError
from .finite import STEINBERG_METHODS, steinberg_multiplicity
from .rootdata import CartanMatrix, RootSystem

DATA_DIR_ENV = "LIECHAR_DATA_DIR"

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2


class CliError(LiecharError):
    """Input error surfaced as exit code 2."""


@dataclass
class RunConfig:
    rs: RootSystem
    p: int
    r: int
    provider: object
    qrdata: object
    bound: int
    method: str
    fmt: str
    jobs: int
    seed: int
    widen: bool


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _resolve_data_path(path):
    if os.path.exists(path):
        return path
    data_dir = os.environ.get(DATA_DIR_ENV)
    if data_dir:
        candidate = os.path.join(data_dir, path)
        if os.path.exists(candidate):
            return candidate
    raise CliError(f"data file not found: {path}")


def _load_json(path):
    with open(_resolve_data_path(path), "r", encoding="utf-8") as handle:
        return json.load(handle)


def build_config(args):
    if args.cartan:
        rs = RootSystem(CartanMatrix.from_json_dict(_load_json(args.cartan)))
    else:
        rs = RootSystem(CartanMatrix.builtin(args.type))
    if not _is_prime(args.p):
        raise CliError(f"p must be prime, got {args.p}")
    if args.r < 1:
        raise CliError(f"r must be >= 1, got {args.r}")
    if args.bound is not None and args.bound < 0:
        raise CliError(f"bound must be nonnegative, got {args.bound}")

    if args.decomp_data:
        provider = load_decomposition_data(_load_json(args.decomp_data), rs=rs)
        if provider.p != args.p:
            raise CliError(
                f"decomposition data is for p={provider.p}, requested p={args.p}"
            )
    elif rs.rank == 1:
        provider = Sl2DecompositionProvider(args.p, rs=rs)
    else:
        provider = None

    if args.qhat_data:
        qrdata = pims.QrData.from_json_dict(_load_json(args.qhat_data), rs=rs)
        if (qrdata.p, qrdata.r) != (args.p, args.r):
            raise CliError(
                f"Q-hat data is for (p, r)=({qrdata.p}, {qrdata.r}), "
                f"requested ({args.p}, {args.r})"
            )
    elif rs.rank == 1:
        qrdata = pims.QrData.builtin_sl2(args.p, args.r, rs=rs)
    else:
        qrdata = None

    bound = args.bound if args.bound is not None else 2 * args.p**args.r
    return RunConfig(
        rs=rs,
        p=args.p,
        r=args.r,
        provider=provider,
        qrdata=qrdata,
        bound=bound,
        method=args.method,
        fmt=args.format,
        jobs=args.jobs,
        seed=args.seed,
        widen=args.widen,
    )


def _require(config, attr, what):
    value = getattr(config, attr)
    if value is None:
        raise CliError(f"{what} required: supply --{attr.replace('_', '-')} data")
    return value


# -- expression grammar ----------------------------------------------------


class _Tokens:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self._skip_ws()
        if self.pos >= len(self.text):
            return None
        ch = self.text[self.pos]
        if ch.isalpha():
            end = self.pos
            while end < len(self.text) and self.text[end].isalpha():
                end += 1
            return self.text[self.pos:end]
        if ch.isdigit():
            end = self.pos
            while end < len(self.text) and self.text[end].isdigit():
                end += 1
            return self.text[self.pos:end]
        return ch

    def take(self, expected=None):
        token = self.peek()
        if token is None:
            raise CliError(f"parse error at position {self.pos}: unexpected end")
        if expected is not None and token != expected:
            raise CliError(
                f"parse error at position {self.pos}: expected {expected!r}, "
                f"got {token!r}"
            )
        self.pos += len(token)
        return token


def _parse_weight(tokens, rank):
    coords = [int(tokens.take())]
    while tokens.peek() == ",":
        tokens.take(",")
        coords.append(int(tokens.take()))
    if len(coords) != rank:
        raise CliError(
            f"parse error at position {tokens.pos}: weight has {len(coords)} "
            f"coordinates, rank is {rank}"
        )
    return tuple(coords)


def _parse_atom(tokens, config):
    token = tokens.peek()
    if token == "(":
        tokens.take("(")
        value = _parse_expression(tokens, config)
        tokens.take(")")
        return value
    if token == "st":
        tokens.take()
        return steinberg_character(config.rs, config.p, config.r)
    if token == "weyl":
        tokens.take()
        tokens.take("(")
        lam = _parse_weight(tokens, config.rs.rank)
        tokens.take(")")
        return weyl_character(lam, config.rs)
    if token == "simple":
        tokens.take()
        tokens.take("(")
        lam = _parse_weight(tokens, config.rs.rank)
        tokens.take(")")
        provider = _require(config, "provider", "decomposition data")
        return provider.simple_character(lam)
    if token == "twist":
        tokens.take()
        tokens.take("(")
        inner = _parse_expression(tokens, config)
        tokens.take(",")
        s = int(tokens.take())
        tokens.take(")")
        return frobenius_twist(inner, config.p, s)
    if token == "dual":
        tokens.take()
        tokens.take("(")
        inner = _parse_expression(tokens, config)
        tokens.take(")")
        return formal_dual(inner)
    raise CliError(f"parse error at position {tokens.pos}: unexpected {token!r}")


def _parse_expression(tokens, config):
    value = _parse_atom(tokens, config)
    op = tokens.peek()
    if op not in ("+", "*"):
        return value
    while True:
        nxt = tokens.peek()
        if nxt is None or nxt in (")", ","):
            return value
        if nxt != op:
            raise CliError(
                f"parse error at position {tokens.pos}: mixed '+' and '*' "
                "need explicit parentheses"
            )
        tokens.take(op)
        rhs = _parse_atom(tokens, config)
        value = value + rhs if op == "+" else value * rhs


def evaluate_expression(text, config):
    tokens = _Tokens(text)
    value = _parse_expression(tokens, config)
    if tokens.peek() is not None:
        raise CliError(
            f"parse error at position {tokens.pos}: trailing {tokens.peek()!r}"
        )
    return value


# -- rendering -------------------------------------------------------------


def _weight_label(weight):
    return ",".join(str(c) for c in weight)


def render_character(chi, fmt, out):
    if fmt == "json":
        json.dump(chi.to_json_dict(), out, sort_keys=True, separators=(",", ":"))
        out.write("\n")
    elif fmt == "tsv":
        for weight, mult in chi.sorted_items():
            out.write(f"{_weight_label(weight)}\t{mult}\n")
    else:
        for weight, mult in chi.sorted_items():
            out.write(f"({_weight_label(weight)}): {mult}\n")
        out.write(f"dimension: {chi.dimension()}\n")


def render_table(table, fmt, out):
    labels = table.col_labels
    if fmt == "json":
        doc = {
            "labels": [list(w) for w in labels],
            "lhs": [
                [table.lhs[(lam, mu)] for mu in labels] for lam in table.row_labels
            ],
            "rhs": [
                [table.rhs[(lam, mu)] for mu in labels] for lam in table.row_labels
            ],
            "mismatches": [
                {"lambda": list(lam), "mu": list(mu), "lhs": a, "rhs": b}
                for lam, mu, a, b in table.mismatches
            ],
        }
        json.dump(doc, out, sort_keys=True, separators=(",", ":"))
        out.write("\n")
        return
    for route in ("lhs", "rhs"):
        values = getattr(table, route)
        out.write(f"# route={route}\n")
        out.write("\t" + "\t".join(_weight_label(mu) for mu in labels) + "\n")
        for lam in table.row_labels:
            cells = "\t".join(str(values[(lam, mu)]) for mu in labels)
            out.write(f"{_weight_label(lam)}\t{cells}\n")


# -- commands --------------------------------------------------------------


def cmd_char(config, expression, out=None):
    out = out if out is not None else sys.stdout
    chi = evaluate_expression(expression, config)
    render_character(chi, config.fmt, out)
    return EXIT_OK


def _table_mapper(config):
    if config.jobs > 1:
        executor = ThreadPoolExecutor(max_workers=config.jobs)
        return executor, executor.map
    return None, map


def cmd_cj_table(config, out=None):
    out = out if out is not None else sys.stdout
    provider = _require(config, "provider", "decomposition data")
    qrdata = _require(config, "qrdata", "Q-hat data")
    executor, mapper = _table_mapper(config)
    try:
        table = pims.cj_table(
            config.p,
            config.r,
            provider,
            qrdata,
            method=config.method,
            widen=config.widen,
            cells=mapper,
        )
    finally:
        if executor is not None:
            executor.shutdown()
    render_table(table, config.fmt, out)
    if table.mismatches:
        for lam, mu, left, right in table.mismatches:
            print(
                f"mismatch at (lambda={_weight_label(lam)}, mu={_weight_label(mu)}): "
                f"lhs={left} rhs={right} method={config.method}",
                file=sys.stderr,
            )
        return EXIT_MISMATCH
    return EXIT_OK


VERIFY_TARGETS = ("prop31", "prop32", "lemma33", "thm41", "thm45a", "prop44delta")


def _dominant_grid(rs, bound):
    import itertools

    return [
        tuple(w)
        for w in itertools.product(range(bound + 1), repeat=rs.rank)
    ]


def _verify_route_agreement(config, other_method):
    provider = _require(config, "provider", "decomposition data")
    rs = config.rs
    mismatches = []
    grid = _dominant_grid(rs, config.bound)
    for lam in grid:
        chi = weyl_character(lam, rs)
        reference = steinberg_multiplicity(
            chi, config.p, config.r, provider=provider, method="direct", rs=rs
        )
        value = steinberg_multiplicity(
            chi,
            config.p,
            config.r,
            provider=provider,
            method=other_method,
            rs=rs,
            widen=config.widen,
        )
        if value != reference:
            mismatches.append((lam, reference, value))
    return len(grid), [
        f"lambda={_weight_label(lam)} direct={a} {other_method}={b}"
        for lam, a, b in mismatches
    ]


def _verify_lemma33(config):
    provider = _require(config, "provider", "decomposition data")
    qrdata = _require(config, "qrdata", "Q-hat data")
    rs = config.rs
    checks = 0
    mismatches = []
    restricted = rs.restricted_weights(config.p, config.r)
    nus = _dominant_grid(rs, 3)
    for sigma in _dominant_grid(rs, config.bound):
        chi = weyl_character(sigma, rs)
        for lam in restricted:
            for nu in nus:
                record = pims.jantzen_identity_check(
                    chi, lam, nu, config.p, config.r, provider, qrdata
                )
                checks += 1
                if record["lhs"] != record["rhs"]:
                    mismatches.append(
                        f"sigma={_weight_label(sigma)} lambda={_weight_label(lam)} "
                        f"nu={_weight_label(nu)} lhs={record['lhs']} rhs={record['rhs']}"
                    )
    return checks, mismatches


def _verify_thm41(config):
    provider = _require(config, "provider", "decomposition data")
    qrdata = _require(config, "qrdata", "Q-hat data")
    executor, mapper = _table_mapper(config)
    try:
        table = pims.cj_table(
            config.p,
            config.r,
            provider,
            qrdata,
            method=config.method,
            widen=config.widen,
            cells=mapper,
        )
    finally:
        if executor is not None:
            executor.shutdown()
    checks = len(table.row_labels) * len(table.col_labels)
    return checks, [
        f"lambda={_weight_label(lam)} mu={_weight_label(mu)} lhs={a} rhs={b}"
        for lam, mu, a, b in table.mismatches
    ]


def _verify_thm45a(config):
    provider = _require(config, "provider", "decomposition data")
    rs = config.rs
    restricted = rs.restricted_weights(config.p, config.r)
    checks = 0
    mismatches = []
    for lam in restricted:
        for mu in restricted:
            record = pims.theorem45a_socle_check(
                lam, mu, config.p, config.r, provider, widen=config.widen
            )
            checks += 1
            if record["lhs"] != record["rhs"]:
                mismatches.append(
                    f"lambda={_weight_label(lam)} mu={_weight_label(mu)} "
                    f"lhs={record['lhs']} rhs={record['rhs']}"
                )
    return checks, mismatches


def _verify_prop44delta(config):
    provider = _require(config, "provider", "decomposition data")
    rs = config.rs
    restricted = rs.restricted_weights(config.p, config.r)
    checks = 0
    mismatches = []
    for mu in restricted:
        for sigma in restricted:
            value = pims.induced_socle_multiplicity(
                mu, sigma, config.p, config.r, provider
            )
            expected = 1 if mu == sigma else 0
            checks += 1
            if value != expected:
                mismatches.append(
                    f"mu={_weight_label(mu)} sigma={_weight_label(sigma)} "
                    f"value={value} expected={expected}"
                )
    return checks, mismatches


def cmd_verify(config, target, out=None):
    out = out if out is not None else sys.stdout
    if target not in VERIFY_TARGETS:
        raise CliError(
            f"unknown verify target {target!r}; known: {', '.join(VERIFY_TARGETS)}"
        )
    print(f"verify {target}: running", file=sys.stderr)
    start = time.monotonic()
    if target == "prop31":
        checks, mismatches = _verify_route_agreement(config, "good_filtration")
    elif target == "prop32":
        checks, mismatches = _verify_route_agreement(config, "simple_basis")
    elif target == "lemma33":
        checks, mismatches = _verify_lemma33(config)
    elif target == "thm41":
        checks, mismatches = _verify_thm41(config)
    elif target == "thm45a":
        checks, mismatches = _verify_thm45a(config)
    else:
        checks, mismatches = _verify_prop44delta(config)
    elapsed = time.monotonic() - start
    print(f"verify {target}: {elapsed:.2f}s", file=sys.stderr)
    out.write(
        f"target={target} checks={checks} mismatches={len(mismatches)} "
        f"seed={config.seed}\n"
    )
    for line in mismatches:
        out.write(f"mismatch {line}\n")
    return EXIT_MISMATCH if mismatches else EXIT_OK


# -- entry point -----------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_mutually_exclusive_group()
    group.add_argument("--type", default="A1", help="built-in root-system type")
    group.add_argument("--cartan", help="path to a Cartan matrix JSON file")
    common.add_argument("-p", type=int, default=3, help="prime characteristic")
    common.add_argument("-r", type=int, default=1, help="Frobenius iteration")
    common.add_argument("--decomp-data", help="decomposition-number JSON file")
    common.add_argument("--qhat-data", help="injective-hull character JSON file")
    common.add_argument("--bound", type=int, help="weight-range bound for sweeps")
    common.add_argument(
        "--method",
        choices=STEINBERG_METHODS,
        default="simple_basis",
        help="Steinberg-multiplicity route",
    )
    common.add_argument(
        "--format",
        choices=("json", "tsv", "pretty"),
        default="pretty",
        help="output format",
    )
    common.add_argument("--jobs", type=int, default=1, help="parallelism degree")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled sweeps")
    common.add_argument(
        "--widen",
        action="store_true",
        help="double every nu-range box (results must not change)",
    )

    parser = argparse.ArgumentParser(
        prog="liechar",
        description="Exact character calculus for algebraic groups and their "
        "finite groups of Lie type",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p_char = sub.add_parser("char", parents=[common], help="evaluate an expression")
    p_char.add_argument("expression")
    sub.add_parser("cj-table", parents=[common], help="both CJ routes over X_r^2")
    p_verify = sub.add_parser("verify", parents=[common], help="equality sweeps")
    p_verify.add_argument("target", choices=VERIFY_TARGETS)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = build_config(args)
        if args.command == "char":
            return cmd_char(config, args.expression)
        if args.command == "cj-table":
            return cmd_cj_table(config)
        return cmd_verify(config, args.target)
    except LiecharError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
