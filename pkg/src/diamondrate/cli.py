"""Command-line front end.

Exit codes: 0 ok, 1 bad input or usage, 2 enumeration cap hit,
3 internal invariant failure.
"""
from __future__ import annotations

import hashlib
import json
import os
import random
import sys
from typing import Any

import click

from . import __version__
from .block_oracle import OracleConfig, alpha_block, gamma_block, h_block_check, min_labels_search
from .bounds import alpha, gamma, rate_report
from .coding_schemes import (arith_scheme, arith_structure_check, check_zero_error,
                             expected_lengths, gf2_scheme, identity_scheme)
from .demand_function import FIXTURES, DemandFunction, load_fixture, load_path
from .equivalence import DEFAULT_CAP, d_vector, scalar_partition, v_count, x3_partition
from .errors import DemandFunctionError, InvariantError, ResourceCapError
from .pair_structure import pair_index_set, preimage_count_given_a3

SCHEMA = "v1"
ORACLE_TOL = 1e-9


def _round_floats(obj: Any) -> Any:
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def _digest(canonical: dict) -> str:
    text = json.dumps(canonical, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def envelope(command: str, canonical_input: dict, payload: dict) -> dict:
    return {
        "schema": SCHEMA,
        "tool_version": __version__,
        "input_digest": _digest(canonical_input),
        "command": command,
        "payload": _round_floats(payload),
    }


def _text_lines(obj: Any, prefix: str = "") -> list[str]:
    lines = []
    if isinstance(obj, dict):
        for key in sorted(obj):
            lines += _text_lines(obj[key], f"{prefix}{key}.")
    elif isinstance(obj, list) and obj and all(isinstance(v, (dict, list)) for v in obj):
        for i, v in enumerate(obj):
            lines += _text_lines(v, f"{prefix}{i}.")
    else:
        value = json.dumps(obj, sort_keys=True) if isinstance(obj, (list, dict)) else obj
        if isinstance(value, float):
            value = f"{value:.12g}"
        lines.append(f"{prefix[:-1]:<40} {value}")
    return lines


def _emit(env: dict, fmt: str, table: str | None = None) -> None:
    if fmt == "json":
        click.echo(json.dumps(env, sort_keys=True, indent=2))
        return
    click.echo(f"{'command':<40} {env['command']}")
    click.echo(f"{'input_digest':<40} {env['input_digest']}")
    for line in _text_lines(env["payload"]):
        click.echo(line)
    if table:
        click.echo("")
        click.echo(table)


def _resolve_input(spec: str) -> DemandFunction:
    if os.path.exists(spec):
        return load_path(spec)
    stem = os.path.basename(spec)
    stem = stem[:-5] if stem.endswith(".json") else stem
    if stem in FIXTURES:
        return load_fixture(stem)
    raise DemandFunctionError(f"no such file or bundled fixture: {spec}")


input_option = click.option("--input", "input_spec", required=True,
                            help="Demand-function JSON file, or a bundled fixture name "
                                 f"({', '.join(FIXTURES)}).")
format_option = click.option("--format", "fmt", type=click.Choice(["json", "text"]),
                             default="text", show_default=True)
z_option = click.option("--z", "z_size", type=click.IntRange(min=2), default=2, show_default=True,
                        help="Codeword alphabet size |Z|.")
cap_option = click.option("--cap", type=click.IntRange(min=1), default=DEFAULT_CAP,
                          show_default=True, help="Enumeration cap.")


@click.group(help="Zero-error rate-region outer bounds on the diamond network.")
@click.version_option(__version__)
def cli() -> None:
    pass


@cli.command(help="Single-letter outer bound on (R31+R32, R1, R2, (R1+R2)/2).")
@input_option
@z_option
@format_option
def bounds(input_spec: str, z_size: int, fmt: str) -> None:
    f = _resolve_input(input_spec)
    report = rate_report(f, z_size)
    _emit(envelope("bounds", f.canonical(), report.to_dict()), fmt)


def _pair_table(f: DemandFunction) -> dict:
    rows = {}
    for a3 in range(f.a_size):
        row = {}
        for b in range(f.b_size):
            if preimage_count_given_a3(f, b, a3):
                row[str(b)] = [[e.v, e.w, e.h] for e in pair_index_set(f, a3, b).pairs]
            else:
                row[str(b)] = []
        rows[str(a3)] = row
    return rows


def _render_pair_table(f: DemandFunction, rows: dict) -> str:
    def cell(pairs):
        if not pairs:
            return "{}"
        return "{" + ",".join(f"({v},{w})" for v, w, _ in pairs) + "}"
    cells = [[cell(rows[str(a3)][str(b)]) for b in range(f.b_size)] for a3 in range(f.a_size)]
    width = max(max(len(c) for r in cells for c in r), 6)
    head = "a3 | " + " ".join(f"{'b=' + str(b):<{width}}" for b in range(f.b_size))
    lines = ["pair index sets V12(a3, b), 1-based class ids", head, "-" * len(head)]
    for a3, r in enumerate(cells):
        lines.append(f"{a3:<2} | " + " ".join(f"{c:<{width}}" for c in r))
    return "\n".join(lines)


@cli.command(help="Dump equivalence partitions, V-counts and pair index sets.")
@input_option
@format_option
def partitions(input_spec: str, fmt: str) -> None:
    f = _resolve_input(input_spec)
    sides = {}
    for u in (1, 2):
        sides[str(u)] = {
            str(a3): {
                "classes": [list(c) for c in scalar_partition(f, u, a3).classes],
                "v_count": v_count(f, u, a3),
                "d_vector": list(d_vector(f, u, a3).sizes),
            }
            for a3 in range(f.a_size)
        }
    v_table = {str(u): [v_count(f, u, a3) for a3 in range(f.a_size)] for u in (1, 2)}
    rows = _pair_table(f)
    payload = {
        "x3_partition": [list(c) for c in x3_partition(f).classes],
        "scalar_partitions": sides,
        "v_table": v_table,
        "pair_index_sets": rows,
    }
    _emit(envelope("partitions", f.canonical(), payload), fmt, _render_pair_table(f, rows))


def _sample_h_checks(f: DemandFunction, k: int, samples: int, seed: int) -> tuple[int, int]:
    rng = random.Random(seed)
    passed = 0
    for _ in range(samples):
        x1, x2, x3 = ([rng.randrange(f.a_size) for _ in range(k)] for _ in range(3))
        if h_block_check(f, f.block(x1, x2, x3), x3):
            passed += 1
    return passed, samples


@cli.command(help="Brute-force block-length-k checks of the single-letter bound.")
@input_option
@click.option("--k", type=click.IntRange(min=1), default=2, show_default=True)
@z_option
@cap_option
@click.option("--samples", type=click.IntRange(min=0), default=100, show_default=True,
              help="Random (b, a3) blocks for the h-vector product check.")
@click.option("--seed", type=int, default=0, show_default=True)
@format_option
def oracle(input_spec: str, k: int, z_size: int, cap: int, samples: int, seed: int,
           fmt: str) -> None:
    f = _resolve_input(input_spec)
    cfg = OracleConfig(k=k, enumeration_cap=cap, z_size=z_size)
    payload: dict = {"k": k, "z_size": z_size}
    ok = True
    for u in (1, 2):
        gb, g = gamma_block(f, u, cfg), gamma(f, u, z_size)
        payload[f"gamma_block_{u}"], payload[f"gamma_{u}"] = gb, g
        ok &= abs(gb - g) <= ORACLE_TOL
    ab, al = alpha_block(f, cfg), alpha(f, z_size)
    payload["alpha_block"], payload["alpha"] = ab, al
    ok &= abs(ab - al) <= ORACLE_TOL
    if f.a_size <= 4:
        labels = []
        for u in (1, 2):
            for a3 in range(f.a_size):
                m, v = min_labels_search(f, u, a3), v_count(f, u, a3)
                labels.append({"u": u, "a3": a3, "min_labels": m, "v_count": v})
                ok &= m == v
        payload["min_labels"] = labels
    hk = min(k, 3)
    passed, total = _sample_h_checks(f, hk, samples, seed)
    payload["h_block_check"] = {"k": hk, "passed": passed, "samples": total}
    ok &= passed == total
    payload["all_checks_pass"] = bool(ok)
    _emit(envelope("oracle", f.canonical(), payload), fmt)


@cli.command(help="Build a bundled coding scheme, verify it and report expected lengths.")
@click.option("--name", type=click.Choice(["gf2", "arith", "identity"]), required=True)
@click.option("--k", type=click.IntRange(min=1), required=True)
@click.option("--c", type=int, default=None, help="gf2 only: X3 bits routed via s1.")
@click.option("--input", "input_spec", default=None,
              help="identity only: demand function to forward for.")
@cap_option
@format_option
def scheme(name: str, k: int, c: int | None, input_spec: str | None, cap: int, fmt: str) -> None:
    canonical: dict = {"scheme": name, "k": k}
    if name == "gf2":
        c = k // 2 if c is None else c
        if not 0 <= c <= k:
            raise click.BadParameter(f"need 0 <= c <= k, got c={c}", param_hint="--c")
        canonical["c"] = c
        code, f = gf2_scheme(k, c), load_fixture("gf2sum")
    elif name == "arith":
        if k % 2:
            raise click.BadParameter("arith needs an even k", param_hint="--k")
        code, f = arith_scheme(k, cap), load_fixture("arithsum")
    else:
        if input_spec is None:
            raise click.UsageError("identity scheme needs --input")
        f = _resolve_input(input_spec)
        canonical["function"] = f.canonical()
        code = identity_scheme(f, k)
    if f.a_size ** (3 * code.k) <= cap:
        zero_error, method = check_zero_error(code, f, cap), "exhaustive"
    elif name == "arith":
        zero_error, method = arith_structure_check(k, cap), "structural"
    else:
        raise ResourceCapError(f"zero-error sweep for k={k} exceeds cap {cap}")
    payload = expected_lengths(code, f, cap).to_dict()
    payload.update({"scheme": name, "zero_error": zero_error, "zero_error_method": method})
    if c is not None and name == "gf2":
        payload["c"] = c
    _emit(envelope("scheme", canonical, payload), fmt)


def run(argv: list[str] | None = None) -> int:
    """Run the CLI on ``argv`` and return the process exit code."""
    try:
        cli.main(args=argv, prog_name="diamondrate", standalone_mode=False)
    except (DemandFunctionError, ValueError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return 1
    except ResourceCapError as exc:
        click.echo(f"resource cap: {exc}", err=True)
        return 2
    except (InvariantError, AssertionError) as exc:
        click.echo(f"internal invariant failed: {exc}", err=True)
        return 3
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
