"""Command-line interface: mu / classify / lattice / verify / batch.

Exit codes: 0 success, 1 expression parse error, 2 resource cap exceeded,
3 internal invariant violation (including oracle disagreement and any
verification FAIL).
"""

from __future__ import annotations

import functools
import json
import os
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from threading import Lock
from typing import Optional

import click

from .catalog import build, catalog, load_semidirect, normalize_expr_string, parse_group_expr
from .errors import (
    ExprSyntaxError,
    InternalInvariantError,
    PermdegError,
    ResourceCapError,
)
from .gfp import MatrixGFp, det, det_laplace
from .groups import FiniteGroup, center, inversion_action, make_cyclic, socle
from .solver import (
    ORACLE_CAP,
    Representation,
    classify_incompressible,
    compression_ratio,
    degree,
    is_CS,
    is_CSE,
    mu_exact,
    mu_oracle,
    semidirect_bound_check,
    socle_induced_properties_check,
    verify_additivity,
)

CACHE_VERSION = 1
SPOT_CHECK_RATE = 0.10


@dataclass
class CliConfig:
    order_cap: int = 256
    oracle_cap: int = ORACLE_CAP
    cache_path: Optional[str] = None
    output_json: bool = False
    threads: int = 1


class VerificationFailure(PermdegError):
    """A verify sub-check reported FAIL."""


def _handle_errors(f):
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except ExprSyntaxError as e:
            click.echo(f"parse error: {e}", err=True)
            sys.exit(1)
        except ResourceCapError as e:
            click.echo(f"resource cap: {e}", err=True)
            sys.exit(2)
        except (InternalInvariantError, VerificationFailure) as e:
            click.echo(f"invariant violation: {e}", err=True)
            sys.exit(3)
    return wrapper


@click.group()
@click.option("--order-cap", type=int, default=256, show_default=True,
              help="Refuse to build groups larger than this order.")
@click.option("--oracle-cap", type=int, default=ORACLE_CAP, show_default=True,
              help="Order limit for the brute-force oracle and CSE checks.")
@click.option("--cache", "cache_path", type=click.Path(), default=None,
              help="Result cache file (default: $MU_PERM_CACHE).")
@click.option("--json", "output_json", is_flag=True, help="Emit JSON output.")
@click.option("--threads", type=int, default=1, show_default=True,
              help="Worker threads for batch solving.")
@click.pass_context
def cli(ctx, order_cap, oracle_cap, cache_path, output_json, threads):
    """Exact minimal faithful permutation degrees of finite groups."""
    if oracle_cap > order_cap:
        oracle_cap = order_cap
    if cache_path is None:
        cache_path = os.environ.get("MU_PERM_CACHE") or None
    ctx.obj = CliConfig(order_cap=order_cap, oracle_cap=oracle_cap,
                        cache_path=cache_path, output_json=output_json,
                        threads=max(1, threads))


def _witness_lists(R: Representation) -> list[list[int]]:
    return [sorted(H.elements()) for H in R.parts]


def _emit(cfg: CliConfig, record: dict, text_lines: list[str]) -> None:
    if cfg.output_json:
        click.echo(json.dumps(record, sort_keys=True))
    else:
        for line in text_lines:
            click.echo(line)


@cli.command("mu")
@click.argument("expr")
@click.option("--oracle", is_flag=True, help="Cross-check with the brute-force oracle.")
@click.option("--witness", "show_witness", is_flag=True, help="Print a minimal witness.")
@click.pass_obj
@_handle_errors
def cmd_mu(cfg: CliConfig, expr: str, oracle: bool, show_witness: bool):
    """Compute mu(EXPR) exactly."""
    parse_group_expr(expr)  # fail with exit 1 before any output
    t0 = time.perf_counter()
    G = build(parse_group_expr(expr), cap=cfg.order_cap)
    res = mu_exact(G)
    elapsed = time.perf_counter() - t0
    record = {
        "expr": expr,
        "order": G.order,
        "mu": res.mu,
        "timing_s": round(elapsed, 6),
        "solver": {"nodes": res.nodes_explored,
                   "candidates": res.candidates_considered,
                   "cached": False},
    }
    lines = [f"mu={res.mu} order={G.order} ({elapsed:.3f}s)"]
    if oracle:
        if G.order > cfg.oracle_cap:
            raise ResourceCapError(
                f"oracle needs order <= {cfg.oracle_cap}, got {G.order}")
        ores = mu_oracle(G)
        record["oracle"] = ores.mu
        record["agree"] = ores.mu == res.mu
        lines.append(f"oracle={ores.mu} agree={ores.mu == res.mu}")
        if ores.mu != res.mu:
            raise InternalInvariantError(
                f"oracle disagreement: mu_exact={res.mu} mu_oracle={ores.mu}")
    if show_witness:
        record["witness"] = _witness_lists(res.witness)
        lines.append("witness=" + json.dumps(record["witness"]))
    _emit(cfg, record, lines)


@cli.command("classify")
@click.argument("expr")
@click.pass_obj
@_handle_errors
def cmd_classify(cfg: CliConfig, expr: str):
    """Compression ratio, incompressibility type, CS / CSE membership."""
    parse_group_expr(expr)
    G = build(parse_group_expr(expr), cap=cfg.order_cap)
    verdict = classify_incompressible(G)
    cs = is_CS(G)
    record = {
        "expr": expr,
        "order": G.order,
        "mu": mu_exact(G).mu,
        "cr": f"{verdict.cr.numerator}/{verdict.cr.denominator}",
        "cr_decimal": float(verdict.cr),
        "incompressible_type": verdict.structural_type,
        "is_CS": cs,
    }
    lines = [
        f"order={G.order} mu={record['mu']} cr={record['cr']} "
        f"({record['cr_decimal']:.4f})",
        f"incompressible_type={verdict.structural_type}",
        f"CS={cs}",
    ]
    if G.order <= cfg.oracle_cap:
        cse, wit = is_CSE(G)
        record["is_CSE"] = cse
        record["cse_witness"] = sorted(wit.elements()) if wit is not None else None
        lines.append(f"CSE={cse}"
                     + (f" (witness order {wit.order})" if wit is not None else ""))
    _emit(cfg, record, lines)


@cli.command("lattice")
@click.argument("expr")
@click.pass_obj
@_handle_errors
def cmd_lattice(cfg: CliConfig, expr: str):
    """Subgroup counts and the meet-irreducible census of EXPR."""
    parse_group_expr(expr)
    G = build(parse_group_expr(expr), cap=cfg.order_cap)
    lat = G.lattice(cap=cfg.order_cap)
    flags = lat.meet_irreducible_flags()
    record = {
        "expr": expr,
        "order": G.order,
        "subgroups": len(lat),
        "normal": sum(lat.normal_flags),
        "minimal_normal": len(lat.minimal_normals),
        "meet_irreducible": sum(flags),
        "socle_order": socle(G).order,
        "center_order": center(G).order,
    }
    lines = [
        f"order={G.order} subgroups={record['subgroups']} "
        f"normal={record['normal']} minimal_normal={record['minimal_normal']}",
        f"meet_irreducible={record['meet_irreducible']} "
        f"socle_order={record['socle_order']} center_order={record['center_order']}",
    ]
    _emit(cfg, record, lines)


# -- verify ----------------------------------------------------------------


def _verify_additivity(cfg: CliConfig, a: str, b: str) -> list[dict]:
    G = build(parse_group_expr(a), cap=cfg.order_cap)
    H = build(parse_group_expr(b), cap=cfg.order_cap)
    rec = verify_additivity(G, H, cap=cfg.order_cap)
    ok = rec.equal or rec.guaranteed == "none"
    return [{
        "check": "additivity", "case": f"{a} , {b}",
        "lhs": rec.lhs, "rhs": rec.rhs, "guarantee": rec.guaranteed,
        "pass": ok,
    }]


def _verify_semidirect(cfg: CliConfig, arg: str) -> list[dict]:
    path = arg[3:] if arg.startswith("sd:") else arg
    G, H, action = load_semidirect(path, cap=cfg.order_cap)
    rep = semidirect_bound_check(G, H, action, cap=cfg.order_cap)
    return [{
        "check": "semidirect", "case": path,
        "mu": rep.mu_product, "bound": rep.bound,
        "injective": rep.embedding_injective,
        "pass": rep.holds and rep.embedding_injective,
    }]


def _verify_laplace(trials: int = 300) -> list[dict]:
    rng = random.Random(20260823)
    failures = 0
    for _ in range(trials):
        p = rng.choice([2, 3, 5, 7])
        n = rng.randint(2, 5)
        M = MatrixGFp.from_rows(
            [[rng.randrange(p) for _ in range(n)] for _ in range(n)], p)
        k = rng.randint(1, n - 1)
        cols = sorted(rng.sample(range(n), k))
        if det_laplace(M, cols) != det(M):
            failures += 1
    return [{"check": "laplace", "case": f"{trials} random matrices",
             "failures": failures, "pass": failures == 0}]


_SOCLE_FIXTURES = ["Ab(2,2)", "Q8", "Ab(9,3)", "C12"]


def _verify_socle(cfg: CliConfig) -> list[dict]:
    out = []
    for expr in _SOCLE_FIXTURES:
        G = build(parse_group_expr(expr), cap=cfg.order_cap)
        res = mu_exact(G)
        report = socle_induced_properties_check(G, res.witness)
        out.append({"check": "socle", "case": expr,
                    "faithful_on_socle": report.faithful_on_socle,
                    "per_prime_faithful": report.per_prime_faithful,
                    "no_redundant_constituents": report.no_redundant_constituents,
                    "codimension_one": report.codimension_one,
                    "pass": report.passed})
    return out


def _verify_all(cfg: CliConfig) -> list[dict]:
    out = []
    out += _verify_laplace()
    out += _verify_socle(cfg)
    out += _verify_additivity(cfg, "Q8", "C4")
    out += _verify_additivity(cfg, "C4", "C3")
    # dihedral bound fixture built inline: C5 inverted by C2
    C5, C2 = make_cyclic(5), make_cyclic(2)
    rep = semidirect_bound_check(C5, C2, inversion_action(C5, C2),
                                 cap=cfg.order_cap)
    out.append({"check": "semidirect", "case": "C5 inverted by C2",
                "mu": rep.mu_product, "bound": rep.bound,
                "injective": rep.embedding_injective,
                "pass": rep.holds and rep.embedding_injective})
    return out


@cli.command("verify")
@click.argument("kind",
                type=click.Choice(["additivity", "semidirect", "laplace",
                                   "socle", "all"]))
@click.argument("args", nargs=-1)
@click.pass_obj
@_handle_errors
def cmd_verify(cfg: CliConfig, kind: str, args: tuple[str, ...]):
    """Run a verification suite; any FAIL exits with code 3."""
    if kind == "additivity":
        if len(args) != 2:
            raise click.UsageError("verify additivity needs two group expressions")
        results = _verify_additivity(cfg, args[0], args[1])
    elif kind == "semidirect":
        if len(args) != 1:
            raise click.UsageError("verify semidirect needs one sd-file path")
        results = _verify_semidirect(cfg, args[0])
    elif kind == "laplace":
        results = _verify_laplace()
    elif kind == "socle":
        results = _verify_socle(cfg)
    else:
        results = _verify_all(cfg)
    any_fail = False
    for r in results:
        status = "PASS" if r["pass"] else "FAIL"
        any_fail |= not r["pass"]
        if cfg.output_json:
            click.echo(json.dumps(r, sort_keys=True))
        else:
            detail = " ".join(f"{k}={v}" for k, v in r.items()
                              if k not in ("check", "case", "pass"))
            click.echo(f"{status} {r['check']} [{r['case']}] {detail}")
    if any_fail:
        raise VerificationFailure("one or more verification cases failed")


# -- batch ----------------------------------------------------------------


def _load_cache(path: Optional[str]) -> dict:
    if not path or not os.path.exists(path):
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        return data if isinstance(data, dict) else {}
    except (OSError, json.JSONDecodeError):
        return {}


def _save_cache(path: Optional[str], cache: dict) -> None:
    if not path:
        return
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(cache, fh, sort_keys=True)
    os.replace(tmp, path)


def _structural_flags(G: FiniteGroup) -> tuple[str, bool]:
    return classify_incompressible(G).structural_type, is_CS(G)


def _batch_record(cfg: CliConfig, entry, cached_mu: Optional[int]) -> dict:
    t0 = time.perf_counter()
    G = build(entry.expr, cap=cfg.order_cap)
    if cached_mu is not None:
        mu = cached_mu
        witness = None
        solver = {"cached": True}
        cr = Fraction(G.order, mu)
        # classification cross-checks cr internally, recomputing mu; the
        # structural verdict is what we report
        structural, cs = _structural_flags(G)
    else:
        res = mu_exact(G)
        mu = res.mu
        witness = _witness_lists(res.witness)
        solver = {"cached": False, "nodes": res.nodes_explored,
                  "candidates": res.candidates_considered}
        verdict = classify_incompressible(G)
        structural, cs = verdict.structural_type, is_CS(G)
        cr = verdict.cr
    record = {
        "expr": entry.name,
        "order": G.order,
        "mu": mu,
        "cr": f"{cr.numerator}/{cr.denominator}",
        "cr_decimal": float(cr),
        "witness": witness,
        "classification": structural,
        "flags": {"is_CS": cs, "incompressible_type": structural},
        "tags": sorted(entry.tags),
        "timing_s": round(time.perf_counter() - t0, 6),
        "solver": solver,
    }
    return record


@cli.command("batch")
@click.option("--max-order", type=int, required=True,
              help="Catalog bound: include every catalog group up to this order.")
@click.pass_obj
@_handle_errors
def cmd_batch(cfg: CliConfig, max_order: int):
    """Solve and classify the whole catalog up to --max-order."""
    if max_order > cfg.order_cap:
        raise ResourceCapError(
            f"--max-order {max_order} exceeds --order-cap {cfg.order_cap}")
    entries = catalog(max_order, cap=cfg.order_cap)
    cache = _load_cache(cfg.cache_path)
    cache_lock = Lock()
    rng = random.Random()

    def solve(entry):
        key = normalize_expr_string(entry.name)
        hit = cache.get(key)
        cached_mu = None
        if (isinstance(hit, dict) and hit.get("version") == CACHE_VERSION
                and hit.get("order") == entry.order):
            cached_mu = hit["mu"]
        record = _batch_record(cfg, entry, cached_mu)
        if cached_mu is not None and rng.random() < SPOT_CHECK_RATE:
            # spot-check: recompute and compare against the cache
            fresh = mu_exact(build(entry.expr, cap=cfg.order_cap)).mu
            if fresh != cached_mu:
                raise InternalInvariantError(
                    f"cache corruption: {key} cached mu={cached_mu}, "
                    f"recomputed {fresh}")
        with cache_lock:
            cache[key] = {"order": record["order"], "mu": record["mu"],
                          "version": CACHE_VERSION}
        return record

    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            records = list(pool.map(solve, entries))
    else:
        records = [solve(e) for e in entries]
    _save_cache(cfg.cache_path, cache)

    min_cr_above_1: Optional[Fraction] = None
    incompressible = 0
    for r in records:
        cr = Fraction(r["cr"])
        if cr == 1:
            incompressible += 1
        elif min_cr_above_1 is None or cr < min_cr_above_1:
            min_cr_above_1 = cr
        if cfg.output_json:
            click.echo(json.dumps(r, sort_keys=True))
        else:
            click.echo(f"{r['expr']}: order={r['order']} mu={r['mu']} "
                       f"cr={r['cr']} type={r['classification']}"
                       + (" [cached]" if r["solver"].get("cached") else ""))
    min_str = (f"{min_cr_above_1.numerator}/{min_cr_above_1.denominator}"
               if min_cr_above_1 is not None else "none")
    summary = (f"summary: groups={len(records)} incompressible={incompressible} "
               f"min_cr_above_1={min_str}")
    if cfg.output_json:
        click.echo(json.dumps({"summary": {
            "groups": len(records), "incompressible": incompressible,
            "min_cr_above_1": min_str}}, sort_keys=True))
    else:
        click.echo(summary)


def main():
    cli(prog_name="permdeg")


if __name__ == "__main__":
    main()
