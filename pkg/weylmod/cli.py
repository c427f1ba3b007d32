from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import click

from weylmod import basis as basis_mod
from weylmod import branch as branch_mod
from weylmod import mult as mult_mod
from weylmod import oracle, pbw
from weylmod.config import load_config
from weylmod.errors import CacheError, InvalidInputError, ResourceCapError
from weylmod.monomial import render_theta
from weylmod.render import echo_result
from weylmod.rootsys import check_rank, weight_to_alpha
from weylmod.state import load_cache, save_cache
from weylmod.verify import CHECKS, run_verify

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_CAP = 3


@dataclass
class Settings:
    config: dict
    fmt: str
    warnings: list[str] = field(default_factory=list)

    @property
    def max_basis(self) -> int:
        return self.config["limits"]["max_basis_elements"]

    @property
    def max_terms(self) -> int:
        return self.config["limits"]["max_pbw_terms"]

    @property
    def cache_path(self) -> Path | None:
        value = self.config.get("cache_path")
        return Path(value) if value else None


def _cache_tables() -> dict:
    return {"mult": mult_mod.MEMO, "freudenthal": oracle.FREUDENTHAL}


def _parse_ints(ctx, param, value: str | None) -> tuple[int, ...] | None:
    if value is None:
        return None
    try:
        return tuple(int(part) for part in value.replace(" ", "").split(",") if part != "")
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {value!r}") from None


def _check_length(values: tuple[int, ...] | None, rank: int, name: str) -> None:
    if values is not None and len(values) != rank:
        raise click.UsageError(f"--{name} needs {rank} coordinates for rank {rank} (got {len(values)}).")


def _emit_and_exit(settings: Settings, result: dict) -> None:
    # exit_code and ok only appear in the payload when something went wrong
    code = int(result.pop("exit_code", EXIT_OK))
    result.pop("ok", None)
    if code != EXIT_OK:
        result.update(ok=False, exit_code=code)
    if settings.warnings:
        result["warnings"] = list(settings.warnings)
    echo_result(result, settings.fmt)
    raise click.exceptions.Exit(code=code)


def _compute_with_cache_fallback(settings: Settings, compute: Callable[[], dict]) -> dict:
    try:
        return compute()
    except CacheError as exc:
        # a cached value disagrees with a fresh one: drop every memo and start over
        settings.warnings.append(f"Discarding cached values: {exc}")
        for table in _cache_tables().values():
            table.clear()
        return compute()


def _execute(settings: Settings, command: str, compute: Callable[[], dict]) -> None:
    """Run one command with the cache loaded around it and errors mapped onto exit codes."""
    cache = settings.cache_path
    if cache is not None:
        settings.warnings.extend(load_cache(cache, _cache_tables()))
    try:
        result = _compute_with_cache_fallback(settings, compute)
    except InvalidInputError as exc:
        raise click.UsageError(str(exc)) from None
    except ResourceCapError as exc:
        result = {"command": command, "ok": False, "exit_code": EXIT_CAP, "error": str(exc)}
    if cache is not None and result.get("exit_code", EXIT_OK) != EXIT_CAP:
        save_cache(cache, _cache_tables())
    _emit_and_exit(settings, result)


def _header(command: str, rank: int, lam: tuple[int, ...]) -> dict:
    return {"command": command, "rank": rank, "lambda": list(lam)}


rank_option = click.option("--rank", "rank", type=click.IntRange(min=1), required=True, help="Rank l of A_l.")
lambda_option = click.option(
    "--lambda", "lam", required=True, callback=_parse_ints, help="Highest weight in fundamental-weight coordinates, e.g. 2,3."
)


@click.group(help="Weyl modules of type A_l: bases, branching and weight multiplicities.")
@click.option("--config", "config_path", type=click.Path(path_type=Path), default=None, help="YAML config file.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
@click.option("--cache", "cache_path", type=click.Path(path_type=Path), default=None, help="Memo cache file (default: $WEYLMOD_CACHE).")
@click.option("--max-basis", type=click.IntRange(min=1), default=None, help="Cap on enumerated basis elements.")
@click.option("--max-terms", type=click.IntRange(min=1), default=None, help="Cap on intermediate PBW terms.")
@click.pass_context
def app(ctx, config_path: Path | None, fmt: str, cache_path: Path | None, max_basis: int | None, max_terms: int | None):
    overrides = {
        "cache_path": str(cache_path) if cache_path else None,
        "limits": {"max_basis_elements": max_basis, "max_pbw_terms": max_terms},
    }
    try:
        config, warnings = load_config(config_path, overrides)
    except InvalidInputError as exc:
        raise click.UsageError(str(exc)) from None
    ctx.obj = Settings(config=config, fmt=fmt, warnings=warnings)


@app.command()
@rank_option
@lambda_option
@click.option("--method", type=click.Choice(["weyl", "enum", "all"]), default="weyl", show_default=True)
@click.pass_obj
def dim(settings: Settings, rank: int, lam: tuple[int, ...], method: str):
    """Dimension of V(lambda)."""
    _check_length(lam, rank, "lambda")

    def compute() -> dict:
        methods = list(mult_mod.DIM_METHODS) if method == "all" else [method]
        values = {m: mult_mod.dim(lam, m, max_elements=settings.max_basis) for m in methods}
        result = {**_header("dim", rank, lam), "value": str(values[methods[0]])}
        if len(set(values.values())) > 1:
            result.update(values={m: str(v) for m, v in values.items()}, exit_code=EXIT_MISMATCH)
        return result

    _execute(settings, "dim", compute)


@app.command()
@rank_option
@lambda_option
@click.option("--mu", "mu", required=True, callback=_parse_ints, help="Weight in fundamental-weight coordinates.")
@click.option(
    "--method",
    type=click.Choice([*mult_mod.MULT_METHODS, "all"]),
    default="recursive",
    show_default=True,
)
@click.pass_obj
def mult(settings: Settings, rank: int, lam: tuple[int, ...], mu: tuple[int, ...], method: str):
    """Multiplicity of the weight mu in V(lambda)."""
    _check_length(lam, rank, "lambda")
    _check_length(mu, rank, "mu")

    def compute() -> dict:
        methods = list(mult_mod.MULT_METHODS) if method == "all" else [method]
        values = {m: mult_mod.multiplicity(lam, mu, m, max_elements=settings.max_basis) for m in methods}
        alpha = weight_to_alpha(rank, tuple(x - y for x, y in zip(lam, mu)))
        result = {
            **_header("mult", rank, lam),
            "mu": list(mu),
            "method": method,
            "alpha": list(alpha) if alpha is not None else None,
            "values": {m: str(v) for m, v in values.items()},
            "value": str(values[methods[0]]),
        }
        if "recursive" in methods and rank >= 2:
            result["terms"] = [
                {"s": t.s, "P": list(t.P.display_order()), "hw": list(t.highest_weight), "mult": str(t.mult)}
                for t in mult_mod.recursive_terms(lam, mu)
            ]
        if len(set(values.values())) > 1:
            result["exit_code"] = EXIT_MISMATCH
            result["counterexample"] = {"lambda": list(lam), "mu": list(mu), "values": result["values"]}
        return result

    _execute(settings, "mult", compute)


@app.command()
@rank_option
@lambda_option
@click.option("--show-basis", is_flag=True, default=False, help="List each quotient's basis theta^K v.")
@click.pass_obj
def branch(settings: Settings, rank: int, lam: tuple[int, ...], show_basis: bool):
    """Restriction of V(lambda) to the rank l-1 subalgebra."""
    _check_length(lam, rank, "lambda")

    def compute() -> dict:
        rows = []
        for comp in branch_mod.branch(lam):
            row = {"s": comp.s, "P": list(comp.P.display_order()), "hw": list(comp.highest_weight), "dim": str(comp.dim)}
            if show_basis:
                row["basis"] = [render_theta(K) for K in branch_mod.component_basis(lam, comp.s, max_elements=settings.max_basis)]
            rows.append(row)
        return {**_header("branch", rank, lam), "components": rows}

    _execute(settings, "branch", compute)


@app.command()
@rank_option
@lambda_option
@click.option("--content", "content", default=None, callback=_parse_ints, help="Only K whose f_i exponents total a_1,...,a_l.")
@click.pass_obj
def basis(settings: Settings, rank: int, lam: tuple[int, ...], content: tuple[int, ...] | None):
    """Index set Pi_lambda of the monomial basis theta^K v."""
    _check_length(lam, rank, "lambda")
    _check_length(content, rank, "content")

    def compute() -> dict:
        elements = [
            {"K": list(K.entries), "theta": render_theta(K)}
            for K in basis_mod.enumerate_basis(lam, content, max_elements=settings.max_basis)
        ]
        return {
            **_header("basis", rank, lam),
            "content": list(content) if content is not None else None,
            "count": str(len(elements)),
            "elements": elements,
        }

    _execute(settings, "basis", compute)


@app.command()
@rank_option
@lambda_option
@click.option("--method", type=click.Choice(list(mult_mod.MULT_METHODS)), default="count", show_default=True)
@click.pass_obj
def char(settings: Settings, rank: int, lam: tuple[int, ...], method: str):
    """Full character of V(lambda)."""
    _check_length(lam, rank, "lambda")

    def compute() -> dict:
        character = mult_mod.character(lam, method, max_elements=settings.max_basis)
        return {
            **_header("char", rank, lam),
            "method": method,
            "character": [{"mu": list(mu), "mult": str(character.table[mu])} for mu in character.weights()],
            "total": str(character.total()),
        }

    _execute(settings, "char", compute)


@app.command()
@rank_option
@click.option("--word", required=True, help="Product of divided powers, e.g. f2^2,f1^1 or f1_3^2.")
@click.option("--strategy", type=click.Choice(list(pbw.STRATEGIES)), default="leftmost", show_default=True)
@click.pass_obj
def expand(settings: Settings, rank: int, word: str, strategy: str):
    """PBW expansion of a word and its leading term."""

    def compute() -> dict:
        w = pbw.parse_word(word, check_rank(rank))
        poly = pbw.straighten(w, max_terms=settings.max_terms, strategy=strategy)
        lead, coeff = pbw.leading(poly)
        return {
            "command": "expand",
            "rank": rank,
            "word": pbw.render_word(w),
            "terms": [
                {"I": list(I), "coeff": str(c), "monomial": pbw.render_word(pbw.word_of_exponent(I, rank))}
                for I, c in reversed(poly.sorted_terms())
            ],
            "leading": {"I": list(lead), "coeff": str(coeff), "monomial": pbw.render_word(pbw.word_of_exponent(lead, rank))},
        }

    _execute(settings, "expand", compute)


@app.command()
@click.option("--max-rank", type=click.IntRange(min=1), default=None, help="Largest rank in the weight sweeps.")
@click.option("--max-coord", type=click.IntRange(min=0), default=None, help="Largest lambda coordinate in the sweeps.")
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Worker processes for the sweeps.")
@click.option("--random-words", type=click.IntRange(min=1), default=None, help="Random words for the straightening check.")
@click.option("--check", "checks", multiple=True, type=click.Choice(CHECKS), help="Run only these checks (repeatable).")
@click.option("--report", "report_path", type=click.Path(path_type=Path), default=None, help="Write a timed status record here.")
@click.pass_obj
def verify(
    settings: Settings,
    max_rank: int | None,
    max_coord: int | None,
    workers: int | None,
    random_words: int | None,
    checks: tuple[str, ...],
    report_path: Path | None,
):
    """Cross-check every method against the others and the classical oracles."""
    overrides = {"max_rank": max_rank, "max_coord": max_coord, "workers": workers, "random_words": random_words}
    settings.config["verify"].update({k: v for k, v in overrides.items() if v is not None})
    _execute(settings, "verify", lambda: run_verify(settings.config, checks=list(checks) or None, report_path=report_path))


def main() -> None:
    os.environ.setdefault("PYTHONIOENCODING", "utf-8")
    app()


if __name__ == "__main__":
    main()
