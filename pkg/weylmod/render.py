from __future__ import annotations

import json

import click

from weylmod.verify import CHECK_LABELS


def to_json(payload: dict) -> str:
    """Byte-stable JSON: sorted keys, no whitespace, integers beyond small ones already strings."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def _vec(values) -> str:
    return "(" + ",".join(str(v) for v in values) + ")"


def _fmt_seconds(seconds: float) -> str:
    return f"{seconds:.1f}s"


def _dim_lines(result: dict) -> list[str]:
    lines = [result["value"]]
    for method, value in sorted((result.get("values") or {}).items()):
        lines.append(f"  {method}: {value}")
    return lines


def _mult_lines(result: dict) -> list[str]:
    lines = [f"m_{_vec(result['lambda'])}({_vec(result['mu'])})"]
    alpha = result.get("alpha")
    lines.append(f"lambda - mu = {_vec(alpha)} in simple roots" if alpha is not None else "lambda - mu is not a nonnegative root combination")
    for method, value in result["values"].items():
        lines.append(f"  {method}: {value}")
    terms = result.get("terms")
    if terms:
        lines.append("selected components:")
        for t in terms:
            lines.append(f"  P_{t['s']} = {_vec(t['P'])}  m_{_vec(t['hw'])} = {t['mult']}")
        lines.append("  sum: " + " + ".join(t["mult"] for t in terms) + f" = {result['value']}")
    return lines


def _branch_lines(result: dict) -> list[str]:
    lines = []
    for comp in result["components"]:
        lines.append(f"{comp['s']}, {_vec(comp['P'])}, {_vec(comp['hw'])}, {comp['dim']}")
        for theta in comp.get("basis") or []:
            lines.append(f"    {theta} v")
    return lines


def _basis_lines(result: dict) -> list[str]:
    lines = [f"{_vec(e['K'])}  {e['theta']} v" for e in result["elements"]]
    lines.append(f"count: {result['count']}")
    return lines


def _char_lines(result: dict) -> list[str]:
    lines = [f"{_vec(row['mu'])}: {row['mult']}" for row in result["character"]]
    lines.append(f"total: {result['total']}")
    return lines


def _expand_lines(result: dict) -> list[str]:
    lines = [f"{t['coeff']} * {t['monomial']}" for t in result["terms"]]
    lead = result["leading"]
    lines.append(f"leading: {lead['coeff']} * {lead['monomial']}  I={_vec(lead['I'])}")
    return lines


def _verify_lines(result: dict) -> list[str]:
    lines = []
    for check in result["checks"]:
        label = CHECK_LABELS.get(check["check"], check["check"])
        lines.append(f"{check['status'].upper():7} {check['check']} ({label}): {check['cases']} cases")
        if check.get("counterexample"):
            lines.append(f"        counterexample: {to_json(check['counterexample'])}")
        if check.get("error"):
            lines.append(f"        error: {check['error']}")
        if "duration_seconds" in check:
            lines.append(f"        duration={_fmt_seconds(check['duration_seconds'])}")
    lines.append("verification failed" if result.get("exit_code") else "all checks passed")
    return lines


RENDERERS = {
    "dim": _dim_lines,
    "mult": _mult_lines,
    "branch": _branch_lines,
    "basis": _basis_lines,
    "char": _char_lines,
    "expand": _expand_lines,
    "verify": _verify_lines,
}


def render_text(result: dict) -> str:
    if result.get("error"):
        return f"error: {result['error']}"
    return "\n".join(RENDERERS[result["command"]](result))


def echo_result(result: dict, fmt: str) -> None:
    for warning in result.get("warnings") or []:
        click.echo(f"warning: {warning}", err=True)
    if fmt == "json":
        click.echo(to_json(result))
    else:
        click.echo(render_text(result))
