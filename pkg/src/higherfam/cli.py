"""Command-line interface.

Exit codes: 0 success, 1 violations found, 2 usage or parse error, 3 I/O error.
"""

from __future__ import annotations

import functools
import json
import sys

import click

from . import __version__, render
from .calculus import ChainConfig, expand_chain
from .certificates import load_certificate, make_certificate, replay_certificate, write_certificate
from .coefficients import b_row, verify_positivity
from .combinatorics import bernoulli, c_coeff
from .invariants import ModelFamily, example_invariants, example_polarized_family

EXIT_VIOLATIONS = 1
EXIT_IO = 3


def _shared_options(f):
    """--format/--out accepted on the group and on every subcommand."""

    @click.option("--format", "fmt", type=click.Choice(render.FORMATS), default=None,
                  help="Output format (csv, json or tex).")
    @click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None,
                  help="Write output to PATH instead of standard output.")
    @functools.wraps(f)
    def wrapper(*args, fmt, out_path, **kwargs):
        ctx = click.get_current_context()
        group = ctx.find_object(dict) or {}
        fmt = fmt or group.get("fmt")
        out_path = out_path or group.get("out_path")
        return f(*args, fmt=fmt, out_path=out_path, **kwargs)

    return wrapper


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        click.echo(text, nl=False)
        return
    try:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        click.echo(f"error: cannot write {out_path}: {exc.strerror or exc}", err=True)
        sys.exit(EXIT_IO)


def _parse_int_list(value: str, what: str, minimum: int = 1) -> list[int]:
    hint = f"'--{what}'"
    value = value.strip()
    if not value:
        return []
    try:
        items = [int(x) for x in value.split(",")]
    except ValueError:
        raise click.BadParameter(f"malformed {what} list {value!r}", param_hint=hint) from None
    if any(x < minimum for x in items):
        raise click.BadParameter(f"{what} values must be >= {minimum}", param_hint=hint)
    return items


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--format", "fmt", type=click.Choice(render.FORMATS), default=None,
              help="Default output format for all commands.")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None,
              help="Default output path for all commands.")
@click.version_option(__version__, prog_name="higherfam")
@click.pass_context
def main(ctx, fmt, out_path):
    """Exact Chern-character coefficients of higher order minimal families.

    \b
    Model specs for `invariants`:
      P:n      projective space P^n
      Q:n      quadric Q^n (n >= 3)
      Bl:n,m   blow-up of P^n along a linear P^m
      QxP:m    Q^(m+1) x P^m
    """
    ctx.obj = {"fmt": fmt, "out_path": out_path}


@main.command("bernoulli")
@click.argument("max_m", type=click.IntRange(min=0))
@_shared_options
def bernoulli_cmd(max_m, fmt, out_path):
    """Bernoulli numbers B_0..B_MAX_M (B_1 = -1/2)."""
    values = [bernoulli(m) for m in range(max_m + 1)]
    _emit(render.bernoulli_table(values, fmt or "csv"), out_path)


@main.command()
@click.argument("j", type=click.IntRange(min=1), required=False)
@click.argument("i_max", type=click.IntRange(min=1), required=False)
@click.option("--c-table", is_flag=True, help="Emit c_(m,p) instead of b_(i,j,k).")
@click.option("--m-max", type=click.IntRange(min=1), default=6, show_default=True)
@click.option("--p-max", type=click.IntRange(min=1), default=6, show_default=True)
@_shared_options
def table(j, i_max, c_table, m_max, p_max, fmt, out_path):
    """Rows i = 1..I_MAX of b_(i,J,k), columns k = 0..i+J."""
    fmt = fmt or "csv"
    if c_table:
        rows = [[c_coeff(m, p) for p in range(1, p_max + 1)] for m in range(1, m_max + 1)]
        _emit(render.c_table(rows, fmt), out_path)
        return
    if j is None or i_max is None:
        raise click.UsageError("table needs J and I_MAX (or --c-table)")
    rows = [b_row(i, j) for i in range(1, i_max + 1)]
    _emit(render.b_table(j, rows, fmt), out_path)


@main.command()
@click.argument("i_max", type=click.IntRange(min=1), required=False)
@click.option("--i-min", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--j", "j_list", default="1,2", show_default=True, help="Comma-separated degrees j.")
@click.option("--strict/--non-strict", default=True, show_default=True,
              help="Flag zeros as violations (strict) or only negatives.")
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--replay", "replay_path", type=click.Path(dir_okay=False), default=None,
              help="Re-run a stored certificate and compare its result payload.")
@_shared_options
def verify(i_max, i_min, j_list, strict, workers, replay_path, fmt, out_path):
    """Check b_(i,j,k) > 0 for I_MIN <= i <= I_MAX, 1 <= k <= i+j."""
    if replay_path is not None:
        try:
            cert = load_certificate(replay_path)
        except (OSError, ValueError, KeyError) as exc:
            click.echo(f"error: cannot read certificate {replay_path}: {exc}", err=True)
            sys.exit(EXIT_IO)
        same, _ = replay_certificate(cert, workers=workers)
        click.echo("replay: result payload reproduced" if same else "replay: result payload DIFFERS")
        sys.exit(0 if same else EXIT_VIOLATIONS)

    if i_max is None:
        raise click.UsageError("verify needs I_MAX (or --replay)")
    if i_min > i_max:
        raise click.UsageError("--i-min exceeds I_MAX")
    js = _parse_int_list(j_list, "j")
    if not js:
        raise click.BadParameter("need at least one j", param_hint="'--j'")
    report = verify_positivity(i_min, i_max, js, strict=strict, workers=workers)
    cert = make_certificate(report)

    if fmt == "json":
        click.echo(json.dumps(cert, indent=2))
    else:
        rel = ">" if strict else ">="
        click.echo(
            f"checked b_(i,j,k) {rel} 0 for {i_min} <= i <= {i_max}, j in {{{','.join(map(str, report.j_set))}}}, "
            f"1 <= k <= i+j: {len(report.violations)} violation(s) in {report.elapsed:.2f} s"
        )
        for v in report.violations:
            click.echo(f"violation: b_({v.index.i},{v.index.j},{v.index.k}) = {v.value}")
        for name, holds in sorted(report.observations.items()):
            click.echo(f"observed: {name} {'holds' if holds else 'fails'} on this range")
    if out_path is not None:
        try:
            write_certificate(cert, out_path)
        except OSError as exc:
            click.echo(f"error: cannot write {out_path}: {exc.strerror or exc}", err=True)
            sys.exit(EXIT_IO)
    sys.exit(0 if report.ok else EXIT_VIOLATIONS)


@main.command()
@click.argument("j", type=click.IntRange(min=1))
@click.option("--a", "a_list", default="", help="Comma-separated a_2,...,a_i (empty for i = 1).")
@_shared_options
def expand(j, a_list, fmt, out_path):
    """Expand ch_J(H_i) along a chain with intersection numbers a_2..a_i."""
    a = _parse_int_list(a_list, "a")
    cls = expand_chain(ChainConfig.from_a(a), j)
    if fmt is None:
        text = cls.render() + "\n"
    elif fmt == "json":
        text = json.dumps({"depth": cls.depth, "j": j, "a": a, "terms": cls.rows()}, indent=2) + "\n"
    elif fmt == "csv":
        lines = ["k,kind,L_power,coefficient"]
        lines += [f"{r['k']},{r['kind']},{r['L_power']},{r['coefficient']}" for r in cls.rows()]
        text = "\n".join(lines) + "\n"
    else:
        text = cls.render_tex() + "\n"
    _emit(text, out_path)


@main.command()
@click.argument("model")
@_shared_options
def invariants(model, fmt, out_path):
    """N_lower, N_upper and (H, L) for MODEL: P:n, Q:n, Bl:n,m or QxP:m."""
    try:
        family = ModelFamily.parse(model)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="'MODEL'") from None
    pair = example_invariants(family)
    try:
        hl = example_polarized_family(family)
    except ValueError:
        hl = None
    if fmt == "json":
        text = json.dumps(
            {
                "model": family.spec(),
                "n_lower": pair.n_lower,
                "n_upper": pair.n_upper,
                "H": hl.variety if hl else None,
                "L": hl.polarization if hl else None,
            },
            indent=2,
        ) + "\n"
    elif fmt == "csv":
        text = "model,n_lower,n_upper,H,L\n"
        text += f"{family.spec()},{pair.n_lower},{pair.n_upper},{hl.variety if hl else ''},{hl.polarization if hl else ''}\n"
    else:
        text = f"{family.spec()}: N_lower={pair.n_lower} N_upper={pair.n_upper}\n"
        text += f"(H,L) = ({hl.variety}, {hl.polarization})\n" if hl else "(H,L): not stated in source\n"
    _emit(text, out_path)


if __name__ == "__main__":  # pragma: no cover
    main()
