"""The command-line interface shx."""

import csv
import functools
import io
import json
import logging

import click
import click_log

from .algebra import Basis, Hypercomplex, mul_table, symbolic_mul_table
from .calculus import (
    FD_TOL,
    is_harmonic,
    is_left_regular,
    is_right_regular,
    oracle_discrepancy,
)
from .exceptions import EXIT_FAIL, HypercomplexError, NotLeftRegularError, ParseError
from .hyperbolic import HyperbolicNumber, polar_decompose
from .regular import expand
from .utils import (
    RunConfig,
    parse_config,
    parse_function,
    parse_operand,
    parse_point,
    parse_region,
)

debug_logger = logging.getLogger("scaled_hypercomplex")
debug_logger.setLevel(logging.DEBUG)

console_formatter = click_log.ColorFormatter("%(message)s")
console_handler = click_log.ClickHandler()
console_handler.setLevel(logging.INFO)
console_handler.setFormatter(console_formatter)

file_formatter = logging.Formatter("%(asctime)s:%(name)s:%(levelname)s:%(message)s")

debug_logger.addHandler(console_handler)

BASIS_NAMES = {Basis.ONE: "1", Basis.I: "i", Basis.J: "j", Basis.K: "k"}
CHECKS = {"left": is_left_regular, "right": is_right_regular, "harmonic": is_harmonic}


def apply_config(ctx, param, config):
    """Apply the configuration file and overwrite default options of the command."""
    try:
        config = parse_config(config)
    except HypercomplexError as error:
        raise click.BadParameter(str(error), ctx=ctx, param=param) from error
    ctx.default_map = config


def add_log_file(ctx, param, path):
    """Additionally write the full debug log to PATH."""
    if path:
        file_handler = logging.FileHandler(path, encoding="utf-8")
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(file_formatter)
        debug_logger.addHandler(file_handler)
        ctx.call_on_close(lambda: debug_logger.removeHandler(file_handler))
    return path


def report_errors(command):
    """Log package errors and exit with the code of the exception class."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except HypercomplexError as error:
            debug_logger.error(f"{type(error).__name__}: {error}")
            click.get_current_context().exit(error.exit_code)

    return wrapper


def _flatten(payload, prefix=""):
    rows = []
    for key in sorted(payload):
        value = payload[key]
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            rows.extend(_flatten(value, f"{name}."))
        elif isinstance(value, list):
            rows.append((name, json.dumps(value)))
        else:
            rows.append((name, value))
    return rows


def emit(config, payload, pretty=None):
    """
    Write a result to stdout in the configured output format.

    Parameters
    ----------
    config : RunConfig
    payload : dict
        JSON-serializable result, written with sorted keys.
    pretty : list of str, optional
        Human readable lines; defaults to the indented JSON.
    """
    if config.output == "json":
        click.echo(json.dumps(payload, sort_keys=True))
    elif config.output == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(("key", "value"))
        writer.writerows(_flatten(payload))
        click.echo(buffer.getvalue(), nl=False)
    else:
        lines = pretty or json.dumps(payload, sort_keys=True, indent=2).splitlines()
        for line in lines:
            click.echo(line)


def _render(names, coefs):
    # coefficients arrive as strings, numeric ones formatted with :g
    rendered = []
    for name, coef in zip(names, coefs):
        if coef == "0":
            continue
        if name == "1":
            rendered.append(coef)
        elif coef == "1":
            rendered.append(name)
        elif coef == "-1":
            rendered.append(f"-{name}")
        else:
            rendered.append(f"{coef} {name}")
    return " + ".join(rendered) or "0"


def _number(value):
    return format(value + 0.0, "g")


@click.group()
@click.option(
    "--config",
    type=click.Path(exists=True),
    help="Path to a JSON file with default option values",
    is_eager=True,
    expose_value=False,
    callback=apply_config,
)
@click.option(
    "--log-file",
    type=click.Path(dir_okay=False),
    help="Write the debug log to this file",
    expose_value=False,
    callback=add_log_file,
)
@click.option("--t", "t", default=-1.0, help="Scale t of the ring H_t (default -1)")
@click.option("--tol", default=1e-9, help="Tolerance of verdicts (default 1e-9)")
@click.option("--seed", default=0, help="Seed of the sampler (default 0)")
@click.option("--samples", default=100, help="Number of sample points (default 100)")
@click.option("--maxdeg", default=4, help="Degree of expansions (default 4)")
@click.option(
    "--region",
    default=None,
    help="Region spec as a file or inline JSON (default unit box)",
)
@click.option(
    "--output",
    type=click.Choice(["json", "csv", "pretty"]),
    default="json",
    help="Output format (default json)",
)
@click_log.simple_verbosity_option(debug_logger)
@click.version_option()
@click.pass_context
@report_errors
def shx(ctx, t, tol, seed, samples, maxdeg, region, output):
    """Arithmetic and analysis in the t-scaled hypercomplex rings H_t."""
    ctx.obj = RunConfig(t, tol, seed, samples, maxdeg, parse_region(region), output)


@shx.command()
@click.pass_obj
@report_errors
def table(config):
    """Show the multiplication table of the basis 1, i, j_t, k_t."""
    numeric = mul_table(config.t)
    symbolic = symbolic_mul_table()
    names = [BASIS_NAMES[b] for b in Basis]
    payload = {
        "t": config.t,
        "basis": names,
        "table": [[list(entry.coords) for entry in row] for row in numeric],
        "symbolic": [
            [_render(names, [str(c) for c in entry]) for entry in row]
            for row in symbolic
        ],
    }
    widths = 16
    pretty = [
        f"H_t with t = {config.t:g}",
        "".join(f"{name:>{widths}}" for name in [""] + names),
    ]
    for name, row in zip(names, numeric):
        cells = [_render(names, [_number(c) for c in entry.coords]) for entry in row]
        pretty.append("".join(f"{cell:>{widths}}" for cell in [name] + cells))
    emit(config, payload, pretty)


@shx.command("eval")
@click.option("--fn", default=None, help="Builtin name or polynomial spec")
@click.option("--point", default=None, help="Point x1,x2,x3,x4 for --fn")
@click.argument("operands", nargs=-1)
@click.pass_obj
@report_errors
def eval_cli(config, fn, point, operands):
    """
    Evaluate a function at a point or multiply OPERANDS left to right.

    Operands are basis names (1, i, j, k), coordinates x1,x2,x3,x4 or JSON
    objects {"t": .., "x": [..]}.
    """
    if fn is not None:
        value = parse_function(fn, config.t)(parse_point(point or "0,0,0,0"))
    elif operands:
        factors = [parse_operand(operand, config.t) for operand in operands]
        value = Hypercomplex.unity(config.t)
        for factor in factors:
            value = value * factor
    else:
        raise ParseError("Nothing to evaluate: pass --fn or operands.")
    emit(config, value.to_dict(), [str(value)])


@shx.command()
@click.option("--fn", required=True, help="Builtin name or polynomial spec")
@click.option(
    "--mode",
    type=click.Choice(sorted(CHECKS)),
    default="left",
    help="Left or right regularity, or harmonicity (default left)",
)
@click.pass_obj
@report_errors
def check(config, fn, mode):
    """Check regularity or harmonicity of a function on sample points."""
    f = parse_function(fn, config.t)
    verdict = CHECKS[mode](
        f, config.region, tol=config.tol, count=config.samples, seed=config.seed
    )
    payload = dict(verdict.to_dict(), fn=str(f), mode=mode, t=config.t)
    status = "Pass" if verdict.passed else "Fail"
    emit(config, payload, [f"{mode} check of {f}: {status}, {verdict.residual:g}"])
    if not verdict.passed:
        click.get_current_context().exit(EXIT_FAIL)


@shx.command("expand")
@click.option("--fn", required=True, help="Builtin name or polynomial spec")
@click.pass_obj
@report_errors
def expand_cli(config, fn):
    """Expand a left regular function into its eta series."""
    f = parse_function(fn, config.t)
    try:
        series, residual = expand(
            f,
            config.maxdeg,
            config.region,
            tol=config.tol,
            count=config.samples,
            seed=config.seed,
        )
    except NotLeftRegularError as error:
        payload = {"error": "NotLeftRegular", "verdict": error.verdict.to_dict()}
        emit(config, payload, [str(error)])
        click.get_current_context().exit(EXIT_FAIL)
    pretty = [f"f(0) = {series.constant}"] + [
        "eta^{},{},{} ({})".format(*n, series.coefficient(n))
        for n in sorted(series.coefficients, key=lambda n: (n.total, [-k for k in n]))
    ]
    pretty.append(f"residual {residual:g}")
    emit(config, {"series": series.to_dict(), "residual": residual}, pretty)


@shx.command()
@click.argument("x", type=float)
@click.argument("u", type=float)
@click.pass_obj
@report_errors
def polar(config, x, u):
    """
    Polar decomposition of X + U j_t.

    Separate negative values from the options with "--".
    """
    form = polar_decompose(HyperbolicNumber(config.t, x, u))
    pretty = [f"{form.sign} * {form.r:g} * exp(j_t {form.theta:g})"]
    emit(config, dict(form.to_dict(), t=config.t), pretty)


@shx.command()
@click.option("--fn", required=True, help="Builtin name or polynomial spec")
@click.option(
    "--fd-tol",
    default=FD_TOL,
    help="Largest admissible jet versus finite-difference mismatch (default 1e-6)",
)
@click.pass_obj
@report_errors
def oracle(config, fn, fd_tol):
    """Compare jet partial derivatives with central differences."""
    f = parse_function(fn, config.t)
    report = oracle_discrepancy(
        f, config.region, count=config.samples, seed=config.seed
    )
    passed = report.discrepancy <= fd_tol
    payload = dict(report.to_dict(), fn=str(f), t=config.t)
    payload["pass"] = passed
    emit(config, payload, [f"largest discrepancy {report.discrepancy:g} for {f}"])
    if not passed:
        click.get_current_context().exit(EXIT_FAIL)


if __name__ == "__main__":
    shx()
