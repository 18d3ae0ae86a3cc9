"""Command-line front end.

Subcommands: ``approximate``, ``errors``, ``moments``, ``rate`` and
``reproduce-example {1,2,3}``. Options can also come from a flat
``key=value`` file passed with ``--config``; command-line flags win.

Exit codes: 0 success, 2 invalid configuration, 3 numerical check failed,
4 I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .analysis import Grid, fit_rate
from .errors import DegenerateFitError, DurrmeyerError, UnsupportedMomentError
from .functions import as_target, get_function
from .moments import MomentQuery, closed_form, moment_bruteforce
from .operators import SequenceFamily, apply, preset
from .plotting import PlotDocument, render_png, write_csv

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4

DEFAULT_OUT = "durrmeyer-out"
CUSTOM = "m1-custom"

EXAMPLES = {
    1: dict(function="example1", n_values=[10],
            presets=["classical", "m1-example1", "m2-tilde", "m3-tilde"]),
    2: dict(function="example2", n_values=[10],
            presets=["classical", "m1-example2", "m2-tilde", "m3-tilde"]),
    3: dict(function="example3", n_values=[5, 10, 20],
            presets=["classical", "m1-example1", "m2-tilde", "m3-tilde"]),
}
# examples whose figures show the order-II/III operators beating the classical one at n=10
CHECKED_EXAMPLES = (1, 3)


class ConfigError(DurrmeyerError):
    pass


class NumericalCheckError(DurrmeyerError):
    pass


@dataclass
class ExperimentConfig:
    presets: list = field(default_factory=lambda: ["classical"])
    n_values: list = field(default_factory=lambda: [10])
    function: str = "example1"
    grid: int = 201
    out: Path = Path(DEFAULT_OUT)
    svg: bool = False
    png: bool = False
    a0: str | None = None
    a1: str | None = None
    name: str | None = None

    def validate(self) -> "ExperimentConfig":
        if not self.presets and not (self.a0 and self.a1):
            raise ConfigError("at least one operator is required")
        if not self.n_values:
            raise ConfigError("at least one n is required")
        if any(n < 0 for n in self.n_values):
            raise ConfigError("n values must be non-negative")
        if self.grid < 11:
            raise ConfigError("grid resolution must be at least 11")
        if (self.a0 is None) != (self.a1 is None):
            raise ConfigError("--a0 and --a1 must be given together")
        get_function(self.function)
        self.operator_specs()
        return self

    @property
    def label(self) -> str:
        return self.name or self.function

    def operator_specs(self):
        """``[(column, spec), ...]`` for every operator and every n."""
        custom = None
        if self.a0 is not None:
            custom = SequenceFamily.from_expressions(self.a0, self.a1, name=CUSTOM)
        names = list(self.presets) + ([CUSTOM] if custom else [])
        specs = []
        for n in self.n_values:
            for name in names:
                spec = custom.spec(n, constrained=False) if name == CUSTOM else preset(name, n)
                col = name if len(self.n_values) == 1 else f"{name}_n{n}"
                specs.append((col, spec))
        return specs


def _split(values, cast=str):
    out = []
    for v in values or []:
        out.extend(cast(p.strip()) for p in str(v).split(",") if p.strip())
    return out


def _truthy(v) -> bool:
    return str(v).strip().lower() in ("1", "true", "yes", "on")


def read_config_file(path) -> dict:
    """Parse a flat ``key=value`` file; ``#`` starts a comment."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise OSError(f"cannot read config {path}: {exc.strerror}") from exc
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value")
        key, val = (s.strip() for s in line.split("=", 1))
        values[key.replace("-", "_")] = val
    return values


_KEYS = {"preset", "n", "f", "grid", "out", "svg", "png", "a0", "a1", "name"}


def build_config(args) -> ExperimentConfig:
    merged = {}
    if getattr(args, "config", None):
        file_vals = read_config_file(args.config)
        unknown = set(file_vals) - _KEYS
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        merged.update(file_vals)
    for key in _KEYS:
        val = getattr(args, key, None)
        if val not in (None, False, []):
            merged[key] = val
    cfg = ExperimentConfig()
    try:
        if "preset" in merged:
            cfg.presets = _split(merged["preset"] if isinstance(merged["preset"], list)
                                 else [merged["preset"]])
        if "n" in merged:
            cfg.n_values = _split(merged["n"] if isinstance(merged["n"], list)
                                  else [merged["n"]], int)
        if "grid" in merged:
            cfg.grid = int(merged["grid"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    cfg.function = merged.get("f", cfg.function)
    cfg.out = Path(merged.get("out") or os.environ.get("DURRMEYER_OUT") or DEFAULT_OUT)
    cfg.svg = _truthy(merged.get("svg", False))
    cfg.png = _truthy(merged.get("png", False))
    cfg.a0 = merged.get("a0")
    cfg.a1 = merged.get("a1")
    cfg.name = merged.get("name")
    return cfg.validate()


# -- commands ----------------------------------------------------------------

def _emit_figure(doc: PlotDocument, cfg: ExperimentConfig, stem: str, written: list):
    if cfg.svg:
        written.append(doc.write_svg(cfg.out / f"{stem}.svg"))
    if cfg.png:
        written.append(render_png(doc, cfg.out / f"{stem}.png"))


def evaluate(cfg: ExperimentConfig):
    """Grid, ``f`` on the grid, and ``{column: (spec, values)}``."""
    f = as_target(cfg.function)
    x = Grid.uniform(cfg.grid).points
    return x, f(x), {col: (spec, apply(spec, f, x)) for col, spec in cfg.operator_specs()}


def cmd_approximate(cfg: ExperimentConfig, results=None) -> list:
    x, fx, res = results or evaluate(cfg)
    cfg.out.mkdir(parents=True, exist_ok=True)
    written = []
    stem = f"{cfg.label}_approx"
    path = cfg.out / f"{stem}.csv"
    write_csv(path, ["x", "f(x)", *res], [x, fx, *(v for _, v in res.values())])
    written.append(path)
    doc = PlotDocument(f"{cfg.label}: approximation", y_label="value")
    doc.add("f", x, fx)
    for col, (_, v) in res.items():
        doc.add(col, x, v)
    _emit_figure(doc, cfg, stem, written)
    return written


def cmd_errors(cfg: ExperimentConfig, results=None, stream=None) -> tuple:
    stream = stream or sys.stdout
    x, fx, res = results or evaluate(cfg)
    cfg.out.mkdir(parents=True, exist_ok=True)
    errs = {col: np.abs(fx - v) for col, (_, v) in res.items()}
    stem = f"{cfg.label}_errors"
    path = cfg.out / f"{stem}.csv"
    write_csv(path, ["x", *(f"E_{c}" for c in errs)], [x, *errs.values()])
    written = [path]
    doc = PlotDocument(f"{cfg.label}: error of approximation", y_label="|f - D f|")
    for col, e in errs.items():
        doc.add(f"E_{col}", x, e)
    _emit_figure(doc, cfg, stem, written)
    sups = {col: float(e.max()) for col, e in errs.items()}
    for col, s in sups.items():
        print(f"sup_error {col} = {s:.6e}", file=stream)
    return written, sups


def cmd_moments(args, stream=None) -> int:
    stream = stream or sys.stdout
    if (args.central is None) == (args.raw is None):
        raise ConfigError("give exactly one of --central r or --raw i")
    names = _split(args.preset) or ["classical"]
    if len(names) != 1:
        raise ConfigError("moments takes a single --preset")
    ns = _split(args.n, int) or [10]
    xs = _split(args.x, float) or [0.5]
    kind, order = ("central", args.central) if args.central is not None else ("raw", args.raw)
    for n in ns:
        spec = preset(names[0], n)
        closed_form(MomentQuery(spec, kind, order, xs[0]))  # rejects unsupported orders early
        print(f"# {spec.name} n={n} {kind} order {order}", file=stream)
        print("x,closed,bruteforce,abs_diff", file=stream)
        for x in xs:
            if not 0.0 <= x <= 1.0:
                raise ConfigError(f"x={x} outside [0, 1]")
            closed = closed_form(MomentQuery(spec, kind, order, x))
            brute = moment_bruteforce(spec, kind, order, x)
            tag = " (leading term)" if closed.asymptotic else ""
            print(f"{x:g},{closed.value:.17g},{brute:.17g},{abs(closed.value - brute):.3e}{tag}",
                  file=stream)
    return EXIT_OK


def cmd_rate(cfg: ExperimentConfig, expect=None, tol=None, stream=None) -> int:
    stream = stream or sys.stdout
    if len(set(cfg.n_values)) < 4:
        raise ConfigError("rate needs at least 4 distinct n values")
    f = as_target(cfg.function)
    x = Grid.uniform(cfg.grid).points
    fx = f(x)
    ns = sorted(set(cfg.n_values))
    per_n = replace(cfg, n_values=[ns[0]])
    cols = [col for col, _ in per_n.operator_specs()]
    table = {col: [] for col in cols}
    for n in ns:
        for col, spec in replace(cfg, n_values=[n]).operator_specs():
            table[col].append(float(np.abs(fx - apply(spec, f, x)).max()))
    cfg.out.mkdir(parents=True, exist_ok=True)
    path = cfg.out / f"{cfg.label}_rate.csv"
    write_csv(path, ["n", *(f"sup_error_{c}" for c in cols)], [ns, *table.values()])
    status = EXIT_OK
    for col in cols:
        try:
            fit = fit_rate(ns, table[col])
        except DegenerateFitError as exc:
            print(f"{col}: degenerate fit ({exc})", file=stream)
            continue
        print(f"{col}: slope {fit.slope:.4f}  r^2 {fit.r_squared:.6f}", file=stream)
        for n, e in zip(ns, table[col]):
            print(f"  n={n:<6d} sup_error={e:.6e}", file=stream)
        if expect is not None and abs(fit.slope - expect) > tol:
            print(f"  slope {fit.slope:.4f} outside {expect} +/- {tol}", file=stream)
            status = EXIT_NUMERIC
    print(f"wrote {path}", file=stream)
    return status


def cmd_reproduce(example: int, base: ExperimentConfig, stream=None) -> int:
    stream = stream or sys.stdout
    params = EXAMPLES[example]
    cfg = replace(base, presets=params["presets"], n_values=params["n_values"],
                  function=params["function"], name=f"example{example}", svg=True,
                  a0=None, a1=None).validate()
    results = evaluate(cfg)
    written = cmd_approximate(cfg, results)
    files, sups = cmd_errors(cfg, results, stream)
    written += files
    if len(cfg.n_values) > 1:
        written += _per_operator_files(cfg, results)
    for p in written:
        print(f"wrote {p}", file=stream)
    if example in CHECKED_EXAMPLES:
        key = (lambda name: name) if len(cfg.n_values) == 1 else (lambda name: f"{name}_n10")
        classical = sups[key("classical")]
        for name in ("m2-tilde", "m3-tilde"):
            if not sups[key(name)] < classical:
                raise NumericalCheckError(
                    f"example {example}: {name} sup-error {sups[key(name)]:.3e} "
                    f"is not below classical {classical:.3e}"
                )
        print("check passed: m2-tilde and m3-tilde beat classical at n=10", file=stream)
    return EXIT_OK


def _per_operator_files(cfg, results):
    x, fx, res = results
    written = []
    for name in cfg.presets:
        cols = [(n, res[f"{name}_n{n}"][1]) for n in cfg.n_values]
        stem = f"{cfg.label}_{name}"
        write_csv(cfg.out / f"{stem}_approx.csv", ["x", "f(x)", *(f"n={n}" for n, _ in cols)],
                  [x, fx, *(v for _, v in cols)])
        write_csv(cfg.out / f"{stem}_errors.csv", ["x", *(f"E_n={n}" for n, _ in cols)],
                  [x, *(np.abs(fx - v) for _, v in cols)])
        written += [cfg.out / f"{stem}_approx.csv", cfg.out / f"{stem}_errors.csv"]
        approx = PlotDocument(f"{cfg.label}: {name}", y_label="value").add("f", x, fx)
        err = PlotDocument(f"{cfg.label}: error of {name}", y_label="|f - D f|")
        for n, v in cols:
            approx.add(f"n={n}", x, v)
            err.add(f"E n={n}", x, np.abs(fx - v))
        _emit_figure(approx, cfg, f"{stem}_approx", written)
        _emit_figure(err, cfg, f"{stem}_errors", written)
    return written


# -- argument parsing --------------------------------------------------------

def _common(parser):
    parser.add_argument("--config", help="flat key=value configuration file")
    parser.add_argument("--preset", action="append",
                        help="operator preset(s), comma separated or repeated")
    parser.add_argument("--n", action="append", help="degree(s), comma separated")
    parser.add_argument("--f", help="target function (example1..3, sin2pi, abs_half, e<i>)")
    parser.add_argument("--grid", type=int, help="number of grid points (default 201)")
    parser.add_argument("--out", help="output directory (default $DURRMEYER_OUT)")
    parser.add_argument("--svg", action="store_true", help="also write SVG figures")
    parser.add_argument("--png", action="store_true", help="also write PNG figures (matplotlib)")
    parser.add_argument("--a0", help="custom order-I sequence a0(n), e.g. '(n-1)/(2*n)'")
    parser.add_argument("--a1", help="custom order-I sequence a1(n)")
    parser.add_argument("--name", help="file name stem (default: function name)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="durrmeyer",
                                     description="Classical and modified Durrmeyer operators")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (("approximate", "write approximants to CSV"),
                        ("errors", "write pointwise errors and sup-errors")):
        _common(sub.add_parser(name, help=help_))
    mom = sub.add_parser("moments", help="closed-form vs brute-force moments")
    mom.add_argument("--preset", action="append")
    mom.add_argument("--n", action="append")
    group = mom.add_mutually_exclusive_group()
    group.add_argument("--central", type=int, metavar="R")
    group.add_argument("--raw", type=int, metavar="I")
    mom.add_argument("--x", action="append", help="abscissae, comma separated")
    rate = sub.add_parser("rate", help="fit log-log convergence slopes")
    _common(rate)
    rate.add_argument("--expect", type=float, help="expected slope; exit 3 if outside tolerance")
    rate.add_argument("--tol", type=float, default=0.15)
    rep = sub.add_parser("reproduce-example", help="reproduce numerical example 1, 2 or 3")
    rep.add_argument("example", type=int, choices=sorted(EXAMPLES))
    _common(rep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "moments":
            return cmd_moments(args)
        cfg = build_config(args)
        if args.command == "approximate":
            for p in cmd_approximate(cfg):
                print(f"wrote {p}")
            return EXIT_OK
        if args.command == "errors":
            files, _ = cmd_errors(cfg)
            for p in files:
                print(f"wrote {p}")
            return EXIT_OK
        if args.command == "rate":
            return cmd_rate(cfg, args.expect, args.tol)
        return cmd_reproduce(args.example, cfg)
    except UnsupportedMomentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalCheckError as exc:
        print(f"numerical check failed: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (DurrmeyerError, ValueError) as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        where = f" ({exc.filename})" if getattr(exc, "filename", None) else ""
        print(f"I/O error{where}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
