"""Command-line front end.

Verbs: ``bounds``, ``invert``, ``cesaro``, ``verify``, ``search``.  Every verb
accepts ``--config FILE`` (a JSON object keyed by option name, with dashes
replaced by underscores); flags given on the command line win over the file.

Exit codes: 0 success, 1 usage or input error, 2 strict-mode exceedance,
3 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import os
import sys
import tempfile

from . import __version__
from .bounds import FormulaUndefinedError, HBetaParams, PsiCoefficients, QParams
from .cesaro import CesaroDomainError, CesaroParams, apply_cesaro
from .classes import KINDS, PsiClass, RealPartClass, StrongClass, bound_for
from .construct import ConstructionError, make_member, verify_membership
from .search import SearchConfig, sweep
from .series import DEFAULT_ORDER, NormalizedSeries, invert

EXIT_OK, EXIT_USAGE, EXIT_STRICT, EXIT_IO = 0, 1, 2, 3

DEFAULTS = {
    "format": "json",
    "out": None,
    "order": None,
    "seed": 0,
    "strict": False,
    "classical_cesaro": False,
    "unit_prefactor": False,
    "cls": ["psi", "strong", "realpart"],
    "k": "3",
    "cesaro_alpha": "1",
    "alpha": "1",
    "lam": "1",
    "beta": "0",
    "B1": "2",
    "B2": "2",
    "grid_density": 32,
    "restarts": 256,
    "refine_steps": 20,
    "tolerance": 1e-9,
    "radius": 0.999,
    "samples": 4096,
    "p1": "0",
    "p2": "0",
    "coeffs": None,
    "input": None,
}
# options that name files rather than describe the run
_NOT_ECHOED = {"out", "config", "command"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def parse_complex(text) -> complex:
    if isinstance(text, (list, tuple)) and len(text) == 2:
        return complex(float(text[0]), float(text[1]))
    if isinstance(text, (int, float)):
        return complex(text)
    try:
        return complex(str(text).strip().replace(" ", "").replace("i", "j"))
    except ValueError:
        raise UsageError(f"cannot parse complex number {text!r}") from None


def format_complex(z: complex) -> str:
    im = repr(z.imag + 0.0)
    sign = "" if im.startswith("-") else "+"
    return f"{z.real + 0.0!r}{sign}{im}i"


def parse_range(text) -> list[float]:
    """``"v"``, ``"a,b,c"`` or an inclusive ``"start:stop:step"``; numbers and lists pass through."""
    if isinstance(text, (int, float)):
        return [float(text)]
    if isinstance(text, list):
        return [float(v) for v in text]
    text = str(text).strip()
    try:
        if ":" in text:
            start, stop, step = (float(p) for p in text.split(":"))
            if not step > 0:
                raise UsageError(f"range step must be positive in {text!r}")
            count = math.floor((stop - start) / step + 1e-9) + 1
            return [start + i * step for i in range(max(count, 0))]
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"cannot parse range {text!r}") from None


def _int_values(values, name):
    out = []
    for v in values:
        if v != int(v):
            raise UsageError(f"{name} values must be integers, got {v}")
        out.append(int(v))
    return out


def _common(p):
    p.add_argument("--config", help="JSON file with option values")
    p.add_argument("--format", choices=("csv", "json", "pretty"))
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--order", type=int, help="truncation order of series")
    p.add_argument("--seed", type=int)
    p.add_argument("--strict", action="store_true", default=None,
                   help="exit 2 when an oracle exceeds its formula")
    p.add_argument("--classical-cesaro", action="store_true", default=None,
                   help="use the classical Cesàro weights instead of the default ones")


def _class_args(p):
    p.add_argument("--class", dest="cls", action="append", choices=KINDS + ("all",))
    p.add_argument("--k", help="mean index: value, list or start:stop:step")
    p.add_argument("--cesaro-alpha", help="mean order")
    p.add_argument("--unit-prefactor", action="store_true", default=None,
                   help="drop the Cesàro operator (all weights 1)")
    p.add_argument("--alpha", help="class alpha of the strong class")
    p.add_argument("--lam", help="lambda of the strong and real-part classes")
    p.add_argument("--beta", help="beta of the real-part class")
    p.add_argument("--B1", help="first psi coefficient")
    p.add_argument("--B2", help="second psi coefficient")


def _coeff_args(p):
    p.add_argument("--coeffs", help="comma-separated a_2, a_3, ... (complex as 1+2i)")
    p.add_argument("--input", help="JSON file holding the array a_2, a_3, ...")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bicesaro", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bounds", help="tabulate the closed-form coefficient bounds")
    _common(p)
    _class_args(p)

    p = sub.add_parser("invert", help="coefficients of the inverse series")
    _common(p)
    _coeff_args(p)

    p = sub.add_parser("cesaro", help="apply the Cesàro mean to a series")
    _common(p)
    _coeff_args(p)
    p.add_argument("--k")
    p.add_argument("--cesaro-alpha")
    p.add_argument("--unit-prefactor", action="store_true", default=None)

    p = sub.add_parser("verify", help="sample the class condition for a constructed member")
    _common(p)
    _class_args(p)
    p.add_argument("--p1", help="first seed coefficient (b1 for the psi class)")
    p.add_argument("--p2", help="second seed coefficient (b2 for the psi class)")
    p.add_argument("--radius", type=float)
    p.add_argument("--samples", type=int)

    p = sub.add_parser("search", help="extremal oracle against the closed-form bounds")
    _common(p)
    _class_args(p)
    p.add_argument("--grid-density", type=int)
    p.add_argument("--restarts", type=int)
    p.add_argument("--refine-steps", type=int)
    p.add_argument("--tolerance", type=float)
    return parser


def resolve(args: argparse.Namespace) -> dict:
    """Merge built-in defaults, the config file and command-line flags."""
    file_cfg = {}
    if args.config:
        try:
            with open(args.config) as fh:
                file_cfg = json.load(fh)
        except OSError as exc:
            raise OSError(f"cannot read config {args.config}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise UsageError(f"config {args.config} is not valid JSON: {exc}") from None
        if not isinstance(file_cfg, dict):
            raise UsageError("config file must hold a JSON object")
        if "class" in file_cfg:
            file_cfg["cls"] = file_cfg.pop("class")
    cfg = {"command": args.command}
    for key, default in DEFAULTS.items():
        flag = getattr(args, key, None)
        cfg[key] = flag if flag is not None else file_cfg.get(key, default)
    if isinstance(cfg["cls"], str):
        cfg["cls"] = [cfg["cls"]]
    if "all" in cfg["cls"]:
        cfg["cls"] = list(KINDS)
    for kind in cfg["cls"]:
        if kind not in KINDS:
            raise UsageError(f"unknown class {kind!r}")
    cfg["cls"] = [k for k in KINDS if k in cfg["cls"]]
    if cfg["format"] not in ("csv", "json", "pretty"):
        raise UsageError(f"unknown format {cfg['format']!r}")
    return cfg


def _mode(cfg) -> str:
    if cfg["unit_prefactor"]:
        return "unit"
    return "classical" if cfg["classical_cesaro"] else "binomial"


def _cesaro_grid(cfg, min_k: int = 2):
    ks = _int_values(parse_range(cfg["k"]), "k")
    alphas = parse_range(cfg["cesaro_alpha"])
    out = []
    for k, a in itertools.product(ks, alphas):
        if k < min_k:
            raise UsageError(f"k must be >= {min_k}, got {k}")
        try:
            out.append(CesaroParams(k, a, _mode(cfg)))
        except (CesaroDomainError, ValueError) as exc:
            raise UsageError(str(exc)) from None
    return out


def class_specs(cfg) -> list:
    """Every class spec on the configured parameter grid, in a fixed order."""
    specs = []
    cps = _cesaro_grid(cfg)
    try:
        for kind in cfg["cls"]:
            if kind == "psi":
                params = [PsiCoefficients(b1, b2) for b1, b2 in
                          itertools.product(parse_range(cfg["B1"]), parse_range(cfg["B2"]))]
                specs += [PsiClass(p, cp) for cp in cps for p in params]
            elif kind == "strong":
                params = [QParams(a, l) for a, l in
                          itertools.product(parse_range(cfg["alpha"]), parse_range(cfg["lam"]))]
                specs += [StrongClass(p, cp) for cp in cps for p in params]
            else:
                params = [HBetaParams(b, l) for b, l in
                          itertools.product(parse_range(cfg["beta"]), parse_range(cfg["lam"]))]
                specs += [RealPartClass(p, cp) for cp in cps for p in params]
    except ValueError as exc:
        if isinstance(exc, UsageError):
            raise
        raise UsageError(f"parameter out of range: {exc}") from None
    return specs


def _spec_cells(spec) -> dict:
    cells = {"class": spec.kind, "k": spec.cesaro.k, "cesaro_alpha": spec.cesaro.alpha,
             "cesaro_mode": spec.cesaro.mode,
             "B1": None, "B2": None, "alpha": None, "lambda": None, "beta": None}
    cells.update(spec.params())
    return cells


BOUNDS_COLUMNS = ["class", "formula_id", "k", "cesaro_alpha", "cesaro_mode", "B1", "B2",
                  "alpha", "lambda", "beta", "prefactor", "core", "value", "status"]


def run_bounds(cfg) -> tuple[list[str], list[dict], int]:
    rows = []
    for spec in class_specs(cfg):
        for which in ("a2", "a3"):
            row = {**_spec_cells(spec), "formula_id": f"{which}_{spec.kind}",
                   "prefactor": None, "core": None, "value": None, "status": "ok"}
            try:
                res = bound_for(spec, which)
                row.update(prefactor=res.prefactor, core=res.core, value=res.value)
            except CesaroDomainError as exc:
                need = 3 if which == "a3" else 2
                row["status"] = (f"undefined (k<{need})" if spec.cesaro.k < need
                                 else f"undefined ({exc})")
            except FormulaUndefinedError as exc:
                row["status"] = f"undefined ({exc})"
            rows.append({c: row[c] for c in BOUNDS_COLUMNS})
    return BOUNDS_COLUMNS, rows, EXIT_OK


def _read_coeffs(cfg) -> list[complex]:
    if cfg["input"] is not None:
        try:
            with open(cfg["input"]) as fh:
                data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise UsageError(f"input {cfg['input']} is not valid JSON: {exc}") from None
        if not isinstance(data, list):
            raise UsageError("input file must hold a JSON array of coefficients")
        return [parse_complex(v) for v in data]
    raw = cfg["coeffs"]
    if raw is None:
        return []
    if isinstance(raw, list):
        return [parse_complex(v) for v in raw]
    return [parse_complex(v) for v in str(raw).split(",") if v.strip()]


def _normalized(cfg, min_order: int = 1) -> NormalizedSeries:
    tail = _read_coeffs(cfg)
    order = cfg["order"] if cfg["order"] is not None else max(len(tail) + 1, min_order)
    if order < len(tail) + 1 or order < min_order:
        raise UsageError(f"order {order} too small for the given coefficients")
    try:
        return NormalizedSeries.from_tail(tail, order)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


SERIES_COLUMNS = ["n", "coefficient"]


def _series_rows(series):
    return [{"n": n, "coefficient": complex(c)} for n, c in enumerate(series.coeffs)]


def run_invert(cfg):
    return SERIES_COLUMNS, _series_rows(invert(_normalized(cfg))), EXIT_OK


def run_cesaro(cfg):
    ks = _int_values(parse_range(cfg["k"]), "k")
    alphas = parse_range(cfg["cesaro_alpha"])
    if len(ks) != 1 or len(alphas) != 1:
        raise UsageError("cesaro takes a single k and a single mean order")
    try:
        cp = CesaroParams(ks[0], alphas[0], _mode(cfg))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    f = _normalized(cfg, min_order=max(cp.k, 1) if cp.mode != "unit" else 1)
    return SERIES_COLUMNS, _series_rows(apply_cesaro(f, cp)), EXIT_OK


VERIFY_COLUMNS = ["class", "k", "cesaro_alpha", "cesaro_mode", "B1", "B2", "alpha", "lambda",
                  "beta", "seed1", "seed2", "radius", "samples", "extremal_value",
                  "threshold", "pass", "flags"]


def run_verify(cfg):
    specs = class_specs(cfg)
    if len(specs) != 1:
        raise UsageError(f"verify needs exactly one class and parameter point, got {len(specs)}")
    spec = specs[0]
    order = cfg["order"] if cfg["order"] is not None else max(DEFAULT_ORDER, spec.cesaro.k)
    try:
        member = make_member(spec, parse_complex(cfg["p1"]), parse_complex(cfg["p2"]), order)
        report = verify_membership(member, float(cfg["radius"]), int(cfg["samples"]))
    except (ConstructionError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    d = report.to_dict()
    seed = list(member.seed)
    row = {**_spec_cells(spec), "seed1": seed[0], "seed2": seed[1],
           **{k: d[k] for k in ("radius", "samples", "extremal_value", "threshold", "pass")},
           "flags": ";".join(d["flags"])}
    return VERIFY_COLUMNS, [row], EXIT_OK, [d]


SEARCH_COLUMNS = ["class", "k", "cesaro_alpha", "cesaro_mode", "B1", "B2", "alpha", "lambda",
                  "beta", "formula_id", "formula_value", "oracle_max", "exceedance", "verdict",
                  "tolerance", "seed1_name", "seed1", "seed2_name", "seed2", "alternatives",
                  "reason"]


def run_search(cfg):
    specs = class_specs(cfg)
    try:
        scfg = SearchConfig(int(cfg["grid_density"]), int(cfg["restarts"]),
                            int(cfg["refine_steps"]), int(cfg["seed"]), float(cfg["tolerance"]))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    reports = sweep(specs, scfg) if specs else []
    spec_of = [s for s in specs for _ in range(2)]
    rows, dicts = [], []
    for spec, rep in zip(spec_of, reports):
        seed = list(rep.argmax_seed.items()) + [(None, None)] * (2 - len(rep.argmax_seed))
        rows.append({**_spec_cells(spec), "formula_id": rep.formula_id,
                     "formula_value": rep.formula_value, "oracle_max": rep.oracle_max,
                     "exceedance": rep.exceedance, "verdict": rep.verdict,
                     "tolerance": rep.tolerance,
                     "seed1_name": seed[0][0], "seed1": seed[0][1],
                     "seed2_name": seed[1][0], "seed2": seed[1][1],
                     "alternatives": ";".join(f"{k}={v!r}" for k, v in rep.alternatives.items()),
                     "reason": rep.reason})
        dicts.append(rep.to_dict())
    code = EXIT_OK
    if cfg["strict"] and any(r.verdict == "oracle_exceeds" for r in reports):
        code = EXIT_STRICT
    return SEARCH_COLUMNS, rows, code, dicts


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, complex):
        return format_complex(v)
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _jsonable(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def render(fmt: str, cfg: dict, columns, rows, json_rows=None) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_cell(r[c]) for c in columns])
        return buf.getvalue()
    if fmt == "json":
        echo = {k: v for k, v in cfg.items() if k not in _NOT_ECHOED}
        doc = {"tool_version": __version__, "command": cfg["command"], "config": echo,
               "rows": _jsonable(json_rows if json_rows is not None else rows)}
        return json.dumps(doc, indent=2, allow_nan=False) + "\n"
    cells = [[_cell(r[c]) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".bicesaro-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


RUNNERS = {"bounds": run_bounds, "invert": run_invert, "cesaro": run_cesaro,
           "verify": run_verify, "search": run_search}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve(args)
        result = RUNNERS[args.command](cfg)
        columns, rows, code = result[:3]
        json_rows = result[3] if len(result) > 3 else None
        text = render(cfg["format"], cfg, columns, rows, json_rows)
    except UsageError as exc:
        print(f"bicesaro: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"bicesaro: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        _write(text, cfg["out"])
    except OSError as exc:
        print(f"bicesaro: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return code


if __name__ == "__main__":
    sys.exit(main())
