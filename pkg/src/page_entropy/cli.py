"""Command-line interface.

Subcommands: beta, page, scaling, variance, mc, ed, dims.  Every flag can
also be supplied through a single JSON config file (--config); explicit
flags win over config values.  CSV output carries floats at 17 significant
digits and exact integers as full decimal strings.

Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 infeasible size.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

from . import entropy as ent
from .dimensions import dim_table
from .errors import (ConfigError, DomainError, InfeasibleSizeError,
                     NumericalError)
from .haar_sampler import build_sector_basis, mc_average
from .local_model import LocalModel, catalog, from_json
from .saddle import beta_family, n_star
from .spectra import build_bose_hubbard, build_spin1_xxz, \
    mid_spectrum_entropies

THREADS_ENV = "PAGE_ENTROPY_THREADS"

# config-file key -> argparse dest (keys match the long flag names)
_CONFIG_KEYS = {
    "model": "model", "V": "V", "N": "N", "n": "n", "VA": "VA",
    "grid": "grid", "samples": "samples", "seed": "seed",
    "window": "window", "lambda": "lam", "Delta": "Delta", "U": "U",
    "nmax": "nmax", "f": "f", "V-list": "V_list", "out": "out",
    "format": "format", "threads": "threads", "methods": "methods",
}

_PAGE_METHODS = ("exact", "asymptotic", "resolved", "exact_var", "asym_var")
# column name -> EntropyReport method key
_METHOD_KEYS = {
    "exact": "exact", "asymptotic": "asymptotic", "resolved": "resolved",
    "exact_var": "exact_variance", "asym_var": "asymptotic_variance",
    "variance": "exact_variance",
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        merged = _merge_config(args)
        rows_or_doc = args.run(merged)
        _emit(rows_or_doc, merged)
        return 0
    except (ConfigError, DomainError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except InfeasibleSizeError as exc:
        print(f"infeasible size: {exc}", file=sys.stderr)
        return 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="page-entropy",
        description="Typical entanglement entropy of number-conserving "
                    "sectors: exact, asymptotic, sampled, and diagonalized.")
    parser.add_argument("--config", help="JSON file with flag defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, run):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--model", help="catalog name, name:param, or JSON "
                                       "model file")
        p.add_argument("--V", type=int)
        p.add_argument("--N", type=int)
        p.add_argument("--n", type=float, help="filling; N = round(n V)")
        p.add_argument("--VA", help="comma-separated cut sizes")
        p.add_argument("--grid", help="n grid as lo:hi:count")
        p.add_argument("--samples", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--window", type=int)
        p.add_argument("--lambda", dest="lam", type=float)
        p.add_argument("--Delta", type=float)
        p.add_argument("--U", type=float)
        p.add_argument("--nmax", type=int)
        p.add_argument("--f", type=float, help="subsystem fraction")
        p.add_argument("--V-list", dest="V_list",
                       help="comma-separated system sizes")
        p.add_argument("--methods",
                       help="comma-separated page columns "
                            f"(default {','.join(_PAGE_METHODS)})")
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--format", choices=("csv", "json"))
        p.add_argument("--threads", type=int)
        p.set_defaults(run=run)
        return p

    add("beta", "saddle family over an n grid", _cmd_beta)
    add("page", "page curve of one sector (all methods)", _cmd_page)
    add("scaling", "mean vs V at fixed f and n", _cmd_scaling)
    add("variance", "exact and asymptotic variance over cuts", _cmd_variance)
    add("mc", "Haar Monte Carlo average", _cmd_mc)
    add("ed", "mid-spectrum eigenstate entropies", _cmd_ed)
    add("dims", "exact sector dimension table", _cmd_dims)
    return parser


def _merge_config(args) -> dict:
    merged = dict(vars(args))
    if args.config:
        try:
            with open(args.config) as fh:
                config = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}")
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}")
        if not isinstance(config, dict):
            raise ConfigError("config must be a JSON object of flag values")
        for key, value in config.items():
            dest = _CONFIG_KEYS.get(key)
            if dest is None:
                raise ConfigError(f"unknown config field {key!r}")
            if merged.get(dest) is None:  # flags win
                merged[dest] = value
    if merged.get("threads") is None:
        env = os.environ.get(THREADS_ENV)
        if env is not None:
            try:
                merged["threads"] = int(env)
            except ValueError:
                raise ConfigError(f"{THREADS_ENV} must be an integer, "
                                  f"got {env!r}")
    if merged.get("threads") is None:
        merged["threads"] = 1
    elif int(merged["threads"]) < 1:
        raise ConfigError("threads must be >= 1")
    return merged


# -- shared option handling -------------------------------------------------

def _require(merged, field, flag):
    value = merged.get(field)
    if value is None:
        raise ConfigError(f"--{flag} is required for this command")
    return value


def _get_model(merged) -> LocalModel:
    text = str(_require(merged, "model", "model"))
    if text.endswith(".json") or os.path.sep in text:
        try:
            with open(text) as fh:
                return from_json(fh.read())
        except OSError as exc:
            raise ConfigError(f"cannot read model file: {exc}")
    name, _, param = text.partition(":")
    try:
        if not param:
            return catalog(name)
        value = float(param)
        if name == "capped_bosons":
            value = int(float(param))
        return catalog(name, value)
    except DomainError as exc:
        raise ConfigError(str(exc))


def _get_positive_int(merged, field, flag) -> int:
    value = _require(merged, field, flag)
    try:
        value = int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"--{flag} must be an integer, got {value!r}")
    if value < 1:
        raise ConfigError(f"--{flag} must be positive, got {value}")
    return value


def _get_particles(merged, V: int) -> int:
    if merged.get("N") is not None:
        N = int(merged["N"])
        if N < 0:
            raise ConfigError(f"--N must be nonnegative, got {N}")
        return N
    if merged.get("n") is not None:
        n = float(merged["n"])
        if n < 0:
            raise ConfigError(f"--n must be nonnegative, got {n}")
        return round(n * V)
    raise ConfigError("one of --N or --n is required")


def _get_int_list(merged, field, flag, default=None):
    raw = merged.get(field)
    if raw is None:
        if default is None:
            raise ConfigError(f"--{flag} is required for this command")
        return default
    if isinstance(raw, (list, tuple)):
        items = raw
    else:
        items = str(raw).split(",")
    try:
        return [int(item) for item in items]
    except (TypeError, ValueError):
        raise ConfigError(f"--{flag} must be a comma-separated integer list")


def _get_grid(merged):
    raw = _require(merged, "grid", "grid")
    parts = str(raw).split(":")
    if len(parts) != 3:
        raise ConfigError("--grid must look like lo:hi:count")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ConfigError("--grid must look like lo:hi:count with numbers")
    if count < 1 or hi < lo:
        raise ConfigError("--grid needs hi >= lo and count >= 1")
    if count == 1:
        return [lo]
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


# -- commands ----------------------------------------------------------------

def _cmd_beta(merged):
    model = _get_model(merged)
    grid = _get_grid(merged)
    header = ["n", "z0", "beta", "beta1", "beta2", "alpha", "mark"]
    rows = []
    star = n_star(model)
    for n in grid:
        sol = beta_family(model, n)
        rows.append([sol.n, sol.z0, sol.beta, sol.beta1, sol.beta2,
                     sol.alpha, ""])
    if star is not None:
        sol = beta_family(model, star)
        rows.append([sol.n, sol.z0, sol.beta, sol.beta1, sol.beta2,
                     sol.alpha, "nstar"])
    if model.n_max is not None:
        sol = beta_family(model, float(model.n_max))
        rows.append([sol.n, sol.z0, sol.beta, sol.beta1, sol.beta2,
                     sol.alpha, "nmax"])
    rows.sort(key=lambda row: row[0])
    return {"kind": "table", "header": header, "rows": rows,
            "meta": {"model": model.label}}


def _methods(merged):
    raw = merged.get("methods")
    if raw is None:
        return _PAGE_METHODS
    items = raw if isinstance(raw, (list, tuple)) else str(raw).split(",")
    methods = tuple(item.strip() for item in items)
    for item in methods:
        if item not in _METHOD_KEYS:
            raise ConfigError(f"unknown method {item!r}; choose from "
                              f"{', '.join(_PAGE_METHODS)}")
    return methods


def _cmd_page(merged):
    model = _get_model(merged)
    V = _get_positive_int(merged, "V", "V")
    N = _get_particles(merged, V)
    methods = _methods(merged)
    cuts = _get_int_list(merged, "VA", "VA", default=list(range(V + 1)))
    header = ["V_A", "f"] + list(methods)
    rows = []
    reports = []
    keys = tuple(dict.fromkeys(_METHOD_KEYS[m] for m in methods))
    for v_a in cuts:
        if not 0 <= v_a <= V:
            raise ConfigError(f"--VA entries must lie in [0, V]; got {v_a}")
        rep = ent.report(model, ent.BipartitionSpec(V=V, N=N, V_A=v_a),
                         methods=keys)
        reports.append(rep)
        row = [v_a, rep.f]
        for method in methods:
            row.append(_report_value(rep, _METHOD_KEYS[method]))
        rows.append(row)
    meta = {"model": model.label, "V": V, "N": N}
    return {"kind": "table", "header": header, "rows": rows, "meta": meta,
            "json_doc": _page_json(reports, meta)}


def _report_value(rep, key):
    if key == "exact":
        return rep.exact_mean
    if key == "asymptotic":
        return rep.asymptotic.value
    if key == "resolved":
        return rep.resolved
    if key == "exact_variance":
        return rep.exact_variance.value
    return rep.asymptotic_variance.value


def _page_json(reports, meta):
    doc = dict(meta)
    doc["rows"] = []
    for rep in reports:
        entry = {"V_A": rep.V_A, "f": rep.f}
        if rep.exact_mean is not None:
            entry["exact"] = rep.exact_mean
        if rep.asymptotic is not None:
            entry["asymptotic"] = {
                "a": rep.asymptotic.a, "b": rep.asymptotic.b,
                "c": rep.asymptotic.c, "value": rep.asymptotic.value,
            }
        if rep.resolved is not None:
            entry["resolved"] = rep.resolved
        if rep.exact_variance is not None:
            entry["exact_variance"] = {
                "value": rep.exact_variance.value,
                "log_value": rep.exact_variance.log_value,
            }
        if rep.asymptotic_variance is not None:
            entry["asymptotic_variance"] = {
                "value": rep.asymptotic_variance.value,
                "prefactor": rep.asymptotic_variance.prefactor,
                "exponent": rep.asymptotic_variance.exponent,
                "log_value": rep.asymptotic_variance.log_value,
            }
        doc["rows"].append(entry)
    return doc


def _cmd_scaling(merged):
    model = _get_model(merged)
    f = float(_require(merged, "f", "f"))
    n = float(_require(merged, "n", "n"))
    sizes = _get_int_list(merged, "V_list", "V-list")
    header = ["V", "inv_V", "N", "V_A", "exact", "asymptotic", "sqrt_coeff"]
    rows = []
    for V in sizes:
        v_a = f * V
        if abs(v_a - round(v_a)) > 1e-9:
            raise ConfigError(f"f*V must be an integer for the exact sum; "
                              f"f={f}, V={V}")
        v_a = round(v_a)
        N = round(n * V)
        spec = ent.BipartitionSpec(V=V, N=N, V_A=v_a)
        exact = ent.exact_average(model, spec)
        terms = ent.asymptotic_terms(model, V, spec.f, spec.n)
        sqrt_coeff = (exact - terms.a * V - terms.c) / math.sqrt(V)
        rows.append([V, 1.0 / V, N, v_a, exact, terms.value, sqrt_coeff])
    return {"kind": "table", "header": header, "rows": rows,
            "meta": {"model": model.label, "f": f, "n": n}}


def _cmd_variance(merged):
    model = _get_model(merged)
    V = _get_positive_int(merged, "V", "V")
    N = _get_particles(merged, V)
    cuts = _get_int_list(merged, "VA", "VA", default=list(range(V + 1)))
    header = ["V_A", "f", "exact_variance", "log_exact_variance",
              "asymptotic_variance", "log_asymptotic_variance"]
    rows = []
    for v_a in cuts:
        if not 0 <= v_a <= V:
            raise ConfigError(f"--VA entries must lie in [0, V]; got {v_a}")
        rep = ent.report(model, ent.BipartitionSpec(V=V, N=N, V_A=v_a),
                         methods=("exact_variance", "asymptotic_variance"))
        rows.append([v_a, rep.f,
                     rep.exact_variance.value, rep.exact_variance.log_value,
                     rep.asymptotic_variance.value,
                     rep.asymptotic_variance.log_value])
    return {"kind": "table", "header": header, "rows": rows,
            "meta": {"model": model.label, "V": V, "N": N}}


def _cmd_mc(merged):
    model = _get_model(merged)
    V = _get_positive_int(merged, "V", "V")
    N = _get_particles(merged, V)
    cuts = _get_int_list(merged, "VA", "VA")
    if len(cuts) != 1:
        raise ConfigError("mc takes exactly one --VA cut")
    samples = _get_positive_int(merged, "samples", "samples")
    seed = merged.get("seed")
    seed = 0 if seed is None else int(seed)
    basis = build_sector_basis(model, V, N, cuts[0])
    summary = mc_average(basis, samples, seed,
                         threads=int(merged["threads"]))
    doc = {"model": model.label, "V": V, "N": N, "V_A": cuts[0],
           "samples": summary.samples, "seed": summary.seed,
           "mean": summary.mean, "sem": summary.sem,
           "variance": summary.variance}
    header = list(doc)
    return {"kind": "table", "header": header, "rows": [list(doc.values())],
            "meta": {}, "json_doc": doc, "default_format": "json"}


def _cmd_ed(merged):
    kind = str(_require(merged, "model", "model"))
    V = _get_positive_int(merged, "V", "V")
    N = _get_particles(merged, V)
    window = merged.get("window")
    window = 100 if window is None else int(window)
    if kind == "spin1_xxz":
        lam = merged.get("lam")
        delta = merged.get("Delta")
        if lam is None or delta is None:
            raise ConfigError("spin1_xxz needs --lambda and --Delta")
        ham = build_spin1_xxz(V, M=N - V, lam=float(lam), delta=float(delta))
    elif kind == "bose_hubbard":
        U = merged.get("U")
        if U is None:
            raise ConfigError("bose_hubbard needs --U")
        ham = build_bose_hubbard(V, N, U=float(U), n_max=merged.get("nmax"))
    else:
        raise ConfigError("--model must be spin1_xxz or bose_hubbard "
                          "for the ed command")
    cuts = _get_int_list(merged, "VA", "VA",
                         default=list(range(V // 2 + 1)))
    rep = mid_spectrum_entropies(ham, window, cuts)
    params = ";".join(f"{k}={v}" for k, v in sorted(ham.couplings.items()))
    header = ["V_A", "f", "mean_S", "std_S", "window", "params"]
    count = rep.window_hi - rep.window_lo
    rows = [[cut.V_A, cut.f, cut.mean, cut.std, count, params]
            for cut in rep.cuts]
    meta = {"kind": kind, "V": V, "N": N, "dim": rep.dim,
            "window": [rep.window_lo, rep.window_hi]}
    return {"kind": "table", "header": header, "rows": rows, "meta": meta}


def _cmd_dims(merged):
    model = _get_model(merged)
    V = _get_positive_int(merged, "V", "V")
    cap = merged.get("N")
    if cap is None:
        if model.n_max is None:
            raise ConfigError("--N cap is required for unbounded models")
        cap = V * model.n_max
    else:
        cap = int(cap)
        if cap < 0:
            raise ConfigError("--N must be nonnegative")
    table = dim_table(model, V, cap)
    rows = [[N, d] for N, d in enumerate(table)]
    return {"kind": "table", "header": ["N", "d_N"], "rows": rows,
            "meta": {"model": model.label, "V": V}}


# -- output ------------------------------------------------------------------

def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, int):
        return str(value)  # exact decimal, arbitrary length
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format(value, ".17g")
    return str(value)


def render_csv(result) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(result["header"])
    for row in result["rows"]:
        writer.writerow([_format_cell(cell) for cell in row])
    return buffer.getvalue()


def render_json(result) -> str:
    doc = result.get("json_doc")
    if doc is None:
        doc = dict(result.get("meta", {}))
        doc["rows"] = [
            {name: _json_cell(cell)
             for name, cell in zip(result["header"], row)}
            for row in result["rows"]
        ]
    return json.dumps(doc, indent=2, default=_json_cell) + "\n"


def _json_cell(value):
    if isinstance(value, float) and (math.isinf(value) or math.isnan(value)):
        return _format_cell(value)
    if isinstance(value, int) and abs(value) >= 2 ** 53:
        return str(value)  # keep exactness past double precision
    return value


def _emit(result, merged):
    fmt = merged.get("format") or result.get("default_format") or "csv"
    text = render_csv(result) if fmt == "csv" else render_json(result)
    out = merged.get("out")
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    sys.exit(main())
