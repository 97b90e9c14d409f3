"""Command line driver.

Subcommands build distribution tables, run replica sweeps, evaluate the
exact combinatorial oracles, and run the release checks.  A run is fully
described by its resolved configuration: seeds are mandatory (nothing is
seeded from the clock), outputs embed the configuration and version, and
reruns with the same configuration produce byte-identical files.

Options come from three layers: built-in defaults, then a flat
``key = value`` config file (``--config``), then explicit command line
flags, later layers winning.  Relative output paths land in
$WIGNERLAB_OUTDIR when that is set.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import __version__, acceptance, runio, toymodel
from .ensembles import ensemble_by_name, replica_key
from .errors import (ConfigurationError, DomainError, ResourceLimitError,
                     WignerLabError)
from .experiments import (run_edge_records, run_edge_samples, run_semicircle)
from .mcstats import EmpiricalCDF, ks_two_sample
from .paths import (enumerate_even_paths, exact_trace_moment,
                    no_self_intersections)
from .tracywidom import tw_table

OUTDIR_ENV = "WIGNERLAB_OUTDIR"

_REQUIRED = object()

_OPTION_TYPES = {
    "n": int, "p": int, "replicas": int, "seed": int, "reference_seed": int,
    "k": int, "workers": int, "points": int,
    "smin": float, "smax": float, "step": float, "t": float,
    "ensemble": str, "reference": str, "law": str, "which": str,
    "only": str, "output": str,
}


@dataclass(frozen=True)
class ExperimentConfig:
    """Fully resolved options of one run, in echo order."""

    command: str
    values: tuple

    def __getitem__(self, key):
        for k, v in self.values:
            if k == key:
                return v
        raise KeyError(key)

    def meta(self) -> dict:
        out = {"version": __version__, "command": self.command}
        out.update((k, v) for k, v in self.values if k != "output")
        return out


@dataclass(frozen=True)
class ExperimentResult:
    config: ExperimentConfig
    summary: str
    seconds: float
    failed: bool = False
    to_stdout: bool = False


def _parse_config_file(path: str) -> dict:
    try:
        with open(path) as handle:
            lines = handle.readlines()
    except OSError as exc:
        raise ConfigurationError(f"cannot read config file {path}: {exc}")
    values = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, val = line.partition("=")
        if not sep:
            raise ConfigurationError(
                f"{path}:{lineno}: expected 'key = value', got {line!r}")
        values[key.strip().replace("-", "_")] = val.strip()
    return values


def _resolve(args: argparse.Namespace, defaults: dict) -> ExperimentConfig:
    """Layer defaults, config file, and explicit flags into one config."""
    from_file = _parse_config_file(args.config) if args.config else {}
    resolved = []
    for key, fallback in defaults.items():
        value = getattr(args, key, None)
        if value is None and key in from_file:
            kind = _OPTION_TYPES[key]
            try:
                value = kind(from_file[key])
            except ValueError:
                raise ConfigurationError(
                    f"config key {key} = {from_file[key]!r}: not {kind.__name__}")
        if value is None:
            value = fallback
        if value is _REQUIRED:
            raise ConfigurationError(f"missing required option --{key.replace('_', '-')}")
        resolved.append((key, value))
    config = ExperimentConfig(args.command, tuple(resolved))
    if "replicas" in defaults and config["replicas"] < 1:
        raise ConfigurationError("replicas must be >= 1")
    if "workers" in defaults and config["workers"] < 1:
        raise ConfigurationError("workers must be >= 1")
    return config


def _output_path(config: ExperimentConfig, required: bool = True):
    path = config["output"]
    if path is None:
        if required:
            raise ConfigurationError("missing required option --output")
        return None
    outdir = os.environ.get(OUTDIR_ENV)
    if outdir and not os.path.isabs(path):
        return os.path.join(outdir, path)
    return path


def _emit_json(config: ExperimentConfig, payload: dict) -> str:
    """Write payload to the resolved output, or stdout when none given."""
    body = dict(config.meta())
    body.update(payload)
    path = _output_path(config, required=False)
    if path is None:
        sys.stdout.write(runio.json_text(body))
        return "stdout"
    runio.write_json(path, body)
    return path


# -- tw-table ---------------------------------------------------------------

def _cmd_tw_table(args) -> ExperimentResult:
    config = _resolve(args, {"smin": -10.0, "smax": 8.0, "step": 0.02,
                             "output": _REQUIRED})
    start = time.perf_counter()
    path = _output_path(config)
    fresh = tw_table(config["smin"], config["smax"], config["step"])
    if os.path.exists(path):
        try:
            _, s, q, f1, f2 = runio.load_tw_table(path)
            same_grid = len(s) == len(fresh.s) and np.allclose(
                s, fresh.s, rtol=0.0, atol=1e-9)
            close = same_grid and all(
                np.max(np.abs(col - ref)) < 1e-8
                for col, ref in ((q, fresh.q), (f1, fresh.f1), (f2, fresh.f2)))
            if close:
                return ExperimentResult(config, f"table at {path} is valid "
                                        f"({len(s)} nodes), kept",
                                        time.perf_counter() - start)
            reason = ("values disagree with a fresh build" if same_grid
                      else "grid mismatch")
        except DomainError as exc:
            reason = str(exc)
        print(f"existing table rejected ({reason}); rebuilding", file=sys.stderr)
    runio.write_csv(path, config.meta(), ["s", "q", "F1", "F2"],
                    runio.tw_table_rows(fresh))
    return ExperimentResult(config, f"wrote {len(fresh.s)} nodes to {path}",
                            time.perf_counter() - start)


# -- sample-edge ------------------------------------------------------------

def _cmd_sample_edge(args) -> ExperimentResult:
    config = _resolve(args, {"ensemble": _REQUIRED, "n": 200, "replicas": 2000,
                             "k": 1, "t": 1.0, "seed": _REQUIRED, "workers": 1,
                             "output": _REQUIRED})
    start = time.perf_counter()
    spec = ensemble_by_name(config["ensemble"])
    n, k, seed = config["n"], config["k"], config["seed"]
    records = run_edge_records(spec, n, config["replicas"], seed, k,
                               config["t"], workers=config["workers"])
    columns = (["seed", "n", "ensemble", "beta"]
               + [f"theta_{j}" for j in range(1, k + 1)]
               + ["trace_even", "trace_odd", "S_upper", "S_lower"])
    rows = ([replica_key(seed, r), n, spec.name, spec.beta]
            + [row[j] for j in range(k)] + [row[k], row[k + 1],
                                            row[k + 2], row[k + 3]]
            for r, row in enumerate(records))
    path = _output_path(config)
    runio.write_csv(path, config.meta(), columns, rows)
    theta1 = records[:, 0]
    summary = (f"{config['replicas']} replicas to {path}; "
               f"theta_1 mean {theta1.mean():.4f}, sd {theta1.std():.4f}")
    return ExperimentResult(config, summary, time.perf_counter() - start)


# -- universality -----------------------------------------------------------

def _cmd_universality(args) -> ExperimentResult:
    config = _resolve(args, {"ensemble": _REQUIRED, "reference": "goe",
                             "n": 200, "replicas": 2000, "k": 2,
                             "seed": _REQUIRED, "reference_seed": None,
                             "workers": 1, "output": None})
    start = time.perf_counter()
    spec = ensemble_by_name(config["ensemble"])
    ref_spec = ensemble_by_name(config["reference"])
    n, k, replicas = config["n"], config["k"], config["replicas"]
    ref_seed = config["reference_seed"]
    if ref_seed is None:
        ref_seed = config["seed"] + 1
    theta, _ = run_edge_samples(spec, n, replicas, config["seed"], k=k,
                                workers=config["workers"])
    ref, _ = run_edge_samples(ref_spec, n, replicas, ref_seed, k=k,
                              workers=config["workers"])
    comparisons = []
    for j in range(k):
        comparisons.append({
            "statistic": f"theta_{j + 1}",
            "ks_two_sample": ks_two_sample(
                EmpiricalCDF.from_samples(theta[:, j]),
                EmpiricalCDF.from_samples(ref[:, j])),
            "mean": float(theta[:, j].mean()),
            "reference_mean": float(ref[:, j].mean()),
        })
    payload = {"reference_seed_used": ref_seed, "comparisons": comparisons}
    dest = _emit_json(config, payload)
    worst = max(c["ks_two_sample"] for c in comparisons)
    return ExperimentResult(config, f"max two-sample KS {worst:.4f} "
                            f"over theta_1..theta_{k}; report to {dest}",
                            time.perf_counter() - start,
                            to_stdout=dest == "stdout")


# -- toy-paths --------------------------------------------------------------

def _cmd_toy_paths(args) -> ExperimentResult:
    config = _resolve(args, {"which": _REQUIRED, "n": _REQUIRED,
                             "p": _REQUIRED, "replicas": 100000,
                             "seed": _REQUIRED, "output": None})
    start = time.perf_counter()
    report = toymodel.proposition_check(config["n"], config["p"],
                                        config["replicas"], config["which"],
                                        seed=config["seed"])
    dest = _emit_json(config, {"report": report.as_dict()})
    return ExperimentResult(config, f"{report.statistic}: estimate "
                            f"{report.estimate:.5f}, reference "
                            f"{report.reference:.5f}, distance "
                            f"{report.distance:.5f}; report to {dest}",
                            time.perf_counter() - start,
                            to_stdout=dest == "stdout")


# -- oracle -----------------------------------------------------------------

def _cmd_oracle(args) -> ExperimentResult:
    config = _resolve(args, {"n": _REQUIRED, "p": _REQUIRED,
                             "law": "rademacher", "output": None})
    start = time.perf_counter()
    n, p = config["n"], config["p"]
    spec = ensemble_by_name(config["law"])
    moment = exact_trace_moment(n, p, spec)
    even_count = enumerate_even_paths(n, p) if p % 2 == 0 else 0
    no_si = (enumerate_even_paths(n, p, predicate=no_self_intersections)
             if p % 2 == 0 else 0)
    payload = {"moment": str(moment), "moment_float": float(moment),
               "even_count": even_count, "no_si_count": no_si}
    dest = _emit_json(config, payload)
    return ExperimentResult(config, f"moment {moment} over {even_count} even "
                            f"paths; report to {dest}",
                            time.perf_counter() - start,
                            to_stdout=dest == "stdout")


# -- semicircle -------------------------------------------------------------

def _cmd_semicircle(args) -> ExperimentResult:
    config = _resolve(args, {"ensemble": "goe", "n": 1000, "replicas": 10,
                             "points": 97, "seed": _REQUIRED, "workers": 1,
                             "output": _REQUIRED})
    start = time.perf_counter()
    if config["points"] < 2:
        raise ConfigurationError("need at least two grid points")
    spec = ensemble_by_name(config["ensemble"])
    grid = np.linspace(-1.2, 1.2, config["points"])
    grid, mean, dev = run_semicircle(spec, config["n"], config["replicas"],
                                     config["seed"], grid=grid,
                                     workers=config["workers"])
    from .spectra import semicircle_cdf
    rows = zip(grid, mean, semicircle_cdf(grid))
    path = _output_path(config)
    runio.write_csv(path, config.meta(), ["lambda", "esd", "semicircle"], rows)
    return ExperimentResult(config, f"max |ESD - semicircle| {dev:.5f} "
                            f"at n={config['n']}; curve to {path}",
                            time.perf_counter() - start)


# -- verify -----------------------------------------------------------------

_CHECK_GROUPS = {
    "paths": (1, 2), "moments": (3,), "kernels": (4, 5, 9), "edge": (6, 11),
    "universality": (7,), "traces": (8,), "toy": (10,), "invariants": (12,),
}


def _select_checks(only: str | None):
    if only is None:
        return None
    chosen: set = set()
    for token in only.replace(",", " ").split():
        if token.isdigit():
            cid = int(token)
            if not any(cid == c for c, _ in acceptance.CRITERIA):
                raise ConfigurationError(f"no check numbered {cid}")
            chosen.add(cid)
        elif token in _CHECK_GROUPS:
            chosen.update(_CHECK_GROUPS[token])
        else:
            matches = [c for c, slug in acceptance.CRITERIA if token in slug]
            if not matches:
                raise ConfigurationError(
                    f"unknown check selector {token!r}; groups: "
                    + ", ".join(sorted(_CHECK_GROUPS)))
            chosen.update(matches)
    return chosen


def _cmd_verify(args) -> ExperimentResult:
    config = _resolve(args, {"only": None, "workers": 1, "output": None})
    start = time.perf_counter()
    selected = _select_checks(config["only"])
    results = acceptance.run_checks(only=selected, workers=config["workers"],
                                    progress=lambda r: print(
                                        acceptance.format_result(r), flush=True))
    if not results:
        raise ConfigurationError("selection matched no checks")
    failed = [r for r in results if not r.passed]
    path = _output_path(config, required=False)
    if path is not None:
        body = dict(config.meta())
        body["passed"] = not failed
        body["results"] = [{"id": r.cid, "slug": r.slug, "passed": r.passed,
                            "detail": r.detail, "seconds": round(r.seconds, 3)}
                           for r in results]
        runio.write_json(path, body)
    verdict = (f"{len(results) - len(failed)}/{len(results)} checks passed"
               + (f"; FAILED: {', '.join(r.slug for r in failed)}" if failed
                  else ""))
    return ExperimentResult(config, verdict, time.perf_counter() - start,
                            failed=bool(failed))


def _add_common(sub, *names):
    sub.add_argument("--config", metavar="FILE",
                     help="flat key = value option file; flags override it")
    for name in names:
        flag = "--" + name.replace("_", "-")
        kind = _OPTION_TYPES[name]
        if name == "output":
            sub.add_argument("-o", "--output", metavar="PATH")
        elif name == "which":
            sub.add_argument(flag, choices=sorted(toymodel.PROPOSITIONS))
        else:
            sub.add_argument(flag, type=kind)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wignerlab",
        description="Random-matrix edge statistics laboratory")
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("tw-table",
                        help="build (or validate) the distribution table CSV")
    _add_common(s, "smin", "smax", "step", "output")
    s.set_defaults(func=_cmd_tw_table)

    s = subs.add_parser("sample-edge",
                        help="per-replica edge samples and trace statistics")
    _add_common(s, "ensemble", "n", "replicas", "k", "t", "seed", "workers",
                "output")
    s.set_defaults(func=_cmd_sample_edge)

    s = subs.add_parser("universality",
                        help="two-sample comparison of edge laws")
    _add_common(s, "ensemble", "reference", "n", "replicas", "k", "seed",
                "reference_seed", "workers", "output")
    s.set_defaults(func=_cmd_universality)

    s = subs.add_parser("toy-paths",
                        help="independent-walk self-intersection statistics")
    _add_common(s, "which", "n", "p", "replicas", "seed", "output")
    s.set_defaults(func=_cmd_toy_paths)

    s = subs.add_parser("oracle",
                        help="exact path counts and trace moments")
    _add_common(s, "n", "p", "law", "output")
    s.set_defaults(func=_cmd_oracle)

    s = subs.add_parser("semicircle",
                        help="mean empirical spectral distribution")
    _add_common(s, "ensemble", "n", "replicas", "points", "seed", "workers",
                "output")
    s.set_defaults(func=_cmd_semicircle)

    s = subs.add_parser("verify", help="run the numbered release checks")
    _add_common(s, "only", "workers", "output")
    s.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        result = args.func(args)
    except (ConfigurationError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    except WignerLabError as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return 1
    # keep stdout parseable when the payload itself went to stdout
    print(f"{result.config.command}: {result.summary} "
          f"[{result.seconds:.1f}s]",
          file=sys.stderr if result.to_stdout else sys.stdout)
    return 1 if result.failed else 0


if __name__ == "__main__":
    sys.exit(main())
