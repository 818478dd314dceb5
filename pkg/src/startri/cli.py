"""Command-line front end for verification campaigns.

Commands
--------
``startri verify --config FILE [--seed N] [--samples N] [--out PATH]``
    Run the campaign described by a YAML file and write a JSON report.
``startri list``
    Print the identity kinds with their balancing conditions.
``startri explain REPORT CASE``
    Print one case of a report in readable form.

Exit codes: 0 when every case passes, 1 when any case fails or errors,
2 on configuration or usage errors.

The environment variable ``STARTRI_TOL`` sets the default verification
tolerance. A ``tol`` in the configuration file takes precedence.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

from . import __version__
from .errors import ConfigError, StartriError
from .identities import (
    DEFAULT_TOL,
    KIND_INFO,
    IdentityCase,
    IdentityKind,
    case_seeds,
    check_balancing,
    sample_case,
    verify,
)
from .quadrature import QuadratureSpec, SumSpec
from .reductions import LimitExperiment, LimitKind, default_experiment, run_experiment
from .special_fn import Moduli
from .weights import SpectralTriple, Spin

__all__ = [
    "TOL_ENV",
    "Campaign",
    "CampaignResult",
    "load_config",
    "run_campaign",
    "write_result",
    "read_result",
    "list_identities",
    "explain_case",
    "main",
]

TOL_ENV = "STARTRI_TOL"

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2

_TOP_KEYS = {"seed", "samples", "tol", "workers", "output", "csv", "quadrature",
             "sums", "cases"}
_SAMPLED_KEYS = {"kind", "samples", "tol", "options"}
_EXPLICIT_KEYS = {"kind", "tol", "g", "n", "moduli", "q", "r", "omega1", "triple",
                  "spins", "halfwidth"}
_LIMIT_KEYS = {"limit", "ladder", "base_point", "expect"}
_QUAD_KEYS = {"abs_tol", "rel_tol", "max_refinements", "cutoff", "tail_tol",
              "max_cutoff", "min_nodes"}
_SUM_KEYS = {"initial_halfwidth", "tail_tol", "max_halfwidth"}


# ---------------------------------------------------------------------------
# YAML with line numbers
# ---------------------------------------------------------------------------

class _Mapping(dict):
    """Dict that remembers the source line of each key."""

    line = None

    def __init__(self):
        super().__init__()
        self.lines = {}


class _LineLoader(yaml.SafeLoader):
    pass


def _construct_mapping(loader, node):
    loader.flatten_mapping(node)
    out = _Mapping()
    out.line = node.start_mark.line + 1
    for knode, vnode in node.value:
        key = loader.construct_object(knode, deep=True)
        if key in out:
            raise ConfigError("duplicate key", field=str(key),
                              line=knode.start_mark.line + 1)
        out[key] = loader.construct_object(vnode, deep=True)
        out.lines[key] = knode.start_mark.line + 1
    return out


_LineLoader.add_constructor(yaml.resolver.BaseResolver.DEFAULT_MAPPING_TAG,
                            _construct_mapping)


def _line(mapping, key=None):
    if isinstance(mapping, _Mapping):
        return mapping.lines.get(key, mapping.line)
    return None


def _plain(x):
    """Strip line bookkeeping so the echoed configuration is plain data."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, list):
        return [_plain(v) for v in x]
    return x


# ---------------------------------------------------------------------------
# Field coercion
# ---------------------------------------------------------------------------

def _reject_unknown(mapping, allowed, where):
    for key in mapping:
        if key not in allowed:
            raise ConfigError(f"unknown key (allowed: {', '.join(sorted(allowed))})",
                              field=f"{where}.{key}" if where else str(key),
                              line=_line(mapping, key))


def _num(value, fieldname, line, kind=float):
    if isinstance(value, bool):
        raise ConfigError("expected a number", fieldname, line)
    try:
        return kind(value)
    except (TypeError, ValueError):
        raise ConfigError(f"expected {kind.__name__}, got {value!r}", fieldname, line)


def _int(value, fieldname, line):
    if isinstance(value, float) and value.is_integer():
        value = int(value)
    if not isinstance(value, int) or isinstance(value, bool):
        raise ConfigError(f"expected an integer, got {value!r}", fieldname, line)
    return value


def _cnum(value, fieldname, line):
    """Complex from a number, a ``[re, im]`` pair or a string like ``0.3+0.1j``."""
    if isinstance(value, list):
        if len(value) != 2:
            raise ConfigError("complex pairs are [re, im]", fieldname, line)
        return complex(_num(value[0], fieldname, line), _num(value[1], fieldname, line))
    if isinstance(value, str):
        try:
            return complex(value.replace(" ", ""))
        except ValueError:
            raise ConfigError(f"cannot read {value!r} as complex", fieldname, line)
    return _num(value, fieldname, line, complex)


def _list(value, fieldname, line):
    if not isinstance(value, list):
        raise ConfigError("expected a list", fieldname, line)
    return value


def _spec(mapping, cls, allowed, where):
    if mapping is None:
        return cls()
    if not isinstance(mapping, dict):
        raise ConfigError("expected a mapping", where, None)
    _reject_unknown(mapping, allowed, where)
    kw = {}
    for key, value in mapping.items():
        default = getattr(cls(), key)
        conv = int if isinstance(default, int) else float
        kw[key] = _num(value, f"{where}.{key}", _line(mapping, key), conv)
    return cls(**kw)


# ---------------------------------------------------------------------------
# Campaign
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SampledEntry:
    kind: IdentityKind
    samples: int | None = None
    tol: float | None = None
    options: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ExplicitEntry:
    case: IdentityCase
    tol_given: bool = False


@dataclass(frozen=True)
class LimitEntry:
    experiment: LimitExperiment
    expect_converge: bool = True


@dataclass(frozen=True)
class Campaign:
    """Parsed configuration of a verification campaign."""

    entries: tuple
    seed: int = 0
    samples: int = 1
    tol: float = DEFAULT_TOL
    tol_explicit: bool = False
    workers: int = 1
    quad: QuadratureSpec = field(default_factory=QuadratureSpec)
    sums: SumSpec | None = None
    output: str | None = None
    csv: str | None = None
    config: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.samples < 1:
            raise ConfigError("samples must be at least 1", field="samples")
        if self.workers < 1:
            raise ConfigError("workers must be at least 1", field="workers")


def _default_tol():
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return DEFAULT_TOL, False
    try:
        tol = float(raw)
    except ValueError:
        raise ConfigError(f"{TOL_ENV}={raw!r} is not a number")
    if tol <= 0:
        raise ConfigError(f"{TOL_ENV} must be positive")
    return tol, True


def _parse_explicit(entry, where, quad, sums):
    kw = {"kind": IdentityKind(entry["kind"])}
    ln = lambda k: _line(entry, k)  # noqa: E731
    if "tol" in entry:
        kw["tol"] = _num(entry["tol"], f"{where}.tol", ln("tol"))
    if "g" in entry:
        kw["g"] = tuple(_cnum(x, f"{where}.g", ln("g"))
                        for x in _list(entry["g"], f"{where}.g", ln("g")))
    if "n" in entry:
        kw["n"] = tuple(_int(x, f"{where}.n", ln("n"))
                        for x in _list(entry["n"], f"{where}.n", ln("n")))
    if "moduli" in entry:
        mod = _list(entry["moduli"], f"{where}.moduli", ln("moduli"))
        if len(mod) != 2:
            raise ConfigError("moduli are a pair", f"{where}.moduli", ln("moduli"))
        kw["moduli"] = Moduli(*(_cnum(x, f"{where}.moduli", ln("moduli")) for x in mod))
    if "q" in entry:
        kw["q"] = _num(entry["q"], f"{where}.q", ln("q"))
    if "r" in entry:
        kw["r"] = _int(entry["r"], f"{where}.r", ln("r"))
    if "omega1" in entry:
        kw["omega1"] = _num(entry["omega1"], f"{where}.omega1", ln("omega1"))
    if "halfwidth" in entry:
        kw["halfwidth"] = _int(entry["halfwidth"], f"{where}.halfwidth", ln("halfwidth"))
    if "triple" in entry:
        t = [_num(x, f"{where}.triple", ln("triple"))
             for x in _list(entry["triple"], f"{where}.triple", ln("triple"))]
        if len(t) not in (3, 4):
            raise ConfigError("triple is [alpha, beta, gamma] or with eta",
                              f"{where}.triple", ln("triple"))
        kw["triple"] = SpectralTriple(*t)
    if "spins" in entry:
        spins = []
        for s in _list(entry["spins"], f"{where}.spins", ln("spins")):
            s = s if isinstance(s, list) else [s]
            sigma = _num(s[0], f"{where}.spins", ln("spins"))
            m = _int(s[1], f"{where}.spins", ln("spins")) if len(s) > 1 else 0
            spins.append(Spin(sigma, m))
        kw["spins"] = tuple(spins)
    kw["quad"] = quad
    if sums is not None:
        kw["sums"] = sums
    elif kw["kind"] in (IdentityKind.COMPLEX_BETA_BILATERAL,
                        IdentityKind.COMPLEX_BETA_HALF_LINE, IdentityKind.STR_B,
                        IdentityKind.HALF_LINE_EQUIVALENCE):
        kw["sums"] = sample_case(kw["kind"], 0).sums
    try:
        case = IdentityCase(**kw)
        check_balancing(case)
    except StartriError as exc:
        key = "g" if "g" in entry else "triple" if "triple" in entry else "kind"
        raise ConfigError(str(exc), f"{where}.{key}", ln(key)) from None
    return ExplicitEntry(case, "tol" in entry)


def _parse_limit(entry, where):
    _reject_unknown(entry, _LIMIT_KEYS, where)
    try:
        kind = LimitKind(entry["limit"])
    except ValueError:
        raise ConfigError(f"unknown limit {entry['limit']!r} (choose from "
                          f"{', '.join(k.value for k in LimitKind)})",
                          f"{where}.limit", _line(entry, "limit"))
    base = entry.get("base_point") or {}
    if not isinstance(base, dict):
        raise ConfigError("expected a mapping", f"{where}.base_point",
                          _line(entry, "base_point"))
    point = {}
    for key, value in base.items():
        fname, ln = f"{where}.base_point.{key}", _line(base, key)
        if key == "moduli":
            point[key] = tuple(_cnum(x, fname, ln) for x in _list(value, fname, ln))
        elif isinstance(value, (list, str)):
            point[key] = _cnum(value, fname, ln)
        else:
            point[key] = value
    expect = entry.get("expect", "converge")
    if expect not in ("converge", "diverge"):
        raise ConfigError("expect is 'converge' or 'diverge'", f"{where}.expect",
                          _line(entry, "expect"))
    try:
        exp = default_experiment(kind, **point)
        if "ladder" in entry:
            ladder = [_num(x, f"{where}.ladder", _line(entry, "ladder"))
                      for x in _list(entry["ladder"], f"{where}.ladder",
                                     _line(entry, "ladder"))]
            exp = LimitExperiment(kind, tuple(ladder), exp.base_point)
    except StartriError as exc:
        raise ConfigError(str(exc), f"{where}.ladder", _line(entry, "ladder")) from None
    return LimitEntry(exp, expect == "converge")


def _parse_entry(entry, index, quad, sums):
    where = f"cases[{index}]"
    if not isinstance(entry, dict):
        raise ConfigError("each case is a mapping", where, None)
    if "limit" in entry:
        return _parse_limit(entry, where)
    if "kind" not in entry:
        raise ConfigError("a case needs 'kind' or 'limit'", where, _line(entry))
    try:
        kind = IdentityKind(entry["kind"])
    except ValueError:
        raise ConfigError(f"unknown kind {entry['kind']!r}; run 'startri list'",
                          f"{where}.kind", _line(entry, "kind"))
    explicit = bool(set(entry) & (_EXPLICIT_KEYS - {"kind", "tol"}))
    if explicit:
        _reject_unknown(entry, _EXPLICIT_KEYS, where)
        return _parse_explicit(entry, where, quad, sums)
    _reject_unknown(entry, _SAMPLED_KEYS, where)
    samples = None
    if "samples" in entry:
        samples = _int(entry["samples"], f"{where}.samples", _line(entry, "samples"))
        if samples < 1:
            raise ConfigError("samples must be at least 1", f"{where}.samples",
                              _line(entry, "samples"))
    tol = None
    if "tol" in entry:
        tol = _num(entry["tol"], f"{where}.tol", _line(entry, "tol"))
    options = entry.get("options") or {}
    if not isinstance(options, dict):
        raise ConfigError("expected a mapping", f"{where}.options",
                          _line(entry, "options"))
    return SampledEntry(kind, samples, tol, dict(options))


def load_config(path, *, seed=None, samples=None, out=None, workers=None) -> Campaign:
    """Parse and validate a campaign file.

    Keyword arguments override the corresponding file entries. Raises
    :class:`ConfigError` with the line and field of the first problem.
    """
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}")
    try:
        data = yaml.load(text, Loader=_LineLoader)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark
        raise ConfigError(f"YAML syntax error: {exc.problem}",
                          line=mark.line + 1 if mark else None)
    if data is None:
        data = _Mapping()
    if not isinstance(data, dict):
        raise ConfigError("top level must be a mapping", line=1)
    _reject_unknown(data, _TOP_KEYS, "")

    tol, tol_explicit = _default_tol()
    if "tol" in data:
        tol = _num(data["tol"], "tol", _line(data, "tol"))
        tol_explicit = True
    if tol <= 0:
        raise ConfigError("tolerance must be positive", "tol", _line(data, "tol"))
    quad = _spec(data.get("quadrature"), QuadratureSpec, _QUAD_KEYS, "quadrature")
    sums = None
    if data.get("sums") is not None:
        sums = _spec(data["sums"], SumSpec, _SUM_KEYS, "sums")
    cases = data.get("cases") or []
    cases = _list(cases, "cases", _line(data, "cases"))
    entries = tuple(_parse_entry(e, i, quad, sums) for i, e in enumerate(cases))

    def pick(cli, key, conv):
        if cli is not None:
            return cli
        if key in data:
            return conv(data[key], key, _line(data, key))
        return None

    seed = pick(seed, "seed", _int)
    n = pick(samples, "samples", _int)
    w = pick(workers, "workers", _int)
    for key, value in (("samples", n), ("workers", w)):
        if value is not None and value < 1:
            raise ConfigError(f"{key} must be at least 1", key, _line(data, key))
    output = out if out is not None else data.get("output")
    return Campaign(entries, seed=0 if seed is None else seed,
                    samples=1 if n is None else n, tol=tol,
                    tol_explicit=tol_explicit, workers=1 if w is None else w,
                    quad=quad, sums=sums, output=output, csv=data.get("csv"),
                    config=_plain(data))


# ---------------------------------------------------------------------------
# Running
# ---------------------------------------------------------------------------

def _entry_seed(seed, index):
    return int(np.random.SeedSequence([seed, index]).generate_state(1)[0])


def _tasks(campaign: Campaign):
    """Flatten the entries into ``(entry_index, payload)`` tasks."""
    tasks = []
    for i, entry in enumerate(campaign.entries):
        if isinstance(entry, LimitEntry):
            tasks.append((i, entry))
        elif isinstance(entry, ExplicitEntry):
            case = entry.case
            if campaign.tol_explicit and not entry.tol_given:
                case = IdentityCase.from_dict({**case.to_dict(), "tol": campaign.tol},
                                              case.quad, case.sums)
            tasks.append((i, case))
        else:
            count = entry.samples or campaign.samples
            tol = entry.tol if entry.tol is not None else (
                campaign.tol if campaign.tol_explicit else None)
            for s in case_seeds(_entry_seed(campaign.seed, i), entry.kind, count):
                tasks.append((i, sample_case(entry.kind, s, tol=tol, quad=campaign.quad,
                                             sums=campaign.sums, **entry.options)))
    return tasks


def _canonical(x):
    """JSON round trip, so records compare equal after reading back."""
    return json.loads(json.dumps(x))


def _run_task(payload):
    t0 = time.perf_counter()
    if isinstance(payload, LimitEntry):
        exp = payload.experiment
        descriptor = {"limit": exp.kind.value, "ladder": list(exp.ladder),
                      "base_point": _point_dict(exp.base_point),
                      "expect": "converge" if payload.expect_converge else "diverge"}
        try:
            table = run_experiment(exp)
            ok = table.converged == payload.expect_converge
            rec = {"type": "limit", "case": descriptor, "result": table.to_dict(),
                   "status": "pass" if ok else "fail"}
        except Exception as exc:  # recorded, never aborts the campaign
            rec = {"type": "limit", "case": descriptor, "result": None,
                   "status": "error", "error": f"{type(exc).__name__}: {exc}"}
    else:
        try:
            report = verify(payload)
            rec = {"type": "identity", "case": payload.to_dict(),
                   "result": report.to_dict(),
                   "status": "pass" if report.passed else "fail"}
        except Exception as exc:
            rec = {"type": "identity", "case": payload.to_dict(), "result": None,
                   "status": "error", "error": f"{type(exc).__name__}: {exc}"}
    return _canonical(rec), time.perf_counter() - t0


def _point_dict(point):
    out = {}
    for k, v in point.items():
        if isinstance(v, (tuple, list)):
            out[k] = [[float(np.real(x)), float(np.imag(x))] if isinstance(x, complex)
                      else x for x in v]
        elif isinstance(v, complex):
            out[k] = [v.real, v.imag]
        else:
            out[k] = v
    return out


@dataclass
class CampaignResult:
    """Records of one campaign.

    Every field except ``timing`` is reproduced bit for bit by re-running the
    same configuration and seed.
    """

    records: list
    seed: int
    samples: int
    version: str
    config: dict
    timing: dict = field(default_factory=dict, compare=False)

    @property
    def counts(self) -> dict:
        out = {"total": len(self.records), "pass": 0, "fail": 0, "error": 0}
        for rec in self.records:
            out[rec["status"]] += 1
        return out

    @property
    def all_passed(self) -> bool:
        return all(rec["status"] == "pass" for rec in self.records)

    def to_dict(self) -> dict:
        return {"tool": "startri", "version": self.version, "seed": self.seed,
                "samples_per_case": self.samples, "config": self.config,
                "summary": self.counts, "cases": self.records,
                "timing": self.timing}

    @classmethod
    def from_dict(cls, d: dict) -> "CampaignResult":
        result = cls(d["cases"], d["seed"], d["samples_per_case"], d["version"],
                     d["config"], d.get("timing", {}))
        if d.get("summary") not in (None, result.counts):
            raise StartriError("report summary does not match its cases")
        return result


def run(campaign: Campaign) -> CampaignResult:
    """Evaluate every case; results are ordered by case index."""
    tasks = _tasks(campaign)
    payloads = [p for _, p in tasks]
    t0 = time.perf_counter()
    if campaign.workers > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=campaign.workers) as pool:
            outcomes = list(pool.map(_run_task, payloads))
    else:
        outcomes = [_run_task(p) for p in payloads]
    records = []
    for k, ((entry, _), (rec, _)) in enumerate(zip(tasks, outcomes)):
        records.append({"id": f"c{k:04d}", "index": k, "entry": entry, **rec})
    timing = {"total_s": time.perf_counter() - t0,
              "per_case_s": [t for _, t in outcomes], "workers": campaign.workers}
    return CampaignResult(records, campaign.seed, campaign.samples, __version__,
                          campaign.config, timing)


def write_result(result: CampaignResult, path) -> None:
    """Write the report as JSON via a temporary file and an atomic rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(result.to_dict(), fh, indent=2)
            fh.write("\n")
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_result(path) -> CampaignResult:
    with open(path) as fh:
        return CampaignResult.from_dict(json.load(fh))


def write_csv(result: CampaignResult, path) -> None:
    """Table of ``(case, kind, ratio, gap, verdict)``.

    Limit experiments report their final deviation as the gap.
    """
    rows = []
    for rec in result.records:
        res = rec["result"] or {}
        if rec["type"] == "identity":
            kind = rec["case"]["kind"]
            ratio = res.get("ratio")
            ratio = "" if ratio is None else repr(complex(*ratio))
            gap = res.get("abs_gap", "")
        else:
            kind = rec["case"]["limit"]
            ratio, gap = "", res.get("final", "")
        rows.append([rec["id"], kind, ratio, gap, rec["status"]])
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent if str(path.parent) else ".",
                               suffix=".tmp")
    with os.fdopen(fd, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["case", "kind", "ratio", "gap", "verdict"])
        w.writerows(rows)
    os.replace(tmp, path)


def run_campaign(config_file, *, seed=None, samples=None, out=None, csv_path=None,
                 workers=None) -> CampaignResult:
    """Load, run and persist a campaign. Returns the result."""
    campaign = load_config(config_file, seed=seed, samples=samples, out=out,
                           workers=workers)
    result = run(campaign)
    output = campaign.output or f"{Path(config_file).stem}.report.json"
    write_result(result, output)
    csv_out = csv_path or campaign.csv
    if csv_out:
        write_csv(result, csv_out)
    return result


# ---------------------------------------------------------------------------
# list / explain
# ---------------------------------------------------------------------------

def list_identities() -> list[str]:
    """One line per identity kind in declaration order."""
    lines = []
    for kind in IdentityKind:
        info = KIND_INFO[kind]
        lines.append(f"{kind.value:24s} {info.tag}\n"
                     f"{'':24s}   balancing: {info.balancing}\n"
                     f"{'':24s}   constraints: {info.constraints}")
    return lines


def _fmt(x):
    if isinstance(x, list) and len(x) == 2 and all(isinstance(v, (int, float)) for v in x):
        return f"{x[0]:.16g}{x[1]:+.16g}j"
    return str(x)


def explain_case(report_path, case_id) -> str:
    """Readable breakdown of case ``case_id`` (index or ``cNNNN``)."""
    result = read_result(report_path)
    rec = None
    for r in result.records:
        if str(case_id) in (r["id"], str(r["index"])):
            rec = r
            break
    if rec is None:
        raise KeyError(f"no case {case_id!r} in {report_path}")
    out = [f"case {rec['id']} (entry {rec['entry']}, {rec['type']}): {rec['status']}"]
    res = rec["result"]
    if rec["status"] == "error":
        out.append(f"  error: {rec['error']}")
    elif rec["type"] == "identity":
        for key in ("lhs", "rhs", "ratio"):
            out.append(f"  {key:8s} {_fmt(res[key])}")
        out.append(f"  abs_gap  {res['abs_gap']:.3e}  (est. error {res['est_err']:.3e}, "
                   f"tol {res['tol']:g})")
    else:
        out.append(f"  threshold {res['threshold']:g}, final {res['final']:.3e}, "
                   f"monotone {res['monotone']}, converged {res['converged']}")
        for x, d in zip(res["ladder"], res["deviations"]):
            out.append(f"    {x:<12g} {d:.3e}")
    out.append("  parameters:")
    for key, value in rec["case"].items():
        if isinstance(value, list) and value and isinstance(value[0], list):
            value = ", ".join(_fmt(v) for v in value)
        out.append(f"    {key}: {value}")
    if res and res.get("diagnostics"):
        out.append("  diagnostics:")
        for key, value in res["diagnostics"].items():
            out.append(f"    {key}: {_fmt(value)}")
    if res and res.get("extra"):
        out.append("  extra:")
        for key, value in res["extra"].items():
            out.append(f"    {key}: {value}")
    return "\n".join(out)


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def _parser():
    p = argparse.ArgumentParser(prog="startri", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"startri {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run a verification campaign")
    v.add_argument("--config", required=True, help="YAML campaign file")
    v.add_argument("--seed", type=int, help="campaign seed (overrides the file)")
    v.add_argument("--samples", type=int, help="samples per sampled case")
    v.add_argument("--out", help="JSON report path")
    v.add_argument("--csv", help="optional CSV summary path")
    v.add_argument("--workers", type=int, help="worker processes")
    sub.add_parser("list", help="list identity kinds")
    e = sub.add_parser("explain", help="show one case of a report")
    e.add_argument("report")
    e.add_argument("case", help="case index or id such as c0003")
    return p


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    if args.command == "list":
        print("\n".join(list_identities()))
        return EXIT_OK
    if args.command == "explain":
        try:
            print(explain_case(args.report, args.case))
        except (OSError, KeyError, ValueError, StartriError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        return EXIT_OK
    try:
        result = run_campaign(args.config, seed=args.seed, samples=args.samples,
                              out=args.out, csv_path=args.csv, workers=args.workers)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    c = result.counts
    print(f"{c['total']} cases: {c['pass']} pass, {c['fail']} fail, {c['error']} error")
    for rec in result.records:
        if rec["status"] != "pass":
            print(f"  {rec['id']} {rec['status']}: "
                  f"{rec['case'].get('kind', rec['case'].get('limit'))}")
    return EXIT_OK if result.all_passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
