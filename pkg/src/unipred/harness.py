"""Experiment orchestration, run reports and their serialization.

A run is fully determined by its :class:`ExperimentConfig`.  Reports are
serialized as JSON lines with sorted keys; rationals are written as
``"num/den"`` strings so that every asserted inequality keeps its exact
operands.
"""

from __future__ import annotations

import copy
import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

from . import audits
from .complexity import Unknown
from .core import BINARY, ObjectSpace, Observation, Stream
from .languages import CatalogueLanguage
from .randomness import delta_error_counts
from .semimeasure import default_mixture, shen_gap_report

try:
    from importlib.metadata import PackageNotFoundError, version as _dist_version

    VERSION = _dist_version("artifact")
except (ImportError, PackageNotFoundError):  # pragma: no cover - running from a checkout
    VERSION = "0.0.0+local"

MISTAKE_COLUMNS = ("m", "l", "errors", "bound")

DEFAULT_PARAMS: dict[str, dict] = {
    "audit-mistakes": {"length": 4096, "levels": list(range(9)), "battery": 0},
    "complexity": {"length": 256, "oracle_length": 12},
    "density": {"paths": 20, "length": 512},
    "dominance": {"seeds": 20, "horizon": 1000, "epsilon": "1/5", "required": 18},
    "interleaving": {"max_length": 256, "max_N": 32},
    "kolmogorov-sweep": {"max_n": 4096},
    "partition": {"samples": 2000},
    "sandwich": {"max_N": 64, "max_length": 64, "max_m": 6},
    "semimeasure-audit": {"paths": 1000, "length": 512, "shen_n": 16},
    "tightness": {"K": [3, 4, 5, 6], "N": [1, 2, 3]},
    "validity": {"length": 10000, "epsilons": ["1/20", "1/10", "1/5"]},
}

DEFAULTS: dict[str, Any] = {
    "objects": ["0", "1"],
    "seed": 0,
    "depth": 64,
    "budget": None,
    "stream": {"kind": "iid", "p": 0.5, "length": 4096},
    "experiments": [],
    "params": {},
    "out": None,
    "format": "text",
}


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    objects: list = field(default_factory=lambda: ["0", "1"])
    seed: int = 0
    depth: int = 64
    budget: int | None = None
    stream: dict = field(default_factory=lambda: dict(DEFAULTS["stream"]))
    experiments: list = field(default_factory=list)
    params: dict = field(default_factory=dict)
    out: str | None = None
    format: str = "text"

    def __post_init__(self):
        if not 0 <= int(self.seed) < 2**64:
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.depth < 1:
            raise ConfigError("depth must be at least 1")
        if self.budget is not None and self.budget < 0:
            raise ConfigError("budget must be non-negative")
        if self.format not in ("text", "csv"):
            raise ConfigError(f"unknown format {self.format!r}")
        unknown = [e for e in self.experiments if e not in EXPERIMENTS]
        if unknown:
            raise ConfigError(f"unknown experiments {unknown}; choose from {sorted(EXPERIMENTS)}")

    @property
    def space(self) -> ObjectSpace:
        return ObjectSpace(tuple(self.objects))

    def param(self, experiment: str, key: str):
        return self.params.get(experiment, {}).get(key, DEFAULT_PARAMS[experiment][key])

    def as_dict(self) -> dict:
        return {
            "objects": list(self.objects), "seed": self.seed, "depth": self.depth, "budget": self.budget,
            "stream": dict(self.stream), "experiments": list(self.experiments), "params": copy.deepcopy(self.params),
            "out": self.out, "format": self.format,
        }


def load_config_file(path: str | Path) -> dict:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be an object")
    unknown = set(data) - set(DEFAULTS)
    if unknown:
        raise ConfigError(f"{path}: unknown keys {sorted(unknown)}")
    return data


def make_config(flags: dict | None = None, file_values: dict | None = None) -> ExperimentConfig:
    """Defaults, then flags, then the config file (the file wins)."""
    merged = copy.deepcopy(DEFAULTS)
    for layer in (flags or {}, file_values or {}):
        for key, value in layer.items():
            if value is None:
                continue
            if key in ("stream", "params") and isinstance(value, dict):
                merged[key] = {**merged[key], **value}
            else:
                merged[key] = value
    return ExperimentConfig(**merged)


# ---------------------------------------------------------------------------
# streams


def generate_stream(description: dict, space: ObjectSpace = BINARY, seed: int = 0) -> Stream:
    """Stream from a description ``{"kind": ..., ...}``.

    Kinds: ``iid`` (``p``, ``seed``), ``constant`` (``x``, ``y``), ``periodic``
    (``pattern`` as ``[[x, y], ...]``, or ``period`` for label 1 once per
    period), ``shen`` (``n``), ``adversarial-divisibility`` (``k``), ``file``
    (``path``).  An ``iid`` description without a seed uses one derived from ``seed``.
    """
    kind = description.get("kind")
    if kind == "iid":
        s = description.get("seed")
        p = description.get("p", 0.5)
        return Stream.iid(space, audits.derive_seed(seed, 1) if s is None else int(s), tuple(p) if isinstance(p, list) else p)
    if kind == "constant":
        return Stream.constant(space, description.get("x", 0), description.get("y", 0))
    if kind == "periodic":
        if "pattern" in description:
            return Stream.periodic(space, [tuple(p) for p in description["pattern"]])
        period = int(description.get("period", 2))
        if period < 1:
            raise ConfigError("period must be positive")
        return Stream.periodic(space, [(0, 0)] * (period - 1) + [(0, 1)])
    if kind == "shen":
        return Stream.shen(space, int(description.get("n", 2)))
    if kind == "adversarial-divisibility":
        return Stream.adversarial_divisibility(space, int(description.get("k", 1)))
    if kind == "file":
        return Stream.from_file(space, description["path"])
    raise ConfigError(f"unknown stream kind {kind!r}")


# ---------------------------------------------------------------------------
# experiments


def _fractions(values) -> list[Fraction]:
    return [Fraction(v) for v in values]


def exp_complexity(cfg: ExperimentConfig) -> audits.Audit:
    space = cfg.space
    stream = generate_stream(cfg.stream, space, cfg.seed)
    length = cfg.param("complexity", "length")
    language = CatalogueLanguage(space)
    audit = audits.complexity_sweep(stream, length, language, cfg.depth, cfg.param("complexity", "oracle_length"))
    if cfg.budget is not None:
        from .complexity import PLAIN, time_complexity

        for row in audit.records:
            row["C_budget"] = time_complexity(stream.prefix(row["l"]), language, PLAIN, cfg.depth, cfg.budget)
    audit.constants["stream"] = stream.name
    return audit


def exp_audit_mistakes(cfg: ExperimentConfig) -> audits.Audit:
    space = cfg.space
    length = cfg.params.get("audit-mistakes", {}).get("length", cfg.stream.get("length", 4096))
    levels = list(cfg.param("audit-mistakes", "levels"))
    battery = cfg.param("audit-mistakes", "battery")
    if battery:
        audit = audits.audit_mistakes(audits.mistake_battery(space, cfg.seed, battery, length), length, levels)
        audit.name = "audit-mistakes"
        return audit
    stream = generate_stream(cfg.stream, space, cfg.seed)
    counts = delta_error_counts(stream, length, CatalogueLanguage(space), levels, cfg.depth)
    audit = audits.Audit("audit-mistakes", constants={"stream": stream.name})
    audit.records = audits.mistake_rows(counts, audits.checkpoints(length))
    for m, series in counts.items():
        for l, e in enumerate(series, 1):
            audit.checks += 1
            if not e * 2**m < l:
                audit.violations.append({"m": m, "l": l, "errors": e, "bound": Fraction(l, 2**m)})
    return audit


def exp_dominance(cfg):
    p = lambda k: cfg.param("dominance", k)  # noqa: E731
    return audits.audit_dominance(cfg.space, cfg.seed, p("seeds"), p("horizon"), Fraction(p("epsilon")), p("required"))


def exp_tightness(cfg):
    return audits.audit_tightness(cfg.param("tightness", "K"), cfg.param("tightness", "N"), cfg.space)


def exp_semimeasure(cfg):
    space = cfg.space
    audit = audits.audit_path_sums(space, cfg.seed, cfg.param("semimeasure-audit", "paths"),
                                   cfg.param("semimeasure-audit", "length"))
    audit.name = "semimeasure-audit"
    language = CatalogueLanguage(space)
    audit.records.extend(shen_gap_report(default_mixture(language), language, cfg.param("semimeasure-audit", "shen_n")))
    return audit


def exp_kolmogorov(cfg):
    return audits.kolmogorov_sweep(cfg.param("kolmogorov-sweep", "max_n"))


def exp_interleaving(cfg):
    arithmetic = audits.audit_interleaving_arithmetic()
    containment = audits.audit_containment(cfg.space, cfg.seed, cfg.param("interleaving", "max_length"),
                                           cfg.param("interleaving", "max_N"))
    containment.name = "interleaving"
    containment.checks += arithmetic.checks
    containment.violations = arithmetic.violations + containment.violations
    return containment


def exp_density(cfg):
    audit = audits.audit_density(cfg.space, cfg.seed, cfg.param("density", "paths"), cfg.param("density", "length"))
    bands = audits.measure_band_factor()
    audit.checks += bands.checks
    audit.violations.extend(bands.violations)
    audit.records.extend(bands.records)
    audit.constants.update(band_factor=bands.constants["max_factor"])
    return audit


def exp_partition(cfg):
    return audits.audit_partition(samples=cfg.param("partition", "samples"), seed=audits.derive_seed(cfg.seed, 9))


def exp_sandwich(cfg):
    p = lambda k: cfg.param("sandwich", k)  # noqa: E731
    universal = audits.measure_universal_sandwich(p("max_N"), p("max_length"))
    ctype = audits.measure_complexity_type_sandwich(p("max_m"), p("max_length"))
    audit = audits.Audit("sandwich", universal.checks + ctype.checks, universal.violations + ctype.violations)
    audit.constants = {"universal": universal.constants, "complexity_type": ctype.constants,
                       "c": max(universal.constants["c"], ctype.constants["c"])}
    return audit


def exp_validity(cfg):
    return audits.audit_validity(cfg.space, cfg.seed, cfg.param("validity", "length"),
                                 _fractions(cfg.param("validity", "epsilons")))


EXPERIMENTS: dict[str, Callable[[ExperimentConfig], audits.Audit]] = {
    "audit-mistakes": exp_audit_mistakes,
    "complexity": exp_complexity,
    "density": exp_density,
    "dominance": exp_dominance,
    "interleaving": exp_interleaving,
    "kolmogorov-sweep": exp_kolmogorov,
    "partition": exp_partition,
    "sandwich": exp_sandwich,
    "semimeasure-audit": exp_semimeasure,
    "tightness": exp_tightness,
    "validity": exp_validity,
}


# ---------------------------------------------------------------------------
# reports


@dataclass
class ExperimentResult:
    name: str
    ok: bool
    checks: int
    constants: dict
    rows: list
    violations: list
    error: str | None = None


@dataclass
class RunReport:
    config: dict
    results: list[ExperimentResult]
    version: str = VERSION

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def failed(self) -> list[str]:
        return [r.name for r in self.results if not r.ok]

    def result(self, name: str) -> ExperimentResult:
        return next(r for r in self.results if r.name == name)


def run_experiment(name: str, cfg: ExperimentConfig) -> ExperimentResult:
    try:
        audit = EXPERIMENTS[name](cfg)
    except Exception as exc:  # captured per experiment; the run continues
        return ExperimentResult(name, False, 0, {}, [], [], f"{type(exc).__name__}: {exc}")
    return ExperimentResult(name, audit.ok, audit.checks, audit.constants, audit.records, audit.violations)


def run(cfg: ExperimentConfig) -> RunReport:
    """Run the selected experiments, ordered by name."""
    results = [run_experiment(name, cfg) for name in sorted(set(cfg.experiments))]
    return RunReport(cfg.as_dict(), results)


def to_jsonable(value):
    if isinstance(value, bool) or value is None or isinstance(value, (str, int, float)):
        return value
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, Unknown):
        return f">{value.depth}"
    if isinstance(value, Observation):
        return [value.x, value.y]
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (set, frozenset)):
        return sorted((to_jsonable(v) for v in value), key=json.dumps)
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return str(value)


def _dumps(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def report_records(report: RunReport) -> list[dict]:
    out = [{"kind": "header", "version": report.version, "config": report.config}]
    for r in report.results:
        out.append({"kind": "experiment", "name": r.name, "ok": r.ok, "checks": r.checks,
                    "constants": r.constants, "error": r.error})
        out.extend({"kind": "row", "experiment": r.name, **row} for row in r.rows)
        out.extend({"kind": "violation", "experiment": r.name, **v} for v in r.violations)
    out.append({"kind": "summary", "ok": report.ok, "failed": report.failed})
    return [to_jsonable(rec) for rec in out]


def serialize_records(records: list[dict]) -> str:
    return "".join(_dumps(rec) + "\n" for rec in records)


def serialize_report(report: RunReport) -> str:
    return serialize_records(report_records(report))


def parse_report(text: str) -> list[dict]:
    """Parse structured text back into records (``serialize_records`` inverts it)."""
    records = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            records.append(json.loads(line))
        except json.JSONDecodeError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return records


def parse_fraction(text: str) -> Fraction:
    num, _, den = text.partition("/")
    return Fraction(int(num), int(den or 1))


def result_csv(result: ExperimentResult) -> str:
    """CSV of an experiment's rows; the mistake audit uses ``m,l,errors,bound``."""
    rows = [to_jsonable(r) for r in result.rows]
    if result.name == "audit-mistakes" and all(set(r) == set(MISTAKE_COLUMNS) for r in rows):
        columns = list(MISTAKE_COLUMNS)
    else:
        columns = []
        for r in rows:
            columns.extend(k for k in r if k not in columns)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow(["" if r.get(c) is None else _cell(r.get(c)) for c in columns])
    return buf.getvalue()


def _cell(value):
    return json.dumps(value, sort_keys=True, separators=(",", ":")) if isinstance(value, (dict, list, bool)) else value


def export_report(report: RunReport, out_dir: str | Path, fmt: str = "text") -> list[Path]:
    """Write ``report.jsonl`` (text) or one ``<experiment>.csv`` per experiment."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        written = []
        if fmt == "text":
            path = out / "report.jsonl"
            path.write_text(serialize_report(report))
            written.append(path)
        elif fmt == "csv":
            for r in report.results:
                path = out / f"{r.name}.csv"
                path.write_text(result_csv(r))
                written.append(path)
        else:
            raise ValueError(f"unknown format {fmt!r}")
    except OSError as exc:
        raise OSError(f"cannot write report to {out}: {exc}") from exc
    return written
