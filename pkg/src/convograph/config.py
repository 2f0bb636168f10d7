"""Run configuration loaded from an INI-style file.

Sections: [run] for scalar options, [edges] for the edge policy,
[pipeline] for text preprocessing, and one [brand:NAME] section per data
source with a records path and an optional labeled path. Relative paths
resolve against CONVOGRAPH_DATA_DIR when that variable is set, otherwise
against the directory holding the config file.
"""

import configparser
import os
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ValidationError
from .graph import EdgePolicy
from .textprep import TokenPipelineConfig, load_pipeline_config

DATA_DIR_ENV = "CONVOGRAPH_DATA_DIR"


@dataclass(frozen=True)
class BrandConfig:
    name: str
    records: Path
    labeled: Path | None = None


@dataclass
class RunConfig:
    brands: list[BrandConfig] = field(default_factory=list)
    edge_policy: EdgePolicy = field(default_factory=EdgePolicy)
    pipeline: TokenPipelineConfig | None = None
    seed: int = 0
    train_fraction: float = 0.8
    alpha: float = 1.0
    exact_metrics_node_limit: int = 50_000
    output_format: str = "table"

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise ValidationError(f"train_fraction must be in (0, 1), got {self.train_fraction}")
        if self.pipeline is None:
            self.pipeline = load_pipeline_config()

    def brand(self, name: str) -> BrandConfig:
        for b in self.brands:
            if b.name == name:
                return b
        known = ", ".join(b.name for b in self.brands) or "(none)"
        raise ValidationError(f"unknown brand {name!r}; configured brands: {known}")


def _resolve(base: Path, raw: str) -> Path:
    path = Path(raw)
    if not path.is_absolute():
        path = base / path
    if not path.exists():
        raise ValidationError(f"configured path does not exist: {path}")
    return path


def load_run_config(path) -> RunConfig:
    """Parse and validate a config file; all referenced paths must exist."""
    path = Path(path)
    if not path.exists():
        raise ValidationError(f"config file does not exist: {path}")
    parser = configparser.ConfigParser()
    try:
        parser.read(path, encoding="utf-8")
    except configparser.Error as exc:
        raise ValidationError(f"cannot parse config {path}: {exc}") from exc

    env_base = os.environ.get(DATA_DIR_ENV)
    base = Path(env_base) if env_base else path.parent

    try:
        run = parser["run"] if parser.has_section("run") else {}
        seed = int(run.get("seed", 0))
        train_fraction = float(run.get("train_fraction", 0.8))
        alpha = float(run.get("alpha", 1.0))
        node_limit = int(run.get("exact_metrics_node_limit", 50_000))
        output_format = run.get("format", "table")
    except ValueError as exc:
        raise ValidationError(f"bad [run] value in {path}: {exc}") from exc
    if output_format not in ("table", "json", "csv"):
        raise ValidationError(f"format must be table, json, or csv, got {output_format!r}")

    def get_bool(section, key, default):
        if not parser.has_section(section) or key not in parser[section]:
            return default
        try:
            return parser[section].getboolean(key)
        except ValueError as exc:
            raise ValidationError(f"bad boolean for [{section}] {key} in {path}") from exc

    policy = EdgePolicy(
        use_mentions=get_bool("edges", "use_mentions", True),
        use_replies=get_bool("edges", "use_replies", True),
    )

    pipe_section = parser["pipeline"] if parser.has_section("pipeline") else {}
    stopwords_path = pipe_section.get("stopwords")
    rules_path = pipe_section.get("stemmer_rules")
    try:
        min_token_len = int(pipe_section.get("min_token_len", 2))
    except ValueError as exc:
        raise ValidationError(f"bad min_token_len in {path}") from exc
    pipeline = load_pipeline_config(
        stopwords_path=_resolve(base, stopwords_path) if stopwords_path else None,
        rules_path=_resolve(base, rules_path) if rules_path else None,
        strip_mentions=get_bool("pipeline", "strip_mentions", True),
        strip_urls=get_bool("pipeline", "strip_urls", True),
        min_token_len=min_token_len,
    )

    brands = []
    for section in parser.sections():
        if not section.startswith("brand:"):
            continue
        name = section.split(":", 1)[1].strip()
        if not name:
            raise ValidationError(f"brand section with empty name in {path}")
        if "records" not in parser[section]:
            raise ValidationError(f"[{section}] needs a records path")
        labeled_raw = parser[section].get("labeled")
        brands.append(
            BrandConfig(
                name=name,
                records=_resolve(base, parser[section]["records"]),
                labeled=_resolve(base, labeled_raw) if labeled_raw else None,
            )
        )
    if not brands:
        raise ValidationError(f"config {path} defines no [brand:NAME] sections")

    return RunConfig(
        brands=brands,
        edge_policy=policy,
        pipeline=pipeline,
        seed=seed,
        train_fraction=train_fraction,
        alpha=alpha,
        exact_metrics_node_limit=node_limit,
        output_format=output_format,
    )
