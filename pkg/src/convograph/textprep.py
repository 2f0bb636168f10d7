"""Tokenization, stopword filtering, and rule-table stemming.

The pipeline order is fixed: tokenize, then filter stopwords, then stem.
Stemming is a small rule table for Indonesian-style affixes, applied one
affix class at a time (inflectional suffixes, derivational suffixes,
derivational prefixes). It aims for consistent token collapsing, not
linguistic perfection.
"""

import hashlib
import json
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import ValidationError
from .ingest import MENTION_RE

_URL_RE = re.compile(r"(?:https?://|www\.)\S+", re.IGNORECASE)
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

_MIN_STEM_LEN = 3


@dataclass(frozen=True)
class StemRule:
    """One affix rule: '-lah' strips a suffix, 'ber-' strips a prefix.

    A non-empty replacement substitutes for the affix; a replacement equal
    to the affix acts as a protection rule, consuming its class without
    changing the token.
    """

    affix_class: str
    pattern: str
    replacement: str = ""

    def __post_init__(self):
        p = self.pattern
        if p.startswith("-") == p.endswith("-") or len(p) < 2:
            raise ValidationError(f"rule pattern {p!r} must be '-suffix' or 'prefix-'")
        if len(self.replacement) > len(self.affix):
            raise ValidationError(
                f"replacement {self.replacement!r} longer than affix {self.affix!r}"
            )

    @property
    def is_suffix(self) -> bool:
        return self.pattern.startswith("-")

    @property
    def affix(self) -> str:
        return self.pattern.strip("-")


@dataclass(frozen=True)
class TokenPipelineConfig:
    """Everything the text pipeline needs, hashable for model digests."""

    stopwords: frozenset[str]
    rules: tuple[StemRule, ...]
    strip_mentions: bool = True
    strip_urls: bool = True
    min_token_len: int = 2

    def digest(self) -> str:
        """Stable hash of the full pipeline configuration."""
        payload = {
            "stopwords": sorted(self.stopwords),
            "rules": [[r.affix_class, r.pattern, r.replacement] for r in self.rules],
            "strip_mentions": self.strip_mentions,
            "strip_urls": self.strip_urls,
            "min_token_len": self.min_token_len,
        }
        blob = json.dumps(payload, sort_keys=True, ensure_ascii=False)
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def load_stopwords(path) -> frozenset[str]:
    """One word per line; blank lines and '#' comments are ignored."""
    words = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        word = line.strip().lower()
        if word and not word.startswith("#"):
            words.add(word)
    return frozenset(words)


def load_stem_rules(path) -> tuple[StemRule, ...]:
    """Ordered tab-separated rules: class, pattern, optional replacement."""
    rules = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.rstrip("\n").split("\t")
        if len(parts) not in (2, 3):
            raise ValidationError(f"line {lineno}: expected class<TAB>pattern[<TAB>replacement]")
        replacement = parts[2] if len(parts) == 3 else ""
        rules.append(StemRule(parts[0].strip(), parts[1].strip(), replacement.strip()))
    if not rules:
        raise ValidationError(f"no stemmer rules found in {path}")
    return tuple(rules)


def _data_path(name: str) -> Path:
    return Path(str(resources.files("convograph").joinpath("data", name)))


def load_pipeline_config(
    stopwords_path=None,
    rules_path=None,
    strip_mentions: bool = True,
    strip_urls: bool = True,
    min_token_len: int = 2,
) -> TokenPipelineConfig:
    """Build a pipeline config, falling back to the packaged defaults."""
    return TokenPipelineConfig(
        stopwords=load_stopwords(stopwords_path or _data_path("stopwords_id.txt")),
        rules=load_stem_rules(rules_path or _data_path("stem_rules.tsv")),
        strip_mentions=strip_mentions,
        strip_urls=strip_urls,
        min_token_len=min_token_len,
    )


def tokenize(text: str, cfg: TokenPipelineConfig) -> list[str]:
    """Lowercased alphanumeric tokens, short tokens dropped.

    URLs and mention tokens are removed before splitting when the config
    says so; the mention pattern matches the same grammar used for edge
    extraction, so an overlong '@...' run survives as an ordinary token.
    """
    if cfg.strip_urls:
        text = _URL_RE.sub(" ", text)
    if cfg.strip_mentions:
        text = MENTION_RE.sub(" ", text)
    return [t for t in _TOKEN_RE.findall(text.lower()) if len(t) >= cfg.min_token_len]


def filter_stopwords(tokens: list[str], cfg: TokenPipelineConfig) -> list[str]:
    return [t for t in tokens if t not in cfg.stopwords]


def _stem_pass(token: str, rules: tuple[StemRule, ...]) -> str:
    # One pass: at most one rule fires per affix class, scanning the table
    # in order. A strip that would leave fewer than 3 characters is
    # rejected and the scan continues.
    applied = set()
    for rule in rules:
        if rule.affix_class in applied:
            continue
        affix = rule.affix
        if rule.is_suffix:
            if not token.endswith(affix):
                continue
            candidate = token[: len(token) - len(affix)] + rule.replacement
        else:
            if not token.startswith(affix):
                continue
            candidate = rule.replacement + token[len(affix):]
        if len(candidate) < _MIN_STEM_LEN:
            continue
        token = candidate
        applied.add(rule.affix_class)
    return token


def stem(token: str, cfg: TokenPipelineConfig) -> str:
    """Strip affixes per the rule table until the token stops changing.

    Iterating the per-class pass to a fixed point makes stemming
    idempotent even for stacked affixes; termination is guaranteed
    because no rule may lengthen a token.
    """
    while True:
        out = _stem_pass(token, cfg.rules)
        if out == token:
            return out
        token = out


def preprocess(text: str, cfg: TokenPipelineConfig) -> list[str]:
    """tokenize -> filter_stopwords -> stem."""
    return [stem(t, cfg) for t in filter_stopwords(tokenize(text, cfg), cfg)]
