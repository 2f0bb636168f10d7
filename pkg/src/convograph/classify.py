"""Multinomial naive Bayes sentiment classifier, trained from counts.

Scores are accumulated in log space: log prior plus, per token, the log
of (count_in_class + alpha) / (class_token_total + alpha * |vocabulary|).
Tokens never seen in training still contribute their smoothing term.
Ties resolve to the alphabetically later label, which makes 'positive'
win over 'negative'.
"""

import json
import math
import random
from dataclasses import dataclass
from pathlib import Path

from .errors import StratificationError, TrainingError, ValidationError
from .ingest import LABELS, LabeledDocument
from .textprep import TokenPipelineConfig, preprocess

MODEL_FORMAT = "convograph-sentiment-model"
MODEL_FORMAT_VERSION = 1

# Three-document worked example used throughout the docs and tests.
# With alpha=1 it gives priors (2/3, 1/3), 4 positive tokens, 2 negative
# tokens, and a 5-word vocabulary, so every score below is checkable by
# hand: predict("mudah") -> posteriors 2/9 vs 1/21, confidence 14/17.
TOY_CORPUS = (
    LabeledDocument("bagus mudah", "positive"),
    LabeledDocument("mudah cepat", "positive"),
    LabeledDocument("gagal error", "negative"),
)


def split(corpus, train_fraction: float, seed: int):
    """Stratified train/test split with a seeded shuffle per class.

    Each class contributes floor(n * train_fraction) training documents;
    a class with fewer than 2 documents cannot be split. Both returned
    lists preserve the original corpus order.
    """
    if not 0.0 < train_fraction < 1.0:
        raise ValidationError(f"train_fraction must be in (0, 1), got {train_fraction}")
    by_class = {label: [] for label in LABELS}
    for i, doc in enumerate(corpus):
        by_class[doc.label].append(i)
    for label in LABELS:
        if len(by_class[label]) < 2:
            raise StratificationError(
                f"need at least 2 {label!r} documents to stratify, found {len(by_class[label])}"
            )
    rng = random.Random(seed)
    train_idx = set()
    for label in LABELS:
        idx = by_class[label][:]
        rng.shuffle(idx)
        # tiny epsilon so float noise cannot push an exact product below its floor
        take = int(math.floor(len(idx) * train_fraction + 1e-9))
        train_idx.update(idx[:take])
    train = [corpus[i] for i in sorted(train_idx)]
    test = [corpus[i] for i in range(len(corpus)) if i not in train_idx]
    return train, test


@dataclass
class SentimentModel:
    """Trained counts plus the preprocessing digest they depend on."""

    priors: dict[str, float]
    token_counts: dict[str, dict[str, int]]
    class_token_totals: dict[str, int]
    vocabulary: set[str]
    alpha: float
    pipeline_digest: str


def train(docs, cfg: TokenPipelineConfig, alpha: float = 1.0) -> SentimentModel:
    """Fit class priors and token counts on preprocessed documents."""
    if alpha < 0:
        raise ValidationError(f"alpha must be non-negative, got {alpha}")
    doc_counts = {label: 0 for label in LABELS}
    counts = {label: {} for label in LABELS}
    for doc in docs:
        doc_counts[doc.label] += 1
        bucket = counts[doc.label]
        for token in preprocess(doc.text, cfg):
            bucket[token] = bucket.get(token, 0) + 1
    missing = [label for label in LABELS if doc_counts[label] == 0]
    if missing:
        raise TrainingError(f"training data has no {missing[0]!r} documents")
    totals = {label: sum(counts[label].values()) for label in LABELS}
    if sum(totals.values()) == 0:
        raise TrainingError("corpus is empty after preprocessing")
    total_docs = sum(doc_counts.values())
    vocabulary = set()
    for bucket in counts.values():
        vocabulary.update(bucket)
    return SentimentModel(
        priors={label: doc_counts[label] / total_docs for label in LABELS},
        token_counts=counts,
        class_token_totals=totals,
        vocabulary=vocabulary,
        alpha=alpha,
        pipeline_digest=cfg.digest(),
    )


@dataclass
class Prediction:
    """A label with its log scores and normalized confidence."""

    label: str
    log_scores: dict[str, float]
    confidence: float

    def to_json(self) -> str:
        payload = {
            "label": self.label,
            "log_scores": {k: self.log_scores[k] for k in sorted(self.log_scores)},
            "confidence": self.confidence,
        }
        return json.dumps(payload, sort_keys=True)


def predict(model: SentimentModel, text: str, cfg: TokenPipelineConfig) -> Prediction:
    """Classify one text; an empty token list falls back to the priors."""
    tokens = preprocess(text, cfg)
    vocab_size = len(model.vocabulary)
    scores = {}
    for label in LABELS:
        score = math.log(model.priors[label]) if model.priors[label] > 0 else -math.inf
        denom = model.class_token_totals[label] + model.alpha * vocab_size
        log_denom = math.log(denom) if denom > 0 else None
        bucket = model.token_counts[label]
        for token in tokens:
            numer = bucket.get(token, 0) + model.alpha
            if numer > 0 and log_denom is not None:
                score += math.log(numer) - log_denom
            else:
                score = -math.inf
                break
        scores[label] = score
    # max over (score, label) sends ties to the alphabetically later label
    label = max(LABELS, key=lambda c: (scores[c], c))
    top = scores[label]
    if top == -math.inf:
        confidence = 1.0 / len(LABELS)
    else:
        confidence = 1.0 / sum(math.exp(scores[c] - top) for c in LABELS)
    return Prediction(label=label, log_scores=scores, confidence=confidence)


def label_corpus(model: SentimentModel, records, cfg: TokenPipelineConfig):
    """Predict every record's text; returns (record id, Prediction) pairs."""
    return [(rec.id, predict(model, rec.text, cfg)) for rec in records]


def save_model(model: SentimentModel, path) -> None:
    """Write the model as versioned JSON with deterministic key order."""
    payload = {
        "format": MODEL_FORMAT,
        "format_version": MODEL_FORMAT_VERSION,
        "alpha": model.alpha,
        "priors": model.priors,
        "class_token_totals": model.class_token_totals,
        "token_counts": model.token_counts,
        "vocabulary": sorted(model.vocabulary),
        "pipeline_digest": model.pipeline_digest,
    }
    Path(path).write_text(
        json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )


def load_model(path, cfg: TokenPipelineConfig) -> SentimentModel:
    """Read a saved model, refusing one built under a different pipeline."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if data.get("format") != MODEL_FORMAT or data.get("format_version") != MODEL_FORMAT_VERSION:
        raise ValidationError(f"{path} is not a recognized sentiment model file")
    if data["pipeline_digest"] != cfg.digest():
        raise ValidationError(
            "model was trained under a different preprocessing configuration; retrain or load the matching config"
        )
    return SentimentModel(
        priors={label: float(data["priors"][label]) for label in LABELS},
        token_counts={label: {t: int(c) for t, c in data["token_counts"][label].items()} for label in LABELS},
        class_token_totals={label: int(data["class_token_totals"][label]) for label in LABELS},
        vocabulary=set(data["vocabulary"]),
        alpha=float(data["alpha"]),
        pipeline_digest=data["pipeline_digest"],
    )
