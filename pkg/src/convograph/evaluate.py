"""Classifier evaluation: confusion matrix, agreement measures, tallies.

'positive' is the positive class throughout. Measures whose denominator
is zero come back as None rather than 0; renderers show them as 'n/a'.
"""

import json
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

from .errors import ValidationError
from .ingest import LABELS

EVAL_FIELDS = ("precision", "recall", "f_measure", "accuracy", "kappa", "kappa_band")

# Landis-Koch style interpretation bands; the 'slight' band is folded
# into 'poor' so the scale has five steps.
_BANDS = ((0.20, "poor"), (0.40, "fair"), (0.60, "moderate"), (0.80, "substantial"))


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    fn: int
    tn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


def confusion(golds, preds) -> ConfusionMatrix:
    """Count the four cells from parallel gold/predicted label sequences."""
    golds, preds = list(golds), list(preds)
    if len(golds) != len(preds):
        raise ValidationError(f"length mismatch: {len(golds)} gold vs {len(preds)} predicted")
    if not golds:
        raise ValidationError("cannot build a confusion matrix from zero pairs")
    cells = {"tp": 0, "fp": 0, "fn": 0, "tn": 0}
    for gold, pred in zip(golds, preds):
        if gold not in LABELS or pred not in LABELS:
            raise ValidationError(f"labels must be one of {LABELS}, got ({gold!r}, {pred!r})")
        if pred == "positive":
            cells["tp" if gold == "positive" else "fp"] += 1
        else:
            cells["fn" if gold == "positive" else "tn"] += 1
    return ConfusionMatrix(**cells)


def kappa_band(kappa: float) -> str:
    """Agreement interpretation band for a kappa value."""
    for upper, name in _BANDS:
        if kappa <= upper:
            return name
    return "almost-perfect"


@dataclass
class EvalReport:
    """Headline measures; None marks an undefined quantity."""

    precision: float | None
    recall: float | None
    f_measure: float | None
    accuracy: float
    kappa: float | None
    kappa_band: str | None

    def to_dict(self) -> dict:
        return {name: getattr(self, name) for name in EVAL_FIELDS}

    def to_text(self) -> str:
        lines = []
        for name in EVAL_FIELDS:
            value = getattr(self, name)
            if value is None:
                rendered = "n/a"
            elif isinstance(value, float):
                rendered = format(value, ".6g")
            else:
                rendered = str(value)
            lines.append(f"{name}: {rendered}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "EvalReport":
        return cls(**{name: data.get(name) for name in EVAL_FIELDS})

    @classmethod
    def from_json(cls, text: str) -> "EvalReport":
        return cls.from_dict(json.loads(text))


def evaluate(m: ConfusionMatrix) -> EvalReport:
    """Precision, recall, F measure, accuracy, and Cohen's kappa.

    Kappa compares observed agreement against the chance agreement of the
    marginal distributions; it is undefined (None) when the marginals are
    fully concentrated, which makes chance agreement 1.
    """
    total = m.total
    if total == 0:
        raise ValidationError("confusion matrix is empty")
    precision = m.tp / (m.tp + m.fp) if (m.tp + m.fp) > 0 else None
    recall = m.tp / (m.tp + m.fn) if (m.tp + m.fn) > 0 else None
    f_measure = None
    if precision is not None and recall is not None and (precision + recall) > 0:
        f_measure = 2 * precision * recall / (precision + recall)
    accuracy = (m.tp + m.tn) / total
    p_observed = accuracy
    p_chance = ((m.tp + m.fn) * (m.tp + m.fp) + (m.fp + m.tn) * (m.fn + m.tn)) / (total * total)
    kappa = (p_observed - p_chance) / (1.0 - p_chance) if p_chance < 1.0 else None
    band = kappa_band(kappa) if kappa is not None else None
    return EvalReport(
        precision=precision,
        recall=recall,
        f_measure=f_measure,
        accuracy=accuracy,
        kappa=kappa,
        kappa_band=band,
    )


def sentiment_percentages(positive_count: int, negative_count: int) -> tuple[float, float]:
    """Raw percentage split of a labeled tally."""
    if positive_count < 0 or negative_count < 0:
        raise ValidationError("counts must be non-negative")
    total = positive_count + negative_count
    if total == 0:
        raise ValidationError("cannot compute percentages of an empty tally")
    positive_pct = 100.0 * positive_count / total
    return positive_pct, 100.0 - positive_pct


def format_percentages(positive_pct: float) -> tuple[str, str]:
    """Render a percentage pair at two decimals, half-up.

    The negative side is rendered as the exact complement of the rendered
    positive side, so the printed pair always sums to 100.00.
    """
    pos = Decimal(positive_pct).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP)
    neg = Decimal("100.00") - pos
    return f"{pos:.2f}", f"{neg:.2f}"
