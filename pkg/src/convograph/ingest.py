"""Reading interaction records and labeled sentiment corpora.

Records arrive as JSONL (one object per line) or CSV with a header row.
Parsing is forgiving about dirty lines: a malformed line is counted and
skipped, never fatal. Handles are normalized to lowercase without the
leading '@' so the rest of the package can treat them as plain ids.
"""

import csv
import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import EmptyInputError, ValidationError

# A handle is '@' plus 1..15 word characters; the run must be maximal,
# so '@toolongname12345678' (>15 chars) is not a mention at all.
MENTION_RE = re.compile(r"@([A-Za-z0-9_]{1,15})(?![A-Za-z0-9_])")

LABEL_POSITIVE = "positive"
LABEL_NEGATIVE = "negative"
LABELS = (LABEL_POSITIVE, LABEL_NEGATIVE)

_REQUIRED_FIELDS = ("id", "author", "text", "created_at")


def normalize_handle(handle: str) -> str:
    """Lowercase a handle and strip whitespace plus the leading '@'."""
    return handle.strip().lstrip("@").lower()


def extract_mentions(text: str) -> list[str]:
    """Return normalized handles mentioned in text, in order, duplicates kept."""
    return [m.group(1).lower() for m in MENTION_RE.finditer(text)]


@dataclass(frozen=True)
class InteractionRecord:
    """One public interaction (tweet-like post) by one author."""

    id: str
    author: str
    text: str
    created_at: str
    reply_to: str | None = None
    keyword: str | None = None

    def __post_init__(self):
        author = normalize_handle(self.author)
        if not author:
            raise ValidationError("author must be non-empty after normalization")
        object.__setattr__(self, "author", author)
        if self.reply_to is not None:
            reply = normalize_handle(self.reply_to)
            object.__setattr__(self, "reply_to", reply or None)

    def to_json(self) -> dict:
        """Canonical JSONL shape; optional fields omitted when absent."""
        out = {
            "id": self.id,
            "author": self.author,
            "text": self.text,
            "created_at": self.created_at,
        }
        if self.reply_to is not None:
            out["reply_to"] = self.reply_to
        if self.keyword is not None:
            out["keyword"] = self.keyword
        return out


@dataclass(frozen=True)
class LabeledDocument:
    """A text paired with a binary sentiment label."""

    text: str
    label: str

    def __post_init__(self):
        label = self.label.strip().lower()
        if label not in LABELS:
            raise ValidationError(f"label must be one of {LABELS}, got {self.label!r}")
        object.__setattr__(self, "label", label)


@dataclass
class ParseResult:
    """Outcome of parsing a record source."""

    records: list[InteractionRecord]
    skipped: int = 0
    skipped_lines: list[int] = field(default_factory=list)


def _record_from_mapping(row: dict) -> InteractionRecord:
    for key in _REQUIRED_FIELDS:
        if row.get(key) is None:
            raise ValidationError(f"missing field {key!r}")
    rid = row["id"]
    if isinstance(rid, (int, float)) and not isinstance(rid, bool):
        rid = str(rid)
    values = {"id": rid, "author": row["author"], "text": row["text"], "created_at": row["created_at"]}
    for key, value in values.items():
        if not isinstance(value, str):
            raise ValidationError(f"field {key!r} must be a string")
    for key in ("reply_to", "keyword"):
        value = row.get(key)
        if value is not None and not isinstance(value, str):
            raise ValidationError(f"field {key!r} must be a string or null")
        values[key] = value or None
    return InteractionRecord(**values)


def _parse_jsonl(fp) -> ParseResult:
    result = ParseResult(records=[])
    for lineno, line in enumerate(fp, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            row = json.loads(line)
            if not isinstance(row, dict):
                raise ValidationError("line is not a JSON object")
            result.records.append(_record_from_mapping(row))
        except (json.JSONDecodeError, ValidationError):
            result.skipped += 1
            result.skipped_lines.append(lineno)
    return result


def _parse_csv(fp) -> ParseResult:
    result = ParseResult(records=[])
    reader = csv.DictReader(fp)
    fieldnames = reader.fieldnames or []
    missing = [k for k in _REQUIRED_FIELDS if k not in fieldnames]
    if missing:
        raise ValidationError(f"records CSV is missing required columns: {', '.join(missing)}")
    for row in reader:
        try:
            cleaned = {k: v for k, v in row.items() if k is not None and v not in (None, "")}
            result.records.append(_record_from_mapping(cleaned))
        except ValidationError:
            result.skipped += 1
            result.skipped_lines.append(reader.line_num)
    return result


def _infer_format(path: Path) -> str:
    suffix = path.suffix.lower()
    if suffix in (".jsonl", ".ndjson", ".json"):
        return "jsonl"
    if suffix == ".csv":
        return "csv"
    raise ValidationError(f"cannot infer record format from {path.name!r}; pass format explicitly")


def parse_records(source, format: str | None = None) -> ParseResult:
    """Parse interaction records from a path or open text stream.

    Raises EmptyInputError when the source holds zero well-formed records,
    and lets OSError propagate for unreadable paths.
    """
    if isinstance(source, (str, Path)):
        path = Path(source)
        fmt = format or _infer_format(path)
        with open(path, encoding="utf-8", newline="") as fp:
            result = _parse_jsonl(fp) if fmt == "jsonl" else _parse_csv(fp)
    else:
        if format is None:
            raise ValidationError("format is required when parsing from a stream")
        result = _parse_jsonl(source) if format == "jsonl" else _parse_csv(source)
    if not result.records:
        detail = f" ({result.skipped} malformed lines skipped)" if result.skipped else ""
        raise EmptyInputError("no records" + detail)
    return result


def write_records_jsonl(records, fp) -> None:
    """Serialize records back to the canonical JSONL shape."""
    for rec in records:
        fp.write(json.dumps(rec.to_json(), ensure_ascii=False) + "\n")


def parse_labeled_corpus(source) -> list[LabeledDocument]:
    """Read a labeled CSV (header: text,label) into documents, order preserved.

    An unknown label value raises ValidationError naming the offending line.
    """
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8", newline="") as fp:
            return parse_labeled_corpus(fp)
    reader = csv.DictReader(source)
    names = {name.strip().lower(): name for name in (reader.fieldnames or [])}
    if "text" not in names or "label" not in names:
        raise ValidationError("labeled CSV must have a header with 'text' and 'label' columns")
    docs = []
    for row in reader:
        text = row.get(names["text"]) or ""
        label = (row.get(names["label"]) or "").strip().lower()
        if label not in LABELS:
            raise ValidationError(f"line {reader.line_num}: label must be one of {LABELS}, got {label!r}")
        docs.append(LabeledDocument(text=text, label=label))
    return docs
