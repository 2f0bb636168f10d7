"""Shared fixtures: a deterministic four-brand synthetic workspace."""

import csv
import json
import random

import pytest

POSITIVE_WORDS = [
    "bagus", "mudah", "cepat", "mantap", "puas", "lancar", "praktis",
    "aman", "untung", "hemat", "ramah", "keren", "suka", "senang",
    "berhasil", "membantu", "nyaman", "promo", "cashback", "terbaik",
]
NEGATIVE_WORDS = [
    "gagal", "error", "lambat", "kecewa", "hilang", "lemot", "ribet",
    "parah", "buruk", "macet", "susah", "menyesal", "bermasalah",
    "menunggu", "pending", "rugi", "komplain", "menipu", "jelek", "batal",
]
FILLER_WORDS = ["yang", "dan", "di", "ke", "dari", "untuk", "dengan", "saya", "ini", "itu"]

BRAND_SPECS = [
    # name, seed, records, authors, mention probability
    ("alfa", 101, 220, 42, 0.80),
    ("beta", 102, 250, 56, 0.60),
    ("gama", 103, 205, 34, 0.90),
    ("delta", 104, 235, 48, 0.70),
]


def _sentence(rng, pool):
    words = [rng.choice(pool) for _ in range(rng.randint(3, 7))]
    words.insert(rng.randrange(len(words) + 1), rng.choice(FILLER_WORDS))
    return " ".join(words)


def _write_brand(root, name, seed, n_records, n_authors, mention_p):
    rng = random.Random(seed)
    authors = [f"{name}_u{i:02d}" for i in range(n_authors)]
    records_path = root / f"{name}.jsonl"
    with records_path.open("w", encoding="utf-8") as fp:
        for k in range(n_records):
            author = rng.choice(authors)
            pool = POSITIVE_WORDS if rng.random() < 0.5 else NEGATIVE_WORDS
            text = _sentence(rng, pool)
            if rng.random() < mention_p:
                text += " @" + rng.choice([a for a in authors if a != author])
                if rng.random() < 0.3:
                    text += " @" + rng.choice(authors)
            if rng.random() < 0.1:
                text += " https://example.com/p"
            rec = {
                "id": str(1000 + k),
                "author": author,
                "text": text,
                "created_at": f"2019-08-{rng.randint(1, 28):02d}T{rng.randint(0, 23):02d}:00:00Z",
                "keyword": name,
            }
            if rng.random() < 0.25:
                rec["reply_to"] = rng.choice(authors)
            fp.write(json.dumps(rec, sort_keys=True) + "\n")

    labeled_path = root / f"{name}_labeled.csv"
    with labeled_path.open("w", encoding="utf-8", newline="") as fp:
        writer = csv.writer(fp)
        writer.writerow(["text", "label"])
        for _ in range(40):
            writer.writerow([_sentence(rng, POSITIVE_WORDS), "positive"])
        for _ in range(40):
            writer.writerow([_sentence(rng, NEGATIVE_WORDS), "negative"])
    return records_path, labeled_path


@pytest.fixture(scope="session")
def brand_workspace(tmp_path_factory):
    """Directory with four brand corpora and a config.ini tying them together."""
    root = tmp_path_factory.mktemp("brands")
    lines = ["[run]", "seed = 11", "train_fraction = 0.8", ""]
    for name, seed, n_records, n_authors, mention_p in BRAND_SPECS:
        records_path, labeled_path = _write_brand(root, name, seed, n_records, n_authors, mention_p)
        lines += [
            f"[brand:{name}]",
            f"records = {records_path.name}",
            f"labeled = {labeled_path.name}",
            "",
        ]
    (root / "config.ini").write_text("\n".join(lines), encoding="utf-8")
    return root
