#!/usr/bin/env python3
"""Regenerate the bundled synthetic fixtures (deterministic, stdlib only)."""

import json
import random
from pathlib import Path

HERE = Path(__file__).resolve().parent
rng = random.Random(20240611)

START_YEAR, END_YEAR = 1990, 2001
MONTHS = [(y, m) for y in range(START_YEAR, END_YEAR + 1) for m in range(1, 13)]

# US recession months (peak to trough) inside the window.
RECESSION = set()
for y, m in MONTHS:
    ym = y * 12 + m
    if 1990 * 12 + 7 <= ym <= 1991 * 12 + 3 or 2001 * 12 + 3 <= ym <= 2001 * 12 + 11:
        RECESSION.add((y, m))

CONCEPTS = [
    "economy", "inflation", "unemployment", "interest rates", "growth", "recession",
    "gdp", "trade deficit", "central bank", "labor market", "exports", "consumer spending",
    "housing market", "stock market", "debt", "wages", "prices", "industrial production",
    "credit", "investment", "manufacturing", "budget deficit", "oil prices", "retail sales",
]

NEG = ["weakened", "slumped", "declined", "deteriorated", "contracted", "stalled", "faltered", "plunged"]
NEG_ADJ = ["sluggish", "fragile", "weak", "dismal", "volatile", "gloomy"]
POS = ["improved", "rose", "expanded", "recovered", "strengthened", "rebounded", "accelerated", "surged"]
POS_ADJ = ["strong", "robust", "solid", "healthy", "buoyant", "resilient"]
NEUTRAL = ["remained unchanged", "held steady", "was stable", "moved sideways"]
ADVERBS = ["sharply", "slightly", "steadily", "unexpectedly", "modestly", "again"]
NOISE = [
    "The team won the match on Sunday.",
    "Fans gathered outside the stadium before kickoff.",
    "The festival drew large crowds this weekend.",
    "Officials opened a new bridge across the river.",
    "The museum announced an exhibition of modern art.",
]
SOURCES = ["Daily Ledger", "Morning Herald", "Business Wire Review"]


def shifted(y, m, k):
    yy, mm = divmod(y * 12 + (m - 1) + k, 12)
    return yy, mm + 1


def pessimism(y, m):
    """Probability of a negative sentence; rises ahead of and during recessions."""
    p = 0.3
    for lead in range(0, 5):
        if shifted(y, m, lead) in RECESSION:
            p = max(p, 0.75 - 0.08 * lead)
    return p


def concept_phrase(c):
    return c if c not in ("gdp",) else "GDP"


def sentence(p):
    c = concept_phrase(rng.choice(CONCEPTS))
    r = rng.random()
    if r < p:
        kind = rng.random()
        if kind < 0.5:
            return f"The {c} {rng.choice(NEG)} {rng.choice(ADVERBS)} last month."
        return f"Analysts described the {rng.choice(NEG_ADJ)} {c} as a concern."
    if r < p + (1 - p) * 0.75:
        kind = rng.random()
        if kind < 0.5:
            return f"The {c} {rng.choice(POS)} {rng.choice(ADVERBS)} last month."
        return f"Analysts described the {rng.choice(POS_ADJ)} {c} as encouraging."
    return f"The {c} {rng.choice(NEUTRAL)} in the latest data."


def corpus():
    docs = []
    n = 0
    for y, m in MONTHS:
        p = pessimism(y, m)
        for k in range(5):
            n += 1
            day = rng.randint(1, 28)
            sents = [sentence(p) for _ in range(rng.randint(3, 5))]
            if rng.random() < 0.4:
                sents.insert(rng.randint(0, len(sents)), rng.choice(NOISE))
            doc = {
                "id": f"doc-{n:05d}",
                "date": f"{y:04d}-{m:02d}-{day:02d}",
                "source": rng.choice(SOURCES),
                "title": f"Market report {y}-{m:02d} #{k + 1}",
                "body": " ".join(sents),
            }
            docs.append(doc)
        if m % 4 == 0:
            n += 1
            docs.append({
                "id": f"doc-{n:05d}",
                "date": f"{y:04d}-{m:02d}-15",
                "source": "Sports Desk",
                "title": "Weekend results",
                "body": "The economy of the league weakened sharply. " + rng.choice(NOISE),
                "topic": "sport",
            })
    with open(HERE / "corpus.jsonl", "w") as f:
        for d in docs:
            f.write(json.dumps(d, ensure_ascii=False) + "\n")


def lexicons():
    el = {
        "weakened": -0.6, "slumped": -0.8, "declined": -0.5, "deteriorated": -0.7,
        "contracted": -0.6, "stalled": -0.4, "faltered": -0.5, "plunged": -0.9,
        "sluggish": -0.5, "fragile": -0.4, "weak": -0.6, "dismal": -0.8, "volatile": -0.3,
        "gloomy": -0.7, "concern": -0.3,
        "improved": 0.6, "rose": 0.3, "expanded": 0.5, "recovered": 0.6, "strengthened": 0.6,
        "rebounded": 0.5, "accelerated": 0.4, "surged": 0.7, "strong": 0.7, "robust": 0.8,
        "solid": 0.5, "healthy": 0.6, "buoyant": 0.6, "resilient": 0.5, "encouraging": 0.6,
        "unchanged": 0.0, "steady": 0.1, "stable": 0.2, "sideways": 0.0, "sharply": 0.0,
        "unexpectedly": -0.1,
    }
    lmd = {
        "declined": -1, "deteriorated": -1, "contracted": -1, "stalled": -1, "faltered": -1,
        "plunged": -1, "weak": -1, "volatile": -1, "concern": -1, "slumped": -1,
        "improved": 1, "strong": 1, "strengthened": 1, "rebounded": 1, "gains": 1,
        "unexpectedly": -1, "stable": 1, "losses": -1, "crisis": -1, "surged": 1,
        "sideways": -1, "encouraging": 1,
    }
    with open(HERE / "el.tsv", "w") as f:
        f.write("term\tscore\n")
        for t, s in sorted(el.items()):
            f.write(f"{t}\t{s}\n")
    with open(HERE / "lmd.tsv", "w") as f:
        f.write("term\tscore\n")
        for t, s in sorted(lmd.items()):
            f.write(f"{t}\t{s}\n")


def series():
    rec, spread, ads, vix = [], [], [], []
    s = 1.5
    v = 18.0
    for i, (y, m) in enumerate(MONTHS):
        soon = any(shifted(y, m, k) in RECESSION for k in range(1, 13))
        s = 0.8 * s + 0.2 * (0.2 if soon else 2.2) + rng.gauss(0, 0.25)
        spread.append(round(s, 4))
        a = (-1.6 if (y, m) in RECESSION else 0.3) + rng.gauss(0, 0.5)
        ads.append(round(a, 4))
        v = 0.7 * v + 0.3 * (28.0 if (y, m) in RECESSION else 16.0) + rng.gauss(0, 2.0)
        vix.append(round(v, 3))
        rec.append(1 if (y, m) in RECESSION else 0)
    for name, vals in [("recession", rec), ("spread", spread), ("ads", ads), ("vix", vix)]:
        with open(HERE / f"{name}.csv", "w") as f:
            f.write("date,value\n")
            for (y, m), x in zip(MONTHS, vals):
                f.write(f"{y:04d}-{m:02d},{x}\n")


def annotations():
    """Five annotators per term around a target score; two terms split on sign."""
    targets = {
        "weakened": -0.6, "slumped": -0.8, "sluggish": -0.5, "fragile": -0.4, "dismal": -0.8,
        "robust": 0.8, "buoyant": 0.6, "resilient": 0.5, "steady": 0.1, "unchanged": 0.0,
        "tight": 0.0, "volatile": -0.2,
    }
    split = {"tight": [-0.4, -0.3, 0.3, 0.5, 0.0], "volatile": [-0.5, 0.4, -0.3, 0.3, -0.2]}
    with open(HERE / "annotations.csv", "w") as f:
        f.write("term,annotator_id,score,phrase\n")
        for term, t in targets.items():
            scores = split.get(term) or [
                max(-1.0, min(1.0, round(t + rng.choice([-0.1, 0.0, 0.0, 0.1]), 1))) for _ in range(5)
            ]
            for a, sc in enumerate(scores):
                f.write(f"{term},a{a + 1},{sc:.1f},the {term} economy\n")
    with open(HERE / "review_flags.csv", "w") as f:
        f.write("term,flag_count\n")
        f.write("steady,2\nrobust,0\nfragile,1\n")


def concepts():
    with open(HERE / "concepts.txt", "w") as f:
        f.write("# economic concepts, one unigram or bigram per line\n")
        for c in CONCEPTS:
            f.write(c + "\n")


if __name__ == "__main__":
    concepts()
    corpus()
    lexicons()
    series()
    annotations()
