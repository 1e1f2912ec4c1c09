#!/usr/bin/env python3
"""Writes curated_corpus.jsonl: 30 hand-labeled positives and 30 near-miss
negatives. Labels assume the bundled lexicons with --gerund-filter on.

Each positive lists the expression and target a human reader expects; the
token span is located with a plain regex so it does not depend on the C++
tokenizer."""
import json
import re
from pathlib import Path

POSITIVES = [
    ("I hate black people", "i hate", "black people", "people", "Race"),
    ("I can't stand white people.", "i can't stand", "white people", "people", "Race"),
    ("honestly I don't like insecure people at all", "i don't like", "insecure people", "people", "Behavior"),
    ("I really hate sensitive people", "i really hate", "sensitive people", "people", "Behavior"),
    ("I fucking hate obese people", "i fucking hate", "obese people", "people", "Physical"),
    ("I'm sick of beautiful people", "i'm sick of", "beautiful people", "people", "Physical"),
    ("I cannot stand gay people", "i cannot stand", "gay people", "people", "Sexual orientation"),
    ("I fuckin hate straight people lol", "i fuckin hate", "straight people", "people", "Sexual orientation"),
    ("I just hate ghetto people", "i just hate", "ghetto people", "people", "Class"),
    ("I’m so sick of rich people", "i'm so sick of", "rich people", "people", "Class"),
    ("I really don't like pregnant people", "i really don't like", "pregnant people", "people", "Gender"),
    ("I secretly hate sexist people", "i secretly hate", "sexist people", "people", "Gender"),
    ("I hate chinese people", "i hate", "chinese people", "people", "Ethnicity"),
    ("Sometimes I despise indian people", "i despise", "indian people", "people", "Ethnicity"),
    ("I HATE RELIGIOUS PEOPLE", "i hate", "religious people", "people", "Religion"),
    ("i detest jewish people", "i detest", "jewish people", "people", "Religion"),
    ("I loathe bipolar people", "i loathe", "bipolar people", "people", "Disability"),
    ("I can't tolerate drunk people", "i can't tolerate", "drunk people", "people", "Other"),
    ("I hate shallow people so much", "i hate", "shallow people", "people", "Other"),
    ("I hate nigga shit", "i hate", "nigga", "lexicon", "Race"),
    ("I can't stand cunt behavior", "i can't stand", "cunt", "lexicon", "Gender"),
    ("I hate paki shops", "i hate", "paki", "lexicon", "Ethnicity"),
    ("I hate retard jokes", "i hate", "retard", "lexicon", "Disability"),
    ("I hate stupid people", "i hate", "stupid people", "people", "Behavior"),
    ("I'm sick of fake people", "i'm sick of", "fake people", "people", "Behavior"),
    ("Im so sick of rude people!!", "im so sick of", "rude people", "people", "Behavior"),
    ("I really hate fat people", "i really hate", "fat people", "people", "Physical"),
    ("I hate mexican people", "i hate", "mexican people", "people", "Ethnicity"),
    ("I hate nigger music", "i hate", "nigger", "lexicon", "Race"),
    ("I hate mud people", "i hate", "mud people", "lexicon", "Other"),
]

# Unlabeled targets (fall back to Other without a category-map entry).
UNLABELED = {"mud people"}

NEAR_MISSES = [
    "I don't hate black people",
    "I hate following people",
    "I really hate owing people favors",
    "She hates rude people",
    "I hate when people lie",
    "I hate all people",
    "I hate any people who lie",
    "I hate watching people eat",
    "I never hate gay people",
    "I do not hate white people",
    "I didn't hate fake people",
    "I won't hate stupid people",
    "I love black people",
    "I kinda hate rude people",
    "I hate people",
    "I hate it when fake people lie",
    "We hate black people",
    "They really hate gay people",
    "I hate hicks",
    "I hate redneck music",
    "I hate trailer trash",
    "I really really really really hate fat people",
    "I hate missing people",
    "#IHateBlackPeople",
    "I am sick of rude people",
    "I hate 2 people",
    "i would hate black people",
    "I sort of hate stupid people",
    "I can't hate ignorant people",
    "He said I was wrong and hates old people",
]

TOKEN = re.compile(r"[A-Za-z0-9'’]+")


def words(text):
    out = []
    for m in TOKEN.finditer(text):
        w = m.group(0).replace("’", "'").strip("'").lower()
        if w:
            out.append(w)
    return out


def span(text, expression, target):
    toks = words(text)
    needle = expression.split() + target.split()
    for i in range(len(toks) - len(needle) + 1):
        if toks[i:i + len(needle)] == needle:
            return [i, i + len(needle)]
    raise SystemExit(f"cannot locate {needle} in {text!r}")


def main():
    out = Path(__file__).with_name("curated_corpus.jsonl")
    with out.open("w", encoding="utf-8") as f:
        n = 0
        for text, expr, target, template, category in POSITIVES:
            n += 1
            rec = {
                "id": f"c{n:02d}",
                "text": text,
                "source": "curated",
                "label": "positive",
                "expected": {
                    "expression": expr,
                    "target": target,
                    "template": template,
                    "category": category,
                    "labeled": target not in UNLABELED,
                    "span": span(text, expr, target),
                },
            }
            f.write(json.dumps(rec, ensure_ascii=False) + "\n")
        for text in NEAR_MISSES:
            n += 1
            rec = {"id": f"c{n:02d}", "text": text, "source": "curated", "label": "nearmiss"}
            f.write(json.dumps(rec, ensure_ascii=False) + "\n")
    print(f"wrote {n} records to {out}")


if __name__ == "__main__":
    main()
