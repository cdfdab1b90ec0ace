"""Regenerate the bundled word-data fixtures.

Sources (fetched with npm, see README):
  - cmu-pronouncing-dictionary: CMU pronouncing dictionary as a JS module;
    syllable count = number of stress-marked phonemes.
  - subtlex-word-frequencies: SUBTLEX-US film-subtitle word counts.

Outputs (committed under src/arth/data/):
  - syllables.tsv    word<TAB>count, CMU-derived, restricted to common words
  - frequencies.tsv  word<TAB>count, top 50k alphabetic SUBTLEX entries

Usage:
  npm install cmu-pronouncing-dictionary subtlex-word-frequencies
  python tools/build_lexicons.py <node_modules_dir> <output_dir>
"""

import json
import re
import sys
from collections import Counter
from pathlib import Path

WORD_RE = re.compile(r"^[a-z]+$")
STRESS_RE = re.compile(r"[0-9]")

TOP_FREQ = 50_000
MAX_SYLLABLES = 12


def load_cmu(node_modules: Path) -> dict[str, int]:
    src = (node_modules / "cmu-pronouncing-dictionary" / "index.js").read_text()
    # the JS module is a single `export const dictionary = {...}` literal
    body = src[src.index("{", src.index("dictionary")): src.rindex("}") + 1]
    entries = json.loads(re.sub(r",\s*}", "}", body))
    out = {}
    for word, phones in entries.items():
        if not WORD_RE.match(word):
            continue  # drops punctuation variants and "(2)" alternates
        n = len(STRESS_RE.findall(phones))
        if 1 <= n <= MAX_SYLLABLES:
            out[word] = n
    return out


def load_subtlex(node_modules: Path) -> Counter:
    raw = json.loads((node_modules / "subtlex-word-frequencies" / "index.json").read_text())
    counts: Counter = Counter()
    for row in raw:
        word = row["word"].lower()
        if WORD_RE.match(word):
            counts[word] += row["count"]
    return counts


def main(node_modules: Path, out_dir: Path) -> None:
    cmu = load_cmu(node_modules)
    freq = load_subtlex(node_modules)
    top = dict(freq.most_common(TOP_FREQ))

    out_dir.mkdir(parents=True, exist_ok=True)

    with open(out_dir / "frequencies.tsv", "w") as f:
        for word, count in sorted(top.items()):
            f.write(f"{word}\t{count}\n")

    # syllable lexicon: CMU words that are also common English words,
    # so the fixture is dominated by real vocabulary rather than names
    lex = {w: n for w, n in cmu.items() if w in top}
    with open(out_dir / "syllables.tsv", "w") as f:
        for word, n in sorted(lex.items()):
            f.write(f"{word}\t{n}\n")

    print(f"cmu entries kept: {len(cmu)}")
    print(f"frequency list:   {len(top)}")
    print(f"syllable lexicon: {len(lex)}")


if __name__ == "__main__":
    main(Path(sys.argv[1]), Path(sys.argv[2]))
