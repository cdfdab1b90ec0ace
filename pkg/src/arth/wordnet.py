"""Reader for WordNet 3.x plain-text database files, plus the taxonomy
queries built on it: sense lookup, antonyms, depth, lowest common subsumer,
Wu-Palmer similarity, simplified Lesk disambiguation, and morphy
lemmatization.

Only hypernym (`@`) and antonym (`!`) pointers are retained; every other
pointer type is parsed and discarded. The hypernym graph is validated to be
acyclic with no dangling targets at load time.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path


class WordNetError(Exception):
    """Base class for database and query errors."""


class ParseError(WordNetError):
    pass


class IntegrityError(WordNetError):
    pass


class UnknownWordError(WordNetError):
    pass


class CrossPOSError(WordNetError):
    pass


class SimilarityUndefinedError(WordNetError):
    """The two synsets share no common ancestor."""


class PartOfSpeech(str, Enum):
    NOUN = "n"
    VERB = "v"
    ADJ = "a"
    ADV = "r"


_POS_FILES = {
    PartOfSpeech.NOUN: "noun",
    PartOfSpeech.VERB: "verb",
    PartOfSpeech.ADJ: "adj",
    PartOfSpeech.ADV: "adv",
}

# satellite adjectives live in the adj file and share its identifier space
_SS_TYPE_TO_POS = {"n": "n", "v": "v", "a": "a", "s": "a", "r": "r"}

SynsetID = tuple[str, int]  # (pos letter, byte offset)


@dataclass
class Synset:
    id: SynsetID
    lemmas: list[str]
    lemma_ids: list[int]
    pos: str
    ss_type: str
    lex_filenum: int
    gloss: str
    hypernyms: list[SynsetID] = field(default_factory=list)
    antonym_links: list[tuple[str, SynsetID]] = field(default_factory=list)

    @property
    def offset(self) -> int:
        return self.id[1]

    def definition(self) -> str:
        """Gloss text before the first quoted example sentence."""
        head = self.gloss.split('"', 1)[0]
        return head.rstrip().rstrip(";").rstrip()


@dataclass
class SenseChoice:
    word: str
    synset: Synset
    overlap_score: int


@dataclass
class WordNetKB:
    synsets: dict[SynsetID, Synset] = field(default_factory=dict)
    index: dict[tuple[str, str], list[SynsetID]] = field(default_factory=dict)
    exceptions: dict[str, dict[str, list[str]]] = field(default_factory=dict)

    def __post_init__(self):
        self._depth_cache: dict[SynsetID, int] = {}
        self._ancestor_cache: dict[SynsetID, dict[SynsetID, int]] = {}

    def __eq__(self, other):
        if not isinstance(other, WordNetKB):
            return NotImplemented
        return (
            self.synsets == other.synsets
            and self.index == other.index
            and self.exceptions == other.exceptions
        )

    @property
    def roots(self) -> list[SynsetID]:
        return [sid for sid, s in self.synsets.items() if not s.hypernyms]

    # -- morphological analysis -------------------------------------------

    _DETACHMENTS = {
        "n": [("s", ""), ("ses", "s"), ("xes", "x"), ("zes", "z"),
              ("ches", "ch"), ("shes", "sh"), ("men", "man"), ("ies", "y")],
        "v": [("s", ""), ("ies", "y"), ("es", "e"), ("es", ""),
              ("ed", "e"), ("ed", ""), ("ing", "e"), ("ing", "")],
        "a": [("er", ""), ("est", ""), ("er", "e"), ("est", "e")],
        "r": [],
    }

    def morphy(self, word: str, pos: PartOfSpeech) -> str | None:
        """Base form of `word` for the given POS, or None when unknown.

        Lookup order: the word itself, the POS exception list, then the
        POS detachment rules; a candidate counts only if it is indexed.
        """
        p = pos.value
        if (word, p) in self.index:
            return word
        for base in self.exceptions.get(p, {}).get(word, []):
            if (base, p) in self.index:
                return base
        for suffix, replacement in self._DETACHMENTS[p]:
            if word.endswith(suffix):
                candidate = word[: len(word) - len(suffix)] + replacement
                if candidate and (candidate, p) in self.index:
                    return candidate
        return None


# ---------------------------------------------------------------------------
# parsing

def _data_path(directory: Path, pos: PartOfSpeech) -> Path:
    return directory / f"data.{_POS_FILES[pos]}"


def _index_path(directory: Path, pos: PartOfSpeech) -> Path:
    return directory / f"index.{_POS_FILES[pos]}"


def _parse_data_line(line: str, filename: str, lineno: int) -> Synset:
    try:
        head, gloss = line.split("|", 1)
        fields = head.split()
        offset = int(fields[0])
        lex_filenum = int(fields[1])
        ss_type = fields[2]
        pos = _SS_TYPE_TO_POS[ss_type]
        w_cnt = int(fields[3], 16)
        cursor = 4
        lemmas, lemma_ids = [], []
        for _ in range(w_cnt):
            lemmas.append(fields[cursor])
            lemma_ids.append(int(fields[cursor + 1], 16))
            cursor += 2
        p_cnt = int(fields[cursor])
        cursor += 1
        hypernyms: list[SynsetID] = []
        antonyms: list[tuple[int, SynsetID]] = []
        for _ in range(p_cnt):
            symbol = fields[cursor]
            target_offset = int(fields[cursor + 1])
            target_pos = _SS_TYPE_TO_POS[fields[cursor + 2]]
            source_target = fields[cursor + 3]
            cursor += 4
            target = (target_pos, target_offset)
            if symbol == "@":
                hypernyms.append(target)
            elif symbol == "!":
                antonyms.append((int(source_target[2:], 16), target))
            # all other pointer types are intentionally dropped
    except (ValueError, IndexError, KeyError) as exc:
        raise ParseError(f"{filename}:{lineno}: malformed data record: {exc}") from exc
    synset = Synset(
        id=(pos, offset),
        lemmas=lemmas,
        lemma_ids=lemma_ids,
        pos=pos,
        ss_type=ss_type,
        lex_filenum=lex_filenum,
        gloss=gloss.strip(),
        hypernyms=hypernyms,
    )
    # antonym links are resolved to lemmas once all synsets are loaded
    synset._pending_antonyms = antonyms  # type: ignore[attr-defined]
    return synset


def _parse_index_line(line: str, filename: str, lineno: int):
    try:
        fields = line.split()
        lemma = fields[0]
        pos = fields[1]
        synset_cnt = int(fields[2])
        p_cnt = int(fields[3])
        cursor = 4 + p_cnt  # skip the pointer-symbol list
        cursor += 2  # sense_cnt, tagsense_cnt
        offsets = [int(f) for f in fields[cursor: cursor + synset_cnt]]
        if len(offsets) != synset_cnt:
            raise ValueError("offset count mismatch")
    except (ValueError, IndexError) as exc:
        raise ParseError(f"{filename}:{lineno}: malformed index record: {exc}") from exc
    return lemma, pos, offsets


def load_wordnet(directory: str | Path) -> WordNetKB:
    """Parse a WordNet 3.x database directory into an in-memory KB."""
    directory = Path(directory)
    if not directory.is_dir():
        raise IOError(f"not a directory: {directory}")
    kb = WordNetKB()
    for pos in PartOfSpeech:
        data_file = _data_path(directory, pos)
        index_file = _index_path(directory, pos)
        if not data_file.exists() or not index_file.exists():
            raise IOError(f"missing database file for {pos.name.lower()}: {data_file}")
        for lineno, line in enumerate(data_file.read_text("utf-8").splitlines(), 1):
            if line.startswith(" ") or not line.strip():
                continue  # license header
            synset = _parse_data_line(line, data_file.name, lineno)
            kb.synsets[synset.id] = synset
        for lineno, line in enumerate(index_file.read_text("utf-8").splitlines(), 1):
            if line.startswith(" ") or not line.strip():
                continue
            lemma, p, offsets = _parse_index_line(line, index_file.name, lineno)
            kb.index[(lemma, p)] = [(p, off) for off in offsets]
        exc_file = directory / f"{_POS_FILES[pos]}.exc"
        table: dict[str, list[str]] = {}
        if exc_file.exists():
            for line in exc_file.read_text("utf-8").splitlines():
                parts = line.split()
                if len(parts) >= 2:
                    table[parts[0]] = parts[1:]
        kb.exceptions[pos.value] = table
    _resolve_antonyms(kb)
    _validate(kb)
    return kb


def _resolve_antonyms(kb: WordNetKB) -> None:
    for synset in kb.synsets.values():
        pending = getattr(synset, "_pending_antonyms", [])
        links = []
        for target_word_num, target_id in pending:
            target = kb.synsets.get(target_id)
            if target is None:
                raise IntegrityError(
                    f"synset {synset.id}: antonym target {target_id} not found"
                )
            word_index = target_word_num - 1 if 1 <= target_word_num <= len(target.lemmas) else 0
            links.append((target.lemmas[word_index], target_id))
        synset.antonym_links = links
        if hasattr(synset, "_pending_antonyms"):
            del synset._pending_antonyms


def _validate(kb: WordNetKB) -> None:
    for (lemma, pos), ids in kb.index.items():
        for sid in ids:
            if sid not in kb.synsets:
                raise IntegrityError(f"index entry {lemma}/{pos}: unknown offset {sid[1]}")
    for synset in kb.synsets.values():
        for hid in synset.hypernyms:
            if hid not in kb.synsets:
                raise IntegrityError(
                    f"synset {synset.id}: dangling hypernym offset {hid[1]:08d}"
                )
        if not synset.gloss:
            raise IntegrityError(f"synset {synset.id}: empty gloss")
    # cycle check over the hypernym graph (iterative three-color DFS)
    state: dict[SynsetID, int] = {}
    for start in kb.synsets:
        if state.get(start):
            continue
        stack = [(start, iter(kb.synsets[start].hypernyms))]
        state[start] = 1
        while stack:
            node, children = stack[-1]
            advanced = False
            for child in children:
                if state.get(child) == 1:
                    raise IntegrityError(f"hypernym cycle through offset {child[1]:08d}")
                if not state.get(child):
                    state[child] = 1
                    stack.append((child, iter(kb.synsets[child].hypernyms)))
                    advanced = True
                    break
            if not advanced:
                state[node] = 2
                stack.pop()


# ---------------------------------------------------------------------------
# serialization (inverse of the parser, for round-trip checks and fixtures)

def save_wordnet(kb: WordNetKB, directory: str | Path) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for pos in PartOfSpeech:
        p = pos.value
        data_lines = []
        for synset in sorted(
            (s for s in kb.synsets.values() if s.pos == p), key=lambda s: s.offset
        ):
            parts = [f"{synset.offset:08d}", f"{synset.lex_filenum:02d}", synset.ss_type,
                     f"{len(synset.lemmas):02x}"]
            for lemma, lex_id in zip(synset.lemmas, synset.lemma_ids):
                parts += [lemma, f"{lex_id:x}"]
            pointers = []
            for hid in synset.hypernyms:
                pointers.append(("@", hid, "0000"))
            for lemma, aid in synset.antonym_links:
                target = kb.synsets[aid]
                word_num = target.lemmas.index(lemma) + 1
                pointers.append(("!", aid, f"01{word_num:02x}"))
            parts.append(f"{len(pointers):03d}")
            for symbol, (tpos, toff), st in pointers:
                parts += [symbol, f"{toff:08d}", tpos, st]
            data_lines.append(" ".join(parts) + " | " + synset.gloss)
        _data_path(directory, pos).write_text("\n".join(data_lines) + "\n", "utf-8")

        index_lines = []
        for (lemma, ipos), ids in sorted(kb.index.items()):
            if ipos != p:
                continue
            symbols = []
            for sid in ids:
                s = kb.synsets[sid]
                if s.hypernyms and "@" not in symbols:
                    symbols.append("@")
                if s.antonym_links and "!" not in symbols:
                    symbols.append("!")
            parts = [lemma, p, str(len(ids)), str(len(symbols)), *symbols,
                     str(len(ids)), "0", *[f"{sid[1]:08d}" for sid in ids]]
            index_lines.append(" ".join(parts))
        _index_path(directory, pos).write_text("\n".join(index_lines) + "\n", "utf-8")

        exc_lines = [
            f"{inflected} {' '.join(bases)}"
            for inflected, bases in sorted(kb.exceptions.get(p, {}).items())
        ]
        (directory / f"{_POS_FILES[pos]}.exc").write_text(
            "\n".join(exc_lines) + ("\n" if exc_lines else ""), "utf-8"
        )


# ---------------------------------------------------------------------------
# queries

_POS_ORDER = ["n", "v", "a", "r"]


def synsets(kb: WordNetKB, lemma: str, pos: PartOfSpeech | None = None) -> list[Synset]:
    """Senses of a lemma in WordNet sense order; all POS (noun first) when
    pos is omitted; empty list when the lemma is unknown."""
    if pos is not None:
        ids = kb.index.get((lemma, pos.value), [])
        return [kb.synsets[sid] for sid in ids]
    out = []
    for p in _POS_ORDER:
        for sid in kb.index.get((lemma, p), []):
            out.append(kb.synsets[sid])
    return out


def antonyms(kb: WordNetKB, lemma: str) -> list[str]:
    """Lemmas reached by antonym links from any sense of the word."""
    seen = []
    for synset in synsets(kb, lemma):
        for target_lemma, _ in synset.antonym_links:
            if target_lemma not in seen:
                seen.append(target_lemma)
    return seen


def depth(kb: WordNetKB, synset: Synset) -> int:
    """1 + minimum hypernym hops to any root; a root has depth 1."""
    cached = kb._depth_cache.get(synset.id)
    if cached is not None:
        return cached
    queue = deque([(synset.id, 1)])
    seen = {synset.id}
    while queue:
        sid, d = queue.popleft()
        node = kb.synsets[sid]
        if not node.hypernyms:
            kb._depth_cache[synset.id] = d
            return d
        for hid in node.hypernyms:
            if hid not in seen:
                seen.add(hid)
                queue.append((hid, d + 1))
    raise IntegrityError(f"synset {synset.id} has no path to a root")


def _ancestors(kb: WordNetKB, synset: Synset) -> dict[SynsetID, int]:
    """All hypernym ancestors (including the synset itself)."""
    cached = kb._ancestor_cache.get(synset.id)
    if cached is not None:
        return cached
    out: dict[SynsetID, int] = {}
    queue = deque([(synset.id, 0)])
    while queue:
        sid, hops = queue.popleft()
        if sid in out and out[sid] <= hops:
            continue
        out[sid] = hops
        for hid in kb.synsets[sid].hypernyms:
            queue.append((hid, hops + 1))
    kb._ancestor_cache[synset.id] = out
    return out


def lcs(kb: WordNetKB, s1: Synset, s2: Synset) -> Synset | None:
    """Deepest common hypernym ancestor (either synset may be its own
    ancestor); None when the taxonomies are disjoint."""
    if s1.pos != s2.pos:
        raise CrossPOSError(f"cannot compare {s1.pos} with {s2.pos}")
    common = set(_ancestors(kb, s1)) & set(_ancestors(kb, s2))
    if not common:
        return None
    best = max(common, key=lambda sid: (depth(kb, kb.synsets[sid]), -sid[1]))
    return kb.synsets[best]


def wup_similarity(kb: WordNetKB, s1: Synset, s2: Synset) -> float:
    """Wu-Palmer similarity: 2*depth(lcs) / (depth(s1) + depth(s2))."""
    ancestor = lcs(kb, s1, s2)
    if ancestor is None:
        raise SimilarityUndefinedError(f"no common ancestor for {s1.id} and {s2.id}")
    score = 2.0 * depth(kb, ancestor) / (depth(kb, s1) + depth(kb, s2))
    # With shortest-path depths a multi-parent node can sit above an ancestor
    # that is itself deep, pushing the raw ratio past 1; cap to keep the
    # score a similarity in (0, 1].
    return min(1.0, score)


_WORD_RE = re.compile(r"[a-z]+(?:'[a-z]+)*")


def _gloss_tokens(text: str, stoplist: set[str]) -> set[str]:
    return {t for t in _WORD_RE.findall(text.lower()) if t not in stoplist}


def simplified_lesk(
    kb: WordNetKB,
    word: str,
    sentence_tokens: list[str],
    stoplist: set[str],
) -> SenseChoice:
    """Pick the sense whose gloss shares the most unique words with the
    sentence context; ties and all-zero overlaps fall back to the first
    (most frequent) sense."""
    senses = synsets(kb, word)
    if not senses:
        raise UnknownWordError(word)
    context = set()
    for token in sentence_tokens:
        context |= _gloss_tokens(token, stoplist)
    context.discard(word.lower())
    best = senses[0]
    best_score = len(context & _gloss_tokens(best.gloss, stoplist))
    for sense in senses[1:]:
        score = len(context & _gloss_tokens(sense.gloss, stoplist))
        if score > best_score:
            best, best_score = sense, score
    return SenseChoice(word=word, synset=best, overlap_score=best_score)
