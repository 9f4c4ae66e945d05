"""Cyclic words over the standard and dual alphabets, and their graphs.

A letter is (family, subscript, star) with family in 'abcd'.  Barred letters
are stored with negative subscripts via the identifications

    a_{-i} = reverse of a_i,  b_{-i} = reverse of b_i,
    c_{-j} = reverse of d_j,  d_{-j} = reverse of c_j,

with d_0 written 'e' and c_0 its reverse (same with stars).  A loop is the
equivalence class of a valid cyclic word under rotation and reversal; words
convert to decorated graphs and back, and a loop with vertices in both
idempotents has exactly one word in each alphabet up to that equivalence.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import DecoratedGraph, GraphError, IDENT


class WordError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Letter:
    family: str  # 'a' | 'b' | 'c' | 'd'
    subscript: int
    star: bool = False

    def __post_init__(self):
        if self.family not in "abcd":
            raise WordError(f"bad family {self.family!r}")
        if self.family in "ab" and self.subscript == 0:
            raise WordError(f"{self.family}0 is not a letter")

    def bar(self) -> "Letter":
        """The same segment traversed backwards."""
        if self.family in "ab":
            return Letter(self.family, -self.subscript, self.star)
        fam = "d" if self.family == "c" else "c"
        return Letter(fam, -self.subscript, self.star)

    def negate(self) -> "Letter":
        return Letter(self.family, -self.subscript, self.star)

    def unstar(self, star: bool) -> "Letter":
        return Letter(self.family, self.subscript, star)

    @property
    def stable(self) -> bool:
        return self.family in "ab"

    def __str__(self) -> str:
        star = "*" if self.star else ""
        if self.family == "d" and self.subscript == 0:
            return "e" + star
        return f"{self.family}{star}{self.subscript}"


# Puzzle-piece classes at the break idempotent: each anchor vertex carries one
# edge-end of each class; consecutive letters must present opposite classes.
_START_CLASS = {"a": 2, "b": 1, "c": 2, "d": 1}
_END_CLASS = {"a": 2, "b": 1, "c": 1, "d": 2}


def _adjacent_ok(prev: Letter, nxt: Letter) -> bool:
    return _END_CLASS[prev.family] != _START_CLASS[nxt.family]


class LoopWord:
    """A validated cyclic word; letters all share one star flag."""

    __slots__ = ("letters",)

    def __init__(self, letters: Sequence[Letter], validate: bool = True):
        letters = tuple(letters)
        if not letters:
            raise WordError("empty word")
        if validate:
            violations = word_violations(letters)
            if violations:
                raise WordError("; ".join(violations))
        object.__setattr__(self, "letters", letters)

    def __setattr__(self, *a):  # immutable
        raise AttributeError("LoopWord is immutable")

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other):
        return isinstance(other, LoopWord) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    @property
    def star(self) -> bool:
        return self.letters[0].star

    def reversal(self) -> "LoopWord":
        return LoopWord(tuple(l.bar() for l in reversed(self.letters)), validate=False)

    def rotations(self) -> Iterable[Tuple[Letter, ...]]:
        ls = self.letters
        for i in range(len(ls)):
            yield ls[i:] + ls[:i]

    def __str__(self):
        return " ".join(str(l) for l in self.letters)

    def __repr__(self):
        return f"LoopWord({self})"


def word_violations(letters: Sequence[Letter]) -> List[str]:
    """Constraint violations of a cyclic letter sequence (empty list = valid)."""
    out: List[str] = []
    stars = {l.star for l in letters}
    if len(stars) > 1:
        out.append("mixed alphabets in one word")
        return out
    n = len(letters)
    for i, l in enumerate(letters):
        nxt = letters[(i + 1) % n]
        if not _adjacent_ok(l, nxt):
            out.append(f"letters {l} and {nxt} cannot be adjacent")
    na = sum(1 for l in letters if l.family == "a")
    nb = sum(1 for l in letters if l.family == "b")
    if na != nb:
        out.append(f"{na} a-letters vs {nb} b-letters")
    return out


_LETTER_KEY = {"a": 0, "b": 1, "c": 2, "d": 3}


def _word_key(letters: Tuple[Letter, ...]):
    return tuple((_LETTER_KEY[l.family], l.subscript, l.star) for l in letters)


@dataclass(frozen=True)
class Loop:
    """A loop: a cyclic word up to rotation, reversal, and change of
    alphabet.

    The canonical representative is the least standard-alphabet word when
    the loop has an i0 vertex, so words in either alphabet construct equal
    Loops; all-e* loops keep their dual word.
    """

    word: LoopWord

    def __post_init__(self):
        object.__setattr__(self, "word", _canonical_loop_word(self.word))

    @staticmethod
    def from_letters(letters: Sequence[Letter]) -> "Loop":
        return Loop(LoopWord(letters))

    @staticmethod
    def from_text(text: str) -> "Loop":
        return Loop(parse_word(text))

    def __str__(self):
        return f"({self.word})"

    def __repr__(self):
        return f"Loop{self}"

    def __len__(self):
        return len(self.word)

    @property
    def star(self) -> bool:
        return self.word.star


def _least_rotation(keys: Sequence) -> int:
    """Booth's algorithm: index of the lexicographically least rotation."""
    s = list(keys) + list(keys)
    f = [-1] * len(s)
    k = 0
    for j in range(1, len(s)):
        sj = s[j]
        i = f[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k


def canonicalize(w: LoopWord) -> LoopWord:
    """Lexicographically least rotation among the word and its reversal."""
    candidates = []
    for word in (w, w.reversal()):
        keys = _word_key(word.letters)
        k = _least_rotation(keys)
        candidates.append(word.letters[k:] + word.letters[:k])
    best = min(candidates, key=_word_key)
    return LoopWord(best, validate=False)


def _canonical_loop_word(w: LoopWord) -> LoopWord:
    """Canonical form preferring the standard alphabet when it exists."""
    if w.star:
        g = word_to_graph(w)
        try:
            words = graph_to_words(g, "standard")
        except NotExpressible:
            return canonicalize(w)
        assert len(words) == 1
        return canonicalize(words[0])
    return canonicalize(w)


_TOKEN = re.compile(r"^([abcde])(\*?)(-?\d+)?$")


def parse_word(text: str) -> LoopWord:
    """Parse a whitespace-separated word; 'e' is d0, 'e*' is d*0."""
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    letters = []
    for pos, tok in enumerate(text.split()):
        m = _TOKEN.match(tok)
        if not m:
            raise WordError(f"token {pos}: cannot parse {tok!r}")
        fam, star, sub = m.group(1), m.group(2) == "*", m.group(3)
        if fam == "e":
            if sub is not None:
                raise WordError(f"token {pos}: 'e' takes no subscript")
            fam, sub = "d", 0
        else:
            if sub is None:
                raise WordError(f"token {pos}: missing subscript in {tok!r}")
            sub = int(sub)
        if fam in "ab" and sub == 0:
            raise WordError(f"token {pos}: {fam}0 is not a letter")
        letters.append(Letter(fam, sub, star))
    return LoopWord(letters)


def format_word(w: LoopWord) -> str:
    return str(w)


def parse_loops(text: str) -> List[Loop]:
    """Parse '|'-separated loops; '#' starts a comment."""
    lines = []
    for line in text.splitlines():
        if "#" in line:
            line = line[: line.index("#")]
        lines.append(line)
    text = " ".join(lines)
    parts = [p for p in text.split("|") if p.strip()]
    if not parts:
        raise WordError("no loops in input")
    return [Loop.from_text(p) for p in parts]


def format_loops(loops: Sequence[Loop]) -> str:
    return " | ".join(str(l) for l in loops)


def validate(w: LoopWord) -> List[str]:
    """Violation list for a word (already-constructed words are valid)."""
    return word_violations(w.letters)


# ---------------------------------------------------------------------------
# word <-> graph


def _emit_standard(g: DecoratedGraph, letter: Letter, a, b, interior_prefix) -> None:
    """Add the letter's segment between bullet anchors a -> b."""
    fam, k = letter.family, letter.subscript
    if k < 0:
        _emit_standard(g, letter.bar(), b, a, interior_prefix)
        return
    if fam == "d" and k == 0:
        g.add_edge(a, b, "12")
        return
    if fam == "c" and k == 0:
        g.add_edge(b, a, "12")
        return
    circles = [interior_prefix + (j,) for j in range(k)]
    for v in circles:
        g.add_vertex(v, "1")
    for u, v in zip(circles, circles[1:]):
        g.add_edge(u, v, "23")
    first, last = circles[0], circles[-1]
    if fam == "a":
        g.add_edge(a, first, "3")
        g.add_edge(last, b, "2")
    elif fam == "c":
        g.add_edge(a, first, "3")
        g.add_edge(b, last, "1")
    elif fam == "d":
        g.add_edge(a, first, "123")
        g.add_edge(last, b, "2")
    else:  # b
        g.add_edge(a, first, "123")
        g.add_edge(b, last, "1")


def _emit_dual(g: DecoratedGraph, letter: Letter, a, b, interior_prefix) -> None:
    """Add the letter's segment between circle anchors a -> b."""
    fam, k = letter.family, letter.subscript
    if k < 0:
        _emit_dual(g, letter.bar(), b, a, interior_prefix)
        return
    if fam == "d" and k == 0:
        g.add_edge(a, b, "23")
        return
    if fam == "c" and k == 0:
        g.add_edge(b, a, "23")
        return
    bullets = [interior_prefix + (j,) for j in range(k)]
    for v in bullets:
        g.add_vertex(v, "0")
    for u, v in zip(bullets, bullets[1:]):
        g.add_edge(u, v, "12")
    first, last = bullets[0], bullets[-1]
    if fam == "a":
        g.add_edge(first, a, "3")
        g.add_edge(last, b, "123")
    elif fam == "c":
        g.add_edge(first, a, "3")
        g.add_edge(last, b, "1")
    elif fam == "d":
        g.add_edge(a, first, "2")
        g.add_edge(last, b, "123")
    else:  # b
        g.add_edge(a, first, "2")
        g.add_edge(last, b, "1")


def word_to_graph(w: LoopWord) -> DecoratedGraph:
    """The decorated graph of a word; anchors ('b', i) or ('o', i), interiors
    ('x', i, j) for the letter at index i."""
    g = DecoratedGraph()
    n = len(w)
    anchor_idem = "1" if w.star else "0"
    tag = "o" if w.star else "b"
    anchors = [(tag, i) for i in range(n)]
    for v in anchors:
        g.add_vertex(v, anchor_idem)
    emit = _emit_dual if w.star else _emit_standard
    for i, letter in enumerate(w.letters):
        emit(g, letter, anchors[i], anchors[(i + 1) % n], ("x", i))
    g.check()
    return g


def star_check(g: DecoratedGraph) -> List[str]:
    """Violations of the valence-two adjacency constraint on a reduced graph."""
    out = []
    ends: Dict = {v: [] for v in g.vertices}
    for s, t, label in g.edges:
        if label is IDENT:
            out.append("identity edge present")
            return out
        ends[s].append(("out", label))
        ends[t].append(("in", label))
    cls_bullet = {
        ("out", "1"): 1, ("out", "12"): 1, ("out", "123"): 1,
        ("in", "12"): 2, ("in", "2"): 2, ("out", "3"): 2,
    }
    cls_circle = {
        ("in", "1"): 1, ("out", "23"): 1, ("out", "2"): 1,
        ("in", "123"): 2, ("in", "23"): 2, ("in", "3"): 2,
    }
    for v, ee in ends.items():
        if len(ee) != 2:
            out.append(f"vertex {v} has valence {len(ee)}")
            continue
        table = cls_bullet if g.vertices[v] == "0" else cls_circle
        classes = sorted(table.get(e, 0) for e in ee)
        if classes != [1, 2]:
            out.append(f"vertex {v} violates the adjacency constraint")
    return out


class NotExpressible(WordError):
    pass


def _recognize(chunk: List[Tuple[str, int]], star: bool) -> Letter:
    """Letter for a list of (label, direction) steps between anchors."""
    k = len(chunk) - 1
    if not star:
        if chunk == [("12", 1)]:
            return Letter("d", 0)
        if chunk == [("12", -1)]:
            return Letter("c", 0)
        first, last, mids = chunk[0], chunk[-1], chunk[1:-1]
        if all(m == ("23", 1) for m in mids):
            if first == ("3", 1) and last == ("2", 1):
                return Letter("a", k)
            if first == ("3", 1) and last == ("1", -1):
                return Letter("c", k)
            if first == ("123", 1) and last == ("2", 1):
                return Letter("d", k)
            if first == ("123", 1) and last == ("1", -1):
                return Letter("b", k)
        if all(m == ("23", -1) for m in mids):
            if first == ("2", -1) and last == ("3", -1):
                return Letter("a", -k)
            if first == ("2", -1) and last == ("123", -1):
                return Letter("c", -k)
            if first == ("1", 1) and last == ("3", -1):
                return Letter("d", -k)
            if first == ("1", 1) and last == ("123", -1):
                return Letter("b", -k)
    else:
        if chunk == [("23", 1)]:
            return Letter("d", 0, True)
        if chunk == [("23", -1)]:
            return Letter("c", 0, True)
        first, last, mids = chunk[0], chunk[-1], chunk[1:-1]
        if all(m == ("12", 1) for m in mids):
            if first == ("3", -1) and last == ("123", 1):
                return Letter("a", k, True)
            if first == ("3", -1) and last == ("1", 1):
                return Letter("c", k, True)
            if first == ("2", 1) and last == ("123", 1):
                return Letter("d", k, True)
            if first == ("2", 1) and last == ("1", 1):
                return Letter("b", k, True)
        if all(m == ("12", -1) for m in mids):
            if first == ("123", -1) and last == ("2", -1):
                return Letter("c", -k, True)
            if first == ("123", -1) and last == ("3", 1):
                return Letter("a", -k, True)
            if first == ("1", -1) and last == ("2", -1):
                return Letter("b", -k, True)
            if first == ("1", -1) and last == ("3", 1):
                return Letter("d", -k, True)
    raise WordError(f"unrecognized segment {chunk}")


def graph_to_words(g: DecoratedGraph, alphabet: str = "standard") -> List[LoopWord]:
    """Break each cycle of a reduced valence-two graph into a word.

    alphabet 'standard' breaks at i0 vertices, 'dual' at i1 vertices; raises
    NotExpressible for components without an anchor of the requested kind.
    """
    if alphabet not in ("standard", "dual"):
        raise WordError(f"unknown alphabet {alphabet!r}")
    star = alphabet == "dual"
    anchor_idem = "1" if star else "0"
    bad = star_check(g)
    if bad:
        raise GraphError("; ".join(bad))
    # edge-end incidence: vertex -> [(edge index, end)], end 0 = src, 1 = tgt
    inc: Dict = {v: [] for v in g.vertices}
    for i, (s, t, _) in enumerate(g.edges):
        inc[s].append((i, 0))
        inc[t].append((i, 1))
    words: List[LoopWord] = []
    seen_edges = set()
    for comp in g.components():
        anchors = sorted(v for v in comp if g.vertices[v] == anchor_idem)
        if not anchors:
            raise NotExpressible(
                f"component not expressible in {alphabet} notation"
            )
        start = anchors[0]
        ei, end = inc[start][0]
        steps: List[Tuple[str, int]] = []
        breaks: List[int] = []
        v = start
        while True:
            s, t, label = g.edges[ei]
            seen_edges.add(ei)
            direction = 1 if end == 0 else -1
            steps.append((label, direction))
            v = t if direction == 1 else s
            if g.vertices[v] == anchor_idem:
                breaks.append(len(steps))
            arrived = (ei, 1 - end)
            nxt = [e for e in inc[v] if e != arrived]
            if len(nxt) != 1:
                raise GraphError(f"vertex {v} is not valence two")
            ei, end = nxt[0]
            if v == start and len(steps) >= 1 and (ei, end) == inc[start][0]:
                break
        letters = []
        prev = 0
        for b in breaks:
            letters.append(_recognize(steps[prev:b], star))
            prev = b
        words.append(LoopWord(letters))
    if len(seen_edges) != len(g.edges):
        raise GraphError("graph has extra structure beyond its cycles")
    return words


def loop_to_graph(l: Loop) -> DecoratedGraph:
    return word_to_graph(l.word)


def graph_to_loops(g: DecoratedGraph, alphabet: str = "standard") -> List[Loop]:
    return [Loop(canonicalize(w)) for w in graph_to_words(g, alphabet)]


def dual_word(l: Loop) -> LoopWord:
    """Canonical word of the loop in the alphabet its representative does
    not use; raises NotExpressible for single-idempotent loops."""
    other = "standard" if l.star else "dual"
    g = word_to_graph(l.word)
    try:
        words = graph_to_words(g, other)
    except NotExpressible:
        raise NotExpressible("no dual representation") from None
    assert len(words) == 1
    return canonicalize(words[0])


def dualize(l: Loop) -> Loop:
    """The loop rewritten through the opposite alphabet.

    Loops compare equal across alphabets, so this returns the same class;
    it exists to expose the conversion (and its failure for one-idempotent
    loops) as an operation.  Use word_in for the written form.
    """
    dual_word(l)
    return l


def word_in(l: Loop, alphabet: str) -> LoopWord:
    """The loop's canonical word in the requested alphabet."""
    want_star = alphabet == "dual"
    if l.star == want_star:
        return l.word
    return dual_word(l)


def expressible(l: Loop, alphabet: str) -> bool:
    try:
        word_in(l, alphabet)
        return True
    except NotExpressible:
        return False


# ---------------------------------------------------------------------------
# gradings and Euler characteristics


@dataclass(frozen=True)
class GradedLoop:
    loop: Loop
    graph: DecoratedGraph
    gradings: Dict

    def chi(self) -> Tuple[int, int]:
        chi_bullet = chi_circle = 0
        for v, idem in self.graph.vertices.items():
            sign = 1 if self.gradings[v] == 0 else -1
            if idem == "0":
                chi_bullet += sign
            else:
                chi_circle += sign
        return chi_bullet, chi_circle


def assign_grading(l: Loop) -> GradedLoop:
    """Relative grading with the first anchor of the canonical word at 0."""
    g = word_to_graph(l.word)
    return GradedLoop(l, g, g.gradings())


def euler_chars(l: Loop) -> Tuple[int, int]:
    """(chi_bullet, chi_circle) with the base vertex counted positively."""
    return assign_grading(l).chi()


def rational_longitude(l) -> Optional["Slope"]:
    """The distinguished slope -chi_circle/chi_bullet, or None when both
    characteristics vanish (no rational-homology-solid-torus behaviour).

    Accepts a Loop or a list of Loops; for a list the per-loop longitudes
    must agree.
    """
    from .twists import Slope

    if isinstance(l, Loop):
        cb, cc = euler_chars(l)
        if cb == 0 and cc == 0:
            return None
        return Slope(-cc, cb)
    slopes = {rational_longitude(x) for x in l}
    if len(slopes) != 1:
        raise WordError("components have different rational longitudes")
    return slopes.pop()


def mirror(l: Loop) -> Loop:
    """Negate every subscript (an involution on valid loops)."""
    return Loop.from_letters([x.negate() for x in l.word])


def is_solid_torus_like(l: Loop) -> bool:
    """Whether the loop lies in the twist orbit of an all-e word."""
    from .detection import solid_torus_like

    return solid_torus_like(l)
