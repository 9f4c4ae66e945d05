import pytest

from loopfloer import Loop, Slope, euler_chars, mirror, rational_longitude
from loopfloer.loops import (
    Letter,
    LoopWord,
    NotExpressible,
    WordError,
    canonicalize,
    dual_word,
    dualize,
    format_word,
    graph_to_words,
    parse_loops,
    parse_word,
    validate,
    word_in,
    word_to_graph,
    word_violations,
)


def test_parse_and_format_roundtrip():
    for text in ["a1 b1 c-2", "e", "e*", "d*1 d*0 d*0", "c0 c0", "a-3 b2 a1 b-1"]:
        w = parse_word(text)
        assert parse_word(format_word(w)) == w


def test_parse_rejects_bad_tokens():
    with pytest.raises(WordError):
        parse_word("a0")
    with pytest.raises(WordError):
        parse_word("b0")
    with pytest.raises(WordError):
        parse_word("e2")
    with pytest.raises(WordError):
        parse_word("q1")
    with pytest.raises(WordError):
        parse_word("a1 b*1")  # mixed alphabets


def test_e_aliases():
    assert parse_word("e").letters == (Letter("d", 0),)
    assert parse_word("e*").letters == (Letter("d", 0, True),)


def test_validate_examples():
    assert not word_violations((Letter("c", 1),))
    assert word_violations((Letter("a", 1),))
    assert not word_violations(parse_word("a1 b1 c-2").letters)
    assert validate(parse_word("d3")) == []


def test_canonicalize_rotation_and_reversal():
    a = Loop.from_text("e d1")
    b = Loop.from_text("d1 e")
    assert a == b
    # reversal of the trefoil word letter by letter
    assert Loop.from_text("a1 b1 c-2") == Loop.from_text("d2 b-1 a-1")
    assert Loop.from_text("d3") == Loop.from_text("c-3")
    # canonicalize is idempotent
    w = parse_word("d2 b-1 a-1")
    assert canonicalize(canonicalize(w)) == canonicalize(w)


def test_word_graph_roundtrip(corpus):
    for loop in corpus:
        g = word_to_graph(loop.word)
        back = graph_to_words(g, "dual" if loop.star else "standard")
        assert len(back) == 1
        assert canonicalize(back[0]) == loop.word


def test_trefoil_graph_shape():
    g = word_to_graph(parse_word("a1 b1 c-2"))
    assert len(g.vertices) == 7
    idems = sorted(g.vertices.values())
    assert idems.count("0") == 3 and idems.count("1") == 4


def test_single_e_graph():
    g = word_to_graph(parse_word("e"))
    assert len(g.vertices) == 1
    assert g.edges[0][2] == "12"


def test_dualize_examples():
    # loops compare equal across alphabets, so these exercise the converter
    assert Loop.from_text("a1 b1 c-2") == Loop.from_text("a*1 e* b*1 c*-1")
    assert Loop.from_text("d3") == Loop.from_text("d*1 d*0 d*0")
    assert Loop.from_text("a1 b1") == Loop.from_text("d*1 d*-1")
    # and the word views give the expected dual words
    dw = word_in(Loop.from_text("d3"), "dual")
    assert canonicalize(dw) == canonicalize(parse_word("d*1 d*0 d*0"))


def test_dualize_rejects_single_idempotent():
    with pytest.raises(NotExpressible):
        dual_word(Loop.from_text("e"))
    with pytest.raises(NotExpressible):
        dual_word(Loop.from_text("e* e*"))
    assert dualize(Loop.from_text("d3")) == Loop.from_text("d3")


def test_dual_word_involution(corpus):
    for loop in corpus:
        try:
            dw = dual_word(loop)
        except NotExpressible:
            continue
        assert Loop(dw) == loop


def test_dual_stable_chain_observation(corpus):
    # dual stable chains <-> adjacent nonzero subscripts of opposite sign
    for loop in corpus:
        try:
            std = word_in(loop, "standard")
            dual = word_in(loop, "dual")
        except NotExpressible:
            continue
        subs = [x.subscript for x in std.letters if x.subscript != 0]
        opposite = any(
            subs[i] * subs[(i + 1) % len(subs)] < 0 for i in range(len(subs))
        ) if subs else False
        has_dual_stable = any(x.family in "ab" for x in dual.letters)
        assert opposite == has_dual_stable, str(loop)


def test_euler_characteristics():
    assert euler_chars(Loop.from_text("d-4 d-3")) == (2, -7)
    cb, cc = euler_chars(Loop.from_text("e* e*"))
    assert (cb, abs(cc)) == (0, 2)
    cb, cc = euler_chars(Loop.from_text("a1 b1"))
    assert (abs(cb), abs(cc)) == (0, 2)
    # all-d loops: chi_bullet counts letters, chi_circle sums subscripts
    assert euler_chars(Loop.from_text("d1 d0 d0")) == (3, 1)


def test_rational_longitude():
    assert rational_longitude(Loop.from_text("d-4 d-3")) == Slope(7, 2)
    assert rational_longitude(Loop.from_text("e e e")) == Slope(0, 1)
    assert rational_longitude(Loop.from_text("e* e*")) == Slope(1, 0)
    assert rational_longitude(Loop.from_text("a1 b1 a-1 b-1")) is None
    assert rational_longitude(Loop.from_text("a1 b1 c-2")) == Slope(0, 1)


def test_grading_examples():
    from loopfloer.loops import assign_grading

    # endpoints of an all-d chain share their grading
    gl = assign_grading(Loop.from_text("d3"))
    bullets = [v for v, idem in gl.graph.vertices.items() if idem == "0"]
    assert len({gl.gradings[v] for v in bullets}) == 1
    # the two i0 generators of (a1 b1) have opposite gradings
    gl = assign_grading(Loop.from_text("a1 b1"))
    bullets = [v for v, idem in gl.graph.vertices.items() if idem == "0"]
    assert {gl.gradings[v] for v in bullets} == {0, 1}


def test_mirror_is_involution(corpus):
    for loop in corpus:
        assert mirror(mirror(loop)) == loop


def test_parse_loops_multi_and_comments():
    loops = parse_loops("# comment\n(e e) | a1 b1 # tail\n")
    assert loops == [Loop.from_text("e e"), Loop.from_text("a1 b1")]
    with pytest.raises(WordError):
        parse_loops("# nothing")


def test_textual_dual_rule_cross_check(corpus):
    """The letter-level rewriting rule, with the zero-letter count fixed to
    |k|-1 copies (d*0 after unbarred letters, c*0 after barred ones), agrees
    with the graph conversion."""
    table = {
        # pair of neighbour types -> dual letter type (family, barred?)
        ("abar", "b"): ("a", False), ("abar", "d"): ("a", False),
        ("cbar", "b"): ("a", False), ("cbar", "d"): ("a", False),
        ("bbar", "a"): ("a", True), ("bbar", "c"): ("a", True),
        ("dbar", "a"): ("a", True), ("dbar", "c"): ("a", True),
        ("a", "bbar"): ("b", False), ("a", "cbar"): ("b", False),
        ("d", "bbar"): ("b", False), ("d", "cbar"): ("b", False),
        ("b", "abar"): ("b", True), ("b", "dbar"): ("b", True),
        ("c", "abar"): ("b", True), ("c", "dbar"): ("b", True),
        ("abar", "bbar"): ("c", False), ("abar", "cbar"): ("c", False),
        ("cbar", "bbar"): ("c", False), ("cbar", "cbar"): ("c", False),
        ("b", "a"): ("c", True), ("b", "c"): ("c", True),
        ("c", "a"): ("c", True), ("c", "c"): ("c", True),
        ("a", "b"): ("d", False), ("a", "d"): ("d", False),
        ("d", "b"): ("d", False), ("d", "d"): ("d", False),
        ("bbar", "abar"): ("d", True), ("bbar", "dbar"): ("d", True),
        ("dbar", "abar"): ("d", True), ("dbar", "dbar"): ("d", True),
    }

    def letter_type(x):
        if x.subscript > 0:
            return x.family
        if x.family == "c":
            return "dbar"
        if x.family == "d":
            return "cbar"
        return x.family + "bar"

    def textual_dual(word):
        us = [(i, x) for i, x in enumerate(word.letters) if x.subscript != 0]
        if not us:
            return None
        n = len(word)
        out = []
        for idx, (i, x) in enumerate(us):
            j, y = us[(idx + 1) % len(us)]
            # zero letters inside x itself
            zero_fam = "d" if x.subscript > 0 else "c"
            out += [Letter(zero_fam, 0, True)] * (abs(x.subscript) - 1)
            gap = (j - i - 1) % n
            fam, barred = table[(letter_type(x), letter_type(y))]
            sub = gap + 1
            if barred:  # bars swap the c and d families and negate
                fam = {"a": "a", "b": "b", "c": "d", "d": "c"}[fam]
                sub = -sub
            out.append(Letter(fam, sub, True))
        return out

    checked = 0
    for loop in corpus:
        try:
            std = word_in(loop, "standard")
            dual = word_in(loop, "dual")
        except NotExpressible:
            continue
        letters = textual_dual(std)
        if letters is None:
            continue
        assert canonicalize(LoopWord(letters)) == canonicalize(dual), str(loop)
        checked += 1
    assert checked >= 20
