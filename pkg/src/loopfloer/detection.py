"""L-space slope detection: slope predicates, simple-loop normalization,
and exact L-space intervals.

Slope sets live on the circle of extended rationals with the cyclic order
that increases through the finite rationals and wraps at infinity.  A closed
arc is traversed from its first endpoint to its second in that order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .loops import (
    Letter,
    Loop,
    LoopWord,
    NotExpressible,
    euler_chars,
    expressible,
    rational_longitude,
    word_in,
)
from .twists import (
    INFINITY,
    Slope,
    TwistWord,
    ZERO_SLOPE,
    ex,
    reparametrize,
    twist,
)


# ---------------------------------------------------------------------------
# cyclic order and slope sets


def _ordinal(x: Slope, origin: Slope):
    """Sort key for travelling from origin in increasing cyclic order."""
    if x == origin:
        return (0, Fraction(0))
    if origin.is_infinite:
        return (1, x.fraction())
    xo = origin.fraction()
    if not x.is_infinite:
        xf = x.fraction()
        if xf > xo:
            return (1, xf)
        return (3, xf)
    return (2, Fraction(0))


def in_closed_arc(x: Slope, a: Slope, b: Slope) -> bool:
    """Whether x lies on the closed arc from a to b."""
    if a == b:
        return x == a
    return _ordinal(x, a) <= _ordinal(b, a)


def in_open_arc(x: Slope, a: Slope, b: Slope) -> bool:
    if x == a or x == b or a == b:
        return False
    return in_closed_arc(x, a, b)


def arc_in_open_arc(c: Slope, d: Slope, a: Slope, b: Slope) -> bool:
    """Whether the closed arc [c -> d] is contained in the open arc (a -> b)."""
    if a == b:
        return False
    if not (in_open_arc(c, a, b) and in_open_arc(d, a, b)):
        return False
    return _ordinal(c, a) <= _ordinal(d, a)


@dataclass(frozen=True)
class SlopeSet:
    """Empty, All, AllExcept(a), or the closed arc from a to b."""

    kind: str  # 'empty' | 'all' | 'all_except' | 'closed_arc'
    a: Optional[Slope] = None
    b: Optional[Slope] = None
    certified: str = field(default="exact", compare=False)

    @staticmethod
    def empty() -> "SlopeSet":
        return SlopeSet("empty")

    @staticmethod
    def all() -> "SlopeSet":
        return SlopeSet("all")

    @staticmethod
    def all_except(s: Slope) -> "SlopeSet":
        return SlopeSet("all_except", s)

    @staticmethod
    def closed_arc(a: Slope, b: Slope) -> "SlopeSet":
        return SlopeSet("closed_arc", a, b)

    def contains(self, s: Slope) -> bool:
        if self.kind == "empty":
            return False
        if self.kind == "all":
            return True
        if self.kind == "all_except":
            return s != self.a
        return in_closed_arc(s, self.a, self.b)

    def interior_contains(self, s: Slope) -> bool:
        if self.kind in ("empty", "all", "all_except"):
            return self.contains(s)
        if self.a == self.b:
            return False
        return in_open_arc(s, self.a, self.b)

    def reciprocal(self) -> "SlopeSet":
        """Image under p/q -> q/p, which reverses the cyclic order."""
        if self.kind in ("empty", "all"):
            return self
        if self.kind == "all_except":
            return SlopeSet("all_except", self.a.reciprocal(), certified=self.certified)
        return SlopeSet(
            "closed_arc",
            self.b.reciprocal(),
            self.a.reciprocal(),
            certified=self.certified,
        )

    def complement_closure(self) -> "SlopeSet":
        """Closure of the complement of the interior (the non-strict set)."""
        if self.kind == "empty":
            return SlopeSet("all", certified=self.certified)
        if self.kind == "all":
            return SlopeSet("empty", certified=self.certified)
        if self.kind == "all_except":
            return SlopeSet("closed_arc", self.a, self.a, certified=self.certified)
        return SlopeSet("closed_arc", self.b, self.a, certified=self.certified)

    def intersect(self, other: "SlopeSet") -> "SlopeSet":
        cert = self.certified if other.certified == "exact" else other.certified
        if self.kind == "all":
            return _with_cert(other, cert)
        if other.kind == "all":
            return _with_cert(self, cert)
        if self.kind == "empty" or other.kind == "empty":
            return SlopeSet("empty", certified=cert)
        if self.kind == "all_except" and other.kind == "all_except":
            if self.a == other.a:
                return _with_cert(self, cert)
            raise ValueError("intersection is not an interval (two punctures)")
        if self.kind == "all_except":
            if other.contains(self.a):
                raise ValueError("intersection is not an interval")
            return _with_cert(other, cert)
        if other.kind == "all_except":
            return other.intersect(self)
        return _arc_intersection(self, other, cert)

    def __str__(self):
        tail = "" if self.certified == "exact" else f" [{self.certified}]"
        if self.kind == "empty":
            return "empty" + tail
        if self.kind == "all":
            return "all" + tail
        if self.kind == "all_except":
            return f"all-except {self.a}" + tail
        return f"closed-arc {self.a} {self.b}" + tail


def _with_cert(s: SlopeSet, cert: str) -> SlopeSet:
    return SlopeSet(s.kind, s.a, s.b, certified=cert)


def _arc_intersection(x: SlopeSet, y: SlopeSet, cert: str) -> SlopeSet:
    # both closed arcs; keep only the connected outcomes and refuse the rest
    a, b, c, d = x.a, x.b, y.a, y.b
    c_in = in_closed_arc(c, a, b)
    d_in = in_closed_arc(d, a, b)
    a_in = in_closed_arc(a, c, d)
    b_in = in_closed_arc(b, c, d)
    if c_in and d_in and a_in and b_in:
        # equal arcs or a disconnected double overlap
        if x == SlopeSet("closed_arc", c, d):
            return SlopeSet("closed_arc", a, b, certified=cert)
        raise ValueError("intersection is not an interval (double overlap)")
    if c_in and d_in:
        return SlopeSet("closed_arc", c, d, certified=cert)
    if a_in and b_in:
        return SlopeSet("closed_arc", a, b, certified=cert)
    if c_in and b_in:
        return SlopeSet("closed_arc", c, b, certified=cert)
    if a_in and d_in:
        return SlopeSet("closed_arc", a, d, certified=cert)
    return SlopeSet("empty", certified=cert)


def stern_brocot_slopes(depth: int) -> List[Slope]:
    """All slopes of tree depth at most `depth`, in increasing cyclic order
    starting at infinity (so the list is a full circle walk)."""
    fracs: List[Fraction] = []

    def descend(lo: Tuple[int, int], hi: Tuple[int, int], d: int) -> None:
        if d > depth:
            return
        med = (lo[0] + hi[0], lo[1] + hi[1])
        descend(lo, med, d + 1)
        fracs.append(Fraction(med[0], med[1]))
        descend(med, hi, d + 1)

    # positive wing between 0/1 and 1/0, negative wing between -1/0 and 0/1
    descend((0, 1), (1, 0), 1)
    positives = list(fracs)
    slopes = [INFINITY]
    slopes += [Slope(-f.numerator, f.denominator) for f in reversed(positives)]
    slopes.append(ZERO_SLOPE)
    slopes += [Slope(f.numerator, f.denominator) for f in positives]
    return slopes


# ---------------------------------------------------------------------------
# slope predicates


def _loops(loops) -> List[Loop]:
    return [loops] if isinstance(loops, Loop) else list(loops)


def _unstable_counts(w: LoopWord) -> Tuple[int, int]:
    nc = sum(1 for x in w.letters if x.family == "c")
    nd = sum(1 for x in w.letters if x.family == "d")
    return nc, nd


def _infinity_is_lspace(l: Loop) -> bool:
    if not expressible(l, "standard"):
        return False
    nc, nd = _unstable_counts(word_in(l, "standard"))
    return (nc == 0) != (nd == 0)  # one family present, not both, not neither


def is_lspace_slope(loops, s: Slope) -> bool:
    """Whether filling every loop at s yields an L-space summand.

    At infinity: the standard word must show d-family unstable chains and no
    c-family ones, up to reversing the loop; slope zero uses the dual word;
    other slopes reparametrize first.
    """
    for l in _loops(loops):
        if s == ZERO_SLOPE:
            if not expressible(l, "dual"):
                return False
            nc, nd = _unstable_counts(word_in(l, "dual"))
            if not ((nc == 0) != (nd == 0)):
                return False
        else:
            if not _infinity_is_lspace(reparametrize(l, s)):
                return False
    return True


def _strict_decomposition(letters: Sequence[Letter]) -> bool:
    """Cyclic decomposition into d_k pieces and b_{+-1} a_{-+1} pairs, with a
    d present and the two pair kinds never adjacent."""
    n = len(letters)
    kinds: List[Optional[int]] = [None] * n  # +1 / -1 for pair starts, 0 for d
    i = 0
    has_d = False
    used = [False] * n
    for i in range(n):
        if used[i]:
            continue
        x = letters[i]
        if x.family == "d":
            kinds[i] = 0
            used[i] = True
            has_d = True
        elif x.family == "b" and abs(x.subscript) == 1:
            j = (i + 1) % n
            y = letters[j]
            if used[j] or y.family != "a" or y.subscript != -x.subscript:
                return False
            kinds[i] = x.subscript
            used[i] = used[j] = True
        elif x.family == "a":
            # must be consumed by the preceding b; check the wrap-around case
            j = (i - 1) % n
            y = letters[j]
            if y.family != "b" or y.subscript != -x.subscript or abs(x.subscript) != 1:
                return False
            if not used[j]:
                kinds[j] = y.subscript
                used[j] = used[i] = True
            else:
                used[i] = True
        else:
            return False
    if not has_d:
        return False
    # opposite pair kinds must never sit next to each other around the cycle
    pieces = [k for k in kinds if k is not None]
    m = len(pieces)
    for idx in range(m):
        k1, k2 = pieces[idx], pieces[(idx + 1) % m]
        if k1 and k2 and k1 != k2:
            return False
    return True


def _infinity_is_strict(l: Loop) -> bool:
    if not expressible(l, "standard"):
        return False
    w = word_in(l, "standard")
    return _strict_decomposition(w.letters) or _strict_decomposition(
        w.reversal().letters
    )


def is_strict_lspace_slope(loops, s: Slope) -> bool:
    """Interior membership in the L-space slope set."""
    for l in _loops(loops):
        if s == ZERO_SLOPE:
            if not expressible(l, "dual"):
                return False
            w = word_in(l, "dual")
            if not (
                _strict_decomposition(w.letters)
                or _strict_decomposition(w.reversal().letters)
            ):
                return False
        else:
            if not _infinity_is_strict(reparametrize(l, s)):
                return False
    return True


def sign_class(l: Loop) -> Optional[int]:
    """+1 or -1 when both preferred slopes are L-space slopes.

    A loop with both the zero and infinity fillings L-spaces admits a
    standard word with d-letters and no c-letters containing, in exactly one
    sign, a subword from the witness family: an adjacent pair b_i a_j, a
    pair from {a_i, d_i} x {b_j, d_j} separated only by e letters, or a
    single letter of absolute subscript at least two (all subscripts of the
    stated sign).  +1 certifies that every positive slope is an L-space
    slope, -1 every negative one; None when the hypothesis fails.
    """
    if not expressible(l, "standard"):
        return None
    w = word_in(l, "standard")
    nc, nd = _unstable_counts(w)
    if nc and nd:
        return None
    if nc:
        w = w.reversal()
    elif nd == 0:
        return None
    found = {s for s in (1, -1) if _has_witness(w.letters, s)}
    if len(found) != 1:
        return None
    return found.pop()


def _has_witness(letters: Sequence[Letter], sign: int) -> bool:
    n = len(letters)
    if any(sign * x.subscript >= 2 for x in letters):
        return True
    for i, x in enumerate(letters):
        y = letters[(i + 1) % n]
        if (
            x.family == "b"
            and y.family == "a"
            and sign * x.subscript >= 1
            and sign * y.subscript >= 1
        ):
            return True
        # {a, d} then e letters then {b, d}; cyclic subwords may wrap, so a
        # lone d_1 witnesses through itself
        if x.family in "ad" and sign * x.subscript >= 1:
            j = (i + 1) % n
            steps = 0
            while letters[j].family == "d" and letters[j].subscript == 0 and steps < n:
                j = (j + 1) % n
                steps += 1
            y = letters[j]
            if y.family in "bd" and sign * y.subscript >= 1:
                return True
    return False


# ---------------------------------------------------------------------------
# all-unstable forms and the normalization algorithm


def _std_families(l: Loop) -> set:
    return {x.family for x in word_in(l, "standard").letters}


def _all_unstable_std(l: Loop) -> bool:
    return expressible(l, "standard") and _std_families(l) <= {"c", "d"}


def _all_unstable_dual(l: Loop) -> bool:
    return expressible(l, "dual") and {
        x.family for x in word_in(l, "dual").letters
    } <= {"c", "d"}


def _necessary_conditions(l: Loop) -> bool:
    """Stable-chain sign conditions every twist-reduction of an all-unstable
    loop satisfies; failing them certifies non-simplicity."""
    for alphabet in ("standard", "dual"):
        try:
            w = word_in(l, alphabet)
        except NotExpressible:
            continue
        subs = [x.subscript for x in w.letters if x.family in "ab"]
        if subs and not (all(s > 0 for s in subs) or all(s < 0 for s in subs)):
            return False
    return True


def _ks_of(l: Loop) -> Optional[Tuple[int, ...]]:
    """Standard-unstable subscripts as an all-d word, or None."""
    if not _all_unstable_std(l):
        return None
    w = word_in(l, "standard")
    fams = {x.family for x in w.letters}
    if fams <= {"d"}:
        return tuple(x.subscript for x in w.letters)
    if fams <= {"c"}:
        return tuple(x.subscript for x in w.reversal().letters)
    raise AssertionError("mixed unstable families in a valid word")


def loop_from_ks(ks: Sequence[int], star: bool = False) -> Loop:
    return Loop.from_letters([Letter("d", k, star) for k in ks])


from functools import lru_cache


@lru_cache(maxsize=8192)
def all_unstable_form(l: Loop, depth: int = 6):
    """Search the twist orbit for an all-unstable standard word.

    Returns (subscripts, TwistWord) with TwistWord(l) equal to the all-d loop,
    or None when the bounded search is exhausted.  Cached: treat the returned
    TwistWord as read-only.
    """
    if not _necessary_conditions(l):
        return None
    start = l

    def finish(loop: Loop, word: TwistWord):
        ks = _ks_of(loop)
        if ks is not None:
            return ks, word
        # dual-unstable: push the dual subscripts positive, then read off
        w = word_in(loop, "dual")
        subs = [x.subscript if x.family == "d" else -x.subscript for x in w.letters]
        n = max(0, 1 - min(subs))
        word = TwistWord(word.ops + [("du", n)]) if n else word
        shifted = twist(loop, "du", n) if n else loop
        ks = _ks_of(shifted)
        if ks is None:
            return None
        return ks, word

    if _all_unstable_std(start) or _all_unstable_dual(start):
        out = finish(start, TwistWord())
        if out is not None:
            return out
    seen = {start}
    frontier: List[Tuple[Loop, TwistWord]] = [(start, TwistWord())]
    for _ in range(depth):
        nxt: List[Tuple[Loop, TwistWord]] = []
        for loop, word in frontier:
            for kind, n in (("tw", 1), ("tw", -1), ("du", 1), ("du", -1)):
                cand = twist(loop, kind, n)
                if cand in seen:
                    continue
                seen.add(cand)
                cw = TwistWord(word.ops + [(kind, n)])
                if _all_unstable_std(cand) or _all_unstable_dual(cand):
                    out = finish(cand, cw)
                    if out is not None:
                        return out
                nxt.append((cand, cw))
        frontier = nxt
    return None


def is_simple(l: Loop, depth: int = 6) -> str:
    """'yes', 'no', or 'unknown': can twists remove all stable chains?"""
    if not _necessary_conditions(l):
        return "no"
    if all_unstable_form(l, depth) is not None:
        return "yes"
    return "unknown"


def ex_on_ks(ks: Sequence[int]) -> Tuple[int, ...]:
    """ex on an all-d word with subscripts of one sign, as subscripts.

    For nonnegative input (not all zero) the output is nonpositive and vice
    versa; all-zero and mixed-sign words are rejected.
    """
    ks = list(ks)
    if all(k == 0 for k in ks):
        raise ValueError("ex of an all-e word leaves the standard alphabet")
    if all(k <= 0 for k in ks):
        return tuple(-x for x in ex_on_ks([-k for k in ks]))
    if not all(k >= 0 for k in ks):
        raise ValueError("ex fast path needs subscripts of one sign")
    n = len(ks)
    nonzero = [i for i, k in enumerate(ks) if k != 0]
    pieces: List[List[int]] = []
    for idx, i in enumerate(nonzero):
        j = nonzero[(idx + 1) % len(nonzero)]
        zeros = (j - i - 1) % n
        pieces.append([0] * (ks[i] - 1) + [zeros + 1])
    # reverse and negate the c-word to read it as an all-d word
    flat = [x for piece in pieces for x in piece]
    return tuple(-x for x in reversed(flat))


@dataclass
class NormalizeResult:
    case: int  # 1, 2, or 3
    log: TwistWord
    terminal: Tuple[int, ...]  # terminal all-d word subscripts


class MeasureViolated(RuntimeError):
    pass


def _case2(ks: Sequence[int]) -> bool:
    if not all(-1 <= k <= 1 for k in ks):
        return False
    signs = [k for k in ks if k != 0]
    if not signs:
        return False
    if len(signs) == 1:
        return True
    return all(signs[i] != signs[(i + 1) % len(signs)] for i in range(len(signs)))


def _case3(ks: Sequence[int], sign: int) -> bool:
    """sign +1: all k >= -1, some -1, every -1 followed by zeros then k > 0."""
    lo = [sign * k for k in ks]
    if not all(k >= -1 for k in lo):
        return False
    n = len(lo)
    hits = [i for i, k in enumerate(lo) if k == -1]
    if not hits:
        return False
    for i in hits:
        j = (i + 1) % n
        while lo[j] == 0:
            j = (j + 1) % n
            if j == i:
                return False
        if lo[j] < 0:
            return False
    return not _case2(ks)


def normalize_simple(l, depth: int = 6, sign: int = 1) -> NormalizeResult:
    """Twist-reduction of a simple loop to one of three terminal shapes.

    Accepts a Loop (searched for its all-unstable form first) or a raw
    subscript sequence.  sign +1 runs the algorithm as stated; sign -1 runs
    the mirrored variant that locates the other interval endpoint.
    """
    log = TwistWord()
    if isinstance(l, Loop):
        found = all_unstable_form(l, depth)
        if found is None:
            raise NotSimple(f"no all-unstable representative within depth {depth}")
        ks, cached_log = found
        log = TwistWord(list(cached_log.ops))
    else:
        ks = tuple(l)
    # Work with the mirrored word for the sign -1 run: tw^n there is tw^{-n}
    # on the true loop while ex commutes with mirroring, so logged twists
    # carry a sign factor and ex entries do not.
    ks = tuple(sign * k for k in ks)

    def log_tw(n: int) -> None:
        if n:
            log.append("tw", sign * n)

    m = min(ks)
    log_tw(-m)
    ks = tuple(k - m for k in ks)
    kappa = sum(1 for k in ks if k == 0)
    cap = (kappa + 2) * (max(ks) + 2) + len(ks) + 16
    for _ in range(cap):
        if all(k == 0 for k in ks):
            return NormalizeResult(1, log, tuple(sign * k for k in ks))
        t = tuple(k - 1 for k in ks)
        if _case2(t):
            log_tw(-1)
            return NormalizeResult(2, log, tuple(sign * k for k in t))
        if _case3(t, 1):
            log_tw(-1)
            return NormalizeResult(3, log, tuple(sign * k for k in t))
        nxt = ex_on_ks(ks)  # nonpositive output
        log.append("ex", 1)
        m = min(nxt)
        log_tw(-m)
        ks = tuple(k - m for k in nxt)
    raise MeasureViolated("normalization failed to terminate within its measure")


class NotSimple(ValueError):
    pass


@lru_cache(maxsize=8192)
def solid_torus_like(l: Loop, depth: int = 6) -> bool:
    """Whether the loop lies in the twist orbit of an all-e word."""
    if not expressible(l, "standard"):
        return True  # all dual-e words are twists of all-e words
    if not expressible(l, "dual"):
        return True  # all-e standard word
    if not _necessary_conditions(l):
        return False
    found = all_unstable_form(l, depth)
    if found is None:
        return False
    res = normalize_simple(loop_from_ks(found[0]), depth)
    if res.case == 1:
        return True
    if res.case == 2:
        return sum(1 for k in res.terminal if k != 0) == 1
    return False


# ---------------------------------------------------------------------------
# intervals


def lspace_interval(loops, depth: int = 6, sweep_depth: int = 6, allow_sweep: bool = True) -> SlopeSet:
    """The set of L-space slopes, intersected over the given loops.

    Simple loops get exact answers via the normalization algorithm; loops the
    bounded search cannot certify fall back to a sweep certified only to the
    stated depth (or raise when sweeping is disabled).
    """
    out = SlopeSet.all()
    for l in _loops(loops):
        out = out.intersect(_interval_one_cached(l, depth, sweep_depth, allow_sweep))
    return out


@lru_cache(maxsize=8192)
def _interval_one_cached(l: Loop, depth: int, sweep_depth: int, allow_sweep: bool) -> SlopeSet:
    return _interval_one(l, depth, sweep_depth, allow_sweep)


def _interval_one(l: Loop, depth: int, sweep_depth: int, allow_sweep: bool) -> SlopeSet:
    chi_b, chi_c = euler_chars(l)
    if chi_b == 0 and chi_c == 0:
        return SlopeSet.empty()
    longitude = rational_longitude(l)
    found = all_unstable_form(l, depth)
    if found is None:
        if not allow_sweep:
            raise NotSimple("not certified simple and sweeping is disabled")
        return _sweep_interval(l, sweep_depth)
    ks, pre = found
    results = {}
    for sign in (1, -1):
        res = normalize_simple(tuple(ks), sign=sign)
        results[sign] = res
    if results[1].case in (1, 2) or results[-1].case in (1, 2):
        return SlopeSet.all_except(longitude)
    endpoints = []
    for sign in (1, -1):
        w = TwistWord(pre.ops + results[sign].log.ops)
        endpoints.append(w.pullback(ZERO_SLOPE))
    e1, e2 = endpoints
    if e1 == e2:
        return SlopeSet.closed_arc(e1, e1)
    return _orient_arc(l, e1, e2)


def _orient_arc(l: Loop, e1: Slope, e2: Slope) -> SlopeSet:
    for a, b in ((e1, e2), (e2, e1)):
        inside = _arc_midpoint(a, b)
        outside = _arc_midpoint(b, a)
        if is_lspace_slope(l, inside) and not is_lspace_slope(l, outside):
            return SlopeSet.closed_arc(a, b)
    raise AssertionError(f"could not orient interval endpoints {e1}, {e2}")


def _arc_midpoint(a: Slope, b: Slope) -> Slope:
    """Some slope strictly inside the arc from a to b (assumes a != b)."""
    if a.is_infinite:  # arc is (-infinity, b)
        f = b.fraction()
        out = Slope(f.numerator - f.denominator, f.denominator)
        assert in_open_arc(out, a, b)
        return out
    if b.is_infinite:  # arc is (a, +infinity)
        f = a.fraction()
        out = Slope(f.numerator + f.denominator, f.denominator)
        assert in_open_arc(out, a, b)
        return out
    fa, fb = a.fraction(), b.fraction()
    if fa < fb:
        out = Slope(a.p + b.p, a.q + b.q)  # mediant sits strictly between
        assert in_open_arc(out, a, b)
        return out
    return INFINITY  # the arc wraps through infinity


def _sweep_interval(l: Loop, depth: int) -> SlopeSet:
    cert = f"sweep-certified to depth {depth}"
    slopes = stern_brocot_slopes(depth)
    longitude = rational_longitude(l)
    if longitude is not None and longitude not in slopes:
        slopes.append(longitude)
        slopes = _sort_cyclic(slopes)
    member = [is_lspace_slope(l, s) for s in slopes]
    n = len(slopes)
    changes = [i for i in range(n) if member[i] != member[(i + 1) % n]]
    if len(changes) == 0:
        if all(member):
            raise AssertionError("a loop cannot have every slope an L-space slope")
        return SlopeSet("empty", certified=cert)
    if len(changes) != 2:
        raise AssertionError("membership changed more than twice around the circle")
    i, j = changes
    if member[(i + 1) % n]:
        first_true, last_true = (i + 1) % n, j
    else:
        first_true, last_true = (j + 1) % n, i
    if (
        longitude is not None
        and not member[slopes.index(longitude)]
        and sum(member) == n - 1
    ):
        return SlopeSet("all_except", longitude, certified=cert)
    a = _refine_endpoint(l, slopes[(first_true - 1) % n], slopes[first_true], depth)
    b = _refine_endpoint(l, slopes[(last_true + 1) % n], slopes[last_true], depth)
    return SlopeSet("closed_arc", a, b, certified=cert)


def _refine_endpoint(l: Loop, out: Slope, inside: Slope, depth: int) -> Slope:
    for _ in range(depth):
        med = Slope(out.p + inside.p, out.q + inside.q)
        if is_lspace_slope(l, med):
            inside = med
        else:
            out = med
    return inside


def _sort_cyclic(slopes: List[Slope]) -> List[Slope]:
    return sorted(set(slopes), key=lambda s: _ordinal(s, INFINITY))
