"""Loop operations tw / du / ex, slope arithmetic, and fast Dehn fillings.

Conventions, pinned by the framed-solid-torus calibration chain and the
trefoil-complement family:

* tw acts on a standard word by c_j -> c_{j-1}, d_j -> d_{j+1} (a, b fixed);
  du acts the same way on the dual word; loops without the relevant notation
  are fixed.
* A slope p/q of a loop corresponds to the slope (p - nq)/q of tw^n(loop)
  and to p/(q - np) of du^n(loop); ex sends p/q to -q/p.
* reparametrize(loop, p/q) applies tw^{a1}, du^{a2}, ..., du^{a_{2m}} for an
  even-length continued fraction [a1, ..., a_{2m}] of p/q, after which the
  requested slope sits at infinity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

from .loops import (
    Letter,
    Loop,
    LoopWord,
    NotExpressible,
    canonicalize,
    euler_chars,
    expressible,
    word_in,
)


@dataclass(frozen=True)
class Slope:
    """A reduced extended rational p/q with q >= 0; infinity is 1/0."""

    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if p == 0 and q == 0:
            raise ValueError("0/0 is not a slope")
        g = gcd(abs(p), abs(q))
        p, q = p // g, q // g
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @staticmethod
    def parse(text: str) -> "Slope":
        text = text.strip()
        if text in ("inf", "infty", "oo", "1/0"):
            return INFINITY
        if "/" in text:
            a, b = text.split("/")
            return Slope(int(a), int(b))
        return Slope(int(text), 1)

    @property
    def is_infinite(self) -> bool:
        return self.q == 0

    def fraction(self) -> Optional[Fraction]:
        return None if self.is_infinite else Fraction(self.p, self.q)

    def reciprocal(self) -> "Slope":
        return Slope(self.q, self.p)

    def __str__(self):
        if self.is_infinite:
            return "1/0"
        if self.q == 1:
            return str(self.p)
        return f"{self.p}/{self.q}"

    def __repr__(self):
        return f"Slope({self})"


INFINITY = Slope(1, 0)
ZERO_SLOPE = Slope(0, 1)


def continued_fraction(s: Slope, parity: str = "any") -> List[int]:
    """Continued fraction [a1, ..., an] with s = a1 + 1/(a2 + ...).

    Terms alternate floor (odd positions) and ceiling (even positions), which
    keeps them nonzero past the first; parity 'even'/'odd' adjusts the length
    with the tail identities [..., a] = [..., a-1, 1] and [..., a, 1] =
    [..., a+1].  Infinity yields [].
    """
    if parity not in ("any", "even", "odd"):
        raise ValueError(f"bad parity {parity!r}")
    if s.is_infinite:
        if parity == "odd":
            raise ValueError("no odd-length continued fraction for 1/0")
        return []
    terms: List[int] = []
    value = Fraction(s.p, s.q)
    use_floor = True
    while True:
        a = value.__floor__() if use_floor else value.__ceil__()
        rem = value - a
        terms.append(int(a))
        if rem == 0:
            break
        value = 1 / rem
        use_floor = not use_floor
    if parity != "any" and len(terms) % 2 != (0 if parity == "even" else 1):
        if terms[-1] == 1 and len(terms) >= 2:
            terms = terms[:-2] + [terms[-2] + 1]
        else:
            terms = terms[:-1] + [terms[-1] - 1, 1]
    assert cf_value(terms) == Fraction(s.p, s.q), (s, terms)
    return terms


def cf_value(terms: Sequence[int]) -> Optional[Fraction]:
    """Value of a continued fraction; None stands for an infinite value."""
    value: Optional[Fraction] = None
    for a in reversed(terms):
        if value is None:
            value = Fraction(a)
        elif value == 0:
            value = None  # a + 1/0
        else:
            value = a + 1 / value
    return value


# matrices act on column vectors (p, q); these are the slope transfers
def _tw_matrix(n: int):
    return ((1, -n), (0, 1))


def _du_matrix(n: int):
    return ((1, 0), (-n, 1))


_EX_MATRIX = ((0, -1), (1, 0))


def _mat_mul(a, b):
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


@dataclass
class TwistWord:
    """A composite of tw/du/ex moves, applied left to right."""

    ops: List[Tuple[str, int]] = field(default_factory=list)

    def append(self, kind: str, n: int = 1) -> None:
        if kind not in ("tw", "du", "ex"):
            raise ValueError(f"unknown operation {kind!r}")
        if n != 0 or kind == "ex":
            self.ops.append((kind, n))

    def matrix(self):
        m = ((1, 0), (0, 1))
        for kind, n in self.ops:
            step = _EX_MATRIX if kind == "ex" else (_tw_matrix(n) if kind == "tw" else _du_matrix(n))
            m = _mat_mul(step, m)
        return m

    def transfer(self, s: Slope) -> Slope:
        """The slope of W(loop) matching the slope s of loop."""
        m = self.matrix()
        return Slope(m[0][0] * s.p + m[0][1] * s.q, m[1][0] * s.p + m[1][1] * s.q)

    def pullback(self, s: Slope) -> Slope:
        """The slope of loop matching the slope s of W(loop)."""
        m = self.matrix()
        det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
        assert abs(det) == 1
        inv = ((m[1][1] * det, -m[0][1] * det), (-m[1][0] * det, m[0][0] * det))
        return Slope(inv[0][0] * s.p + inv[0][1] * s.q, inv[1][0] * s.p + inv[1][1] * s.q)

    def apply(self, l: Loop) -> Loop:
        for kind, n in self.ops:
            l = ex(l) if kind == "ex" else twist(l, kind, n)
        return l

    def inverse(self) -> "TwistWord":
        out = TwistWord()
        for kind, n in reversed(self.ops):
            if kind == "ex":
                # ex^{-1} = tw^{-1} du tw^{-1}
                out.append("tw", -1)
                out.append("du", 1)
                out.append("tw", -1)
            else:
                out.append(kind, -n)
        return out

    def __str__(self):
        return " ".join(f"{k}^{n}" if k != "ex" else "ex" for k, n in self.ops) or "id"


def twist(l: Loop, kind: str, n: int = 1) -> Loop:
    """Apply tw^n or du^n; kinds 'tw-1'/'du-1' negate n for convenience."""
    if kind in ("tw-1", "du-1"):
        kind, n = kind[:2], -n
    if kind not in ("tw", "du"):
        raise ValueError(f"unknown twist kind {kind!r}")
    if n == 0:
        return l
    want = "standard" if kind == "tw" else "dual"
    try:
        w = word_in(l, want)
    except NotExpressible:
        return l  # loops without the notation are fixed
    shifted = []
    for x in w.letters:
        if x.family == "c":
            shifted.append(Letter("c", x.subscript - n, x.star))
        elif x.family == "d":
            shifted.append(Letter("d", x.subscript + n, x.star))
        else:
            shifted.append(x)
    return Loop(canonicalize(LoopWord(shifted)))


def ex(l: Loop) -> Loop:
    """Negate every subscript and switch alphabet (tw then du^-1 then tw)."""
    w = l.word
    return Loop(canonicalize(LoopWord([
        Letter(x.family, -x.subscript, not x.star) for x in w.letters
    ])))


def ex_composite(l: Loop) -> Loop:
    """ex computed from its definition; used to cross-check `ex`."""
    return twist(twist(twist(l, "tw", 1), "du", -1), "tw", 1)


def reparametrization_word(s: Slope) -> TwistWord:
    """Twists taking the slope s to infinity (empty for s = infinity)."""
    w = TwistWord()
    if s.is_infinite:
        return w
    terms = continued_fraction(s, "even")
    for i, a in enumerate(terms):
        w.append("tw" if i % 2 == 0 else "du", a)
    return w


from functools import lru_cache


@lru_cache(maxsize=16384)
def _reparametrize_one(l: Loop, s: Slope) -> Loop:
    w = reparametrization_word(s)
    out = w.apply(l)
    assert w.transfer(s) == INFINITY
    return out


def reparametrize(l, s: Slope):
    """The loop (or list of loops) whose infinity filling is the s filling."""
    if isinstance(l, Loop):
        return _reparametrize_one(l, s)
    return [_reparametrize_one(x, s) for x in l]


@dataclass(frozen=True)
class FillingResult:
    dim: int
    chi_abs: int
    per_loop: Tuple[Tuple[int, int], ...]
    is_lspace: bool

    def __str__(self):
        return f"dim={self.dim} chi={self.chi_abs} lspace={'yes' if self.is_lspace else 'no'}"


def _count_standard_filling(l: Loop) -> Tuple[int, int]:
    """(dim, |chi|) of the infinity filling of a single loop."""
    if not expressible(l, "standard"):
        return 2, 0  # two generators of opposite grading
    w = word_in(l, "standard")
    n_bullet = len(w)
    n_a = sum(1 for x in w.letters if x.family == "a")
    chi_b, _ = euler_chars(l)
    return n_bullet - 2 * n_a, abs(chi_b)


def _count_dual_filling(l: Loop) -> Tuple[int, int]:
    """(dim, |chi|) of the zero filling of a single loop."""
    if not expressible(l, "dual"):
        return 2, 0
    w = word_in(l, "dual")
    n_circle = len(w)
    n_bstar = sum(1 for x in w.letters if x.family == "b")
    _, chi_c = euler_chars(l)
    return n_circle - 2 * n_bstar, abs(chi_c)


def fill(loops, s: Slope) -> FillingResult:
    """Fast-path abstract Dehn filling of a loop or list of loops.

    Reparametrizes so the requested slope sits at infinity, then counts:
    generators are the i0 vertices, with one cancelling differential per
    a-family chain; at slope zero the symmetric dual-side count is used.
    """
    if isinstance(loops, Loop):
        loops = [loops]
    per = []
    for l in loops:
        if s == ZERO_SLOPE:
            per.append(_count_dual_filling(l))
        else:
            per.append(_count_standard_filling(reparametrize(l, s)))
    dim = sum(d for d, _ in per)
    chi = sum(c for _, c in per)
    ok = all(d == c != 0 for d, c in per)
    return FillingResult(dim, chi, tuple(per), ok)
