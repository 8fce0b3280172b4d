"""Signed letters, strings, bands and the string automaton.

Walks are read left to right: the letter ``w[i+1]`` starts where ``w[i]``
ends.  A direct letter ``a`` walks from s(a) to t(a), an inverse letter
``a^-1`` walks from t(a) to s(a).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from ._kernels import bool_closure
from .quiver_core import BoundQuiver, QuiverError


class Letter(NamedTuple):
    arrow: str
    sign: int  # +1 direct, -1 inverse

    @property
    def direct(self):
        return self.sign > 0

    def inverse(self):
        return Letter(self.arrow, -self.sign)

    def __str__(self):
        return self.arrow if self.sign > 0 else self.arrow + "^-1"


def D(a):
    return Letter(a, 1)


def Inv(a):
    return Letter(a, -1)


class UnknownArrowError(QuiverError):
    pass


class NotABandError(ValueError):
    pass


class InvalidStringError(ValueError):
    pass


@dataclass(frozen=True)
class StringWord:
    """A string: non-empty letters, or the trivial string at ``vertex``."""
    letters: tuple = ()
    vertex: str | None = None

    def __post_init__(self):
        if not self.letters and self.vertex is None:
            raise ValueError("a trivial string needs its vertex")
        if self.letters and self.vertex is not None:
            object.__setattr__(self, "vertex", None)

    @property
    def is_trivial(self):
        return not self.letters

    def __len__(self):
        return len(self.letters)

    def inverse(self) -> "StringWord":
        if self.is_trivial:
            return self
        return StringWord(tuple(u.inverse() for u in reversed(self.letters)))

    def __str__(self):
        if self.is_trivial:
            return "e:" + self.vertex
        return " ".join(str(u) for u in self.letters)


@dataclass(frozen=True)
class BandWord:
    letters: tuple

    def __len__(self):
        return len(self.letters)

    def as_string(self) -> StringWord:
        return StringWord(self.letters)

    def __str__(self):
        return "band: " + " ".join(str(u) for u in self.letters)


@dataclass(frozen=True)
class StringVerdict:
    ok: bool
    index: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


# ------------------------------------------------------------ letter data

def letter_source(bq, u: Letter):
    a = bq.arrow[u.arrow]
    return a.source if u.sign > 0 else a.target


def letter_target(bq, u: Letter):
    a = bq.arrow[u.arrow]
    return a.target if u.sign > 0 else a.source


def all_letters(bq) -> list:
    return [Letter(a.name, s) for a in bq.arrows for s in (1, -1)]


def pair_defect(bq, u: Letter, w: Letter):
    """Why ``u w`` is not a string fragment, or None if it is one."""
    if letter_target(bq, u) != letter_source(bq, w):
        return "not composable"
    if w.arrow == u.arrow and w.sign == -u.sign:
        return "not reduced"
    if u.sign > 0 and w.sign > 0 and (u.arrow, w.arrow) in bq.relations:
        return f"{u.arrow}{w.arrow} lies in the relations"
    if u.sign < 0 and w.sign < 0 and (w.arrow, u.arrow) in bq.relations:
        return f"{w.arrow}{u.arrow} lies in the relations"
    return None


def valid_pair(bq, u, w) -> bool:
    return pair_defect(bq, u, w) is None


def walk_vertices(bq, w) -> list:
    """Vertices v0..vn visited by a string (one vertex if trivial)."""
    if isinstance(w, (StringWord,)) and w.is_trivial:
        return [w.vertex]
    letters = w.letters if isinstance(w, (StringWord, BandWord)) else tuple(w)
    out = [letter_source(bq, letters[0])]
    for u in letters:
        out.append(letter_target(bq, u))
    return out


def string_start(bq, s: StringWord):
    return s.vertex if s.is_trivial else letter_source(bq, s.letters[0])


def string_end(bq, s: StringWord):
    return s.vertex if s.is_trivial else letter_target(bq, s.letters[-1])


# ------------------------------------------------------------ parsing

def _parse_letter(bq, tok):
    if tok.endswith("^-1"):
        name, sign = tok[:-3], -1
    else:
        name, sign = tok, 1
    if name not in bq.arrow:
        raise UnknownArrowError(f"unknown arrow {name!r}")
    return Letter(name, sign)


def parse_string(bq, text: str) -> StringWord:
    """Parse ``a41 a12^-1 a52`` or ``e:v``; validity is checked."""
    text = text.strip()
    if text.startswith("e:"):
        v = text[2:].strip()
        if v not in bq.vertex_index:
            raise QuiverError(f"unknown vertex {v!r}")
        return StringWord((), v)
    toks = text.split()
    if not toks:
        raise InvalidStringError("empty string literal")
    s = StringWord(tuple(_parse_letter(bq, t) for t in toks))
    verdict = is_string(bq, s)
    if not verdict:
        raise InvalidStringError(f"not a string at index {verdict.index}: {verdict.reason}")
    return s


def parse_band(bq, text: str) -> BandWord:
    text = text.strip()
    if text.startswith("band:"):
        text = text[5:]
    return make_band(bq, [_parse_letter(bq, t) for t in text.split()])


# ------------------------------------------------------------ validity

def is_string(bq, w) -> StringVerdict:
    """Check that w (StringWord or letter sequence) is a string."""
    if isinstance(w, StringWord):
        if w.is_trivial:
            return StringVerdict(w.vertex in bq.vertex_index, None if w.vertex in bq.vertex_index else 0,
                                 "" if w.vertex in bq.vertex_index else "unknown vertex")
        letters = w.letters
    else:
        letters = tuple(w)
    for u in letters:
        if u.arrow not in bq.arrow:
            raise UnknownArrowError(f"unknown arrow {u.arrow!r}")
    if not letters:
        return StringVerdict(False, 0, "empty word without a vertex")
    for i in range(1, len(letters)):
        why = pair_defect(bq, letters[i - 1], letters[i])
        if why:
            return StringVerdict(False, i, why)
    return StringVerdict(True)


def require_string(bq, s):
    v = is_string(bq, s)
    if not v:
        raise InvalidStringError(f"not a string at index {v.index}: {v.reason}")
    return s


def _key(letters):
    return tuple((u.arrow, -u.sign) for u in letters)


def canonical_string(s: StringWord) -> StringWord:
    """The smaller of s and its inverse in a fixed letter order."""
    if s.is_trivial:
        return s
    inv = s.inverse()
    return s if _key(s.letters) <= _key(inv.letters) else inv


def _is_primitive(letters):
    n = len(letters)
    for d in range(1, n):
        if n % d == 0 and letters[:d] * (n // d) == letters:
            return False
    return True


def band_defect(bq, letters):
    letters = tuple(letters)
    if not letters:
        return "empty word"
    for u in letters:
        if u.arrow not in bq.arrow:
            raise UnknownArrowError(f"unknown arrow {u.arrow!r}")
    for i in range(len(letters)):
        why = pair_defect(bq, letters[i - 1], letters[i])
        if why:
            return f"{why} at index {i}"
    if not _is_primitive(letters):
        return "a proper power"
    return None


def make_band(bq, letters) -> BandWord:
    why = band_defect(bq, letters)
    if why:
        raise NotABandError(why)
    return BandWord(tuple(letters))


def canonical_band(bq, b) -> BandWord:
    """Minimum over all rotations of b and of its inverse."""
    letters = tuple(b.letters if isinstance(b, BandWord) else b)
    why = band_defect(bq, letters)
    if why:
        raise NotABandError(why)
    inv = tuple(u.inverse() for u in reversed(letters))
    cands = [w[i:] + w[:i] for w in (letters, inv) for i in range(len(w))]
    return BandWord(min(cands, key=_key))


# ------------------------------------------------------------ enumeration

def _extensions(bq):
    nxt = {}
    for u in all_letters(bq):
        v = letter_target(bq, u)
        cands = [Letter(a, 1) for a in bq.out_arrows[v]] + [Letter(a, -1) for a in bq.in_arrows[v]]
        nxt[u] = [w for w in cands if valid_pair(bq, u, w)]
    return nxt


def iter_letter_strings(bq, max_len, letter_filter: Callable | None = None):
    """Yield every non-trivial string (as a letter tuple) of length <= max_len.

    Both a string and its inverse are produced.
    """
    if max_len < 1:
        return
    nxt = _extensions(bq)
    ok = (lambda u: True) if letter_filter is None else letter_filter
    for u0 in all_letters(bq):
        if not ok(u0):
            continue
        stack = [(u0,)]
        while stack:
            w = stack.pop()
            yield w
            if len(w) < max_len:
                for x in nxt[w[-1]]:
                    if ok(x):
                        stack.append(w + (x,))


def enumerate_strings(bq, max_len: int, letter_filter: Callable | None = None) -> list:
    """All string classes of length <= max_len, trivial strings included."""
    out = {StringWord((), v) for v in bq.vertices}
    for w in iter_letter_strings(bq, max_len, letter_filter):
        out.add(canonical_string(StringWord(w)))
    return sorted(out, key=string_sort_key)


def string_sort_key(s: StringWord):
    if s.is_trivial:
        return (0, (), s.vertex)
    return (len(s.letters), _key(s.letters), "")


def enumerate_bands(bq, max_len: int) -> list:
    """All band classes of length <= max_len."""
    found = set()
    for w in iter_letter_strings(bq, max_len):
        if letter_target(bq, w[-1]) != letter_source(bq, w[0]):
            continue
        if valid_pair(bq, w[-1], w[0]) and _is_primitive(w):
            found.add(canonical_band(bq, w))
    return sorted(found, key=lambda b: (len(b), _key(b.letters)))


# ------------------------------------------------------------ automaton

@dataclass(frozen=True)
class TrivialState:
    vertex: str

    def __str__(self):
        return "e:" + self.vertex


class StringAutomaton:
    """Letters as states, valid two-letter fragments as transitions.

    A walk through the automaton spells a string and every non-trivial
    string is such a walk, because all string conditions are two-local.
    Trivial strings are isolated states.
    """

    def __init__(self, bq: BoundQuiver, letter_filter: Callable | None = None):
        self.bq = bq
        ok = (lambda u: True) if letter_filter is None else letter_filter
        self.letters = [u for u in all_letters(bq) if ok(u)]
        self.trivial = [TrivialState(v) for v in bq.vertices]
        self.states = self.letters + self.trivial
        self.index = {s: i for i, s in enumerate(self.states)}
        n = len(self.states)
        adj = np.zeros((n, n), dtype=bool)
        for i, u in enumerate(self.letters):
            for j, w in enumerate(self.letters):
                if valid_pair(bq, u, w):
                    adj[i, j] = True
        self.adj = adj
        self._reach = None

    @property
    def reach(self):
        """reach[i, j]: some string starts with state i and ends with state j."""
        if self._reach is None:
            r = bool_closure(self.adj)
            r |= np.eye(len(self.states), dtype=bool)
            self._reach = r
        return self._reach

    def transitions(self, u):
        i = self.index[u]
        return [self.states[j] for j in np.nonzero(self.adj[i])[0]]

    def has_cycle(self):
        r = bool_closure(self.adj)
        return bool(np.any(np.diag(r)))


def reachable_end_pairs(automaton: StringAutomaton, left=None, right=None) -> set:
    """Pairs (l, r) such that some string begins in state l and ends in state r."""
    left = automaton.states if left is None else list(left)
    right = automaton.states if right is None else list(right)
    R = automaton.reach
    out = set()
    for l in left:
        i = automaton.index[l]
        for r in right:
            if R[i, automaton.index[r]]:
                out.add((l, r))
    return out


def harvest_end_pairs(bq, max_len) -> set:
    """End pairs read off from brute-force enumeration (test oracle)."""
    out = {(TrivialState(v), TrivialState(v)) for v in bq.vertices}
    for w in iter_letter_strings(bq, max_len):
        out.add((w[0], w[-1]))
    return out
