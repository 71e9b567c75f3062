"""Freely reduced words stored as runs of generator powers.

A word is a tuple of ``(letter, exponent)`` runs with nonzero exponents and
no two adjacent runs on the same letter, so it is always freely reduced and
``len(w)`` is its freely reduced length (the sum of ``|exponent|``).

Canonical text form: ``a^-2*b*a^2``; the empty word prints as ``1``.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping

Run = tuple[str, int]

_RUNS: dict[Run, Run] = {}


def _run(letter: str, exp: int) -> Run:
    # interned so that large relator sets share run objects
    key = (letter, exp)
    r = _RUNS.get(key)
    if r is None:
        if len(_RUNS) > 1 << 16:
            _RUNS.clear()
        r = _RUNS[key] = key
    return r


def _reduce_into(out: list[Run], runs: Iterable[Run]) -> list[Run]:
    for letter, exp in runs:
        if not exp:
            continue
        if out and out[-1][0] == letter:
            e = out[-1][1] + exp
            if e:
                out[-1] = _run(letter, e)
            else:
                out.pop()
        else:
            out.append(_run(letter, exp))
    return out


class Word:
    __slots__ = ("runs", "_len", "_hash")

    def __init__(self, runs: Iterable[Run] = ()):
        self.runs: tuple[Run, ...] = tuple(_reduce_into([], runs))
        self._len = sum(abs(e) for _, e in self.runs)
        self._hash = None

    @classmethod
    def _trusted(cls, runs: tuple[Run, ...], length: int | None = None) -> Word:
        w = cls.__new__(cls)
        w.runs = runs
        w._len = sum(abs(e) for _, e in runs) if length is None else length
        w._hash = None
        return w

    @classmethod
    def letter(cls, name: str, exp: int = 1) -> Word:
        return cls(((name, exp),))

    def __len__(self) -> int:
        return self._len

    def __bool__(self) -> bool:
        return bool(self.runs)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Word) and self.runs == other.runs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.runs)
        return self._hash

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    def __str__(self) -> str:
        if not self.runs:
            return "1"
        return "*".join(g if e == 1 else f"{g}^{e}" for g, e in self.runs)

    def __mul__(self, other: Word) -> Word:
        return concat(self, other)

    def __invert__(self) -> Word:
        return invert(self)

    def __pow__(self, k: int) -> Word:
        return power(self, k)

    @property
    def letters(self) -> set[str]:
        return {g for g, _ in self.runs}

    def num_runs(self) -> int:
        return len(self.runs)

    def expand(self) -> list[tuple[str, int]]:
        """Letter-by-letter form with exponents +-1."""
        out = []
        for g, e in self.runs:
            s = 1 if e > 0 else -1
            out.extend([(g, s)] * abs(e))
        return out

    def substitute(self, images: Mapping[str, Word]) -> Word:
        """Apply the letter substitution ``g -> images[g]`` and reduce."""
        out: list[Run] = []
        cache: dict[Run, Word] = {}
        for run in self.runs:
            w = cache.get(run)
            if w is None:
                g, e = run
                w = cache[run] = power(images[g], e) if g in images else Word.letter(g, e)
            _reduce_into(out, w.runs)
        return Word._trusted(tuple(out))


IDENTITY = Word()


def concat(u: Word, v: Word) -> Word:
    if not u.runs:
        return v
    if not v.runs:
        return u
    left, right = u.runs, v.runs
    i, j = len(left), 0
    merged = None
    removed = 0
    while i and j < len(right):
        g, e = left[i - 1]
        h, f = right[j]
        if g != h:
            break
        i -= 1
        j += 1
        if e + f:
            merged = _run(g, e + f)
            removed += abs(e) + abs(f) - abs(e + f)
            break
        removed += 2 * abs(e)
    mid = (merged,) if merged else ()
    return Word._trusted(left[:i] + mid + right[j:], u._len + v._len - removed)


def invert(u: Word) -> Word:
    return Word._trusted(tuple(_run(g, -e) for g, e in reversed(u.runs)), u._len)


def power(u: Word, k: int) -> Word:
    if k < 0:
        return power(invert(u), -k)
    result = IDENTITY
    base = u
    while k:
        if k & 1:
            result = concat(result, base)
        k >>= 1
        if k:
            base = concat(base, base)
    return result


def commutator(u: Word, v: Word) -> Word:
    """[u, v] = u^-1 v^-1 u v."""
    return concat(concat(invert(u), invert(v)), concat(u, v))


def conjugate(u: Word, k: int, by: str = "a") -> Word:
    """a^-k u a^k."""
    if not k:
        return u
    return concat(concat(Word.letter(by, -k), u), Word.letter(by, k))


def word(*parts: Word | str | tuple[str, int]) -> Word:
    """Multiply a mixture of words, single letters and (letter, exp) pairs."""
    out: list[Run] = []
    for p in parts:
        if isinstance(p, Word):
            _reduce_into(out, p.runs)
        elif isinstance(p, str):
            _reduce_into(out, ((p, 1),))
        else:
            _reduce_into(out, (p,))
    return Word._trusted(tuple(out))


_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


def parse_word(text: str) -> Word:
    """Inverse of ``str(Word)``; accepts the canonical ``*``-joined form."""
    text = text.strip()
    if text in ("", "1"):
        return IDENTITY
    runs = []
    for tok in text.split("*"):
        m = _TOKEN.match(tok.strip())
        if not m:
            raise ValueError(f"bad word token {tok!r}")
        runs.append((m.group(1), int(m.group(2)) if m.group(2) else 1))
    return Word(runs)
