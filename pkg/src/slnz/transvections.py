"""Words in (a, b) for every elementary transvection T_{i,j} of SL_n(Z).

Two families are provided:

* ``recursive`` -- adjacent lower transvections by conjugating b, then
  commutators for increasing distance, then the last column and the rest of
  the upper triangle. Length grows exponentially in n, so this scheme is
  capped at ``RECURSIVE_MAX_RANK``.
* ``balanced`` -- first-column words built by a halving recursion, shifted
  into place by conjugation with powers of a. Lengths are O(n^2).

Tables are memoised per (n, scheme); the sub-words are shared.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .matrix import InvalidTransvectionError, RankError, epsilon
from .words import IDENTITY, Word, commutator, concat, conjugate, invert, word

RECURSIVE_MAX_RANK = 8

A = Word.letter("a")
B = Word.letter("b")


class WordScheme(str, Enum):
    RECURSIVE = "recursive"
    BALANCED = "balanced"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SplitIndices:
    """Halving split for the first-column recursion at distance r >= 3."""

    r: int

    def __post_init__(self):
        if self.r < 3:
            raise ValueError(f"split needs r >= 3, got {self.r}")

    @property
    def m(self) -> int:
        return self.r // 2 + 1

    @property
    def d(self) -> int:
        return self.r - self.m + 1


def _check_rank(n: int) -> None:
    if n < 3:
        raise RankError(f"rank must be >= 3, got {n}")


def _check_pair(n: int, i: int, j: int) -> None:
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"indices ({i}, {j}) out of range for rank {n}")
    if i == j:
        raise InvalidTransvectionError(f"transvection needs i != j, got ({i}, {j})")


def shift(w: Word, p: int, q: int, k: int, n: int) -> Word:
    """Conjugate a word for T_{p,q} by a^k to get one for T_{p+k,q+k}.

    Only valid when the shift does not wrap around the cycle.
    """
    assert p + k <= n and q + k <= n, f"shift of T_{p},{q} by {k} wraps at rank {n}"
    return conjugate(w, k)


def corner_word(n: int) -> Word:
    """(a^-(n-1) b a^(n-1))^eps_n, a word for T_{1,n}."""
    w = conjugate(B, n - 1)
    return w if epsilon(n) == 1 else invert(w)


# --- recursive family -------------------------------------------------------


@lru_cache(maxsize=None)
def _recursive_table(n: int) -> dict[tuple[int, int], Word]:
    t: dict[tuple[int, int], Word] = {}
    for r in range(1, n):
        t[r + 1, r] = conjugate(B, r - 1)
    t[1, n] = corner_word(n)
    for d in range(2, n):
        for j in range(1, n - d + 1):
            i = j + d
            t[i, j] = commutator(t[i, j + 1], t[j + 1, j])
    for i in range(2, n):
        t[i, n] = commutator(t[i, 1], t[1, n])
    for i in range(1, n):
        for j in range(i + 1, n):
            t[i, j] = commutator(t[i, n], t[n, j])
    return t


def tau_recursive(n: int, i: int, j: int) -> Word:
    _check_rank(n)
    _check_pair(n, i, j)
    if n > RECURSIVE_MAX_RANK:
        raise ValueError(
            f"recursive words are only expanded for n <= {RECURSIVE_MAX_RANK}"
        )
    return _recursive_table(n)[i, j]


# --- balanced family --------------------------------------------------------


@lru_cache(maxsize=None)
def _omega(r: int) -> Word:
    # independent of the ambient rank; the rank only bounds r
    if r == 2:
        return B
    s = SplitIndices(r)
    return commutator(shift(_omega(s.d), s.d, 1, s.m - 1, r), _omega(s.m))


def omega(n: int, r: int) -> Word:
    """Balanced word for T_{r,1}, 2 <= r <= n."""
    if not 2 <= r <= n:
        raise IndexError(f"omega index {r} out of range for rank {n}")
    return _omega(r)


@lru_cache(maxsize=None)
def _balanced_table(n: int) -> dict[tuple[int, int], Word]:
    t: dict[tuple[int, int], Word] = {}
    for j in range(1, n):
        for i in range(j + 1, n + 1):
            t[i, j] = shift(_omega(i - j + 1), i - j + 1, 1, j - 1, n)
    rho = {n: corner_word(n)}
    for s in range(2, n):
        rho[s] = commutator(rho[n], t[n, s])
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            t[i, j] = shift(rho[j - i + 1], 1, j - i + 1, i - 1, n)
    return t


def rho(n: int, s: int) -> Word:
    """Balanced word for T_{1,s}, 2 <= s <= n."""
    _check_rank(n)
    if not 2 <= s <= n:
        raise IndexError(f"rho index {s} out of range for rank {n}")
    return _balanced_table(n)[1, s]


def tau_balanced(n: int, i: int, j: int) -> Word:
    _check_rank(n)
    _check_pair(n, i, j)
    return _balanced_table(n)[i, j]


def tau(n: int, i: int, j: int, scheme: WordScheme | str = WordScheme.BALANCED) -> Word:
    scheme = WordScheme(scheme)
    if scheme is WordScheme.RECURSIVE:
        return tau_recursive(n, i, j)
    return tau_balanced(n, i, j)


def tau_table(n: int, scheme: WordScheme | str = WordScheme.BALANCED) -> dict[tuple[int, int], Word]:
    """All transvection words of rank n. Do not mutate the result."""
    _check_rank(n)
    scheme = WordScheme(scheme)
    if scheme is WordScheme.RECURSIVE:
        if n > RECURSIVE_MAX_RANK:
            raise ValueError(
                f"recursive words are only expanded for n <= {RECURSIVE_MAX_RANK}"
            )
        return _recursive_table(n)
    return _balanced_table(n)


def sigma_block(n: int, r: int, scheme: WordScheme | str = WordScheme.BALANCED) -> Word:
    """tau_{r,r+1} tau_{r+1,r}^-1 tau_{r,r+1}."""
    t = tau_table(n, scheme)
    return concat(concat(t[r, r + 1], invert(t[r + 1, r])), t[r, r + 1])


def a_word_blocks(n: int, scheme: WordScheme | str = WordScheme.BALANCED) -> list[Word]:
    """The n-1 blocks of the a-word, leftmost (r = n-1) first."""
    _check_rank(n)
    return [sigma_block(n, r, scheme) for r in range(n - 1, 0, -1)]


def a_word(n: int, scheme: WordScheme | str = WordScheme.BALANCED) -> Word:
    return word(*a_word_blocks(n, scheme))


def w_bridge(u: str = "u", v: str = "v") -> Word:
    """(u v u^-1) v^-1 (u v^-1 u^-1) v^-1 (u v u^-1) v."""
    U, V = Word.letter(u), Word.letter(v)
    Ui, Vi = invert(U), invert(V)
    w = IDENTITY
    for part in (U, V, Ui, Vi, U, Vi, Ui, Vi, U, V, Ui, V):
        w = concat(w, part)
    return w
