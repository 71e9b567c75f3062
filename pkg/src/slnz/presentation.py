"""Two-generator relator sets for SL_n(Z) and its variants.

Relator order is fixed: commutativity (lex by index 4-tuple), Steinberg
(lex by triple), torsion, then defining relators. Output is therefore
deterministic for a given (n, scheme, flavor, options).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import permutations
from typing import Iterator

from .matrix import RankError
from .transvections import A, WordScheme, a_word, tau_table, w_bridge
from .words import Word, commutator, concat, invert, power


class Flavor(str, Enum):
    BASE = "base"
    INFINITE = "infinite-infinite"
    FINITE = "finite-finite"
    PSL = "psl"

    def __str__(self) -> str:
        return self.value


KINDS = ("commutativity", "steinberg", "torsion", "a-defining", "variant-defining")


@dataclass(frozen=True)
class Relator:
    kind: str
    indices: tuple[int, ...]
    word: Word

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown relator kind {self.kind!r}")
        if self.kind == "commutativity":
            i, j, k, l = self.indices
            if not (i != j and k != l and (i, j) != (k, l) and i != l and j != k):
                raise ValueError(f"indices {self.indices} do not commute")
        elif self.kind == "steinberg":
            if len(self.indices) != 3 or len(set(self.indices)) != 3:
                raise ValueError(f"steinberg indices {self.indices} not distinct")

    def __len__(self) -> int:
        return len(self.word)


@dataclass(frozen=True)
class Presentation:
    rank: int
    generators: tuple[str, str]
    scheme: WordScheme
    flavor: Flavor
    relators: tuple[Relator, ...] = field(repr=False)

    def __len__(self) -> int:
        return len(self.relators)

    def stats(self) -> dict:
        return stats(self)


# --- counting ---------------------------------------------------------------


def commuting_partners(n: int, i: int, j: int) -> list[tuple[int, int]]:
    return [
        (k, l)
        for k in range(1, n + 1)
        for l in range(1, n + 1)
        if k != l and (k, l) != (i, j) and i != l and j != k
    ]


def commuting_pair_count(n: int) -> int:
    """Admissible partners (k, l) of a fixed transvection (i, j): (n-1)(n-2)."""
    if n < 3:
        raise RankError(f"rank must be >= 3, got {n}")
    return (n - 1) * (n - 2)


def relator_count_breakdown(n: int) -> dict[str, int]:
    if n < 3:
        raise RankError(f"rank must be >= 3, got {n}")
    return {
        "commutativity": n * (n - 1) ** 2 * (n - 2) // 2,
        "steinberg": n * (n - 1) * (n - 2),
        "singletons": 2,
    }


def relator_count_formula(n: int) -> int:
    if n < 3:
        raise RankError(f"rank must be >= 3, got {n}")
    return n * (n + 1) * (n - 1) * (n - 2) // 2 + 2


# --- index enumeration ------------------------------------------------------


def commutativity_indices(n: int, dedup: bool = True) -> Iterator[tuple[int, int, int, int]]:
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    for i, j in pairs:
        for k, l in commuting_partners(n, i, j):
            if not dedup or (i, j, k, l) < (k, l, i, j):
                yield i, j, k, l


def steinberg_indices(n: int) -> Iterator[tuple[int, int, int]]:
    return permutations(range(1, n + 1), 3)


# --- builders ---------------------------------------------------------------


def base_relators(n: int, scheme: WordScheme | str, dedup: bool = True) -> Iterator[Relator]:
    t = tau_table(n, scheme)
    for i, j, k, l in commutativity_indices(n, dedup):
        yield Relator("commutativity", (i, j, k, l), commutator(t[i, j], t[k, l]))
    for i, j, k in steinberg_indices(n):
        yield Relator(
            "steinberg", (i, j, k), concat(commutator(t[i, j], t[j, k]), invert(t[i, k]))
        )
    block = concat(concat(t[1, 2], invert(t[2, 1])), t[1, 2])
    yield Relator("torsion", (), power(block, 4))
    yield Relator("a-defining", (), concat(A, invert(a_word(n, scheme))))


def _check(n: int) -> None:
    if n < 3:
        raise RankError(f"rank must be >= 3, got {n}")


def build_base(
    n: int, scheme: WordScheme | str = WordScheme.BALANCED, dedup: bool = True
) -> Presentation:
    _check(n)
    scheme = WordScheme(scheme)
    return Presentation(n, ("a", "b"), scheme, Flavor.BASE, tuple(base_relators(n, scheme, dedup)))


def substituted(P: Presentation, images: dict[str, Word]) -> tuple[Relator, ...]:
    return tuple(Relator(r.kind, r.indices, r.word.substitute(images)) for r in P.relators)


def infinite_images() -> dict[str, Word]:
    """a -> x y^-1, b -> y."""
    x, y = Word.letter("x"), Word.letter("y")
    return {"a": concat(x, invert(y)), "b": y}


def finite_images() -> dict[str, Word]:
    """a -> u, b -> W(u, v)."""
    return {"a": Word.letter("u"), "b": w_bridge("u", "v")}


def build_infinite_variant(
    n: int, scheme: WordScheme | str = WordScheme.BALANCED, dedup: bool = True
) -> Presentation:
    base = build_base(n, scheme, dedup)
    return Presentation(n, ("x", "y"), base.scheme, Flavor.INFINITE, substituted(base, infinite_images()))


def build_finite_variant(
    n: int,
    scheme: WordScheme | str = WordScheme.BALANCED,
    dedup: bool = True,
    redundant_torsion: bool = False,
) -> Presentation:
    base = build_base(n, scheme, dedup)
    images = finite_images()
    rels = list(substituted(base, images))
    W = images["b"]
    t12 = tau_table(n, base.scheme)[1, 2].substitute(images)
    # v = W^-1 tau_12(u, W)  ->  v (W^-1 tau_12)^-1
    v = Word.letter("v")
    rels.append(Relator("variant-defining", (), concat(v, invert(concat(invert(W), t12)))))
    if redundant_torsion:
        u_order = n if n % 2 else 2 * n
        rels.append(Relator("torsion", (), Word.letter("u", u_order)))
        rels.append(Relator("torsion", (), Word.letter("v", 6)))
    return Presentation(n, ("u", "v"), base.scheme, Flavor.FINITE, tuple(rels))


def build_psl(
    n: int, scheme: WordScheme | str = WordScheme.BALANCED, dedup: bool = True
) -> Presentation:
    base = build_base(n, scheme, dedup)
    rels = base.relators
    if n % 2 == 0:
        rels = rels + (Relator("torsion", (), Word.letter("a", n)),)
    return Presentation(n, ("a", "b"), base.scheme, Flavor.PSL, rels)


def build(
    n: int,
    scheme: WordScheme | str = WordScheme.BALANCED,
    flavor: Flavor | str = Flavor.BASE,
    dedup: bool = True,
    redundant_torsion: bool = False,
) -> Presentation:
    flavor = Flavor(flavor)
    if flavor is Flavor.BASE:
        return build_base(n, scheme, dedup)
    if flavor is Flavor.INFINITE:
        return build_infinite_variant(n, scheme, dedup)
    if flavor is Flavor.FINITE:
        return build_finite_variant(n, scheme, dedup, redundant_torsion)
    return build_psl(n, scheme, dedup)


def stats(P: Presentation) -> dict:
    """Relator count, total/max freely reduced length, per-kind breakdown."""
    by_kind: dict[str, dict[str, int]] = {}
    total = longest = trivial = 0
    for r in P.relators:
        L = len(r.word)
        trivial += not L
        total += L
        longest = max(longest, L)
        k = by_kind.setdefault(r.kind, {"count": 0, "total_length": 0})
        k["count"] += 1
        k["total_length"] += L
    return {
        "count": len(P.relators),
        "total_length": total,
        "max_length": longest,
        "freely_trivial": trivial,
        "by_kind": by_kind,
    }
