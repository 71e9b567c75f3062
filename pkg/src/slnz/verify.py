"""Independent oracles: exact word evaluation, relator sweeps, congruence checks,
the Cayley-graph girth probe and the word-length survey.
"""

from __future__ import annotations

import math
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from operator import itemgetter
from typing import Iterable, Sequence

from .matrix import (
    IntMatrix,
    ModMatrix,
    cyclic_generator,
    encode_residues,
    epsilon,
    finite_pair,
    generator_inverse,
    infinite_pair,
    inverse,
    lower_generator,
    mat_mul,
    mod_order,
    mod_reduce,
    transvection,
)
from .presentation import (
    Flavor,
    Presentation,
    base_relators,
    build,
    relator_count_formula,
)
from .transvections import (
    SplitIndices,
    WordScheme,
    a_word,
    omega,
    tau_table,
)
from .words import Word

# --- assignments and evaluation ---------------------------------------------


class Assignment:
    """Matrices for each generator letter, with exact inverses."""

    def __init__(
        self,
        matrices: dict[str, IntMatrix],
        inverses: dict[str, IntMatrix] | None = None,
    ):
        ranks = {M.n for M in matrices.values()}
        if len(ranks) != 1:
            raise ValueError("all generator matrices must share one rank")
        self.n = ranks.pop()
        self.matrices = dict(matrices)
        inverses = dict(inverses or {})
        for g, M in matrices.items():
            inverses.setdefault(g, inverse(M))
            if not mat_mul(M, inverses[g]).is_identity():
                raise ValueError(f"inverse given for {g!r} is wrong")
        self.inverses = inverses

    def power(self, g: str, e: int) -> IntMatrix:
        M = self.matrices[g] if e > 0 else self.inverses[g]
        return M ** abs(e)

    def reduced(self, m: int) -> dict[str, ModMatrix]:
        return {g: mod_reduce(M, m) for g, M in self.matrices.items()}


def standard_assignment(n: int) -> Assignment:
    return Assignment(
        {"a": cyclic_generator(n), "b": lower_generator(n)},
        {"a": generator_inverse("a", n), "b": generator_inverse("b", n)},
    )


def flavor_assignment(n: int, flavor: Flavor | str) -> Assignment:
    flavor = Flavor(flavor)
    if flavor in (Flavor.BASE, Flavor.PSL):
        return standard_assignment(n)
    if flavor is Flavor.INFINITE:
        x, y = infinite_pair(n)
        xinv = mat_mul(generator_inverse("b", n), generator_inverse("a", n))
        return Assignment({"x": x, "y": y}, {"x": xinv, "y": generator_inverse("b", n)})
    u, v = finite_pair(n)
    vinv = mat_mul(transvection(n, 1, 2, -1), lower_generator(n))
    return Assignment({"u": u, "v": v}, {"u": generator_inverse("a", n), "v": vinv})


class _Evaluator:
    """Right-multiplies a column list by cached sparse generator powers.

    A power g^e is stored column by column as ``[(k, c), ...]``; a column that
    is a plain unit vector reuses the existing column object, so monomial and
    transvection factors cost O(n) rather than O(n^3).
    """

    def __init__(self, assignment: Assignment, modulus: int | None = None):
        self.A = assignment
        self.n = assignment.n
        self.m = modulus
        self._cache: dict[tuple[str, int], list[list[tuple[int, int]]]] = {}

    def _sparse(self, g: str, e: int):
        key = (g, e)
        s = self._cache.get(key)
        if s is None:
            M = self.A.power(g, e)
            m = self.m
            s = []
            for col in zip(*M.rows):
                entries = [(k, c % m if m else c) for k, c in enumerate(col)]
                s.append([(k, c) for k, c in entries if c])
            self._cache[key] = s
        return s

    def identity_columns(self):
        n = self.n
        return [tuple(int(r == c) for r in range(n)) for c in range(n)]

    def apply(self, cols, g: str, e: int):
        m = self.m
        out = []
        for entries in self._sparse(g, e):
            if len(entries) == 1 and entries[0][1] == 1:
                out.append(cols[entries[0][0]])
                continue
            acc = None
            for k, c in entries:
                src = cols[k]
                if acc is None:
                    acc = [c * x for x in src]
                else:
                    acc = [x + c * y for x, y in zip(acc, src)]
            if acc is None:
                acc = [0] * self.n
            if m:
                acc = [x % m for x in acc]
            out.append(tuple(acc))
        return out

    def columns(self, w: Word, cols=None):
        if cols is None:
            cols = self.identity_columns()
        for g, e in w.runs:
            cols = self.apply(cols, g, e)
        return cols

    def __call__(self, w: Word):
        cols = self.columns(w)
        if self.m:
            return ModMatrix(zip(*cols), self.m)
        return IntMatrix(zip(*cols))


def eval_word(w: Word, A: Assignment, modulus: int | None = None) -> IntMatrix | ModMatrix:
    """Exact left-to-right product of the generator matrices spelled by ``w``."""
    return _Evaluator(A, modulus)(w)


def eval_word_naive(w: Word, A: Assignment) -> IntMatrix:
    """Letter-by-letter dense product; a slow second route for cross-checks."""
    M = IntMatrix.identity(A.n)
    for g, s in w.expand():
        M = mat_mul(M, A.matrices[g] if s > 0 else A.inverses[g])
    return M


# --- reports ----------------------------------------------------------------


@dataclass
class Failure:
    kind: str
    indices: tuple
    matrix: IntMatrix | ModMatrix | None
    note: str = ""


@dataclass
class VerificationReport:
    scope: str
    checks: int = 0
    failures: list[Failure] = field(default_factory=list)
    seconds: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, kind: str, indices: tuple = (), matrix=None, note: str = ""):
        self.checks += 1
        if not ok:
            self.failures.append(Failure(kind, tuple(indices), matrix, note))

    def merge(self, other: VerificationReport) -> None:
        self.checks += other.checks
        self.failures.extend(other.failures)
        self.notes.extend(other.notes)

    def summary(self) -> dict:
        return {
            "scope": self.scope,
            "checks": self.checks,
            "failures": len(self.failures),
            "passed": self.passed,
        }

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [f"{status} {self.scope}: {self.checks} checks, {len(self.failures)} failures ({self.seconds:.2f}s)"]
        for f in self.failures[:10]:
            lines.append(f"  {f.kind}{f.indices} {f.note}".rstrip())
            if f.matrix is not None:
                lines.extend("    " + row for row in str(f.matrix).splitlines())
        lines.extend(f"  note: {s}" for s in self.notes)
        return "\n".join(lines)


def _accepts(M: IntMatrix, central: bool) -> bool:
    if M.is_identity():
        return True
    # in the projective quotient -I is trivial (only central for even n)
    return central and M.n % 2 == 0 and M == IntMatrix.scalar(M.n, -1)


def _verify_chunk(args):
    n, flavor, central, chunk = args
    ev = _Evaluator(flavor_assignment(n, flavor))
    out = []
    for kind, indices, w in chunk:
        M = ev(w)
        ok = _accepts(M, central)
        out.append((ok, kind, indices, None if ok else M))
    return out


def verify_presentation(P: Presentation, jobs: int = 1) -> VerificationReport:
    """Evaluate every relator under the flavor's distinguished assignment.

    For the projective flavor a relator may evaluate to a central element
    (-I for even rank), since the centre is trivial in PSL_n(Z).
    """
    t0 = time.perf_counter()
    report = VerificationReport(
        f"{P.flavor} n={P.rank} scheme={P.scheme} ({len(P.relators)} relators)"
    )
    central = P.flavor is Flavor.PSL
    items = [(r.kind, r.indices, r.word) for r in P.relators]
    if jobs > 1 and len(items) > 64:
        size = math.ceil(len(items) / (jobs * 4))
        chunks = [(P.rank, P.flavor, central, items[i : i + size]) for i in range(0, len(items), size)]
        with ProcessPoolExecutor(jobs) as pool:
            results = [r for part in pool.map(_verify_chunk, chunks) for r in part]
    else:
        results = _verify_chunk((P.rank, P.flavor, central, items))
    for ok, kind, indices, M in results:
        report.record(ok, kind, indices, M)
    report.seconds = time.perf_counter() - t0
    return report


def verify_transvections(n: int, scheme: WordScheme | str = WordScheme.BALANCED) -> VerificationReport:
    t0 = time.perf_counter()
    report = VerificationReport(f"transvection words n={n} scheme={WordScheme(scheme)}")
    ev = _Evaluator(standard_assignment(n))
    for (i, j), w in sorted(tau_table(n, scheme).items()):
        M = ev(w)
        target = transvection(n, i, j)
        report.record(M == target, "transvection", (i, j), None if M == target else M)
    M = ev(a_word(n, scheme))
    report.record(M == cyclic_generator(n), "a-word", (), M)
    report.seconds = time.perf_counter() - t0
    return report


def verify_shift_lemmas(n: int) -> VerificationReport:
    """Conjugation of b and of every non-wrapping T_{p,q} by powers of a."""
    t0 = time.perf_counter()
    report = VerificationReport(f"shift lemmas n={n}")
    a = cyclic_generator(n)
    ainv = generator_inverse("a", n)
    b = lower_generator(n)
    pow_a = [IntMatrix.identity(n)]
    pow_ainv = [IntMatrix.identity(n)]
    for _ in range(n):
        pow_a.append(mat_mul(pow_a[-1], a))
        pow_ainv.append(mat_mul(pow_ainv[-1], ainv))
    for k in range(n - 1):
        M = mat_mul(mat_mul(pow_ainv[k], b), pow_a[k])
        report.record(M == transvection(n, k + 2, k + 1), "shift", (k,), M)
    M = mat_mul(mat_mul(pow_ainv[n - 1], b), pow_a[n - 1])
    report.record(M == transvection(n, 1, n, epsilon(n)), "shift-wrap", (n - 1,), M)
    for p in range(1, n + 1):
        for q in range(1, n + 1):
            if p == q:
                continue
            for k in range(0, n - max(p, q) + 1):
                M = mat_mul(mat_mul(pow_ainv[k], transvection(n, p, q)), pow_a[k])
                report.record(M == transvection(n, p + k, q + k), "shift-general", (p, q, k), M)
    report.seconds = time.perf_counter() - t0
    return report


def verify_congruence(
    n: int, m: int, scheme: WordScheme | str = WordScheme.BALANCED
) -> VerificationReport:
    """Transvection words mod m, ord(b mod m) = m, a^n = eps_n I mod m."""
    t0 = time.perf_counter()
    report = VerificationReport(f"congruence n={n} m={m} scheme={WordScheme(scheme)}")
    A = standard_assignment(n)
    ev = _Evaluator(A, m)
    for (i, j), w in sorted(tau_table(n, scheme).items()):
        M = ev(w)
        target = mod_reduce(transvection(n, i, j), m)
        report.record(M == target, "transvection-mod", (i, j), M)
    abar, bbar = mod_reduce(A.matrices["a"], m), mod_reduce(A.matrices["b"], m)
    ob = mod_order(bbar, m)
    report.record(ob == m, "order-b", (m,), None, f"ord(b)={ob}")
    an = abar ** n
    report.record(an == ModMatrix(IntMatrix.scalar(n, epsilon(n)).rows, m), "a^n", (n,), an)
    oa = mod_order(abar, 2 * n)
    bound = n if n % 2 else 2 * n
    report.record(oa is not None and bound % oa == 0, "order-a", (n,), None, f"ord(a)={oa}")
    report.notes.append(f"ord(a)={oa} ord(b)={ob}")
    report.seconds = time.perf_counter() - t0
    return report


# --- girth probe ------------------------------------------------------------


def sl_order(n: int, p: int, k: int = 1) -> int:
    """|SL_n(Z/p^k)| = p^((k-1)(n^2-1)) * p^(n(n-1)/2) * prod_{i=2..n} (p^i - 1)."""
    q = p ** (n * (n - 1) // 2)
    for i in range(2, n + 1):
        q *= p**i - 1
    return q * p ** ((k - 1) * (n * n - 1))


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


DEFAULT_BUDGET = 2_000_000


@dataclass
class GirthProbeResult:
    n: int
    p: int
    k: int
    group_order: int
    reached: int
    complete: bool
    order_a: int | None
    bfs_cycle: int | None
    shortest_cycle: int | None
    bound: int

    @property
    def ok(self) -> bool:
        return self.shortest_cycle is not None and self.shortest_cycle <= self.bound


def _flat_mul_factory(n: int, m: int, M: ModMatrix):
    # right multiplication of a flat row-major element by a fixed matrix;
    # output slots fed by a single unit coefficient go through itemgetter
    cols = list(zip(*M.rows))
    simple = []
    mixed = []
    for r in range(n):
        for j, col in enumerate(cols):
            terms = [(r * n + k, c) for k, c in enumerate(col) if c]
            if len(terms) == 1 and terms[0][1] == 1:
                simple.append(terms[0][0])
            else:
                simple.append(0)
                mixed.append((r * n + j, terms))
    getter = itemgetter(*simple)

    def mul(x: tuple[int, ...]) -> tuple[int, ...]:
        out = list(getter(x))
        for pos, terms in mixed:
            out[pos] = sum(x[s] * c for s, c in terms) % m
        return tuple(out)

    return mul


def girth_probe(n: int, p: int, k: int = 1, budget: int = DEFAULT_BUDGET) -> GirthProbeResult:
    """BFS of Cay(SL_n(Z/p^k), {a^+-1, b^+-1}) from the identity.

    The shortest cycle through the identity is the least d(u) + d(w) + 1 over
    non-tree edges {u, w}; since a Cayley graph is vertex-transitive this is
    the girth once the enumeration is complete.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError("k must be >= 1")
    m = p**k
    a = mod_reduce(cyclic_generator(n), m)
    b = mod_reduce(lower_generator(n), m)
    gens = []
    for M in (a, mod_reduce(generator_inverse("a", n), m), b, mod_reduce(generator_inverse("b", n), m)):
        if not M.is_identity() and M not in gens:
            gens.append(M)
    muls = [_flat_mul_factory(n, m, M) for M in gens]
    order_a = mod_order(a, 2 * n)
    total = sl_order(n, p, k)

    start = tuple(int(r == c) for r in range(n) for c in range(n))
    key = lambda x: encode_residues(x, m)
    dist = {key(start): 0}
    parent = {key(start): None}
    queue = deque([start])
    best = None
    complete = True
    while queue:
        x = queue.popleft()
        kx = key(x)
        dx = dist[kx]
        for mul in muls:
            y = mul(x)
            ky = key(y)
            dy = dist.get(ky)
            if dy is None:
                if len(dist) >= budget:
                    complete = False
                    continue
                dist[ky] = dx + 1
                parent[ky] = kx
                queue.append(y)
            elif ky != parent[kx] and parent[ky] != kx:
                c = dx + dy + 1
                if best is None or c < best:
                    best = c
    reached = len(dist)
    candidates = [c for c in (best, order_a if order_a and order_a >= 3 else None) if c]
    shortest = min(candidates) if candidates else None
    return GirthProbeResult(
        n, p, k, total, reached, complete and reached == total, order_a, best, shortest, 2 * n
    )


# --- length survey ----------------------------------------------------------


def omega_lengths(r_max: int) -> dict[int, int]:
    return {r: len(omega(r_max, r)) for r in range(2, r_max + 1)}


def recurrence_violations(lengths: dict[int, int]) -> list[int]:
    """r with L_r > 2 L_d + 2 L_m + 4(m - 1)."""
    bad = []
    for r, L in lengths.items():
        if r < 3:
            continue
        s = SplitIndices(r)
        if L > 2 * lengths[s.d] + 2 * lengths[s.m] + 4 * (s.m - 1):
            bad.append(r)
    return bad


def proof_constants(L3: int) -> dict[str, float]:
    """Explicit constants that the halving-recursion argument yields.

    From P_t <= 4^t (M_3 + 10/3) and 4^t <= 16 r^2 one gets
    L_r <= 16 (M_3 + 10/3) r^2; the shift and the first-row commutator
    then give l(tau_ij) <= (2 C0 + 5) n^2.
    """
    c0 = 16 * (max(1, L3) + 10 / 3)
    return {"C0": c0, "C": 2 * c0 + 5}


def length_survey(
    n_max: int,
    scheme: WordScheme | str = WordScheme.BALANCED,
    relators_up_to: int = 12,
    n_min: int = 3,
) -> list[dict]:
    """Per-rank word and relator length statistics.

    Relator totals are only computed for n <= ``relators_up_to`` since the
    relator count grows like n^4.
    """
    scheme = WordScheme(scheme)
    if scheme is WordScheme.RECURSIVE and n_max > 8:
        raise ValueError("the recursive scheme is surveyed for n <= 8 only")
    L = omega_lengths(n_max)
    rows = []
    for n in range(n_min, n_max + 1):
        lens = [len(w) for w in tau_table(n, scheme).values()]
        Lr = {r: L[r] for r in range(2, n + 1)}
        row = {
            "n": n,
            "max_tau": max(lens),
            "mean_tau": sum(lens) / len(lens),
            "max_L": max(Lr.values()),
            "max_L_over_r2": max(v / r**2 for r, v in Lr.items()),
            "max_tau_over_n2": max(lens) / n**2,
            "a_word_length": len(a_word(n, scheme)),
        }
        if n <= relators_up_to:
            count = total = 0
            for rel in base_relators(n, scheme):
                count += 1
                total += len(rel.word)
            row.update(
                relators=count,
                total_length=total,
                count_over_n4=count / n**4,
                total_over_n6=total / n**6,
            )
        rows.append(row)
    return rows


def survey_constants(rows: Sequence[dict]) -> dict[str, float]:
    out = {
        "max_L_over_r2": max(r["max_L_over_r2"] for r in rows),
        "max_tau_over_n2": max(r["max_tau_over_n2"] for r in rows),
    }
    with_rel = [r for r in rows if "total_length" in r]
    if with_rel:
        out["max_count_over_n4"] = max(r["count_over_n4"] for r in with_rel)
        out["max_total_over_n6"] = max(r["total_over_n6"] for r in with_rel)
    return out


def format_survey(rows: Iterable[dict]) -> str:
    """Tab-separated table; relator columns are '-' where not computed."""
    cols = [
        ("n", "{}"),
        ("max_tau", "{}"),
        ("mean_tau", "{:.1f}"),
        ("max_L", "{}"),
        ("max_L_over_r2", "{:.4f}"),
        ("max_tau_over_n2", "{:.4f}"),
        ("a_word_length", "{}"),
        ("relators", "{}"),
        ("count_over_n4", "{:.4f}"),
        ("total_length", "{}"),
        ("total_over_n6", "{:.4f}"),
    ]
    lines = ["\t".join(name for name, _ in cols)]
    for r in rows:
        lines.append("\t".join(fmt.format(r[name]) if name in r else "-" for name, fmt in cols))
    return "\n".join(lines)


# --- combined entry points --------------------------------------------------


def verify_all(
    n: int,
    scheme: WordScheme | str = WordScheme.BALANCED,
    flavor: Flavor | str = Flavor.BASE,
    jobs: int = 1,
) -> VerificationReport:
    P = build(n, scheme, flavor)
    report = VerificationReport(f"n={n} scheme={WordScheme(scheme)} flavor={Flavor(flavor)}")
    t0 = time.perf_counter()
    parts = [verify_transvections(n, scheme), verify_presentation(P, jobs), verify_shift_lemmas(n)]
    if Flavor(flavor) is Flavor.BASE and len(P.relators) != relator_count_formula(n):
        report.record(False, "relator-count", (n,), None, f"{len(P.relators)} != formula")
    for part in parts:
        report.merge(part)
        report.notes.append(str(part).splitlines()[0])
    report.seconds = time.perf_counter() - t0
    return report
