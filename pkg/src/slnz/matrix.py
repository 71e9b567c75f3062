"""Exact integer and mod-m square matrices, plus the named matrices of SL_n(Z).

All public indices are 1-based. Matrices act on column vectors on the left.
"""

from __future__ import annotations

from typing import Iterable, Sequence


class RankError(ValueError):
    pass


class DimensionError(ValueError):
    pass


class InvalidTransvectionError(ValueError):
    pass


class ModulusError(ValueError):
    pass


def epsilon(n: int) -> int:
    """Sign (-1)**(n-1): +1 for odd rank, -1 for even rank."""
    return 1 if n % 2 else -1


def _check_index(n: int, *idx: int) -> None:
    for i in idx:
        if not 1 <= i <= n:
            raise IndexError(f"index {i} out of range for rank {n}")


class IntMatrix:
    """Immutable n x n matrix with arbitrary-precision integer entries."""

    __slots__ = ("n", "rows", "_hash")

    def __init__(self, rows: Iterable[Iterable[int]]):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        n = len(rows)
        if n < 1 or any(len(r) != n for r in rows):
            raise DimensionError("matrix must be square and nonempty")
        self.n = n
        self.rows = rows
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls((int(i == j) for j in range(n)) for i in range(n))

    @classmethod
    def scalar(cls, n: int, c: int) -> IntMatrix:
        return cls((c if i == j else 0 for j in range(n)) for i in range(n))

    @classmethod
    def zero(cls, n: int) -> IntMatrix:
        return cls.scalar(n, 0)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        """1-based entry access: ``M[i, j]``."""
        i, j = ij
        _check_index(self.n, i, j)
        return self.rows[i - 1][j - 1]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self.rows]})"

    def __str__(self) -> str:
        width = max(len(str(x)) for r in self.rows for x in r)
        return "\n".join(" ".join(str(x).rjust(width) for x in r) for r in self.rows)

    def __add__(self, other: IntMatrix) -> IntMatrix:
        _same_rank(self, other)
        return IntMatrix(
            (x + y for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows)
        )

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        _same_rank(self, other)
        return IntMatrix(
            (x - y for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows)
        )

    def __neg__(self) -> IntMatrix:
        return IntMatrix((-x for x in r) for r in self.rows)

    def __rmul__(self, c: int) -> IntMatrix:
        return IntMatrix((c * x for x in r) for r in self.rows)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        return mat_mul(self, other)

    def __pow__(self, k: int) -> IntMatrix:
        if k < 0:
            return inverse(self) ** (-k)
        result = IntMatrix.identity(self.n)
        base = self
        while k:
            if k & 1:
                result = mat_mul(result, base)
            k >>= 1
            if k:
                base = mat_mul(base, base)
        return result

    def transpose(self) -> IntMatrix:
        return IntMatrix(zip(*self.rows))

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.n))

    def is_identity(self) -> bool:
        return self.rows == IntMatrix.identity(self.n).rows

    def columns(self) -> list[tuple[int, ...]]:
        return list(zip(*self.rows))

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]]) -> IntMatrix:
        return cls(zip(*cols))

    def det(self) -> int:
        return determinant(self)


def _same_rank(A: IntMatrix, B: IntMatrix) -> None:
    if A.n != B.n:
        raise DimensionError(f"rank mismatch: {A.n} vs {B.n}")


def mat_mul(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    _same_rank(A, B)
    cols = list(zip(*B.rows))
    return IntMatrix(
        (sum(x * y for x, y in zip(row, col)) for col in cols) for row in A.rows
    )


def determinant(M: IntMatrix) -> int:
    """Bareiss fraction-free elimination; exact over Z."""
    a = [list(r) for r in M.rows]
    n = M.n
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def is_signed_permutation(M: IntMatrix) -> bool:
    for r in M.rows:
        nz = [x for x in r if x]
        if len(nz) != 1 or nz[0] not in (1, -1):
            return False
    return all(sum(1 for x in c if x) == 1 for c in zip(*M.rows))


def inverse(M: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular matrix.

    Signed permutations invert by transposition; anything else goes through
    the integer adjugate, which is exact because det = +-1.
    """
    if is_signed_permutation(M):
        return M.transpose()
    d = determinant(M)
    if d not in (1, -1):
        raise ValueError(f"matrix is not invertible over Z (det={d})")
    n = M.n
    if n == 1:
        return M
    inv = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = IntMatrix(
                (M.rows[r][c] for c in range(n) if c != j) for r in range(n) if r != i
            )
            # adj / det == adj * det when det is a unit
            inv[j][i] = (-1) ** (i + j) * determinant(minor) * d
    return IntMatrix(inv)


# --- named matrices ---------------------------------------------------------


def matrix_unit(n: int, i: int, j: int) -> IntMatrix:
    """E_{i,j}: a single 1 in position (i, j)."""
    _check_index(n, i, j)
    return IntMatrix((int(r == i and c == j) for c in range(1, n + 1)) for r in range(1, n + 1))


def transvection(n: int, i: int, j: int, k: int = 1) -> IntMatrix:
    """T_{i,j}^k = I + k E_{i,j}, built entry-wise."""
    _check_index(n, i, j)
    if i == j:
        raise InvalidTransvectionError(f"transvection needs i != j, got ({i}, {j})")
    rows = [[int(r == c) for c in range(n)] for r in range(n)]
    rows[i - 1][j - 1] = k
    return IntMatrix(rows)


def cyclic_generator(n: int) -> IntMatrix:
    """a_n: superdiagonal ones and epsilon(n) in the bottom-left corner."""
    if n < 3:
        raise RankError(f"rank must be >= 3, got {n}")
    rows = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        rows[i][i + 1] = 1
    rows[n - 1][0] = epsilon(n)
    return IntMatrix(rows)


def lower_generator(n: int) -> IntMatrix:
    """b_n = I + E_{2,1}."""
    if n < 3:
        raise RankError(f"rank must be >= 3, got {n}")
    return transvection(n, 2, 1)


def generator_inverse(which: str, n: int) -> IntMatrix:
    """Closed-form inverse of a_n (signed transpose) or b_n (I - E_{2,1})."""
    if which == "a":
        return cyclic_generator(n).transpose()
    if which == "b":
        if n < 3:
            raise RankError(f"rank must be >= 3, got {n}")
        return transvection(n, 2, 1, -1)
    raise ValueError(f"unknown generator {which!r}")


def sigma(n: int, r: int) -> IntMatrix:
    """T_{r,r+1} T_{r+1,r}^{-1} T_{r,r+1}: the block [[0,1],[-1,0]] on (r, r+1)."""
    if not 1 <= r <= n - 1:
        raise IndexError(f"sigma index {r} out of range for rank {n}")
    return mat_mul(
        mat_mul(transvection(n, r, r + 1), transvection(n, r + 1, r, -1)),
        transvection(n, r, r + 1),
    )


def infinite_pair(n: int) -> tuple[IntMatrix, IntMatrix]:
    """(x_n, y_n) = (a_n b_n, b_n)."""
    return mat_mul(cyclic_generator(n), lower_generator(n)), lower_generator(n)


def finite_pair(n: int) -> tuple[IntMatrix, IntMatrix]:
    """(u_n, v_n) = (a_n, b_n^{-1} T_{1,2})."""
    return cyclic_generator(n), mat_mul(generator_inverse("b", n), transvection(n, 1, 2))


def order(M: IntMatrix, cap: int) -> int | None:
    """Smallest k in [1, cap] with M**k == I, or None if there is none."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    ident = IntMatrix.identity(M.n)
    P = M
    for k in range(1, cap + 1):
        if P == ident:
            return k
        P = mat_mul(P, M)
    return None


# --- mod m -----------------------------------------------------------------


class ModMatrix:
    """Immutable n x n matrix over Z/mZ with entries in [0, m)."""

    __slots__ = ("n", "m", "rows")

    def __init__(self, rows: Iterable[Iterable[int]], m: int):
        if m < 2:
            raise ModulusError(f"modulus must be >= 2, got {m}")
        rows = tuple(tuple(int(x) % m for x in r) for r in rows)
        n = len(rows)
        if n < 1 or any(len(r) != n for r in rows):
            raise DimensionError("matrix must be square and nonempty")
        self.n = n
        self.m = m
        self.rows = rows

    @classmethod
    def identity(cls, n: int, m: int) -> ModMatrix:
        return cls(((int(i == j) for j in range(n)) for i in range(n)), m)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ModMatrix) and self.m == other.m and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.m, self.rows))

    def __repr__(self) -> str:
        return f"ModMatrix({[list(r) for r in self.rows]}, m={self.m})"

    def __matmul__(self, other: ModMatrix) -> ModMatrix:
        if self.n != other.n:
            raise DimensionError(f"rank mismatch: {self.n} vs {other.n}")
        if self.m != other.m:
            raise ModulusError(f"modulus mismatch: {self.m} vs {other.m}")
        cols = list(zip(*other.rows))
        return ModMatrix(
            ((sum(x * y for x, y in zip(row, col)) for col in cols) for row in self.rows),
            self.m,
        )

    def __pow__(self, k: int) -> ModMatrix:
        if k < 0:
            raise ValueError("negative powers need an explicit inverse")
        result = ModMatrix.identity(self.n, self.m)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def is_identity(self) -> bool:
        return self == ModMatrix.identity(self.n, self.m)

    def det(self) -> int:
        return determinant(IntMatrix(self.rows)) % self.m

    def key(self) -> bytes:
        """Row-major fixed-width byte encoding, for visited sets."""
        return encode_residues((x for r in self.rows for x in r), self.m)


def encode_residues(values: Iterable[int], m: int) -> bytes:
    if m <= 256:
        return bytes(values)
    width = ((m - 1).bit_length() + 7) // 8
    return b"".join(v.to_bytes(width, "big") for v in values)


def mod_reduce(M: IntMatrix, m: int) -> ModMatrix:
    return ModMatrix(M.rows, m)


def mod_order(M: ModMatrix, cap: int) -> int | None:
    ident = ModMatrix.identity(M.n, M.m)
    P = M
    for k in range(1, cap + 1):
        if P == ident:
            return k
        P = P @ M
    return None
