import random

import pytest

from slnz.matrix import (
    DimensionError,
    IntMatrix,
    InvalidTransvectionError,
    ModMatrix,
    ModulusError,
    RankError,
    cyclic_generator,
    determinant,
    epsilon,
    finite_pair,
    generator_inverse,
    infinite_pair,
    inverse,
    lower_generator,
    mat_mul,
    matrix_unit,
    mod_order,
    mod_reduce,
    order,
    sigma,
    transvection,
)


def comm(x, y):
    return mat_mul(mat_mul(inverse(x), inverse(y)), mat_mul(x, y))


def laplace_det(rows):
    # independent of Bareiss: cofactor expansion
    if len(rows) == 1:
        return rows[0][0]
    return sum(
        (-1) ** c * rows[0][c] * laplace_det([r[:c] + r[c + 1 :] for r in rows[1:]])
        for c in range(len(rows))
        if rows[0][c]
    )


def test_matrix_unit_definition():
    E = matrix_unit(3, 2, 1)
    assert E[2, 1] == 1
    assert sum(x for r in E.rows for x in r) == 1


def test_matrix_unit_products():
    assert mat_mul(matrix_unit(3, 1, 2), matrix_unit(3, 2, 3)) == matrix_unit(3, 1, 3)
    assert mat_mul(matrix_unit(3, 1, 2), matrix_unit(3, 1, 2)) == IntMatrix.zero(3)


@pytest.mark.parametrize("args", [(3, 0, 1), (3, 1, 4), (4, 5, 5)])
def test_matrix_unit_index_error(args):
    with pytest.raises(IndexError):
        matrix_unit(*args)


def test_transvection_is_b():
    assert transvection(3, 2, 1) == lower_generator(3)


def test_transvection_power_by_repeated_multiplication():
    T = transvection(4, 1, 2)
    P = IntMatrix.identity(4)
    for _ in range(5):
        P = mat_mul(P, T)
    assert P == IntMatrix.identity(4) + 5 * matrix_unit(4, 1, 2)


def test_transvection_commutator():
    assert comm(transvection(4, 1, 2), transvection(4, 2, 3)) == transvection(4, 1, 3)


def test_transvection_rejects_diagonal():
    with pytest.raises(InvalidTransvectionError):
        transvection(3, 2, 2)


def test_cyclic_generator_corner_sign():
    assert cyclic_generator(3)[3, 1] == 1
    assert cyclic_generator(4)[4, 1] == -1
    assert cyclic_generator(4)[1, 2] == 1
    with pytest.raises(RankError):
        cyclic_generator(2)


@pytest.mark.parametrize("n", range(3, 13))
def test_generators_have_det_one(n):
    assert determinant(cyclic_generator(n)) == 1
    assert determinant(lower_generator(n)) == 1


@pytest.mark.parametrize("n", range(3, 7))
def test_bareiss_agrees_with_laplace(n):
    rng = random.Random(n)
    for _ in range(20):
        M = IntMatrix([[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)])
        assert determinant(M) == laplace_det([list(r) for r in M.rows])


def test_sigma_action_on_basis():
    s = sigma(3, 1)
    cols = s.columns()
    assert cols[0] == (0, -1, 0)  # e1 -> -e2
    assert cols[1] == (1, 0, 0)  # e2 -> e1
    assert cols[2] == (0, 0, 1)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_sigma_product_is_a(n):
    P = IntMatrix.identity(n)
    for r in range(n - 1, 0, -1):
        P = mat_mul(P, sigma(n, r))
    assert P == cyclic_generator(n)


def test_sigma_has_order_four():
    for n in (3, 5):
        for r in range(1, n):
            s = sigma(n, r)
            P = IntMatrix.identity(n)
            for _ in range(4):
                P = mat_mul(P, s)
            assert P.is_identity()
            assert not mat_mul(s, s).is_identity()
    with pytest.raises(IndexError):
        sigma(3, 3)


def test_mat_mul_identity_and_dimension():
    A = cyclic_generator(5)
    assert mat_mul(A, IntMatrix.identity(5)) == A
    with pytest.raises(DimensionError):
        mat_mul(A, IntMatrix.identity(4))


def test_x_trace_and_inverse_trace():
    a, b = cyclic_generator(3), lower_generator(3)
    assert mat_mul(a, b).trace() == 1
    assert mat_mul(generator_inverse("b", 3), generator_inverse("a", 3)).trace() == 0


@pytest.mark.parametrize("n", range(3, 9))
def test_generator_inverse(n):
    assert generator_inverse("b", n) == IntMatrix.identity(n) - matrix_unit(n, 2, 1)
    assert mat_mul(generator_inverse("a", n), cyclic_generator(n)).is_identity()
    assert mat_mul(lower_generator(n), generator_inverse("b", n)).is_identity()


def test_inverse_of_a3_is_square():
    a = cyclic_generator(3)
    assert generator_inverse("a", 3) == mat_mul(a, a)


def test_general_inverse_via_adjugate():
    M = mat_mul(infinite_pair(4)[0], transvection(4, 3, 1, 7))
    assert mat_mul(M, inverse(M)).is_identity()


def test_orders():
    assert order(cyclic_generator(3), 100) == 3
    assert order(cyclic_generator(4), 100) == 8
    assert order(finite_pair(5)[1], 100) == 6
    assert order(lower_generator(3), 1000) is None


@pytest.mark.parametrize("n", range(3, 13))
def test_a_power_n_is_epsilon(n):
    assert cyclic_generator(n) ** n == IntMatrix.scalar(n, epsilon(n))


def test_epsilon():
    assert [epsilon(n) for n in range(3, 7)] == [1, -1, 1, -1]


@pytest.mark.parametrize("n", range(3, 9))
def test_shift_lemma(n):
    a, b = cyclic_generator(n), lower_generator(n)
    for k in range(n - 1):
        assert (a ** -k) @ b @ (a**k) == transvection(n, k + 2, k + 1)
    assert (a ** -(n - 1)) @ b @ (a ** (n - 1)) == IntMatrix.identity(n) + epsilon(n) * matrix_unit(n, 1, n)


@pytest.mark.parametrize("n", range(3, 7))
def test_shift_general(n):
    a = cyclic_generator(n)
    for p in range(1, n + 1):
        for q in range(1, n + 1):
            if p == q:
                continue
            for k in range(0, n - max(p, q) + 1):
                assert (a ** -k) @ transvection(n, p, q) @ (a**k) == transvection(n, p + k, q + k)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_commutativity_clause_exhaustive(n):
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    for i, j in pairs:
        for k, l in pairs:
            if i != l and j != k:
                T, U = transvection(n, i, j), transvection(n, k, l)
                assert T @ U == U @ T


def test_mod_reduce_basic():
    assert mod_reduce(IntMatrix.scalar(4, -1), 2) == ModMatrix.identity(4, 2)
    assert mod_reduce(lower_generator(3), 5) ** 5 == ModMatrix.identity(3, 5)
    assert mod_reduce(cyclic_generator(4), 7) ** 8 == ModMatrix.identity(4, 7)
    assert mod_order(mod_reduce(lower_generator(3), 5), 100) == 5
    with pytest.raises(ModulusError):
        mod_reduce(lower_generator(3), 1)


def test_mod_matrix_entries_canonical():
    M = mod_reduce(IntMatrix([[-1, 7], [12, -13]]), 5)
    assert M.rows == ((4, 2), (2, 2))
    assert M.key() == bytes([4, 2, 2, 2])


@pytest.mark.parametrize("m", [2, 3, 6, 7])
def test_mod_reduce_multiplicative(m):
    rng = random.Random(m)
    gens = [cyclic_generator(4), lower_generator(4), generator_inverse("a", 4), generator_inverse("b", 4)]
    for _ in range(30):
        A = IntMatrix.identity(4)
        for _ in range(rng.randint(1, 12)):
            A = A @ rng.choice(gens)
        B = IntMatrix.identity(4)
        for _ in range(rng.randint(1, 12)):
            B = B @ rng.choice(gens)
        assert mod_reduce(A @ B, m) == mod_reduce(A, m) @ mod_reduce(B, m)
        assert mod_reduce(A, m).det() == 1
