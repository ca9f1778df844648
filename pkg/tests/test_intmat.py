import random

from qatorsion.intmat import (det_bareiss, identity, invert_rational, mat_mul,
                              smith_normal_form, symmetric_signature,
                              transpose)

from oracles import det_laplace


def twist_family_matrix(n):
    return [[-10 * n + 2, 10 * n, 0, -1],
            [10 * n, -10 * n - 2, 1, 0],
            [0, 1, 10 * n, -10 * n - 3],
            [-1, 0, -10 * n - 3, 10 * n + 6]]


def check_snf(m):
    diag, u, v = smith_normal_form(m)
    assert abs(det_bareiss(u)) == 1
    assert abs(det_bareiss(v)) == 1
    prod = mat_mul(mat_mul(u, m), v)
    for i in range(len(m)):
        for j in range(len(m[0]) if m else 0):
            expect = diag[i] if i == j and i < len(diag) else 0
            assert prod[i][j] == expect
    for i in range(len(diag) - 1):
        if diag[i] == 0:
            assert diag[i + 1] == 0
        else:
            assert diag[i + 1] % diag[i] == 0
    assert all(d >= 0 for d in diag)
    return diag


def test_presentation_matrix_snf_is_25():
    for n in range(6):
        assert check_snf(twist_family_matrix(n)) == [1, 1, 1, 25]


def test_snf_examples():
    assert check_snf([[2, 0], [0, 3]]) == [1, 6]
    assert check_snf([[0]]) == [0]
    assert check_snf([[7]]) == [7]
    assert check_snf([[1]]) == [1]


def test_snf_random_and_det_product():
    rng = random.Random(13)
    for _ in range(250):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        m = [[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)]
        diag = check_snf(m)
        if r == c:
            prod = 1
            for d in diag:
                prod *= d
            assert prod == abs(det_bareiss(m))


def test_det_matches_laplace():
    rng = random.Random(14)
    for _ in range(60):
        n = rng.randint(0, 5)
        m = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(n)]
        assert det_bareiss(m) == det_laplace(m)


def test_invert_rational():
    rng = random.Random(15)
    done = 0
    while done < 20:
        n = rng.randint(1, 4)
        m = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
        if det_bareiss(m) == 0:
            continue
        done += 1
        inv = invert_rational(m)
        prod = mat_mul(m, inv)
        for i in range(n):
            for j in range(n):
                assert prod[i][j] == (1 if i == j else 0)


def test_signature_basics():
    assert symmetric_signature([]) == 0
    assert symmetric_signature([[5]]) == 1
    assert symmetric_signature([[-2, 0], [0, 3]]) == 0
    assert symmetric_signature([[0, 1], [1, 0]]) == 0
    assert symmetric_signature([[1, 0], [0, 1]]) == 2


def test_signature_e8():
    e8 = [[2, -1, 0, 0, 0, 0, 0, 0],
          [-1, 2, -1, 0, 0, 0, 0, 0],
          [0, -1, 2, -1, 0, 0, 0, 0],
          [0, 0, -1, 2, -1, 0, 0, 0],
          [0, 0, 0, -1, 2, -1, 0, -1],
          [0, 0, 0, 0, -1, 2, -1, 0],
          [0, 0, 0, 0, 0, -1, 2, 0],
          [0, 0, 0, 0, -1, 0, 0, 2]]
    assert symmetric_signature(e8) == 8
    assert det_bareiss(e8) == 1
    assert symmetric_signature([[-x for x in row] for row in e8]) == -8


def test_signature_congruence_invariant():
    rng = random.Random(16)
    for _ in range(80):
        n = rng.randint(1, 4)
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                m[i][j] = m[j][i] = rng.randint(-4, 4)
        u = identity(n)
        for _ in range(6):
            i, j = rng.randrange(n), rng.randrange(n)
            if i != j:
                c = rng.randint(-2, 2)
                for k in range(n):
                    u[i][k] += c * u[j][k]
        cong = mat_mul(mat_mul(u, m), transpose(u))
        assert symmetric_signature(cong) == symmetric_signature(m)
