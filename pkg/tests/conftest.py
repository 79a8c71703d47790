import random
from fractions import Fraction
from math import factorial

import pytest

from higherderiv import (LinearMap, Matrix, dual_numbers, matrix_algebra, upper_triangular,
                         random_char_sequence)
from higherderiv.exactmath import vec_sub


@pytest.fixture(scope="session")
def M1():
    return matrix_algebra(1)


@pytest.fixture(scope="session")
def M2():
    return matrix_algebra(2)


@pytest.fixture(scope="session")
def M3():
    return matrix_algebra(3)


@pytest.fixture(scope="session")
def T2():
    return upper_triangular(2)


@pytest.fixture(scope="session")
def dual():
    return dual_numbers()


@pytest.fixture(scope="session")
def shipped(M1, M2, M3, T2, dual):
    return [M1, M2, M3, T2, dual, upper_triangular(3)]


def unit_at(alg, name):
    """Basis vector of ``alg`` by its printed name."""
    return alg.basis_vectors()[alg.basis.index(name)]


def iterated_commutator(alg, x, a, times):
    """Apply ``a -> xa - ax`` ``times`` times using only algebra products."""
    for _ in range(times):
        a = vec_sub(alg.mul(x, a), alg.mul(a, x))
    return a


def dx_power_over_factorial(alg, x, n):
    """Independent oracle for ``d_x^n / n!`` built column by column."""
    cols = [tuple(Fraction(c, factorial(n)) for c in iterated_commutator(alg, x, e, n))
            for e in alg.basis_vectors()]
    return LinearMap(Matrix.from_columns(cols))


def random_instances(alg, count, N, seed):
    rng = random.Random(seed)
    return [random_char_sequence(alg, N, rng) for _ in range(count)]


ACCEPTANCE_LINES = []


def record_criterion(number, title, ok, note=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
    if note:
        line += f" ({note})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
