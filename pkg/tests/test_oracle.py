import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import running_example, minimize_example
from minpres import oracle
from minpres.errors import DimensionMismatch, TooLarge
from minpres.lw import ker_basis_lw, minimize_lw
from minpres.matrix import GradedMatrix


def compressed(f, g):
    return (f.x_values.index(g[0]), f.y_values.index(g[1]))


def test_dense_rank_small_cases():
    assert oracle.dense_rank(np.eye(4, dtype=np.uint8)) == 4
    assert oracle.dense_rank(np.ones((3, 5), dtype=np.uint8)) == 1
    assert oracle.dense_rank(np.zeros((2, 2), dtype=np.uint8)) == 0
    # Rows sum to zero mod 2.
    assert oracle.dense_rank(np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]], dtype=np.uint8)) == 2


@given(st.lists(st.lists(st.integers(0, 1), min_size=4, max_size=4), min_size=1, max_size=4))
@settings(max_examples=60)
def test_dense_rank_by_enumeration(rows):
    # Brute force: rank = log2 of the number of distinct vectors in the row span.
    a = np.array(rows, dtype=np.uint8)
    span = set()
    for mask in range(1 << len(rows)):
        v = np.zeros(4, dtype=np.uint8)
        for i in range(len(rows)):
            if mask >> i & 1:
                v ^= a[i]
        span.add(tuple(v))
    assert 1 << oracle.dense_rank(a) == len(span)


def test_hilbert_of_running_example():
    f = running_example()
    assert oracle.hilbert_of_firep(f, compressed(f, (2, 2))) == 1
    assert oracle.hilbert_of_firep(f, compressed(f, (3, 3))) == 1
    assert oracle.hilbert_of_firep(f, compressed(f, (3, 2))) == 1
    assert oracle.hilbert_of_firep(f, compressed(f, (1, 1))) == 0
    assert oracle.hilbert_of_firep(f, (-1, -1)) == 0


def test_hilbert_of_minimal_presentation_matches():
    f = running_example()
    # Generators at (2,2) and (3,3), one relation at (3,3) killing the first.
    gens = [compressed(f, (2, 2)), compressed(f, (3, 3))]
    m = GradedMatrix(gens, [compressed(f, (3, 3))], [[0]])
    assert oracle.compare_hilbert(f, m)
    # Without the relation the dimension at (3,3) is 2 instead of 1.
    wrong = GradedMatrix(gens, [], [])
    report = oracle.compare_hilbert(f, wrong)
    assert not report and report.grade == compressed(f, (3, 3))


def test_query_grades_include_joins():
    m = GradedMatrix([(0, 2)], [(3, 0), (0, 2)], [[], [0]])
    assert (3, 2) in oracle.query_grades(m)


def test_check_kernel_basis():
    f = running_example()
    K = ker_basis_lw(f.B)
    assert oracle.check_kernel_basis(f.B, K)
    # Dependent: duplicate a column.
    dup = GradedMatrix(K.row_grades, K.col_grades + [K.col_grades[0]], K.columns() + [K.column(0)])
    assert not oracle.check_kernel_basis(f.B, dup)
    # Too few elements.
    short = GradedMatrix(K.row_grades, K.col_grades[:2], K.columns()[:2])
    rep = oracle.check_kernel_basis(f.B, short)
    assert not rep and "nullity" in rep.reason
    # Not in the kernel.
    bad = GradedMatrix(K.row_grades, [K.col_grades[-1]], [[0]])
    assert "non-zero" in oracle.check_kernel_basis(f.B, bad).reason
    # Element born too late.
    late = GradedMatrix(K.row_grades, [(9, 9)] * 3, K.columns())
    assert not oracle.check_kernel_basis(f.B, late)
    with pytest.raises(DimensionMismatch):
        oracle.check_kernel_basis(f.B, GradedMatrix([(0, 0)], [], []))


def test_check_minimality():
    rep = oracle.check_minimality(minimize_example())
    assert not rep
    assert (2, 0) in rep.entries  # U is local in A
    assert oracle.check_minimality(minimize_lw(minimize_example()))


def test_exact_grade_rank_on_minimize_example():
    m = minimize_example()
    assert oracle.exact_grade_rank(m, (1, 1)) == 1  # column A against rows S, T, U
    assert oracle.exact_grade_rank(m, (3, 1)) == 1
    assert oracle.exact_grade_rank(m, (3, 3)) == 1
    assert oracle.exact_grade_rank(m, (2, 1)) == 0


def test_size_gate():
    n = oracle.MAX_COLUMNS + 1
    big = GradedMatrix([(0, 0)], [(0, 0)] * n, [[]] * n, check=False)
    with pytest.raises(TooLarge):
        oracle.hilbert_of_presentation(big, (0, 0))
