from fractions import Fraction

import pytest

import trajkit as tk

F = Fraction


def scalar_trajectory(*values):
    return tk.RealTrajectory((1,), tuple((F(v),) for v in values))


FIB = scalar_trajectory(1, 1, 2, 3, 5, 8, 13)


def test_hankel_scalar_window():
    w = scalar_trajectory(1, 2, 3, 4, 5)
    m = tk.hankel(w, 2)
    assert m.entries == (
        (F(1), F(2), F(3), F(4)),
        (F(2), F(3), F(4), F(5)),
    )


def test_hankel_full_depth_single_column():
    w = scalar_trajectory(1, 2, 3)
    m = tk.hankel(w, 3)
    assert m.cols == 1 and m.column(0) == (F(1), F(2), F(3))


def test_hankel_two_blocks_depth_one():
    w = tk.RealTrajectory((1, 1), ((F(1), F(10)), (F(2), F(20)), (F(3), F(30))))
    m = tk.hankel(w, 1)
    assert m.entries == ((F(1), F(2), F(3)), (F(10), F(20), F(30)))


def test_hankel_depth_errors():
    w = scalar_trajectory(1, 2, 3)
    with pytest.raises(tk.LengthError):
        tk.hankel(w, 4)
    with pytest.raises(tk.LengthError):
        tk.hankel(w, 0)


def test_rank_by_elimination():
    # second row eliminates against the first with multiplier 2, leaving a
    # nonzero residual row, so the rank is 2
    m = tk.RationalMatrix(((1, 2, 3, 4), (2, 3, 4, 5)))
    assert tk.rank(m) == 2


def test_rank_zero_matrix():
    assert tk.rank(tk.RationalMatrix(((0, 0), (0, 0)))) == 0


def test_rank_identity():
    assert tk.rank(tk.RationalMatrix(((1, 0, 0), (0, 1, 0), (0, 0, 1)))) == 3


def test_rank_with_fractions():
    independent = tk.RationalMatrix(((F(1, 2), F(1, 3)), (F(3, 2), F(2))))
    assert tk.rank(independent) == 2
    proportional = tk.RationalMatrix(((F(1, 2), F(1, 3)), (F(1), F(2, 3))))
    assert tk.rank(proportional) == 1


def test_fibonacci_rank_plateau():
    # order-two recurrence: every window matrix of depth above two keeps rank 2
    for depth in (2, 3, 4):
        assert tk.rank(tk.hankel(FIB, depth)) == 2
    assert tk.rank(tk.hankel(FIB, 1)) == 1


def test_rank_upper_bound():
    for depth in (1, 2, 3):
        m = tk.hankel(FIB, depth)
        assert tk.rank(m) <= min(m.rows, m.cols)


def test_in_span_accepts_columns_and_shifts():
    m = tk.hankel(FIB, 3)
    for j in range(m.cols):
        assert tk.in_span(m, m.column(j))
    # one-step shift of a stored window stays in the span
    assert tk.in_span(m, (2, 3, 5))
    assert tk.in_span(m, (13, 21, 34))


def test_in_span_rejects_all_single_entry_perturbations():
    m = tk.hankel(FIB, 3)
    base = (2, 3, 5)
    assert tk.in_span(m, base)
    for i in range(3):
        for delta in (1, -1, F(1, 7)):
            probe = list(map(F, base))
            probe[i] += delta
            assert not tk.in_span(m, tuple(probe))


def test_in_span_dimension_check():
    m = tk.hankel(FIB, 3)
    with pytest.raises(tk.DimensionMismatch):
        tk.in_span(m, (1, 2))


def test_free_rows_check_persistently_exciting_input():
    u = scalar_trajectory(1, 0, 0, 1, 1, 0, 1)
    # depth-2 window: rows (1,0,0,1,1,0) and (0,0,1,1,0,1) are independent
    assert tk.free_rows_check(u, [0], 2)


def test_free_rows_check_constant_input_fails():
    u = scalar_trajectory(1, 1, 1, 1, 1)
    assert tk.free_rows_check(u, [0], 1)
    assert not tk.free_rows_check(u, [0], 2)


def test_free_rows_check_depth_beyond_excitation_order():
    u = scalar_trajectory(1, 0, 1, 0, 1, 0, 1)
    # alternating input: rank of the depth-d window is min(d, 2) by elimination
    assert tk.free_rows_check(u, [0], 2)
    assert not tk.free_rows_check(u, [0], 3)


def test_free_rows_check_hand_computed_table():
    w = tk.RealTrajectory(
        (1, 1),
        (
            (F(1), F(1)),
            (F(0), F(1)),
            (F(0), F(1)),
            (F(1), F(1)),
            (F(1), F(1)),
        ),
    )
    # block 0 carries the exciting input, block 1 is constant
    table = {
        (0, 1): True,
        (0, 2): True,
        (1, 1): True,
        (1, 2): False,
        (0, 1, 1): True,   # both blocks, depth 1
        (0, 1, 2): False,  # both blocks, depth 2: constant rows repeat
    }
    assert tk.free_rows_check(w, [0], 1) == table[(0, 1)]
    assert tk.free_rows_check(w, [0], 2) == table[(0, 2)]
    assert tk.free_rows_check(w, [1], 1) == table[(1, 1)]
    assert tk.free_rows_check(w, [1], 2) == table[(1, 2)]
    assert tk.free_rows_check(w, [0, 1], 1) == table[(0, 1, 1)]
    assert tk.free_rows_check(w, [0, 1], 2) == table[(0, 1, 2)]


def test_free_rows_check_errors():
    u = scalar_trajectory(1, 0, 1)
    with pytest.raises(tk.UnknownBlock):
        tk.free_rows_check(u, [1], 1)
    with pytest.raises(tk.LengthError):
        tk.free_rows_check(u, [0], 4)


def test_determinant_vandermonde_identity():
    # det of the Vandermonde matrix equals the product of node differences;
    # rational nodes make any rounding error visible immediately
    nodes = (F(1, 2), F(-1, 3), F(2), F(-3), F(5, 7))
    n = len(nodes)
    matrix = tk.RationalMatrix(tuple(tuple(x**k for k in range(n)) for x in nodes))
    expected = F(1)
    for i in range(n):
        for j in range(i + 1, n):
            expected *= nodes[j] - nodes[i]
    assert tk.determinant(matrix) == expected


def test_determinant_singular_and_empty():
    assert tk.determinant(tk.RationalMatrix(((1, 2), (2, 4)))) == 0
    assert tk.determinant(tk.RationalMatrix(())) == 1
    with pytest.raises(tk.DimensionMismatch):
        tk.determinant(tk.RationalMatrix(((1, 2, 3), (4, 5, 6))))


def test_parse_trajectory_roundtrip_and_errors():
    text = "1 2\n1 1/2 3\n2 5/2 -3\n"
    w = tk.parse_trajectory(text)
    assert w.block_sizes == (1, 2)
    assert w.samples[0] == (F(1), F(1, 2), F(3))
    with pytest.raises(tk.ParseError):
        tk.parse_trajectory("")
    with pytest.raises(tk.ParseError):
        tk.parse_trajectory("x y\n1 2\n")
    with pytest.raises(tk.ParseError):
        tk.parse_trajectory("2\n1\n")
    with pytest.raises(tk.ParseError):
        tk.parse_trajectory("1\n1/0\n")


def test_matrix_validation():
    with pytest.raises(tk.DimensionMismatch):
        tk.RationalMatrix(((1, 2), (3,)))
    with pytest.raises(tk.DimensionMismatch):
        tk.RationalMatrix(((1.5,),))
