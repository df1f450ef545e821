import pytest
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from bigcell.roots import (build_affine_data, RootDataError, root_idx,
                           cartan_idx, neg_idx, K_KEY, D_KEY)


def test_sl2hat_data():
    data = build_affine_data("A1~")
    assert data.cartan == ((2, -2), (-2, 2))
    assert data.marks == (1, 1)
    assert data.comarks == (1, 1)
    assert data.hv == 2 and data.h == 2


def test_a2hat_data():
    data = build_affine_data("A2~")
    assert data.h == 3 and data.hv == 3
    assert data.theta == (1, 1)
    assert set(data.finite.positive) == {(1, 0), (0, 1), (1, 1)}


def test_marks_are_kernel_vectors():
    for tag in ("A1~", "A2~", "A3~"):
        data = build_affine_data(tag)
        n = len(data.cartan)
        for i in range(n):
            assert sum(data.cartan[i][j] * data.marks[j]
                       for j in range(n)) == 0
            assert sum(data.comarks[j] * data.cartan[j][i]
                       for j in range(n)) == 0
        assert data.marks[0] == 1 and data.comarks[0] == 1


def test_finite_type_rejected():
    with pytest.raises(RootDataError, match="affine"):
        build_affine_data(((2, -1), (-1, 2)))


def test_twisted_rejected():
    # affine GCM of twisted type: the kernel vector has a_0 = 2
    with pytest.raises(RootDataError):
        build_affine_data(((2, -4), (-1, 2)))


def test_wgt():
    data = build_affine_data("A1~")
    assert data.wgt(root_idx((1,), 0)) == (0, 1)
    assert data.wgt(cartan_idx(1, 3)) == (3, 3)
    # delta - theta is the affine simple root
    assert data.wgt(root_idx((-1,), 1)) == (1, 0)


def test_basis_cmp_examples():
    data = build_affine_data("A1~")
    E0, F0 = root_idx((1,), 0), root_idx((-1,), 0)
    F1 = root_idx((-1,), 1)
    assert data.basis_cmp(F0, E0) == -1
    assert data.basis_cmp(E0, F1) == -1
    assert data.basis_cmp(E0, E0) == 0
    # d < k < Cartan at grade 0
    assert data.sort_key(D_KEY) < data.sort_key(K_KEY) \
        < data.sort_key(cartan_idx(1, 0))


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_basis_cmp_total_order(data_strat):
    data = build_affine_data("A2~")
    pool = data.index_window(3, 'both') + [K_KEY, D_KEY]
    x = data_strat.draw(st.sampled_from(pool))
    y = data_strat.draw(st.sampled_from(pool))
    z = data_strat.draw(st.sampled_from(pool))
    cxy, cyx = data.basis_cmp(x, y), data.basis_cmp(y, x)
    assert cxy == -cyx
    assert (cxy == 0) == (x == y)
    if data.basis_cmp(x, y) <= 0 and data.basis_cmp(y, z) <= 0:
        assert data.basis_cmp(x, z) <= 0


def test_index_window_examples():
    data = build_affine_data("A1~")
    E, F, H = lambda n: root_idx((1,), n), lambda n: root_idx((-1,), n), \
        lambda n: cartan_idx(1, n)
    assert data.index_window(1, 'plus') == [E(0)]
    assert data.index_window(2, 'plus') == [E(0), F(1), H(1), E(1)]
    minus = data.index_window(2, 'minus')
    assert sorted(minus) == sorted(neg_idx(i)
                                   for i in data.index_window(2, 'plus'))


def test_window_prefix_consistency():
    data = build_affine_data("A2~")
    for side in ('plus', 'minus', 'both'):
        small = data.index_window(3, side)
        big = data.index_window(4, side)
        assert [i for i in big if i in set(small)] == small


def test_membership():
    data = build_affine_data("A1~")
    assert data.in_A(root_idx((1,), 0))
    assert not data.in_A(root_idx((-1,), 0))
    assert data.in_A(root_idx((-1,), 1))
    assert data.in_minus_A(root_idx((1,), -1))
    assert data.side_of(cartan_idx(1, 0)) == 'neither'


def test_sigma_sign_rank_one_degenerates():
    data = build_affine_data("A1~")
    for n in range(-3, 4):
        assert data.sigma_sign(root_idx((1,), n)) == 1
        assert data.sigma_sign(cartan_idx(1, n)) == -1


def test_explicit_matrix_equals_tag():
    via_tag = build_affine_data("A2~")
    via_matrix = build_affine_data(((2, -1, -1), (-1, 2, -1), (-1, -1, 2)))
    assert via_tag.cartan == via_matrix.cartan
    assert via_tag.pos_order == via_matrix.pos_order
