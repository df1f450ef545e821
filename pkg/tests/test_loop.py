import random
from fractions import Fraction

import pytest

from bigcell.roots import (build_affine_data, root_idx, cartan_idx,
                           K_KEY, D_KEY, FiniteRoots)
from bigcell.loop import StructureConstants, LieElt


def sl2():
    return StructureConstants(build_affine_data("A1~"))


E = lambda n: root_idx((1,), n)
F = lambda n: root_idx((-1,), n)
H = lambda n: cartan_idx(1, n)


def test_bracket_examples():
    sc = sl2()
    assert dict(sc.bracket(LieElt.basis(E(0)), LieElt.basis(F(0)))) == \
        {H(0): 1}
    assert dict(sc.bracket(LieElt.basis(E(1)), LieElt.basis(F(-1)))) == \
        {H(0): 1, K_KEY: 1}
    assert sc.bracket(LieElt.basis(K_KEY), LieElt.basis(E(3))) == LieElt()
    assert dict(sc.bracket(LieElt.basis(D_KEY), LieElt.basis(E(3)))) == \
        {E(3): 3}


def test_bilinear_form():
    sc = sl2()
    assert sc.bilinear_form(LieElt.basis(E(2)), LieElt.basis(F(-2))) == 1
    assert sc.bilinear_form(LieElt.basis(K_KEY), LieElt.basis(D_KEY)) == 1
    assert sc.bilinear_form(LieElt.basis(K_KEY), LieElt.basis(K_KEY)) == 0
    assert sc.bilinear_form(LieElt.basis(H(0)), LieElt.basis(H(0))) == 2


def test_sigma():
    sc = sl2()
    assert dict(sc.cartan_sigma(LieElt.basis(E(0)))) == {F(0): 1}
    assert dict(sc.cartan_sigma(LieElt.basis(H(1)))) == {H(-1): -1}
    assert dict(sc.cartan_sigma(LieElt.basis(K_KEY))) == {K_KEY: -1}


def _basis_pool(sc, nrange=3):
    data = sc.data
    return [(l[0], l[1], n) for l in data.labels
            for n in range(-nrange, nrange + 1)] + [K_KEY, D_KEY]


@pytest.mark.parametrize("tag", ["A1~", "A2~"])
def test_sigma_involutive_automorphism(tag):
    sc = StructureConstants(build_affine_data(tag))
    rng = random.Random(9)
    pool = _basis_pool(sc)
    for _ in range(150):
        x = LieElt.basis(rng.choice(pool), rng.randint(1, 3))
        y = LieElt.basis(rng.choice(pool), rng.randint(1, 3))
        assert sc.cartan_sigma(sc.cartan_sigma(x)) == x
        assert sc.cartan_sigma(sc.bracket(x, y)) == \
            sc.bracket(sc.cartan_sigma(x), sc.cartan_sigma(y))


@pytest.mark.parametrize("tag", ["A1~", "A2~"])
def test_jacobi(tag):
    sc = StructureConstants(build_affine_data(tag))
    rng = random.Random(5)
    pool = _basis_pool(sc, 2)
    for _ in range(120):
        x, y, z = (LieElt.basis(rng.choice(pool)) for _ in range(3))
        s = sc.bracket(x, sc.bracket(y, z)) \
            + sc.bracket(y, sc.bracket(z, x)) \
            + sc.bracket(z, sc.bracket(x, y))
        assert s == LieElt()


@pytest.mark.parametrize("tag", ["A1~", "A2~"])
def test_form_invariance(tag):
    sc = StructureConstants(build_affine_data(tag))
    rng = random.Random(6)
    pool = _basis_pool(sc, 2)
    for _ in range(150):
        x, y, z = (LieElt.basis(rng.choice(pool)) for _ in range(3))
        assert sc.bilinear_form(sc.bracket(x, y), z) + \
            sc.bilinear_form(y, sc.bracket(x, z)) == 0


@pytest.mark.parametrize("tag", ["A1~", "A2~", "A3~"])
def test_chevalley_serre_relations(tag):
    data = build_affine_data(tag)
    sc = StructureConstants(data)
    cs = sc.chevalley_serre()
    n = data.rank + 1
    for i in range(n):
        for j in range(n):
            br = sc.bracket(cs[('e', i)], cs[('f', j)])
            assert br == (cs[('hv', i)] if i == j else LieElt()), (i, j)
            # [coroot_i, e_j] = A_ij e_j
            ad = sc.bracket(cs[('hv', i)], cs[('e', j)])
            assert ad == cs[('e', j)].scale(data.cartan[i][j])
            if i != j:
                # Serre relation
                cur = cs[('e', j)]
                for _ in range(1 - data.cartan[i][j]):
                    cur = sc.bracket(cs[('e', i)], cur)
                assert cur == LieElt(), ("serre e", i, j)
                cur = cs[('f', j)]
                for _ in range(1 - data.cartan[i][j]):
                    cur = sc.bracket(cs[('f', i)], cur)
                assert cur == LieElt(), ("serre f", i, j)


def test_sl2hat_e0():
    data = build_affine_data("A1~")
    sc = StructureConstants(data)
    assert dict(sc.chevalley_serre()[('e', 0)]) == {F(1): 1}


def test_structure_constants_vs_sl3_matrices():
    # cross-check the root-string Chevalley constants against matrix units
    data = build_affine_data("A2~")
    sc = StructureConstants(data)
    import itertools
    # E_{(1,0)} ~ e12, E_{(0,1)} ~ e23, E_{(1,1)} ~ e13 up to signs; check
    # magnitudes of all finite brackets against sl3
    def mat(lab):
        units = {(1, 0): (0, 1), (0, 1): (1, 2), (1, 1): (0, 2),
                 (-1, 0): (1, 0), (0, -1): (2, 1), (-1, -1): (2, 0)}
        m = [[Fraction(0)] * 3 for _ in range(3)]
        if lab[0] == 'r':
            i, j = units[lab[1]]
            m[i][j] = Fraction(1)
        else:
            i = lab[1] - 1
            m[i][i] = Fraction(1)
            m[i + 1][i + 1] = Fraction(-1)
        return m
    def comm(a, b):
        n = len(a)
        return [[sum(a[i][k] * b[k][j] - b[i][k] * a[k][j]
                     for k in range(n)) for j in range(n)] for i in range(n)]
    for la in data.labels:
        for lb in data.labels:
            got = sc.bracket_labels(la, lb)
            want = comm(mat(la), mat(lb))
            # compare magnitudes entry by entry through the label basis
            total = [[Fraction(0)] * 3 for _ in range(3)]
            for lc, c in got.items():
                m = mat(lc)
                for i in range(3):
                    for j in range(3):
                        total[i][j] += abs(c) * m[i][j] if False else c * m[i][j]
            # the two Chevalley bases can differ by signs on non-simple
            # roots; compare absolute values entrywise
            for i in range(3):
                for j in range(3):
                    assert abs(total[i][j]) == abs(want[i][j]), (la, lb)


def test_g2_root_strings():
    # non-simply-laced sanity purely at the finite level
    g2 = FiniteRoots(((2, -1), (-3, 2)))
    assert len(g2.positive) == 6
    sc = StructureConstants(build_affine_data("A1~"))  # engine for brackets
    # Jacobi for the G2 constants via a standalone structure-constant table
    from bigcell.roots import AffineData
    # build a fake wrapper: reuse StructureConstants on an affinization is
    # overkill; check the root strings directly instead
    theta = g2.highest
    assert g2.height(theta) == 5
    assert g2.norm(theta) == 2
