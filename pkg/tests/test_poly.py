import random
from fractions import Fraction

import pytest

from bigcell.roots import build_affine_data, root_idx, cartan_idx
from bigcell.poly import (Poly, VectorField, OneForm, Window, vf_bracket,
                          widening_gap_audit, tau_vf, tau_poly, WindowError)

E = lambda n: root_idx((1,), n)
F = lambda n: root_idx((-1,), n)
H = lambda n: cartan_idx(1, n)


@pytest.fixture(scope='module')
def data():
    return build_affine_data("A1~")


def test_apply_derivation():
    p = Poly({((E(1), 2),): Fraction(1)})
    assert p.diff(E(1)) == Poly({((E(1), 1),): Fraction(2)})
    assert p.diff(H(1)).is_zero()
    q = Poly({((H(8), 1),): Fraction(2)})
    assert q.diff(E(0)).is_zero()


def test_leibniz():
    rng = random.Random(1)
    vars_ = [E(0), F(1), H(1), E(1)]
    def rand_poly():
        p = Poly()
        for _ in range(rng.randint(1, 3)):
            m = tuple(sorted((v, rng.randint(1, 2))
                             for v in rng.sample(vars_, rng.randint(1, 2))))
            p = p + Poly({m: Fraction(rng.randint(-3, 3))})
        return p
    for _ in range(40):
        p, q = rand_poly(), rand_poly()
        v = rng.choice(vars_)
        assert (p * q).diff(v) == p.diff(v) * q + p * q.diff(v)


def test_q_grade_additivity(data):
    p = Poly.var(E(1))
    q = Poly.var(F(1)) * Poly.var(H(1))
    gp, gq = p.q_grade(data), q.q_grade(data)
    gpq = (p * q).q_grade(data)
    assert gpq == tuple(a + b for a, b in zip(gp, gq))


def test_vf_bracket_euler(data):
    v = VectorField({E(1): Poly.var(E(1))}, Window('plus', 4))
    w = VectorField({E(1): Poly.const(1)}, Window('plus', 4))
    br = vf_bracket(data, v, w)
    assert br == VectorField({E(1): Poly.const(-1)}, Window('plus', 4))
    assert vf_bracket(data, v, v).is_zero()


def test_vf_bracket_certificate_shrinks(data):
    # w's coefficient at a low key uses a variable outside v's window
    v = VectorField({E(1): Poly.const(1)}, Window('plus', 2))
    w = VectorField({E(1): Poly.var(E(2))}, Window('plus', 4))
    br = vf_bracket(data, v, w)
    assert br.window.cutoff <= 2
    bad = VectorField({E(0): Poly.var(E(2))}, Window('plus', 4))
    with pytest.raises(WindowError):
        vf_bracket(data, v, bad)


def test_widening_gap_examples(data):
    # family X^{a,n} X^{b,n} at key (c,2n): passes once 2n - K > n
    K = 3
    fam = {E(2 * n): Poly.var(E(n)) * Poly.var(F(n)) for n in range(1, 7)}
    rep = widening_gap_audit(fam, K)
    for key in fam:
        n = key[2] // 2
        inside = key in rep['pass_set']
        assert inside == (n > K), (key, n)
    # constant-variable family: passes for n > 1 + K
    fam2 = {E(n): Poly.var(E(1)) for n in range(1, 9)}
    rep2 = widening_gap_audit(fam2, K)
    for key in fam2:
        assert (key in rep2['pass_set']) == (key[2] > 1 + K)
    # diagonal family: violation at every n > K as well
    fam3 = {E(n): Poly.var(E(n)) for n in range(1, 9)}
    rep3 = widening_gap_audit(fam3, K)
    assert rep3['pass_set'] == []
    assert rep3['measured_B'] == 8


def test_gap_closure(data):
    # chain-rule composites of gap families stay gap families
    rng = random.Random(3)
    K = 2
    fam_p = {E(n): Poly.var(E(max(1, n - K - 1))) for n in range(4, 9)}
    fam_q = {E(n): Poly.var(E(max(1, n - K - 1))) * Poly.var(F(1))
             for n in range(4, 9)}
    assert not widening_gap_audit(fam_p, K)['violation_set']
    assert not widening_gap_audit(fam_q, K)['violation_set']
    comp = {}
    for key, q in fam_q.items():
        tot = Poly()
        for bkey, p in fam_p.items():
            d = q.diff(bkey)
            if d:
                tot = tot + p * d
        if tot:
            comp[key] = tot
    assert not widening_gap_audit(comp, K)['violation_set']


def test_tau(data):
    v = VectorField({F(2): Poly.var(E(1))}, Window('plus', 4))
    t = tau_vf(data, v)
    assert t.coeffs == {E(-2): Poly.var(F(-1))}
    assert t.window.side == 'minus'
    # tau is an involution
    assert tau_vf(data, t) == v
    assert tau_poly(data, Poly.var(H(1))) == Poly.var(H(-1), -1)


def test_vf_jacobi(data):
    rng = random.Random(11)
    vars_ = data.index_window(3, 'plus')
    def rand_vf():
        coeffs = {}
        for _ in range(rng.randint(1, 2)):
            key = rng.choice(vars_)
            coeffs[key] = Poly.var(rng.choice(vars_), rng.randint(-2, 2))
        return VectorField(coeffs, Window('plus', 5))
    for _ in range(30):
        a, b, c = rand_vf(), rand_vf(), rand_vf()
        s = vf_bracket(data, a, vf_bracket(data, b, c)) \
            + vf_bracket(data, b, vf_bracket(data, c, a)) \
            + vf_bracket(data, c, vf_bracket(data, a, b))
        for key, p in s.coeffs.items():
            if s.window.contains_key(data, key):
                assert p.is_zero()
