import random
from fractions import Fraction

import pytest

from bigcell.roots import build_affine_data, root_idx, cartan_idx, K_KEY, \
    D_KEY
from bigcell.loop import StructureConstants, LieElt
from bigcell.realize import Realization, dg_bracket, DgElement
from bigcell.poly import Poly, vf_bracket, tau_vf, widening_gap_audit, Window

import paper_data as paper

E, F, H = paper.E, paper.F, paper.H


@pytest.fixture(scope='module')
def real():
    return Realization(StructureConstants(build_affine_data("A1~")))


def as_terms(vf):
    return {k: dict(p.terms) for k, p in vf.coeffs.items()}


def test_fig1_blocks(real):
    cs = real.sc.chevalley_serre()
    for name, want in paper.FIG1.items():
        gen = cs[(name[0], int(name[1]))]
        vf = real.rho(gen, 4)
        assert as_terms(vf) == want, name


def test_grade8_polynomial(real):
    flow = real.rho(LieElt.basis(E(0)), 9)
    assert dict(flow.coeffs[E(8)].terms) == paper.P_E8


def test_remainder_variable_bound(real):
    # after subtracting the leading part, only low-grade variables remain
    rp = real.rplus(('r', (1,)), 0, 9)
    p = rp[E(8)]
    assert p.max_var_grade() <= 4
    assert dict(p.terms) == {m: c for m, c in paper.P_E8.items()
                             if m != ((H(8), 1),)}


def test_jplus_example(real):
    jp = real.jplus(('r', (1,)), 0, 4)
    assert as_terms(jp) == {
        E(2): {((H(2), 1),): Fraction(2)},
        H(2): {((F(2), 1),): Fraction(-1)},
        E(3): {((H(3), 1),): Fraction(2)},
        H(3): {((F(3), 1),): Fraction(-1)},
    }
    assert real.jplus(('r', (1,)), 3, 4).is_zero()
    # Cartan label: only root targets
    jh = real.jplus(('h', 1), 0, 4)
    assert all(k[0] == 'r' for k in jh.coeffs)


def test_rplus_examples(real):
    rp = real.rplus(('r', (1,)), 0, 3)
    assert dict(rp[E(1)].terms) == {((H(1), 1),): Fraction(2)}
    assert dict(rp[E(2)].terms) == {((H(1), 2),): Fraction(-2)}
    # Cartan direction: only the finitely many diagonal terms survive
    rp_h = real.rplus(('h', 1), 0, 5)
    assert set(rp_h) <= {E(0), F(1), H(1), E(1)} | {F(0)}
    for key, p in rp_h.items():
        assert p == Poly.var(key, {'r': -2 if key[1] == (1,) else 2,
                                   'h': 0}[key[0]] or 0) or not p


def test_rho_homomorphism(real):
    data = real.data
    rng = random.Random(4)
    gens = [E(0), F(0), H(0), E(1), F(1), H(1), E(-1), K_KEY, D_KEY]
    for _ in range(12):
        a, b = rng.choice(gens), rng.choice(gens)
        x, y = LieElt.basis(a), LieElt.basis(b)
        lhs = vf_bracket(data, real.rho(x, 5), real.rho(y, 5))
        rhs = real.rho(real.sc.bracket(x, y), 5)
        assert lhs == rhs.truncate(data, lhs.window.cutoff), (a, b)


def test_tau_examples(real):
    data = real.data
    v = tau_vf(data, real.rho(LieElt.basis(E(0)), 3))
    assert v.window.side == 'minus'
    w = tau_vf(data, v)
    assert w == real.rho(LieElt.basis(E(0)), 3)


def test_uprho_cartan_is_pure_current(real):
    up = real.uprho(LieElt.basis(H(0)), 4)
    assert up.vf.is_zero() and up.d == 0
    assert up.s == {(('r', (1,)), ('r', (1,)), 0): Fraction(-2),
                    (('r', (-1,)), ('r', (-1,)), 0): Fraction(2)}


def test_uprho_center_and_grading(real):
    assert real.uprho(LieElt.basis(K_KEY), 4).is_zero()
    up_d = real.uprho(LieElt.basis(D_KEY), 4)
    assert up_d.d == 1 and up_d.vf.is_zero() and not up_d.s


def test_uprho_equivariance(real):
    data = real.data
    for gen in [E(1), F(1), H(1), E(-2), F(0)]:
        up = real.uprho(LieElt.basis(gen), 4)
        twisted = real.uprho(real.sc.cartan_sigma(LieElt.basis(gen)), 4)
        tau_side = DgElement(tau_vf(data, up.vf), _tau_s(data, up.s), -up.d)
        assert tau_side.vf == twisted.vf
        assert tau_side.s == twisted.s and tau_side.d == twisted.d


def _tau_s(data, s_part):
    out = {}
    for (a, b, n), c in s_part.items():
        sign = data.sigma_sign((a[0], a[1], 0)) * \
            data.sigma_sign((b[0], b[1], 0))
        if (n * data.h) % 2:
            sign = -sign
        na = ('r', tuple(-x for x in a[1])) if a[0] == 'r' else a
        nb = ('r', tuple(-x for x in b[1])) if b[0] == 'r' else b
        out[(na, nb, -n)] = out.get((na, nb, -n), 0) + sign * c
    return {k: v for k, v in out.items() if v}


def test_r_polys_match_displayed_terms(real):
    # the correction family of J_{F,1} carries the displayed quadratics
    r = real.r_polys(('r', (-1,)), 1, 4)
    assert dict(r[F(1)].terms) == {(): Fraction(1), ((H(0), 1),): Fraction(2)}
    assert dict(r[H(1)].terms) == {((E(0), 1),): Fraction(-1)}
    assert dict(r[H(0)].terms) == {((E(-1), 1),): Fraction(-1)}
    assert dict(r[F(0)].terms) == {((E(-1), 1), (F(0), 1)): Fraction(2)}
    assert dict(r[E(-1)].terms) == {((E(-1), 2),): Fraction(-1)}
    assert dict(r[F(-2)].terms) == {((H(-1), 3),): Fraction(8, 3),
                                    ((E(-2), 1), (F(-1), 1)): Fraction(2)}
    # Cartan-label zero directions vanish identically
    assert real.r_polys(('h', 1), 0, 4) == {}


def test_gap_audit_trend(real):
    small = widening_gap_audit(real.r_polys(('r', (-1,)), 1, 5), 1)
    big = widening_gap_audit(real.r_polys(('r', (-1,)), 1, 7), 1)
    assert big['measured_B'] == small['measured_B']


def test_stabilization(real):
    rng = random.Random(8)
    for gen in [F(1), E(0), E(-1), H(1), D_KEY]:
        assert real.check_stabilizes(LieElt.basis(gen), 5, rng=rng), gen


def test_naive_coadjoint_does_not_stabilize(real):
    # iota of the leading currents alone mixes the two halves
    naive = real.iota_vf({(('r', (1,)), ('r', (1,)), 1): Fraction(1)},
                         Fraction(0), 5)
    p = Poly.var(E(1))
    img = naive.apply_to(p)
    assert any(not real.data.in_A(v) for v in img.variables())


def test_dg_bracket_homomorphism(real):
    rng = random.Random(2)
    gens = [E(0), F(1), H(1), E(-1), F(0), H(0), D_KEY]
    for _ in range(10):
        a, b = rng.choice(gens), rng.choice(gens)
        x, y = LieElt.basis(a), LieElt.basis(b)
        lhs = dg_bracket(real, real.uprho(x, 5), real.uprho(y, 5))
        rhs = real.uprho(real.sc.bracket(x, y), 5)
        assert lhs.s == rhs.s and lhs.d == rhs.d, (a, b)
        assert lhs.vf == rhs.vf.truncate(real.data, lhs.vf.window.cutoff), \
            (a, b)
