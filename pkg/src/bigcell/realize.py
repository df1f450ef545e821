"""The realization rho, its leading part, the doubling, and the correction
polynomials.

rho(A) is the coordinate flow packaged as a plus-side vector field.  The
doubled map adds the tau/sigma twist, subtracts the coadjoint-type leading
part (kept abstract as gl-loop generators S^a_{b,n} and the grading element
D), and keeps the finite-plus-widening-gap remainder concrete.
"""

from fractions import Fraction

from .roots import K_KEY, D_KEY, idx_grade, neg_idx
from .loop import LieElt, StructureConstants
from .bch import BchEngine
from .poly import (Poly, VectorField, Window, tau_vf, tau_idx,
                   widening_gap_audit)


class Realization:
    def __init__(self, constants: StructureConstants):
        self.sc = constants
        self.data = constants.data
        self.engine = BchEngine(constants)

    # -- the plus-side flow ---------------------------------------------------

    def rho(self, A: LieElt, k: int) -> VectorField:
        flow = self.engine.coordinate_flow(A, k, 'plus')
        return VectorField(flow, Window('plus', k))

    def rho_minus(self, A: LieElt, k: int) -> VectorField:
        flow = self.engine.coordinate_flow(A, k, 'minus')
        return VectorField(flow, Window('minus', k))

    # -- leading part and remainder -------------------------------------------

    def jplus(self, a_label, n, k) -> VectorField:
        """+J_{a,n} = sum_{b,c} f_{ba}^c sum_{max(1,n) < m < k} X^{b,m-n} D_{c,m}."""
        coeffs = {}
        for (b, c), v in self.sc.f_constants(a_label).items():
            for m in range(max(1, n) + 1, k):
                key = (c[0], c[1], m)
                var = (b[0], b[1], m - n)
                cur = coeffs.get(key, Poly()) + Poly.var(var, v)
                if cur:
                    coeffs[key] = cur
                else:
                    coeffs.pop(key, None)
        return VectorField(coeffs, Window('plus', k))

    def rplus(self, a_label, n, k):
        """Coefficients of rho(J_{a,n}) - +J_{a,n} on the window."""
        idx = (a_label[0], a_label[1], n)
        diff = self.rho(LieElt.basis(idx), k) - self.jplus(a_label, n, k)
        return dict(diff.coeffs)

    # -- doubling ---------------------------------------------------------------

    def iota_vf(self, s_part, d_coeff, k) -> VectorField:
        """Materialize sum p S^a_{b,n} + d*D on the doubled window |m| < k.

        iota(S^a_{b,n}) = sum_m X^{a,m-n} D_{b,m}; iota(D) = -sum m X D.
        (The sign of iota(D) is forced by [D, S_n] = n S_n and by the image
        of the honest flow of d.)
        """
        coeffs = {}
        def add(key, var, coef):
            cur = coeffs.get(key, Poly()) + Poly.var(var, coef)
            if cur:
                coeffs[key] = cur
            else:
                coeffs.pop(key, None)
        for (a, b, n), p in s_part.items():
            for m in range(-k + 1, k):
                add((b[0], b[1], m), (a[0], a[1], m - n), p)
        if d_coeff:
            for lab in self.data.labels:
                for m in range(-k + 1, k):
                    if m:
                        add((lab[0], lab[1], m), (lab[0], lab[1], m),
                            -d_coeff * m)
        return VectorField(coeffs, Window('both', k))

    def uprho(self, A: LieElt, k: int) -> 'DgElement':
        """rho(A) + tau(rho(sigma A)) with the abstract leading part split off."""
        s_part = {}
        d_coeff = Fraction(0)
        for idx, c in A.items():
            if idx == K_KEY:
                continue
            if idx == D_KEY:
                d_coeff += c
                continue
            lab = (idx[0], idx[1])
            n = idx_grade(idx)
            for (b, cc), v in self.sc.f_constants(lab).items():
                key = (b, cc, n)
                s = s_part.get(key, Fraction(0)) + c * v
                if s:
                    s_part[key] = s
                else:
                    s_part.pop(key, None)
        doubled = self.rho(A, k) + tau_vf(self.data,
                                  self.rho(self.sc.cartan_sigma(A), k))
        vf = doubled - self.iota_vf(s_part, d_coeff, k)
        vf = VectorField(vf.coeffs, Window('both', k))
        return DgElement(vf, s_part, d_coeff)

    def r_polys(self, a_label, n, k):
        """Correction family R^{b,m}_{a,n}: the concrete part of the doubled
        image after removing the abstract generators."""
        idx = (a_label[0], a_label[1], n)
        return dict(self.uprho(LieElt.basis(idx), k).vf.coeffs)

    # -- checks -------------------------------------------------------------------

    def concretize(self, el: 'DgElement', k=None) -> VectorField:
        k = k if k is not None else el.vf.window.cutoff
        return el.vf.truncate(self.data, k) + self.iota_vf(el.s, el.d, k)

    def check_stabilizes(self, A: LieElt, k: int, samples=None, rng=None):
        """Apply the full doubled field to polynomials supported on one half
        and check the result stays on that half."""
        full = self.concretize(self.uprho(A, k))
        ok = True
        for side in ('plus', 'minus'):
            win = self.data.index_window(max(1, k - 2), side)
            polys = samples(side) if samples else _sample_polys(win, rng)
            for p in polys:
                img = full.apply_to(p)
                for v in img.variables():
                    good = self.data.in_A(v) if side == 'plus' else \
                        self.data.in_minus_A(v)
                    if not good:
                        ok = False
        return ok

    def gap_report(self, a_label, n, k, gap):
        return widening_gap_audit(self.r_polys(a_label, n, k), gap)


class DgElement:
    """vf + sum p S^a_{b,n} + d*D, with the vector-field part gap-certified
    at window scale."""

    __slots__ = ('vf', 's', 'd')

    def __init__(self, vf: VectorField, s_part, d_coeff):
        self.vf = vf
        self.s = {k: v for k, v in s_part.items() if v}
        self.d = Fraction(d_coeff)

    def __eq__(self, other):
        return (self.vf, self.s, self.d) == (other.vf, other.s, other.d)

    def is_zero(self):
        return self.vf.is_zero() and not self.s and not self.d

    def __add__(self, other):
        s = dict(self.s)
        for k, v in other.s.items():
            t = s.get(k, 0) + v
            if t:
                s[k] = t
            else:
                s.pop(k, None)
        return DgElement(self.vf + other.vf, s, self.d + other.d)

    def scale(self, c):
        return DgElement(self.vf.scale(c),
                         {k: c * v for k, v in self.s.items()},
                         c * self.d)

    def __sub__(self, other):
        return self + other.scale(-1)


def dg_bracket(real: Realization, x: DgElement, y: DgElement) -> DgElement:
    """Semidirect bracket: gl-loop and D act on the gap part through iota."""
    from .poly import vf_bracket
    data = real.data
    cutoff = min(x.vf.window.cutoff, y.vf.window.cutoff)
    s_out = {}
    # [S^a_{b,n}, S^c_{d,m}] = delta^c_b S^a_{d,n+m} - delta^a_d S^c_{b,n+m}
    for (a, b, n), p in x.s.items():
        for (c, d, m), q in y.s.items():
            if b == c:
                _acc(s_out, (a, d, n + m), p * q)
            if a == d:
                _acc(s_out, (c, b, n + m), -p * q)
    for (a, b, n), p in x.s.items():
        if y.d:
            _acc(s_out, (a, b, n), -y.d * n * p)
    for (c, d, m), q in y.s.items():
        if x.d:
            _acc(s_out, (c, d, m), x.d * m * q)
    # action on the gap parts
    ix = real.iota_vf(x.s, x.d, cutoff + 2)
    iy = real.iota_vf(y.s, y.d, cutoff + 2)
    vf = vf_bracket(data, x.vf, y.vf) \
        + vf_bracket(data, ix, y.vf) + vf_bracket(data, x.vf, iy)
    return DgElement(vf.truncate(data, vf.window.cutoff), s_out, Fraction(0))


def _acc(d, k, v):
    s = d.get(k, 0) + v
    if s:
        d[k] = s
    else:
        d.pop(k, None)


def _sample_polys(window, rng):
    import random
    r = rng or random.Random(7)
    out = [Poly.const(1)]
    for _ in range(6):
        m = Poly.const(1)
        for _ in range(r.randint(1, 2)):
            m = m * Poly.var(r.choice(window), r.randint(1, 3))
        out.append(m)
    return out
