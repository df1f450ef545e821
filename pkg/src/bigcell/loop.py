"""Exact arithmetic in the affine algebra g = g0[t,1/t] + Ck + Cd.

Structure constants of the underlying finite algebra come from a Chevalley
basis: [E_a, E_b] = N(a,b) E_{a+b} with |N| = p+1, signs fixed by choosing
N > 0 on extraspecial pairs and propagating through the standard identities.
The invariant form is normalized so that <alpha, [E_alpha, E_-alpha]> = 2,
i.e. [E_alpha, E_-alpha] is the coroot of alpha.
"""

from fractions import Fraction

from .roots import (K_KEY, D_KEY, AffineData, idx_grade, neg_idx, root_idx,
                    cartan_idx)


class LieElt(dict):
    """Finitely supported map {basis key: Fraction}; keys with value 0 absent."""

    def __add__(self, other):
        out = LieElt(self)
        for k, v in other.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return out

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return LieElt()
        return LieElt({k: c * v for k, v in self.items()})

    @staticmethod
    def basis(idx, c=1):
        c = Fraction(c)
        return LieElt({idx: c}) if c else LieElt()

    def t_grades(self):
        return [idx_grade(k) for k in self if k not in (K_KEY, D_KEY)]


class StructureConstants:
    """Brackets, pairing and involution data for one affine algebra."""

    def __init__(self, data: AffineData):
        self.data = data
        self.fin = data.finite
        self._n_cache = {}
        # internal order for the extraspecial-pair sign convention
        self._csort = {r: (sum(r), r) for r in self.fin.positive}

    # -- finite-algebra constants -------------------------------------------

    def string_p(self, alpha, beta):
        """Largest k with beta - k*alpha a root."""
        p = 0
        cur = tuple(b - a for a, b in zip(alpha, beta))
        while self.fin.is_root(cur):
            p += 1
            cur = tuple(c - a for a, c in zip(alpha, cur))
        return p

    def _extraspecial(self, gamma):
        for a in sorted(self.fin.positive, key=self._csort.get):
            b = tuple(g - x for g, x in zip(gamma, a))
            if self.fin.is_root(b) and b in self.fin.positive_set \
                    and self._csort[a] < self._csort[b]:
                return a, b
        raise AssertionError("no special pair for %r" % (gamma,))

    def N(self, alpha, beta):
        """Chevalley constant: [E_alpha, E_beta] = N(alpha,beta) E_{alpha+beta}."""
        key = (alpha, beta)
        if key in self._n_cache:
            return self._n_cache[key]
        val = self._compute_N(alpha, beta)
        self._n_cache[key] = val
        return val

    def _compute_N(self, alpha, beta):
        gamma = tuple(a + b for a, b in zip(alpha, beta))
        if not self.fin.is_root(gamma):
            return Fraction(0)
        pos_a = alpha in self.fin.positive_set
        pos_b = beta in self.fin.positive_set
        if pos_a and pos_b:
            return self._positive_pair(alpha, beta, gamma)
        if not pos_a and not pos_b:
            na, nb = tuple(-c for c in alpha), tuple(-c for c in beta)
            return -self.N(na, nb)
        # mixed signs: rotate the zero-sum triple (alpha, beta, -gamma) so
        # that both arguments are positive; N_{a,b}/(c,c) is cyclic-invariant
        if not pos_a:
            # swap to put the positive root first
            return -self.N(beta, alpha)
        # alpha > 0, beta < 0
        if gamma in self.fin.positive_set:
            # N(alpha,beta) = (gamma,gamma)/(alpha,alpha) * N(beta, -gamma)
            #              = -(gamma,gamma)/(alpha,alpha) * N(-beta, gamma)
            nb = tuple(-c for c in beta)
            return -self.fin.norm(gamma) / self.fin.norm(alpha) \
                * self.N(nb, gamma)
        # gamma negative: negate everything
        na, nb = tuple(-c for c in alpha), tuple(-c for c in beta)
        return -self.N(na, nb)

    def _positive_pair(self, alpha, beta, gamma):
        if self._csort[alpha] > self._csort[beta]:
            return -self.N(beta, alpha)
        xi, eta = self._extraspecial(gamma)
        p = self.string_p(alpha, beta)
        if (alpha, beta) == (xi, eta):
            return Fraction(p + 1)
        # Jacobi identity on (E_xi, E_eta, E_{-alpha}) projected on E_beta:
        #   N(xi,eta) N(gamma,-alpha) + T2 + T3 = 0
        neg_a = tuple(-c for c in alpha)
        t2 = Fraction(0)
        em_a = tuple(e - a for e, a in zip(eta, alpha))
        if any(em_a):
            if self.fin.is_root(em_a):
                t2 = self.N(eta, neg_a) * self.N(em_a, xi)
        else:
            # eta == alpha: [[E_eta, E_-alpha]] is the coroot of alpha
            t2 = sum(Fraction(c) * self.fin.pairing_with_coroot(xi, i)
                     for i, c in enumerate(self.fin.coroot_coords(alpha)))
        t3 = Fraction(0)
        xm_a = tuple(x - a for x, a in zip(xi, alpha))
        if any(xm_a):
            if self.fin.is_root(xm_a):
                t3 = self.N(neg_a, xi) * self.N(xm_a, eta)
        else:
            t3 = sum(Fraction(c) * self.fin.pairing_with_coroot(eta, i)
                     for i, c in enumerate(self.fin.coroot_coords(alpha)))
        # N(gamma,-alpha) = -(beta,beta)/(gamma,gamma) N(alpha,beta)
        coef = self.N(xi, eta) * self.fin.norm(beta) / self.fin.norm(gamma)
        val = (t2 + t3) / coef
        assert val.denominator == 1, "non-integral structure constant"
        return val

    # -- finite pairing -------------------------------------------------------

    def pairing_labels(self, la, lb):
        """Invariant form <J_a, J_b> on finite Cartan-Weyl labels."""
        if la[0] == 'r' and lb[0] == 'r':
            if tuple(a + b for a, b in zip(la[1], lb[1])) == (0,) * self.fin.rank:
                return Fraction(2) / self.fin.norm(la[1])
            return Fraction(0)
        if la[0] == 'h' and lb[0] == 'h':
            i, j = la[1] - 1, lb[1] - 1
            return Fraction(self.fin.cartan[i][j]) / self.fin.d[j]
        return Fraction(0)

    # -- finite bracket of labels ---------------------------------------------

    def bracket_labels(self, la, lb):
        """[J_a, J_b] in the finite algebra, as {label: coeff}."""
        out = {}
        if la[0] == 'h' and lb[0] == 'h':
            return out
        if la[0] == 'h':
            c = self.fin.pairing_with_coroot(lb[1], la[1] - 1)
            if c:
                out[lb] = Fraction(c)
            return out
        if lb[0] == 'h':
            c = -self.fin.pairing_with_coroot(la[1], lb[1] - 1)
            if c:
                out[la] = Fraction(c)
            return out
        a, b = la[1], lb[1]
        s = tuple(x + y for x, y in zip(a, b))
        if not any(s):
            for i, c in enumerate(self.fin.coroot_coords(a)):
                if c:
                    out[('h', i + 1)] = Fraction(c)
            return out
        if self.fin.is_root(s):
            n = self.N(a, b)
            if n:
                out[('r', s)] = n
        return out

    # -- affine layer ---------------------------------------------------------

    def bracket(self, x: LieElt, y: LieElt) -> LieElt:
        """[x, y] with the central extension and the grading derivation."""
        out = LieElt()
        for kx, cx in x.items():
            for ky, cy in y.items():
                c = cx * cy
                for k, v in self._bracket_basis(kx, ky).items():
                    s = out.get(k, 0) + c * v
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
        return out

    def _bracket_basis(self, kx, ky):
        if kx == K_KEY or ky == K_KEY:
            return {}
        if kx == D_KEY and ky == D_KEY:
            return {}
        if kx == D_KEY:
            n = idx_grade(ky)
            return {ky: Fraction(n)} if n else {}
        if ky == D_KEY:
            n = idx_grade(kx)
            return {kx: Fraction(-n)} if n else {}
        la, lb = kx[:-1] if kx[0] == 'h' else ('r', kx[1]), None
        la = ('h', kx[1]) if kx[0] == 'h' else ('r', kx[1])
        lb = ('h', ky[1]) if ky[0] == 'h' else ('r', ky[1])
        m, n = idx_grade(kx), idx_grade(ky)
        out = {}
        for lab, v in self.bracket_labels(la, lb).items():
            out[(lab[0], lab[1], m + n)] = v
        if m + n == 0 and m != 0:
            p = self.pairing_labels(la, lb)
            if p:
                out[K_KEY] = out.get(K_KEY, Fraction(0)) + m * p
                if not out[K_KEY]:
                    del out[K_KEY]
        return out

    def bilinear_form(self, x: LieElt, y: LieElt) -> Fraction:
        """<x, y>: loop part pairs across opposite t-grades; <k,d> = 1."""
        tot = Fraction(0)
        for kx, cx in x.items():
            for ky, cy in y.items():
                if kx == K_KEY:
                    tot += cx * cy * (1 if ky == D_KEY else 0)
                elif kx == D_KEY:
                    tot += cx * cy * (1 if ky == K_KEY else 0)
                elif ky in (K_KEY, D_KEY):
                    continue
                elif idx_grade(kx) + idx_grade(ky) == 0:
                    la = ('h', kx[1]) if kx[0] == 'h' else ('r', kx[1])
                    lb = ('h', ky[1]) if ky[0] == 'h' else ('r', ky[1])
                    tot += cx * cy * self.pairing_labels(la, lb)
        return tot

    def cartan_sigma(self, x: LieElt) -> LieElt:
        """Cartan involution: e_i <-> f_i, h -> -h.  On the Chevalley basis
        the induced signs are (-1)^{height+1} in the affine height."""
        out = LieElt()
        for k, c in x.items():
            if k in (K_KEY, D_KEY):
                out[k] = out.get(k, 0) - c
            else:
                kk = neg_idx(k)
                s = self.data.sigma_sign(k)
                out[kk] = out.get(kk, 0) + s * c
        return LieElt({k: v for k, v in out.items() if v})

    # -- distinguished elements -----------------------------------------------

    def chevalley_serre(self):
        """e_i, f_i and the simple coroots as Lie elements, for all nodes."""
        data = self.data
        out = {}
        for i in range(data.rank + 1):
            out[('e', i)] = LieElt.basis(data.e_idx(i))
            out[('f', i)] = LieElt.basis(data.f_idx(i))
            if i == 0:
                h = LieElt.basis(K_KEY)
                for j, c in enumerate(self.fin.coroot_coords(data.theta)):
                    if c:
                        h = h + LieElt.basis(cartan_idx(j + 1, 0), -c)
                out[('hv', 0)] = h
            else:
                out[('hv', i)] = LieElt.basis(cartan_idx(i, 0))
        return out

    def cartan_basis(self):
        """Basis {H_i} + {k, d} of the affine Cartan subalgebra."""
        els = [LieElt.basis(cartan_idx(i, 0)) for i in range(1, self.data.rank + 1)]
        els.append(LieElt.basis(K_KEY))
        els.append(LieElt.basis(D_KEY))
        return els

    def dual_cartan_basis(self):
        """Dual basis of cartan_basis() under the invariant form."""
        basis = self.cartan_basis()
        n = len(basis)
        gram = [[self.bilinear_form(basis[i], basis[j]) for j in range(n)]
                for i in range(n)]
        inv = _invert(gram)
        out = []
        for i in range(n):
            e = LieElt()
            for j in range(n):
                e = e + basis[j].scale(inv[j][i])
            out.append(e)
        return out

    def f_constants(self, a_label, to_label=None):
        """Structure constants f_{b a}^c over b, c for fixed a: [J_b, J_a] =
        sum_c f_{ba}^c J_c.  Returns {(b, c): coeff}."""
        out = {}
        for b in self.data.labels:
            for c, v in self.bracket_labels(b, a_label).items():
                if v:
                    out[(b, c)] = v
        return out


def _invert(m):
    n = len(m)
    a = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(int(i == j))
                                                  for j in range(n)]
         for i in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        f = a[c][c]
        a[c] = [x / f for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                g = a[r][c]
                a[r] = [x - g * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]
