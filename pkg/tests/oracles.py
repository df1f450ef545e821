"""Independent oracles used by the tests.

The coordinate-flow oracle never touches the word engine: it conjugates
with exponential adjoint series, projects onto the plus part and solves a
linear system for the shifts at a rational sample point.
"""

from fractions import Fraction

from bigcell.roots import idx_grade, K_KEY, D_KEY
from bigcell.loop import LieElt


def _fact(k):
    f = 1
    for i in range(2, k + 1):
        f *= i
    return f


def ad_exp(sc, idx, coeff, elt, trunc):
    """e^{ad of coeff*J_idx} applied to a Lie element, grades < trunc."""
    out = LieElt(elt)
    term = LieElt(elt)
    base = LieElt.basis(idx)
    k = 1
    while True:
        term = sc.bracket(base, term)
        term = LieElt({i: v for i, v in term.items()
                       if i in (K_KEY, D_KEY) or idx_grade(i) < trunc})
        if not term:
            break
        out = out + term.scale(Fraction(coeff ** k, _fact(k)))
        k += 1
        if k > 80:
            raise RuntimeError("adjoint series did not terminate")
    return out


def flow_oracle(real, A: LieElt, k, point):
    """{key: value} of the coordinate shifts at the sample point."""
    sc, data = real.sc, real.data
    grade = min([idx_grade(i) for i in A if i not in (K_KEY, D_KEY)] + [0])
    p = k - min(0, grade)
    window = data.index_window(p, 'plus')
    z = LieElt(A)
    for idx in reversed(window):
        z = ad_exp(sc, idx, point[idx], z, p)
    cols = []
    for j, idx in enumerate(window):
        m = LieElt.basis(idx)
        for pidx in reversed(window[:j]):
            m = ad_exp(sc, pidx, point[pidx], m, p)
        cols.append(m)
    keys = sorted({i for c in cols for i in c if data.in_A(i)} |
                  {i for i in z if data.in_A(i)}, key=data.sort_key)
    n = len(window)
    mat = [[c.get(bk, Fraction(0)) for c in cols] + [z.get(bk, Fraction(0))]
           for bk in keys]
    sol = [Fraction(0)] * n
    piv = 0
    used = []
    for col in range(n):
        sel = next((r for r in range(piv, len(mat)) if mat[r][col]), None)
        if sel is None:
            continue
        mat[piv], mat[sel] = mat[sel], mat[piv]
        f = mat[piv][col]
        mat[piv] = [x / f for x in mat[piv]]
        for r in range(len(mat)):
            if r != piv and mat[r][col]:
                g = mat[r][col]
                mat[r] = [a - g * b for a, b in zip(mat[r], mat[piv])]
        used.append(col)
        piv += 1
    for r, col in enumerate(used):
        sol[col] = mat[r][n]
    return dict(zip(window, sol))
