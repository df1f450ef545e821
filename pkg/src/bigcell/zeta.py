"""Regulated first products and the constant-term prescription.

With the regulator switched on, each beta-gamma contraction of index (a,n)
carries a factor z^n, so the divergent first products on the plus side
become z-series.  The pipeline reconstructs the series as a rational
function, substitutes z = e^y as truncated series, and extracts the
constant Laurent coefficient at y = 0.
"""

from fractions import Fraction

from .loop import LieElt
from .realize import Realization
from .states import nth_product
from .splitting import vartheta_state


class ReconstructionError(ValueError):
    pass


class RationalSeries:
    """A certified prefix of a z-series, optionally with a rational model.

    coeffs[i] is the z^i coefficient; `reconstructed`, when present, is a
    pair (num, den) of coefficient lists with den[0] = 1; `certificate`
    counts prefix terms matched beyond those needed for the fit.
    """

    def __init__(self, coeffs, reconstructed=None, certificate=0):
        self.coeffs = [Fraction(c) for c in coeffs]
        self.reconstructed = reconstructed
        self.certificate = certificate

    def __eq__(self, other):
        return (self.coeffs, self.reconstructed) == \
               (other.coeffs, other.reconstructed)

    def __repr__(self):
        return "RationalSeries(%r, rec=%r)" % (self.coeffs, self.reconstructed)


def regulated_first_product(real: Realization, phi, x: LieElt, y: LieElt,
                            cutoff, margin=2) -> RationalSeries:
    """z-series of vartheta(x) (1) vartheta(y); the prefix is certified by
    stability under shrinking the window."""
    def series_at(k):
        prod = nth_product(vartheta_state(real, phi, x, k),
                           vartheta_state(real, phi, y, k), 1,
                           regulator=True)
        return prod.vacuum_coefficient()
    big = series_at(cutoff)
    small = series_at(cutoff - margin)
    top = max(list(big) + [0])
    stable = 0
    while stable <= top and big.get(stable, Fraction(0)) \
            == small.get(stable, Fraction(0)):
        stable += 1
    return RationalSeries([big.get(i, Fraction(0)) for i in range(stable)])


def reconstruct_rational(series: RationalSeries, max_num_deg, max_den_deg,
                         safety=1) -> RationalSeries:
    """Pade-style exact fit p(z)/q(z) with q(0) = 1, re-expanded against the
    whole prefix."""
    c = series.coeffs
    need = max_num_deg + max_den_deg + 1 + safety
    if len(c) < need:
        raise ReconstructionError(
            "prefix of %d terms is too short for degrees (%d, %d)"
            % (len(c), max_num_deg, max_den_deg))
    # unknowns: p_0..p_N, q_1..q_M; equations from every prefix coefficient
    N, M = max_num_deg, max_den_deg
    nun = (N + 1) + M
    rows = []
    for k in range(len(c)):
        row = [Fraction(0)] * nun
        if k <= N:
            row[k] = Fraction(-1)
        for j in range(1, min(k, M) + 1):
            row[N + j] = c[k - j]
        rows.append((row, -c[k]))
    sol = _gauss(rows, nun)
    if sol is None:
        raise ReconstructionError("no fit within bounds")
    num = sol[:N + 1]
    den = [Fraction(1)] + sol[N + 1:]
    # exact re-expansion check over the full prefix
    exp = expand_rational(num, den, len(c))
    if exp != c:
        raise ReconstructionError("no fit within bounds")
    while num and not num[-1]:
        num.pop()
    while len(den) > 1 and not den[-1]:
        den.pop()
    cert = len(c) - need
    return RationalSeries(c, (num, den), cert)


def expand_rational(num, den, terms):
    """Power-series expansion of num/den (den[0] must be nonzero)."""
    if not den or not den[0]:
        raise ReconstructionError("denominator has no constant term")
    out = []
    for k in range(terms):
        v = num[k] if k < len(num) else Fraction(0)
        for j in range(1, min(k, len(den) - 1) + 1):
            v -= den[j] * out[k - j]
        out.append(v / den[0])
    return out


def _gauss(rows, n):
    mat = [list(r) + [v] for r, v in rows]
    piv = 0
    where = []
    for col in range(n):
        sel = next((r for r in range(piv, len(mat)) if mat[r][col]), None)
        if sel is None:
            where.append(None)
            continue
        mat[piv], mat[sel] = mat[sel], mat[piv]
        f = mat[piv][col]
        mat[piv] = [x / f for x in mat[piv]]
        for r in range(len(mat)):
            if r != piv and mat[r][col]:
                g = mat[r][col]
                mat[r] = [a - g * b for a, b in zip(mat[r], mat[piv])]
        where.append(piv)
        piv += 1
    for r in range(piv, len(mat)):
        if mat[r][n]:
            return None
    sol = [Fraction(0)] * n
    for col, r in enumerate(where):
        if r is not None:
            sol[col] = mat[r][n]
    return sol


# ---------------------------------------------------------------------------
# z = e^y substitution


def _exp_series(j, order):
    """e^{j y} as a y-series with `order`+1 terms."""
    out = [Fraction(1)]
    f = 1
    for k in range(1, order + 1):
        f *= k
        out.append(Fraction(j ** k, f))
    return out


def _poly_of_exp(coeffs, order):
    """sum_j coeffs[j] e^{j y} as a y-series."""
    out = [Fraction(0)] * (order + 1)
    for j, c in enumerate(coeffs):
        if not c:
            continue
        e = _exp_series(j, order)
        for k in range(order + 1):
            out[k] += c * e[k]
    return out


def zeta_constant_term(num, den, precision=0, max_pole=12):
    """Constant coefficient of num(e^y)/den(e^y) as a Laurent series in y.

    The truncation order is pole order + requested precision + 2, so the
    Laurent quotient is exact to the constant term.
    """
    probe = _poly_of_exp(den, max_pole + 2)
    v = next((i for i, c in enumerate(probe) if c), None)
    if v is None:
        raise ZeroDivisionError("denominator vanishes identically")
    if v > max_pole:
        raise ReconstructionError("essential singularity bounds exceeded: "
                                  "denominator vanishes to order %d" % v)
    order = v + precision + 2
    ns = _poly_of_exp(num, order + v)
    ds = _poly_of_exp(den, order + v)
    unit = ds[v:]
    inv = [Fraction(1) / unit[0]]
    for k in range(1, order + 1):
        s = Fraction(0)
        for j in range(1, min(k, len(unit) - 1) + 1):
            s += unit[j] * inv[k - j]
        inv.append(-s / unit[0])
    # constant term = y^v coefficient of num * inv
    tot = Fraction(0)
    for j in range(v + 1):
        if j < len(ns) and v - j < len(inv):
            tot += ns[j] * inv[v - j]
    return tot


def zeta_of_series(series: RationalSeries, max_num_deg=None, max_den_deg=None):
    """Reconstruct and take the constant term in one step."""
    n = len(series.coeffs)
    if max_num_deg is None:
        max_num_deg = max(0, n // 2 - 1)
    if max_den_deg is None:
        max_den_deg = max(0, n // 2 - 1)
    rec = reconstruct_rational(series, max_num_deg, max_den_deg)
    num, den = rec.reconstructed
    return rec, zeta_constant_term(num, den)
