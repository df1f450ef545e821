"""Exact free-field states and their vertex products.

States are normal-ordered monomials in creation symbols applied to the
vacuum:

    ('g', idx, N)        gamma^{idx}[-N] |0>,  N >= 0
    ('b', idx, N)        beta_{idx}[-N]  |0>,  N >= 1
    ('S', la, lb, n, N)  S^{la}_{lb,n}[-N] |0>, N >= 1
    ('D', N)             D[-N] |0>,            N >= 1
    ('p', i, N)          b_i[-N] |0>,          N >= 1   (free bosons)

Non-negative products come from the Wick formula: beta-gamma pairings with
their combinatorial factors, plus first-order current-type contractions for
S and D.  Monomials never carry more than one S/D symbol, which keeps the
current contractions single and the normal ordering unambiguous.

The grading element D here obeys [D[N], beta] = +m beta, [D[N], gamma] =
-m gamma, matching the concrete embedding iota(D) = -sum m X D used by the
doubling (the convention is forced by [D, S_n] = n S_n).
"""

from fractions import Fraction

from .roots import idx_grade
from .poly import Poly


class DivergenceError(ValueError):
    pass


def gbinom(M, K):
    """binom(M, K) for integer M of any sign; binom(M, 0) = 1."""
    if K < 0:
        return Fraction(0)
    num = 1
    for i in range(K):
        num *= (M - i)
    den = 1
    for i in range(1, K + 1):
        den *= i
    return Fraction(num, den)


def sym_depth(sym):
    return sym[-1]


def sym_kind(sym):
    return sym[0]


# currents sit leftmost: S/D creation operators do not commute with the
# free-field creators, so the stored order must be where they act
_KIND_RANK = {'S': 0, 'D': 1, 'g': 2, 'b': 3, 'p': 4}


def _canon(symbols):
    mono = tuple(sorted(symbols, key=lambda s: (_KIND_RANK[s[0]], s)))
    heavy = sum(1 for s in mono if s[0] in ('S', 'D'))
    if heavy > 1:
        raise DivergenceError("monomial with several current factors is "
                              "outside the supported normal form")
    return mono


class VAState:
    """terms: {(monomial, zpow): Fraction}. zpow is the regulator power."""

    __slots__ = ('terms',)

    def __init__(self, terms=None):
        self.terms = terms or {}

    @staticmethod
    def zero():
        return VAState()

    @staticmethod
    def vacuum(c=1):
        c = Fraction(c)
        return VAState({((), 0): c}) if c else VAState()

    @staticmethod
    def monomial(symbols, c=1, zpow=0):
        c = Fraction(c)
        if not c:
            return VAState()
        return VAState({(_canon(symbols), zpow): c})

    def __eq__(self, other):
        return isinstance(other, VAState) and self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return VAState(out)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return VAState()
        return VAState({k: c * v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + other.scale(-1)

    def depth(self):
        return max((sum(sym_depth(s) for s in m) for (m, _) in self.terms),
                   default=0)

    def q_grade(self, data):
        """Root-lattice grade, or None if inhomogeneous."""
        grades = set()
        for (m, _z) in self.terms:
            g = tuple(0 for _ in range(data.rank + 1))
            for s in m:
                g = tuple(a + b for a, b in zip(g, _sym_wgt(s, data)))
            grades.add(g)
        if len(grades) != 1:
            return None if grades else tuple(0 for _ in range(data.rank + 1))
        return grades.pop()

    def vacuum_coefficient(self):
        """Coefficient of |0> as {zpow: Fraction}."""
        out = {}
        for (m, z), c in self.terms.items():
            if not m:
                out[z] = out.get(z, 0) + c
        return {z: c for z, c in out.items() if c}

    def map_coeff(self, f):
        out = {}
        for k, c in self.terms.items():
            v = f(c)
            if v:
                out[k] = v
        return VAState(out)


def _sym_wgt(sym, data):
    zero = tuple(0 for _ in range(data.rank + 1))
    if sym[0] == 'g':
        return tuple(-x for x in data.wgt(sym[1]))
    if sym[0] == 'b':
        return data.wgt(sym[1])
    if sym[0] == 'S':
        la, lb, n = sym[1], sym[2], sym[3]
        wa = data.wgt((la[0], la[1], 0))
        wb = data.wgt((lb[0], lb[1], 0))
        d = data.delta()
        return tuple(b - a + n * dd for a, b, dd in zip(wa, wb, d))
    return zero


# ---------------------------------------------------------------------------
# builders


def poly_state(p: Poly, extra=(), c=1, zpow=0):
    """P(gamma[0]) * extra |0>."""
    out = VAState()
    for mono, coeff in p.terms.items():
        syms = list(extra)
        for idx, e in mono:
            syms.extend([('g', idx, 0)] * e)
        out = out + VAState.monomial(syms, coeff * Fraction(c), zpow)
    return out


def family_state(coeffs):
    """sum_key P^key(gamma[0]) beta_key[-1] |0> from {key: Poly}."""
    out = VAState()
    for key, p in coeffs.items():
        out = out + poly_state(p, extra=[('b', key, 1)])
    return out


def oneform_state(coeffs):
    """sum_key Q_key(gamma[0]) gamma^key[-1] |0>."""
    out = VAState()
    for key, p in coeffs.items():
        out = out + poly_state(p, extra=[('g', key, 1)])
    return out


def dg_state(el):
    """The embedding of a doubled element: gap part as beta-states plus the
    abstract current generators at mode -1."""
    out = family_state(el.vf.coeffs)
    for (a, b, n), c in el.s.items():
        out = out + VAState.monomial([('S', a, b, n, 1)], c)
    if el.d:
        out = out + VAState.monomial([('D', 1)], el.d)
    return out


# ---------------------------------------------------------------------------
# translation


def translate(A: VAState) -> VAState:
    """T: the derivation with Y(TA, x) = d/dx Y(A, x); T|0> = 0."""
    out = VAState()
    for (m, z), c in A.terms.items():
        for pos, s in enumerate(m):
            n = sym_depth(s)
            factor = n + 1 if s[0] == 'g' else n
            if not factor:
                continue
            ns = s[:-1] + (n + 1,)
            mono = _canon(m[:pos] + (ns,) + m[pos + 1:])
            out = out + VAState({(mono, z): c * factor})
    return out


def translate_pow(A: VAState, j: int) -> VAState:
    """T^j A / j!."""
    out = A
    for i in range(1, j + 1):
        out = translate(out).scale(Fraction(1, i))
    return out


# ---------------------------------------------------------------------------
# Wick products


def _pair_options(sa, sb, regulator):
    """All single-pairing outcomes between symbol sa of A(z) and sb of B(w).

    Yields (pole, coeff, insert_or_None, zinc).  `insert` is a replacement
    symbol placed on the w side.
    """
    ka, kb = sa[0], sb[0]
    if ka == 'b' and kb == 'g':
        if sa[1] == sb[1]:
            da, db = sa[2] - 1, sb[2]
            zi = idx_grade(sa[1]) if regulator else 0
            yield (da + db + 1, Fraction(-1) ** da * gbinom(da + db, da),
                   None, zi)
        return
    if ka == 'g' and kb == 'b':
        if sa[1] == sb[1]:
            da, db = sa[2], sb[2] - 1
            zi = idx_grade(sa[1]) if regulator else 0
            # sign (-1)^{da+1}: the one forced by d/du of -1/(u-w)
            yield (da + db + 1,
                   Fraction(-1) ** (da + 1) * gbinom(da + db, da), None, zi)
        return
    heavy_a = ka in ('S', 'D')
    heavy_b = kb in ('S', 'D')
    if not heavy_a and not heavy_b:
        return
    if (heavy_a and kb == 'p') or (heavy_b and ka == 'p'):
        return
    if heavy_a and heavy_b:
        if sa[-1] != 1 or sb[-1] != 1:
            raise DivergenceError("current contraction beyond mode -1")
        for coeff, ins in _current_bracket(sa, sb):
            yield (1, coeff, ins, 0)
        return
    if heavy_a:
        if sa[-1] != 1:
            raise DivergenceError("current contraction beyond mode -1")
        # A-side current against a derivative beta/gamma field on the w side:
        # the pole ladders down the derivative order of the partner, the
        # insertion keeping the leftover derivatives
        for coeff, base in _current_on_freefield(sa, sb):
            q = sb[2] if kb == 'g' else sb[2] - 1
            for j in range(q + 1):
                yield (j + 1, coeff, base + (sb[2] - j,), 0)
        return
    # heavy_b: the numerator sits at w at its base mode; z-derivatives of the
    # A-side free field only deepen the pole (with alternating signs)
    if sb[-1] != 1:
        raise DivergenceError("current contraction beyond mode -1")
    for coeff, base in _current_on_freefield(sb, sa):
        q = sa[2] if ka == 'g' else sa[2] - 1
        base_mode = 0 if base[0] == 'g' else 1
        yield (q + 1, -coeff * Fraction(-1) ** q, base + (base_mode,), 0)


def _current_bracket(sa, sb):
    """[current, current] insertions at mode -1 (level zero: no scalars)."""
    if sa[0] == 'S' and sb[0] == 'S':
        _, a, b, n, _ = sa
        _, c, d, m, _ = sb
        if b == c:
            yield Fraction(1), ('S', a, d, n + m, 1)
        if a == d:
            yield Fraction(-1), ('S', c, b, n + m, 1)
        return
    if sa[0] == 'D' and sb[0] == 'S':
        yield Fraction(sb[3]), ('S', sb[1], sb[2], sb[3], 1)
        return
    if sa[0] == 'S' and sb[0] == 'D':
        yield Fraction(-sa[3]), ('S', sa[1], sa[2], sa[3], 1)
        return
    # D against D: no singular part
    return


def _current_on_freefield(cur, free):
    """Base OPE current(z) field(w) ~ coeff * field'(w) / (z-w)."""
    if cur[0] == 'S':
        _, a, b, n, _ = cur
        idx = free[1]
        lab = (idx[0], idx[1])
        m = idx_grade(idx)
        if free[0] == 'g':
            if lab == b:
                yield Fraction(1), ('g', (a[0], a[1], m - n))
        else:
            if lab == a:
                yield Fraction(-1), ('b', (b[0], b[1], m + n))
        return
    # D: [D, gamma^{c,m}] = -m gamma, [D, beta_{c,m}] = +m beta
    idx = free[1]
    m = idx_grade(idx)
    if free[0] == 'g':
        if m:
            yield Fraction(-m), ('g', idx)
    else:
        if m:
            yield Fraction(m), ('b', idx)


def _cur_gamma_coeff(cur, gidx):
    """Coefficient of [current, gamma^{gidx}] and the inserted gamma index."""
    if cur[0] == 'S':
        _, a, b, n, _ = cur
        if (gidx[0], gidx[1]) == b:
            return Fraction(1), (a[0], a[1], idx_grade(gidx) - n)
        return None, None
    m = idx_grade(gidx)
    if m:
        return Fraction(-m), gidx
    return None, None


def _iterated_options(cur, monoF, cur_in_A):
    """Iterated current contractions: the current hits a gamma factor, the
    inserted annihilator then hits a matching beta factor of the same
    monomial.  Scalar outcome, pole = M + Q + 1; yields (i, j, pole, coeff)
    over factor positions of the free monomial."""
    for i, sg in enumerate(monoF):
        if sg[0] != 'g':
            continue
        c1, ins_idx = _cur_gamma_coeff(cur, sg[1])
        if c1 is None:
            continue
        for j, sb in enumerate(monoF):
            if sb[0] != 'b' or sb[1] != ins_idx:
                continue
            pole = sg[2] + sb[2] + 1
            coeff = -c1
            if not cur_in_A:
                coeff *= Fraction(-1) ** pole
            yield (i, j, pole, coeff)


_UNIT_CACHE = {}


def _pairing_units(monoA, monoB, regulator):
    """Pairing units between two monomials.  A unit is either a single
    pairing (one factor each side) or an iterated current pairing (a bare
    current on one side against a gamma-beta pair on the other)."""
    key = (monoA, monoB, regulator)
    cached = _UNIT_CACHE.get(key)
    if cached is not None:
        return cached
    units = []
    for i, sa in enumerate(monoA):
        for j, sb in enumerate(monoB):
            for pole, coeff, ins, zi in _pair_options(sa, sb, regulator):
                units.append(((i,), (j,), pole, coeff, ins, zi))
    for i, sa in enumerate(monoA):
        if sa[0] in ('S', 'D') and sa[-1] == 1:
            for jg, jb, pole, coeff in _iterated_options(sa, monoB, True):
                units.append(((i,), (jg, jb), pole, coeff, None, 0))
    for j, sb in enumerate(monoB):
        if sb[0] in ('S', 'D') and sb[-1] == 1:
            for ig, ib, pole, coeff in _iterated_options(sb, monoA, False):
                units.append(((ig, ib), (j,), pole, coeff, None, 0))
    units = tuple(units)
    if len(_UNIT_CACHE) > 400000:
        _UNIT_CACHE.clear()
    _UNIT_CACHE[key] = units
    return units


def _enumerate_pairings(monoA, monoB, regulator):
    """Disjoint nonempty sets of pairing units."""
    units = _pairing_units(monoA, monoB, regulator)
    if not units:
        return
    n = len(units)

    def rec(k, usedA, usedB, chosen):
        if k == n:
            if chosen:
                yield chosen
            return
        yield from rec(k + 1, usedA, usedB, chosen)
        ia, jb, *_ = units[k]
        if not (set(ia) & usedA) and not (set(jb) & usedB):
            yield from rec(k + 1, usedA | set(ia), usedB | set(jb),
                           chosen + [units[k]])

    yield from rec(0, set(), set(), [])


def nth_product(A: VAState, B: VAState, N: int, regulator=False) -> VAState:
    """Coefficient of (z-w)^{-N-1} in the OPE of the two states' fields."""
    if N < 0:
        raise ValueError("nth_product implements non-negative products only")
    # inverted index on B: only monomial pairs sharing a contractible index
    # (or touching a current) can interact
    invB = {}
    curB = []
    allB = list(B.terms.items())
    for keyB, cB in allB:
        monoB = keyB[0]
        for s in monoB:
            if s[0] in ('g', 'b'):
                invB.setdefault(s[1], []).append((keyB, cB))
        if any(s[0] in ('S', 'D') for s in monoB):
            curB.append((keyB, cB))
    out = {}
    shift_cache = {}
    for (monoA, zA), cA in A.terms.items():
        if any(s[0] in ('S', 'D') for s in monoA):
            cand = allB
        else:
            seen = set()
            cand = []
            for s in monoA:
                if s[0] in ('g', 'b'):
                    for item in invB.get(s[1], ()):
                        if id(item[0]) not in seen:
                            seen.add(id(item[0]))
                            cand.append(item)
            for item in curB:
                if id(item[0]) not in seen:
                    seen.add(id(item[0]))
                    cand.append(item)
        for (monoB, zB), cB in cand:
            if not _pairing_units(monoA, monoB, regulator):
                continue
            for chosen in _enumerate_pairings(monoA, monoB, regulator):
                pole = sum(p for (_, _, p, _, _, _) in chosen)
                if pole < N + 1:
                    continue
                coeff = cA * cB
                zinc = zA + zB
                for (_, _, _, c, _, zi) in chosen:
                    coeff *= c
                    zinc += zi
                if not coeff:
                    continue
                usedA = set()
                usedB = set()
                for (ia, jb, *_rest) in chosen:
                    usedA.update(ia)
                    usedB.update(jb)
                restA = tuple(s for i, s in enumerate(monoA) if i not in usedA)
                restB = [s for j, s in enumerate(monoB) if j not in usedB]
                for (_, _, _, _, ins, _) in chosen:
                    if ins is not None:
                        restB.append(ins)
                jshift = pole - N - 1
                sk = (restA, jshift)
                shifted = shift_cache.get(sk)
                if shifted is None:
                    shifted = translate_pow(
                        VAState({(_canon(restA), 0): Fraction(1)}), jshift)
                    shift_cache[sk] = shifted
                for (mA, _), cc in shifted.terms.items():
                    mono = _canon(mA + tuple(restB))
                    k2 = (mono, zinc)
                    s = out.get(k2, 0) + coeff * cc
                    if s:
                        out[k2] = s
                    else:
                        del out[k2]
    return VAState(out)


# ---------------------------------------------------------------------------
# brute-force mode oracle


def _field_mode(sym, j):
    """The (j)-mode of the field of a creation symbol, as
    (coefficient, kind, labels, raw_mode)."""
    N = sym[-1]
    if sym[0] == 'g':
        return (Fraction(-1) ** N * gbinom(j, N), sym[:-1], j + 1 - N)
    return (Fraction(-1) ** (N - 1) * gbinom(j, N - 1), sym[:-1], j - N + 1)


def apply_raw(head, mode, state: VAState) -> VAState:
    """Apply a raw generator mode (e.g. beta_{idx}[mode]) to a state."""
    creator = mode <= -1 or (head[0] == 'g' and mode <= 0)
    if creator:
        out = VAState()
        sym = head + (-mode,)
        for (m, z), c in state.terms.items():
            out = out + VAState({(_canon(m + (sym,)), z): c})
            if m and m[0][0] in ('S', 'D') and head[0] in ('g', 'b'):
                # the new creator enters on the left of the current factor;
                # commuting it into place leaves a bracket term
                for coeff, nh, nm, kills in _raw_bracket(head, mode, m[0]):
                    out = out + apply_raw(
                        nh, nm, VAState({(_canon(m[1:]), z): c})).scale(coeff)
        return out
    out = VAState()
    for (m, z), c in state.terms.items():
        out = out + _raw_on_mono(head, mode, m, z).scale(c)
    return out


def _raw_on_mono(head, mode, mono, z) -> VAState:
    """Annihilator walk: commute the raw mode rightward to the vacuum."""
    if not mono:
        return VAState()
    s0, rest = mono[0], mono[1:]
    # term 1: commutator with the first symbol
    out = VAState()
    for coeff, new_head, new_mode, kills in _raw_bracket(head, mode, s0):
        if kills:
            out = out + VAState({(_canon(rest), z): coeff})
        else:
            out = out + apply_raw(new_head, new_mode,
                                  VAState({(_canon(rest), z):
                                           Fraction(1)})).scale(coeff)
    # term 2: move past the first symbol
    passed = _raw_on_mono(head, mode, rest, z)
    for (m, zz), c in passed.terms.items():
        out = out + VAState({(_canon((s0,) + m), zz): c})
    return out


def _raw_bracket(head, mode, sym):
    """[raw_head[mode], sym] contributions: yields
    (coeff, new_head, new_mode, kills_symbol)."""
    k, ks = head[0], sym[0]
    N = sym[-1]
    if k == 'b':
        if ks == 'g' and head[1] == sym[1] and mode == N:
            yield (Fraction(1), None, None, True)
        elif ks == 'S':
            _, a, b, n, _ = sym
            idx = head[1]
            if (idx[0], idx[1]) == a:
                m = idx_grade(idx)
                yield (Fraction(1), ('b', (b[0], b[1], m + n)), mode - N, False)
        elif ks == 'D':
            m = idx_grade(head[1])
            if m:
                yield (Fraction(-m), head, mode - N, False)
        return
    if k == 'g':
        if ks == 'b' and head[1] == sym[1] and mode == N:
            yield (Fraction(-1), None, None, True)
        elif ks == 'S':
            _, a, b, n, _ = sym
            idx = head[1]
            if (idx[0], idx[1]) == b:
                m = idx_grade(idx)
                yield (Fraction(-1), ('g', (a[0], a[1], m - n)), mode - N, False)
        elif ks == 'D':
            m = idx_grade(head[1])
            if m:
                yield (Fraction(m), head, mode - N, False)
        return
    if k == 'S':
        _, a, b, n = head
        if ks == 'g':
            idx = sym[1]
            if (idx[0], idx[1]) == b:
                m = idx_grade(idx)
                yield (Fraction(1), ('g', (a[0], a[1], m - n)), mode - N, False)
        elif ks == 'b':
            idx = sym[1]
            if (idx[0], idx[1]) == a:
                m = idx_grade(idx)
                yield (Fraction(-1), ('b', (b[0], b[1], m + n)), mode - N, False)
        elif ks == 'S':
            _, c, d, mm, _ = sym
            if b == c:
                yield (Fraction(1), ('S', a, d, n + mm), mode - N, False)
            if a == d:
                yield (Fraction(-1), ('S', c, b, n + mm), mode - N, False)
        elif ks == 'D':
            yield (Fraction(-n), head, mode - N, False)
        return
    if k == 'D':
        if ks == 'g':
            m = idx_grade(sym[1])
            if m:
                yield (Fraction(-m), ('g', sym[1]), mode - N, False)
        elif ks == 'b':
            m = idx_grade(sym[1])
            if m:
                yield (Fraction(m), ('b', sym[1]), mode - N, False)
        elif ks == 'S':
            _, a, b, n, _ = sym
            if n:
                yield (Fraction(n), ('S', a, b, n), mode - N, False)
        return
    # 'p': commutes with everything
    return


def mode_apply(A: VAState, M: int, B: VAState) -> VAState:
    """A_(M) B computed by direct normal-ordered operator composition."""
    out = VAState()
    for (mono, zA), cA in A.terms.items():
        if zA:
            raise ValueError("mode oracle does not take regulated states")
        out = out + _mode_apply_mono(mono, M, B).scale(cA)
    return out


def _mode_apply_mono(mono, M, B: VAState) -> VAState:
    if not mono:
        return B if M == -1 else VAState()
    s0, rest = mono[0], mono[1:]
    drest = sum(sym_depth(s) for s in rest)
    dB = B.depth()
    out = VAState()
    # creation part of the first field, normal-ordered to the left
    j = -1
    while M - j - 1 <= drest + dB - 1:
        coeff, head, raw = _field_mode(s0, j)
        if coeff:
            inner = _mode_apply_mono(rest, M - j - 1, B)
            if not inner.is_zero():
                out = out + apply_raw(head, raw, inner).scale(coeff)
        j -= 1
    # annihilation part applied to B first
    for j in range(0, sym_depth(s0) + dB + 2):
        coeff, head, raw = _field_mode(s0, j)
        if not coeff:
            continue
        hit = apply_raw(head, raw, B)
        if not hit.is_zero():
            out = out + _mode_apply_mono(rest, M - j - 1, hit).scale(coeff)
    return out


# ---------------------------------------------------------------------------
# the extension two-cocycle


def omega_cocycle(P_family, K, Q_family, L, margin_check=True):
    """omega(A[K], B[L]) for depth-1 families A = sum P^a beta_a[-1],
    B = sum Q^b beta_b[-1]:

        -K (sum dP/dX^b . dQ/dX^a |0>)[K+L-1]
         - (T(dP/dX^b) . dQ/dX^a |0>)[K+L]

    Returns {mode: VAState}.  Families must decay inside their support: if
    the diagonal sums still receive contributions from boundary keys the
    certificate is refused.
    """
    scalar = Poly()
    omega_T = VAState()
    support = [abs(idx_grade(k)) for k in list(P_family) + list(Q_family)]
    top = max(support, default=0)
    boundary_hit = False
    for ka, pa in P_family.items():
        for kb in pa.variables():
            qb = Q_family.get(kb)
            if qb is None:
                continue
            dq = qb.diff(ka)
            if dq.is_zero():
                continue
            dp = pa.diff(kb)
            contrib = dp * dq
            if contrib:
                if margin_check and (abs(idx_grade(ka)) >= top - 1
                                     or abs(idx_grade(kb)) >= top - 1):
                    boundary_hit = True
                scalar = scalar + contrib
                for var in dp.variables():
                    second = dp.diff(var)
                    if second:
                        omega_T = omega_T + poly_state(
                            second * dq, extra=[('g', var, 1)])
    if margin_check and boundary_hit:
        raise DivergenceError(
            "cocycle sums reach the window boundary; no finiteness "
            "certificate on this window")
    out = {}
    if K and scalar:
        out[K + L - 1] = poly_state(scalar).scale(-K)
    if not omega_T.is_zero():
        out[K + L] = out.get(K + L, VAState()) - omega_T
    return {m: s for m, s in out.items() if not s.is_zero()}
