"""Truncated group words and the infinitesimal right-action flow.

The engine works in the quotient groups exp(n+ / n_{>=p}) extended by
nilpotents eps, eta (eps^2 = eta^2 = 0).  A word is an ordered product of
factors Exp(c * J_idx) with polynomial coefficients; pushing a factor
Exp(eps*A) leftwards through the word with the two commutation identities

    Exp(A) Exp(eB) = Exp(eB) * prod_k Exp(e/k! ad_A^k B) * Exp(A)
    Exp(eB) Exp(A) = Exp(A) * prod_k Exp(e(-1)^k/k! ad_A^k B) * Exp(eB)

and re-normalizing yields the coordinate shifts P^{b,m}_A(x).  Factors whose
generator lies in b- are absorbed into the left coset once they reach the
far left; nested commutators at or beyond the truncation grade are dropped.
All infinitesimal factors in flight during one push commute exactly, so they
are merged by (position, generator) and processed in canonical order.
"""

from fractions import Fraction

from .roots import K_KEY, D_KEY, idx_grade
from .loop import LieElt, StructureConstants
from .poly import Poly, tau_idx, tau_poly


class TruncationError(ValueError):
    pass


_FACTORIALS = [1]
while len(_FACTORIALS) < 64:
    _FACTORIALS.append(_FACTORIALS[-1] * len(_FACTORIALS))


class Nil:
    """Coefficient in Q[X] tensor Q[eps,eta]/(eps^2, eta^2)."""

    __slots__ = ('c0', 'ce', 'ch', 'ceh')

    def __init__(self, c0=None, ce=None, ch=None, ceh=None):
        self.c0 = c0 if c0 is not None else Poly()
        self.ce = ce if ce is not None else Poly()
        self.ch = ch if ch is not None else Poly()
        self.ceh = ceh if ceh is not None else Poly()

    def is_zero(self):
        return not (self.c0 or self.ce or self.ch or self.ceh)

    def add(self, other):
        return Nil(self.c0 + other.c0, self.ce + other.ce,
                   self.ch + other.ch, self.ceh + other.ceh)

    def scale(self, c):
        return Nil(self.c0.scale(c), self.ce.scale(c),
                   self.ch.scale(c), self.ceh.scale(c))

    def mul(self, other):
        # eps^2 and eta^2 vanish structurally: there is no slot for them
        return Nil(
            self.c0 * other.c0,
            self.c0 * other.ce + self.ce * other.c0,
            self.c0 * other.ch + self.ch * other.c0,
            (self.c0 * other.ceh + self.ceh * other.c0
             + self.ce * other.ch + self.ch * other.ce))

    def powers(self, kmax):
        out = [Nil(Poly.const(1))]
        for _ in range(kmax):
            out.append(out[-1].mul(self))
        return out

    def __eq__(self, other):
        return (self.c0, self.ce, self.ch, self.ceh) == \
               (other.c0, other.ce, other.ch, other.ceh)

    def __repr__(self):
        return "Nil(%r,%r,%r,%r)" % (self.c0.terms, self.ce.terms,
                                     self.ch.terms, self.ceh.terms)


NIL_SLOTS = {'e': 'ce', 'h': 'ch', 'eh': 'ceh'}


def nil_symbol(poly, symbol):
    n = Nil()
    setattr(n, NIL_SLOTS[symbol], poly)
    return n


class GroupWord:
    """Ordered product of Exp(coeff * J_idx) factors, grades < truncation.

    In normal form the factors are sorted by the basis order; the absorbed
    Exp(eps*b-) coset prefix is implicit and never stored.
    """

    def __init__(self, factors, truncation):
        self.factors = list(factors)
        self.truncation = truncation

    def copy(self):
        return GroupWord([[i, c] for i, c in self.factors], self.truncation)

    def coefficient(self, idx):
        for i, c in self.factors:
            if i == idx:
                return c
        return Nil()

    @staticmethod
    def generic(data, truncation):
        """The generic ordered word with symbolic coordinates x^{a,n}."""
        idxs = data.index_window(truncation, 'plus')
        return GroupWord([[i, Nil(Poly.var(i))] for i in idxs], truncation)


def pi_truncate(word: GroupWord, k: int) -> GroupWord:
    """Drop all factors of generator grade >= k; idempotent."""
    if k > word.truncation:
        raise TruncationError("cannot refine an already-truncated word")
    return GroupWord([[i, c] for i, c in word.factors if idx_grade(i) < k], k)


class BchEngine:
    def __init__(self, constants: StructureConstants):
        self.sc = constants
        self.data = constants.data
        self._ad_cache = {}
        self._flow_cache = {}

    # -- ad-series -----------------------------------------------------------

    def _ad_series(self, big_idx, pend_idx, bound):
        """[ad_J^1(B), ad_J^2(B), ...]; extended lazily until the bracket
        vanishes or every further term would exceed the grade bound.  The
        central component is dropped (it commutes into the coset)."""
        entry = self._ad_cache.get((big_idx, pend_idx))
        if entry is None:
            entry = {'terms': [], 'done': False}
            self._ad_cache[(big_idx, pend_idx)] = entry
        big = LieElt.basis(big_idx)
        step = idx_grade(big_idx)
        base_grade = idx_grade(pend_idx)
        while not entry['done']:
            if step > 0 and base_grade + (len(entry['terms']) + 1) * step \
                    >= bound:
                break
            prev = entry['terms'][-1] if entry['terms'] else \
                LieElt.basis(pend_idx)
            nxt = self.sc.bracket(big, prev)
            nxt.pop(K_KEY, None)
            if not nxt:
                entry['done'] = True
                break
            entry['terms'].append(nxt)
        return entry['terms']

    # -- the push -------------------------------------------------------------

    def push(self, word: GroupWord, A: LieElt, symbol='e') -> GroupWord:
        """Multiply the word on the right by Exp(sym*A) and re-normalize."""
        word = word.copy()
        pending = {}
        for idx, c in A.items():
            if idx == K_KEY:
                continue
            if idx != D_KEY and idx_grade(idx) >= word.truncation:
                continue
            _pend(pending, len(word.factors), idx,
                  nil_symbol(Poly.const(c), symbol))
        self._drain(word, pending)
        return word

    def _drain(self, word, pending):
        data = self.data
        while pending:
            key = min(pending, key=lambda k: (k[0], data.sort_key(k[1])))
            gap, idx = key
            coeff = pending.pop(key)
            if coeff.is_zero() or idx == K_KEY:
                continue
            absorb = idx == D_KEY or not data.in_A(idx)
            if not absorb and idx_grade(idx) >= word.truncation:
                continue
            if absorb:
                dest = 0
            else:
                dest, pending, gap = self._slot_of(word, pending, idx, gap)
            self._move(word, pending, gap, idx, coeff, dest, absorb)

    def _slot_of(self, word, pending, idx, own_gap):
        """Index of the big factor for idx; inserts a zero-coefficient factor
        (re-keying gap positions) when the slot is absent."""
        key = self.data.sort_key(idx)
        lo, hi = 0, len(word.factors)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.data.sort_key(word.factors[mid][0]) < key:
                lo = mid + 1
            else:
                hi = mid
        if lo < len(word.factors) and word.factors[lo][0] == idx:
            return lo, pending, own_gap
        word.factors.insert(lo, [idx, Nil()])
        moved = {}
        for (g, i), c in pending.items():
            moved[(g + 1 if g >= lo else g, i)] = c
        if own_gap >= lo:
            own_gap += 1
        return lo, moved, own_gap

    def _move(self, word, pending, gap, idx, coeff, dest, absorb):
        """Walk one factor to its destination, spawning commutator factors."""
        trunc = word.truncation
        while True:
            if absorb:
                if gap == 0:
                    return  # swallowed by the Exp(eps*b-) coset
                direction = -1
            else:
                if dest <= gap <= dest + 1:
                    word.factors[dest][1] = word.factors[dest][1].add(coeff)
                    return
                direction = 1 if gap < dest else -1
            big_pos = gap if direction > 0 else gap - 1
            big_idx, big_coeff = word.factors[big_pos]
            series = self._ad_series(big_idx, idx, trunc)
            if series:
                powers = big_coeff.powers(len(series))
                spawn_gap = gap + 1 if direction > 0 else gap - 1
                for k, elt in enumerate(series, start=1):
                    sign = 1 if direction < 0 else (-1) ** k
                    base = coeff.mul(powers[k]).scale(
                        Fraction(sign, _FACTORIALS[k]))
                    if base.is_zero():
                        continue
                    for sub_idx, v in elt.items():
                        if sub_idx not in (K_KEY, D_KEY) and \
                                idx_grade(sub_idx) >= trunc:
                            continue
                        _pend(pending, spawn_gap, sub_idx, base.scale(v))
            gap += direction

    # -- coordinate flows ------------------------------------------------------

    def coordinate_flow(self, A: LieElt, k: int, side='plus'):
        """The family {P^{b,m}_A} over (b,m) in the chosen index set with
        |m| < k, exact at that truncation.  The minus side is the tau/sigma
        twist of the plus side, by substitution rather than a second push."""
        if side == 'minus':
            plus = self.coordinate_flow(self.sc.cartan_sigma(A), k, 'plus')
            out = {}
            for key, p in plus.items():
                nk, s = tau_idx(self.data, key)
                q = tau_poly(self.data, p).scale(s)
                if q:
                    out[nk] = q
            return out
        if side != 'plus':
            raise ValueError("side must be 'plus' or 'minus'")
        out = {}
        for idx, c in A.items():
            for key, p in self._basis_flow(idx, k).items():
                cur = out.get(key, Poly()) + p.scale(c)
                if cur:
                    out[key] = cur
                else:
                    out.pop(key, None)
        return out

    def _basis_flow(self, idx, k):
        """Flow of a single basis generator; cached, since flows are linear."""
        cached = self._flow_cache.get((idx, k))
        if cached is not None:
            return cached
        if idx == K_KEY:
            out = {}
        else:
            grade = 0 if idx == D_KEY else idx_grade(idx)
            p = k - min(0, grade)
            word = self.push(GroupWord.generic(self.data, p),
                             LieElt.basis(idx), 'e')
            out = {}
            for key, coeff in word.factors:
                if idx_grade(key) < k and coeff.ce:
                    out[key] = coeff.ce
        self._flow_cache[(idx, k)] = out
        return out


def _pend(pending, gap, idx, coeff):
    key = (gap, idx)
    cur = pending.get(key)
    coeff = cur.add(coeff) if cur is not None else coeff
    if coeff.is_zero():
        pending.pop(key, None)
    else:
        pending[key] = coeff
