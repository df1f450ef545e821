"""Sparse exact polynomials in the coordinates X^{a,n}, with vector fields,
one-forms and the widening-gap audit.

A monomial is a tuple of (GenIdx, exponent) pairs sorted by the basis order;
a Poly maps monomials to nonzero Fractions.  Vector fields carry an explicit
window certificate saying on which keys their coefficients are exact.
"""

from fractions import Fraction

from .roots import idx_grade, neg_idx


class WindowError(ValueError):
    pass


class Poly:
    __slots__ = ('terms',)

    def __init__(self, terms=None):
        self.terms = terms or {}

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero():
        return Poly()

    @staticmethod
    def const(c):
        c = Fraction(c)
        return Poly({(): c}) if c else Poly()

    @staticmethod
    def var(idx, c=1):
        c = Fraction(c)
        return Poly({((idx, 1),): c}) if c else Poly()

    # -- predicates ----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(out)

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return Poly()
        return Poly({m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if not self.terms or not other.terms:
            return Poly()
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Poly(out)

    def diff(self, idx):
        """Partial derivative with respect to X^{idx}."""
        out = {}
        for m, c in self.terms.items():
            for pos, (v, e) in enumerate(m):
                if v == idx:
                    if e == 1:
                        nm = m[:pos] + m[pos + 1:]
                    else:
                        nm = m[:pos] + ((v, e - 1),) + m[pos + 1:]
                    s = out.get(nm, 0) + c * e
                    if s:
                        out[nm] = s
                    else:
                        out.pop(nm, None)
                    break
        return Poly(out)

    def substitute(self, sub):
        """Variable substitution idx -> (new_idx, sign); used by tau."""
        out = {}
        for m, c in self.terms.items():
            sign = 1
            nm = []
            for v, e in m:
                nv, s = sub(v)
                nm.append((nv, e))
                if s < 0 and e % 2:
                    sign = -sign
            nm = tuple(sorted(nm, key=lambda p: p[0]))
            s = out.get(nm, 0) + sign * c
            if s:
                out[nm] = s
            else:
                out.pop(nm, None)
        return Poly(out)

    def evaluate(self, point):
        """Evaluate at {idx: Fraction}; missing variables are an error."""
        tot = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for idx, e in m:
                v *= point[idx] ** e
            tot += v
        return tot

    # -- structure -----------------------------------------------------------

    def variables(self):
        out = set()
        for m in self.terms:
            for v, _ in m:
                out.add(v)
        return out

    def max_var_grade(self):
        vs = self.variables()
        return max((abs(idx_grade(v)) for v in vs), default=0)

    def q_grade(self, data):
        """Root-lattice grade; None if not homogeneous.  X^{a,n} has grade
        -wgt(a,n)."""
        grades = set()
        for m in self.terms:
            g = tuple(0 for _ in range(data.rank + 1))
            for v, e in m:
                w = data.wgt(v)
                g = tuple(a - e * b for a, b in zip(g, w))
            grades.add(g)
        if not grades:
            return None
        if len(grades) > 1:
            return None
        return grades.pop()

    def sorted_terms(self, sort_key):
        """Canonical term order: variables by basis order, then exponent
        vectors lexicographically."""
        def mono_key(m):
            return tuple((sort_key(v), -e) for v, e in
                         sorted(m, key=lambda p: sort_key(p[0])))
        return sorted(self.terms.items(), key=lambda t: (len(t[0]) > 0,
                                                         mono_key(t[0])))


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def poly_sum(polys):
    out = Poly()
    for p in polys:
        out = out + p
    return out


# ---------------------------------------------------------------------------
# windows


class Window:
    """Validity certificate: coefficients are exact on every key of the
    given side with |grade| < cutoff."""

    __slots__ = ('side', 'cutoff')

    def __init__(self, side, cutoff):
        if side not in ('plus', 'minus', 'both'):
            raise WindowError("bad side %r" % side)
        self.side = side
        self.cutoff = cutoff

    def contains_key(self, data, idx):
        n = idx_grade(idx)
        if abs(n) >= self.cutoff:
            return False
        if self.side == 'plus':
            return data.in_A(idx)
        if self.side == 'minus':
            return data.in_minus_A(idx)
        return True

    def on_side(self, data, idx):
        """Whether idx belongs to this window's key space at any cutoff."""
        if self.side == 'plus':
            return data.in_A(idx)
        if self.side == 'minus':
            return data.in_minus_A(idx)
        return True

    def __eq__(self, other):
        return (self.side, self.cutoff) == (other.side, other.cutoff)

    def __repr__(self):
        return "Window(%s,%d)" % (self.side, self.cutoff)


def merge_sides(a, b):
    return a if a == b else 'both'


# ---------------------------------------------------------------------------
# vector fields and one-forms


class VectorField:
    """Finitely supported (within the window) map key -> Poly, meaning
    sum_key P^key D_key."""

    __slots__ = ('coeffs', 'window')

    def __init__(self, coeffs, window):
        self.coeffs = {k: p for k, p in coeffs.items() if p}
        self.window = window

    def __eq__(self, other):
        return (isinstance(other, VectorField)
                and self.coeffs == other.coeffs)

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        w = Window(merge_sides(self.window.side, other.window.side),
                   min(self.window.cutoff, other.window.cutoff))
        out = dict(self.coeffs)
        for k, p in other.coeffs.items():
            s = out.get(k, Poly()) + p
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return VectorField(out, w)

    def scale(self, c):
        return VectorField({k: p.scale(c) for k, p in self.coeffs.items()},
                           self.window)

    def __sub__(self, other):
        return self + other.scale(-1)

    def apply_to(self, p: Poly) -> Poly:
        """Derivation action on a polynomial (finite: p has finitely many
        variables)."""
        out = Poly()
        for v in p.variables():
            c = self.coeffs.get(v)
            if c is not None:
                out = out + c * p.diff(v)
        return out

    def truncate(self, data, cutoff):
        w = Window(self.window.side, min(cutoff, self.window.cutoff))
        return VectorField({k: p for k, p in self.coeffs.items()
                            if w.contains_key(data, k)}, w)


class OneForm:
    """sum_key Q_key dX^key, finitely supported."""

    __slots__ = ('coeffs',)

    def __init__(self, coeffs):
        self.coeffs = {k: p for k, p in coeffs.items() if p}

    def __eq__(self, other):
        return isinstance(other, OneForm) and self.coeffs == other.coeffs

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, p in other.coeffs.items():
            s = out.get(k, Poly()) + p
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return OneForm(out)

    def scale(self, c):
        return OneForm({k: p.scale(c) for k, p in self.coeffs.items()})

    def is_zero(self):
        return not self.coeffs


def vf_bracket(data, v: VectorField, w: VectorField) -> VectorField:
    """[v, w] = sum ( v(Q^key) - w(P^key) ) D_key, with an honest output
    certificate.

    A key of the result is certified only when every variable that feeds
    its coefficient through the chain rule lies inside the other field's
    window; the output window shrinks to the largest fully certified
    cutoff, and an error is raised if nothing survives.
    """
    side = merge_sides(v.window.side, w.window.side)
    cutoff = min(v.window.cutoff, w.window.cutoff)

    def certified(field_needed, poly):
        for var in poly.variables():
            if field_needed.window.on_side(data, var) and \
                    not field_needed.window.contains_key(data, var):
                return False
        return True

    out = {}
    bad = []
    keys = set()
    for k in v.coeffs:
        keys.add(k)
    for k in w.coeffs:
        keys.add(k)
    win = Window(side, cutoff)
    for k in keys:
        if not win.contains_key(data, k):
            continue
        qa = w.coeffs.get(k, Poly())
        pa = v.coeffs.get(k, Poly())
        ok = certified(v, qa) and certified(w, pa)
        if not ok:
            bad.append(abs(idx_grade(k)))
            continue
        c = v.apply_to(qa) - w.apply_to(pa)
        if c:
            out[k] = c
    if bad:
        new_cut = min(bad)
        if new_cut == 0:
            raise WindowError("vf_bracket: no certifiable output keys")
        win = Window(side, new_cut)
        out = {k: p for k, p in out.items() if win.contains_key(data, k)}
    return VectorField(out, win)


def tau_idx(data, idx):
    """Index part of the involution: (a,n) -> (-a,-n), with the same signs
    as the Cartan involution on the basis."""
    return neg_idx(idx), data.sigma_sign(idx)


def tau_poly(data, p: Poly) -> Poly:
    return p.substitute(lambda v: tau_idx(data, v))


def tau_vf(data, v: VectorField) -> VectorField:
    out = {}
    for k, p in v.coeffs.items():
        nk, s = tau_idx(data, k)
        out[nk] = tau_poly(data, p).scale(s)
    side = {'plus': 'minus', 'minus': 'plus', 'both': 'both'}[v.window.side]
    return VectorField(out, Window(side, v.window.cutoff))


def tau_oneform(data, f: OneForm) -> OneForm:
    out = {}
    for k, p in f.coeffs.items():
        nk, s = tau_idx(data, k)
        out[nk] = tau_poly(data, p).scale(s)
    return OneForm(out)


# ---------------------------------------------------------------------------
# widening-gap audit


def widening_gap_audit(family, gap):
    """Check P^{a,n} in Q[X^{b,m}: |m| < |n| - gap] key by key.

    Returns a report with the passing and violating key sets, violation
    counts per |n|, and the measured bound B = max |n| among violations
    (how far out one must go before the gap condition holds).
    """
    pass_set, violation_set = [], []
    by_grade = {}
    for key, poly in family.items():
        n = abs(idx_grade(key))
        ok = all(abs(idx_grade(v)) < n - gap for v in poly.variables())
        if ok or poly.is_zero():
            pass_set.append(key)
        else:
            violation_set.append(key)
            by_grade[n] = by_grade.get(n, 0) + 1
    return {
        'gap': gap,
        'pass_set': sorted(pass_set),
        'violation_set': sorted(violation_set),
        'violations_by_grade': dict(sorted(by_grade.items())),
        'measured_B': max(by_grade) if by_grade else 0,
    }
