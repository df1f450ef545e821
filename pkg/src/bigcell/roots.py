"""Root data for untwisted affine Kac-Moody algebras.

Everything downstream is indexed by pairs (a, n) where a is a Cartan-Weyl
label of the underlying finite simple algebra (a nonzero root, or a Cartan
node) and n is an integer t-grade.  This module builds the affine Cartan
data, enumerates the finite root system, fixes the total ordering on the
basis, and produces truncation windows.
"""

from fractions import Fraction
from functools import lru_cache


class RootDataError(ValueError):
    pass


# ---------------------------------------------------------------------------
# generator indices
#
# A GenIdx is a plain tuple, for cheap hashing in the hot loops:
#   ('r', coords, n)   root vector E_{alpha} at t-grade n; coords is the
#                      tuple of finite simple-root coordinates of alpha
#   ('h', i, n)        Cartan generator H_i at t-grade n
# The central element and scaling element are only ever Lie-element keys:
#   ('k',)  ('d',)

def root_idx(coords, n):
    return ('r', tuple(coords), n)


def cartan_idx(i, n):
    return ('h', i, n)


K_KEY = ('k',)
D_KEY = ('d',)


def idx_grade(idx):
    """t-grade of a generator index (k and d sit at grade 0)."""
    if idx[0] in ('r', 'h'):
        return idx[2]
    return 0


def neg_idx(idx):
    """(a, n) -> (-a, -n); Cartan labels keep their node."""
    if idx[0] == 'r':
        return ('r', tuple(-c for c in idx[1]), -idx[2])
    if idx[0] == 'h':
        return ('h', idx[1], -idx[2])
    return idx


# ---------------------------------------------------------------------------
# finite root systems


class FiniteRoots:
    """Root system of a finite-type Cartan matrix, with exact form data.

    Roots are integer coordinate tuples over the simple roots.  The
    invariant form is normalized so the highest root has squared length 2.
    """

    def __init__(self, cartan):
        self.cartan = tuple(tuple(int(x) for x in row) for row in cartan)
        self.rank = len(self.cartan)
        _check_finite_cartan(self.cartan)
        self.positive = _enumerate_positive_roots(self.cartan)
        self.positive_set = set(self.positive)
        self.all_roots = set(self.positive) | {
            tuple(-c for c in r) for r in self.positive}
        self.highest = max(self.positive, key=lambda r: (sum(r), r))
        # symmetrizer d_i with d_i A_ij symmetric, scaled so (theta,theta)=2
        self.d = _symmetrizer(self.cartan)
        scale = Fraction(2) / self._raw_norm(self.highest)
        self.d = tuple(di * scale for di in self.d)

    def _raw_norm(self, alpha):
        return sum(self.d[i] * self.cartan[i][j] * alpha[i] * alpha[j]
                   for i in range(self.rank) for j in range(self.rank))

    def form(self, alpha, beta):
        """(alpha, beta) for root-lattice vectors, (theta,theta)=2 scale."""
        return sum(self.d[i] * self.cartan[i][j] * alpha[i] * beta[j]
                   for i in range(self.rank) for j in range(self.rank))

    def norm(self, alpha):
        return self.form(alpha, alpha)

    def is_root(self, v):
        return tuple(v) in self.all_roots

    def pairing_with_coroot(self, alpha, i):
        """<alpha, coroot_i> = sum_j alpha_j A_ij."""
        return sum(alpha[j] * self.cartan[i][j] for j in range(self.rank))

    def coroot_coords(self, alpha):
        """Coordinates of the coroot of alpha over the simple coroots."""
        na = self.norm(alpha)
        return tuple(Fraction(2) * alpha[i] * self.d[i] / na
                     for i in range(self.rank))

    def height(self, alpha):
        return sum(alpha)


def _check_finite_cartan(A):
    n = len(A)
    for i in range(n):
        if len(A[i]) != n or A[i][i] != 2:
            raise RootDataError("not a generalized Cartan matrix")
        for j in range(n):
            if i != j:
                if A[i][j] > 0:
                    raise RootDataError("positive off-diagonal entry")
                if (A[i][j] == 0) != (A[j][i] == 0):
                    raise RootDataError("asymmetric zero pattern")
    if _det(A) == 0:
        raise RootDataError("finite part is singular")


def _det(A):
    n = len(A)
    m = [[Fraction(A[i][j]) for j in range(n)] for i in range(n)]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            for cc in range(c, n):
                m[r][cc] -= f * m[c][cc]
    return det


def _symmetrizer(A):
    """Positive rationals d_i with d_i A_ij = d_j A_ji (connected case OK)."""
    n = len(A)
    d = [None] * n
    d[0] = Fraction(1)
    todo = [0]
    while todo:
        i = todo.pop()
        for j in range(n):
            if A[i][j] != 0 and i != j and d[j] is None:
                d[j] = d[i] * Fraction(A[i][j], A[j][i])
                todo.append(j)
    if any(x is None for x in d):
        raise RootDataError("Cartan matrix is not connected")
    return tuple(d)


def _enumerate_positive_roots(A):
    """Closure under simple-root addition, by height induction."""
    n = len(A)
    simples = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    roots = set(simples)
    layer = list(simples)
    while layer:
        new = []
        for r in layer:
            for i in range(n):
                # alpha_i-string through r: r + alpha_i is a root iff q >= 1
                # where q = p - <r, coroot_i>
                p = 0
                down = list(r)
                while True:
                    down[i] -= 1
                    t = tuple(down)
                    if t in roots or (sum(abs(x) for x in t) == 0):
                        p += 1
                    else:
                        break
                pair = sum(r[j] * A[i][j] for j in range(n))
                q = p - pair
                if q >= 1:
                    up = list(r)
                    up[i] += 1
                    t = tuple(up)
                    if t not in roots:
                        roots.add(t)
                        new.append(t)
        layer = new
    return sorted(roots, key=lambda r: (sum(r), r))


# ---------------------------------------------------------------------------
# affine data


SERIES = {}


def _a_series_matrix(ell):
    if ell == 1:
        return ((2, -2), (-2, 2))
    n = ell + 1
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 2
        m[i][(i + 1) % n] = -1
        m[i][(i - 1) % n] = -1
    return tuple(tuple(r) for r in m)


class AffineData:
    """Cartan data of an untwisted affine algebra plus the basis ordering.

    Node 0 is the affine node; deleting it leaves the finite Cartan matrix.
    """

    def __init__(self, cartan):
        self.cartan = tuple(tuple(int(x) for x in row) for row in cartan)
        self.nodes = list(range(len(self.cartan)))
        self._validate_gcm()
        self.marks = _primitive_kernel(self.cartan, right=True)
        self.comarks = _primitive_kernel(self.cartan, right=False)
        if any(a <= 0 for a in self.marks) or any(a <= 0 for a in self.comarks):
            raise RootDataError("not affine: kernel vector not positive")
        if self.marks[0] != 1 or self.comarks[0] != 1:
            raise RootDataError(
                "not untwisted: a_0 = %d, comark_0 = %d (both must be 1)"
                % (self.marks[0], self.comarks[0]))
        self.h = sum(self.marks)
        self.hv = sum(self.comarks)
        self.rank = len(self.cartan) - 1
        finite_cartan = tuple(tuple(self.cartan[i][j]
                                    for j in range(1, self.rank + 1))
                              for i in range(1, self.rank + 1))
        self.finite = FiniteRoots(finite_cartan)
        theta = self.finite.highest
        if theta != tuple(self.marks[1:]):
            raise RootDataError(
                "not untwisted affine: highest root %r does not match marks %r"
                % (theta, tuple(self.marks[1:])))
        self.theta = theta
        # display order on positive roots: height descending, ties by
        # descending lexicographic coordinates (so alpha_1 precedes alpha_2)
        self.pos_order = sorted(self.finite.positive,
                                key=lambda r: (-sum(r), tuple(-c for c in r)))
        self._pos_rank = {r: i for i, r in enumerate(self.pos_order)}
        self.labels = ([('r', r) for r in self.finite.all_roots]
                       + [('h', i) for i in range(1, self.rank + 1)])

    def _validate_gcm(self):
        A = self.cartan
        n = len(A)
        for i in range(n):
            if len(A[i]) != n or A[i][i] != 2:
                raise RootDataError("not a generalized Cartan matrix")
            for j in range(n):
                if i != j:
                    if A[i][j] > 0:
                        raise RootDataError("positive off-diagonal entry")
                    if (A[i][j] == 0) != (A[j][i] == 0):
                        raise RootDataError("asymmetric zero pattern")
        if _det(A) != 0:
            raise RootDataError("not affine: determinant %s is nonzero,"
                                " corank 0" % _det(A))
        # corank exactly 1: deleting node 0 must leave a nonsingular matrix
        sub = [[A[i][j] for j in range(1, n)] for i in range(1, n)]
        if n > 1 and _det(sub) == 0:
            raise RootDataError("not affine: corank exceeds 1")

    # -- weights -----------------------------------------------------------

    def delta(self):
        """Imaginary root coordinates over all affine simple roots."""
        return tuple(self.marks)

    def wgt(self, idx):
        """Root-lattice weight of (a, n), over the affine simple roots."""
        n = idx_grade(idx)
        base = [n * a for a in self.marks]
        if idx[0] == 'r':
            for i, c in enumerate(idx[1]):
                base[i + 1] += c
        return tuple(base)

    def wgt_height(self, w):
        return sum(w)

    def sigma_sign(self, idx):
        """Sign of the Cartan involution on the basis vector J_{idx}:
        (-1)^{height+1} in the affine height of its weight.  Forced by the
        automorphism property once the Chevalley signs are fixed; degenerate
        (+1 on root vectors) whenever heights of weights are odd, as in
        rank one."""
        if idx in (K_KEY, D_KEY):
            return -1
        return -1 if self.wgt_height(self.wgt(idx)) % 2 == 0 else 1

    # -- index-set membership ----------------------------------------------

    def in_A(self, idx):
        """(a, n) lies in the plus index set."""
        n = idx_grade(idx)
        if n >= 1:
            return True
        if n == 0 and idx[0] == 'r':
            return idx[1] in self.finite.positive_set
        return False

    def in_minus_A(self, idx):
        return self.in_A(neg_idx(idx))

    def side_of(self, idx):
        if self.in_A(idx):
            return 'plus'
        if self.in_minus_A(idx):
            return 'minus'
        return 'neither'

    # -- total ordering ------------------------------------------------------

    def sort_key(self, idx):
        """Key implementing the total order on the basis.

        Within a fixed grade n: negated big roots first (reversed positive
        order), then d < k < Cartans by node, then positive roots.
        """
        if idx == D_KEY:
            return (0, 1, -2, 0)
        if idx == K_KEY:
            return (0, 1, -1, 0)
        n = idx_grade(idx)
        if idx[0] == 'h':
            return (n, 1, idx[1], 0)
        coords = idx[1]
        if coords in self.finite.positive_set:
            return (n, 2, self._pos_rank[coords], 0)
        neg = tuple(-c for c in coords)
        if neg not in self.finite.positive_set:
            raise RootDataError("label %r is not a root" % (coords,))
        return (n, 0, -self._pos_rank[neg], 0)

    def basis_cmp(self, x, y):
        kx, ky = self.sort_key(x), self.sort_key(y)
        return (kx > ky) - (kx < ky)

    # -- windows -------------------------------------------------------------

    def index_window(self, cutoff, side='plus'):
        """Ordered list of (a, n) in the chosen index set with |n| < cutoff.

        side='both' covers every label of the doubled polynomial ring,
        including the grade-0 Cartan indices that lie in neither half.
        """
        out = []
        if side in ('plus', 'both'):
            for n in range(0, cutoff):
                for lab in self.labels:
                    idx = (lab[0], lab[1], n)
                    if self.in_A(idx):
                        out.append(idx)
        if side in ('minus', 'both'):
            for n in range(0, -cutoff, -1):
                for lab in self.labels:
                    idx = (lab[0], lab[1], n)
                    if self.in_minus_A(idx):
                        out.append(idx)
        if side == 'both':
            out.extend(('h', i, 0) for i in range(1, self.rank + 1))
        return sorted(out, key=self.sort_key)

    # -- Chevalley-Serre index helpers --------------------------------------

    def e_idx(self, i):
        """Index of e_i: simple root at grade 0, or -theta at grade 1."""
        if i == 0:
            return root_idx(tuple(-c for c in self.theta), 1)
        return root_idx(tuple(1 if j == i - 1 else 0
                              for j in range(self.rank)), 0)

    def f_idx(self, i):
        return neg_idx(self.e_idx(i))

    def node_order(self):
        """Nodes sorted so that e_j precedes e_i iff j comes first."""
        return sorted(range(self.rank + 1),
                      key=lambda i: self.sort_key(self.e_idx(i)))


def _primitive_kernel(A, right):
    """Primitive positive integer kernel vector (right: A v = 0, else v A = 0)."""
    n = len(A)
    m = [[Fraction(A[i][j] if right else A[j][i]) for j in range(n)]
         for i in range(n)]
    # reduced row echelon
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        f = m[r][c]
        m[r] = [x / f for x in m[r]]
        for i in range(n):
            if i != r and m[i][c] != 0:
                g = m[i][c]
                m[i] = [a - g * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    if len(free) != 1:
        raise RootDataError("not affine: kernel dimension %d" % len(free))
    v = [Fraction(0)] * n
    v[free[0]] = Fraction(1)
    for row, c in zip(m, pivots):
        v[c] = -row[free[0]]
    den = 1
    for x in v:
        den = den * x.denominator // _gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = _gcd(g, abs(x))
    ints = [x // g for x in ints]
    if all(x <= 0 for x in ints):
        ints = [-x for x in ints]
    return tuple(ints)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@lru_cache(maxsize=None)
def build_affine_data(tag_or_matrix):
    """Construct AffineData from a series tag like 'A2~' or a Cartan matrix."""
    if isinstance(tag_or_matrix, str):
        tag = tag_or_matrix.strip().rstrip('~')
        if tag.lower().endswith('affine'):
            tag = tag[:-6]
        if not (len(tag) >= 2 and tag[0] in 'Aa' and tag[1:].isdigit()):
            raise RootDataError("unknown series tag %r (use 'A<l>~' or an"
                                " explicit Cartan matrix)" % tag_or_matrix)
        ell = int(tag[1:])
        if ell < 1:
            raise RootDataError("rank must be at least 1")
        return AffineData(_a_series_matrix(ell))
    return AffineData(tag_or_matrix)
