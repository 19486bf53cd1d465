"""Exact rational scalars and sparse linear algebra.

Everything downstream (Clifford modules, brackets, Casimir four-forms,
character tables) runs on the primitives in this module.  There is no
floating point anywhere: scalars are arbitrary-precision rationals kept
in lowest terms, vectors and matrices are dictionaries of nonzero
entries, and elimination is plain rational Gaussian elimination (gmpy2
keeps every intermediate gcd-reduced, which is what controls coefficient
growth for our half-integer structure constants).
"""

try:
    from gmpy2 import mpq as Q
except ImportError:          # pragma: no cover - gmpy2 is a declared dep
    from fractions import Fraction as Q

ZERO = Q(0)
ONE = Q(1)


class ZeroReference(Exception):
    """Reference vector of a proportionality test is zero."""


class NotSymmetric(Exception):
    """Inertia requested for a non-symmetric matrix."""


def qstr(x):
    """Canonical string for an exact scalar: 'p' or 'p/q' with q > 1."""
    x = Q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%s/%s" % (x.numerator, x.denominator)


def qparse(s):
    if "/" in s:
        p, q = s.split("/")
        return Q(int(p), int(q))
    return Q(int(s))


class SparseVector:
    """Vector over Q storing only nonzero entries, indices < dimension."""

    __slots__ = ("dimension", "entries")

    def __init__(self, dimension, entries=None):
        self.dimension = dimension
        self.entries = {}
        if entries:
            for i, v in entries.items():
                v = Q(v)
                if v:
                    if not 0 <= i < dimension:
                        raise IndexError("index %d out of range" % i)
                    self.entries[i] = v

    def __getitem__(self, i):
        return self.entries.get(i, ZERO)

    def __len__(self):
        return self.dimension

    def __eq__(self, other):
        return (self.dimension == other.dimension
                and self.entries == other.entries)

    def __repr__(self):
        items = ", ".join("%d: %s" % (i, qstr(v))
                          for i, v in sorted(self.entries.items()))
        return "SparseVector(%d, {%s})" % (self.dimension, items)

    def is_zero(self):
        return not self.entries

    def scaled(self, c):
        c = Q(c)
        if not c:
            return SparseVector(self.dimension)
        return SparseVector(self.dimension,
                            {i: c * v for i, v in self.entries.items()})

    def dot(self, other):
        a, b = self.entries, other.entries
        if len(b) < len(a):
            a, b = b, a
        s = ZERO
        for i, v in a.items():
            w = b.get(i)
            if w is not None:
                s += v * w
        return s


class SparseMatrix:
    """rows x cols matrix over Q; entries maps (row, col) -> nonzero."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries=None):
        self.rows = rows
        self.cols = cols
        self.entries = {}
        if entries:
            for (i, j), v in entries.items():
                v = Q(v)
                if v:
                    if not (0 <= i < rows and 0 <= j < cols):
                        raise IndexError("entry (%d,%d) out of range" % (i, j))
                    self.entries[(i, j)] = v

    def __getitem__(self, key):
        return self.entries.get(key, ZERO)

    def __eq__(self, other):
        return (self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __repr__(self):
        return "SparseMatrix(%d, %d, nnz=%d)" % (
            self.rows, self.cols, len(self.entries))

    @classmethod
    def identity(cls, n):
        return cls(n, n, {(i, i): ONE for i in range(n)})

    def row_dicts(self):
        out = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def is_symmetric(self):
        if self.rows != self.cols:
            return False
        for (i, j), v in self.entries.items():
            if self.entries.get((j, i)) != v:
                return False
        return True

    def transpose(self):
        return SparseMatrix(self.cols, self.rows,
                            {(j, i): v for (i, j), v in self.entries.items()})


# ---------------------------------------------------------------------------
# row-echelon machinery
#
# Rows are plain dicts col -> Q.  An Echelon object absorbs rows one at a
# time, which is what the stacked-generator kernels (commutants, invariant
# subspaces) want: feeding rows lazily lets rank saturate early.
# ---------------------------------------------------------------------------

def vec_axpy(target, coeff, source):
    """target += coeff * source, dropping zeros (dict cols -> Q)."""
    for j, v in source.items():
        w = target.get(j)
        if w is None:
            target[j] = coeff * v
        else:
            w = w + coeff * v
            if w:
                target[j] = w
            else:
                del target[j]


class Echelon:
    """Incremental row echelon form over Q.

    pivot_rows maps pivot column -> normalized row (pivot entry 1, already
    reduced against all earlier pivots).  `strategy` picks the pivot column
    of an incoming row: 'first' takes the smallest column index, 'last' the
    largest.  Results (rank, kernel dimension, kernel span) are independent
    of the strategy; the test suite checks this.
    """

    def __init__(self, ncols, strategy="first"):
        self.ncols = ncols
        self.pivot_rows = {}
        self.strategy = strategy

    @property
    def rank(self):
        return len(self.pivot_rows)

    def reduce(self, row):
        """Reduce a row (dict, consumed) against current pivots."""
        piv = self.pivot_rows
        while True:
            hit = None
            for j in row:
                if j in piv:
                    hit = j
                    break
            if hit is None:
                return row
            vec_axpy(row, -row[hit], piv[hit])

    def add_row(self, row):
        """Insert a row; returns the pivot column or None if dependent."""
        row = self.reduce(dict(row))
        if not row:
            return None
        if self.strategy == "first":
            p = min(row)
        elif self.strategy == "last":
            p = max(row)
        else:
            raise ValueError("unknown pivot strategy %r" % self.strategy)
        inv = ONE / row[p]
        if inv != ONE:
            row = {j: inv * v for j, v in row.items()}
        # keep stored rows mutually reduced so kernel extraction is direct
        for q, other in self.pivot_rows.items():
            c = other.get(p)
            if c is not None:
                vec_axpy(other, -c, row)
        self.pivot_rows[p] = row
        return p

    def kernel(self):
        """Basis of the right kernel as a list of dicts (col -> Q)."""
        piv = self.pivot_rows
        basis = []
        for f in range(self.ncols):
            if f in piv:
                continue
            vec = {f: ONE}
            for p, row in piv.items():
                c = row.get(f)
                if c is not None:
                    vec[p] = -c
            basis.append(vec)
        return basis

    def solve(self, rhs_rows):
        """Membership test: does a row lie in the row span?"""
        return not self.reduce(dict(rhs_rows))


def kernel_basis(M, strategy="first"):
    """Basis of {v : M v = 0}, exact.

    Returns a list of SparseVector of length cols - rank(M); the empty
    list when the kernel is trivial.
    """
    ech = Echelon(M.cols, strategy=strategy)
    for row in M.row_dicts():
        if row:
            ech.add_row(row)
    return [SparseVector(M.cols, vec) for vec in ech.kernel()]


def rank(M, strategy="first"):
    """Rank over Q; rank + kernel dimension = cols."""
    ech = Echelon(M.cols, strategy=strategy)
    for row in M.row_dicts():
        if row:
            ech.add_row(row)
    return ech.rank


def proportionality(v, w):
    """Return c with v = c*w, or None if no such scalar exists.

    w must be nonzero (ZeroReference otherwise).  v = 0 gives c = 0.
    Works for SparseVector or any pair of dicts with .entries-like items.
    """
    ve = v.entries if isinstance(v, SparseVector) else v
    we = w.entries if isinstance(w, SparseVector) else w
    if not we:
        raise ZeroReference("reference vector is zero")
    if not ve:
        return ZERO
    i = next(iter(we))
    c = ve.get(i, ZERO) / we[i]
    if len(ve) != len(we):
        return None
    for j, val in we.items():
        if ve.get(j, ZERO) != c * val:
            return None
    return c


def ldl_signature(B):
    """Inertia (positives, negatives, zeros) of a symmetric matrix.

    Exact rational symmetric elimination with diagonal pivoting;
    off-diagonal (hyperbolic) pivots contribute a (+1, -1) pair.
    """
    if not B.is_symmetric():
        raise NotSymmetric("ldl_signature needs a symmetric matrix")
    n = B.rows
    rows = [dict() for _ in range(n)]
    for (i, j), v in B.entries.items():
        rows[i][j] = v
    active = set(range(n))
    pos = neg = 0
    while active:
        piv = None
        for i in sorted(active):
            d = rows[i].get(i)
            if d:
                piv = i
                break
        if piv is not None:
            d = rows[piv].pop(piv)
            if d > 0:
                pos += 1
            else:
                neg += 1
            active.discard(piv)
            col = [(k, rows[k].pop(piv)) for k in list(active)
                   if piv in rows[k]]
            for k, a in col:
                rows[piv].pop(k, None)
                ca = a / d
                for l, b in col:
                    w = rows[k].get(l, ZERO) - ca * b
                    if w:
                        rows[k][l] = w
                    else:
                        rows[k].pop(l, None)
            continue
        # all active diagonals vanish: look for an off-diagonal pivot
        off = None
        for i in sorted(active):
            for j in sorted(rows[i]):
                if j != i and j in active and rows[i][j]:
                    off = (i, j, rows[i][j])
                    break
            if off:
                break
        if off is None:
            break                      # remaining block is zero
        i, j, b = off
        pos += 1
        neg += 1
        active.discard(i)
        active.discard(j)
        rows[i].pop(j, None)
        rows[j].pop(i, None)
        coli = [(k, rows[k].pop(i)) for k in list(active) if i in rows[k]]
        colj = [(k, rows[k].pop(j)) for k in list(active) if j in rows[k]]
        for k, _ in coli + colj:
            rows[i].pop(k, None)
            rows[j].pop(k, None)
        ai = dict(coli)
        aj = dict(colj)
        touched = set(ai) | set(aj)
        for k in touched:
            for l in touched:
                # Schur complement of the block [[0, b], [b, 0]]
                w = (ai.get(k, ZERO) * aj.get(l, ZERO)
                     + aj.get(k, ZERO) * ai.get(l, ZERO)) / b
                if w:
                    cur = rows[k].get(l, ZERO) - w
                    if cur:
                        rows[k][l] = cur
                    else:
                        rows[k].pop(l, None)
    return (pos, neg, n - pos - neg)


def matrix_inverse(M):
    """Exact inverse of a square SparseMatrix; None when singular."""
    if M.rows != M.cols:
        raise ValueError("not square")
    n = M.rows
    ech = Echelon(2 * n)
    rows = M.row_dicts()
    for i in range(n):
        row = dict(rows[i])
        row[n + i] = ONE
        ech.add_row(row)
    ent = {}
    for p, row in ech.pivot_rows.items():
        if p >= n:
            return None                 # a row of M was dependent
        for j, v in row.items():
            if j >= n:
                ent[(p, j - n)] = v
    if len(ech.pivot_rows) != n:
        return None
    return SparseMatrix(n, n, ent)


class SpanSolver:
    """Exact coordinates with respect to a fixed list of vectors.

    Feeds rows (vector ++ unit tag) into an echelon; solve(x) then reduces
    (x ++ 0) and reads the coordinates off the tag block.  Used to express
    commutators in a matrix-span basis and to restrict operators to
    invariant subspaces.
    """

    def __init__(self, ambient_dim):
        self.ambient = ambient_dim
        self.count = 0
        self.ech = Echelon(0)          # ncols unused: columns are implicit

    def add(self, vec):
        row = {j: v for j, v in vec.items()}
        row[self.ambient + self.count] = ONE
        self.count += 1
        self.ech.add_row(row)

    def solve(self, vec):
        """Coefficients c with sum c_k basis_k = vec, or None."""
        row = self.ech.reduce({j: v for j, v in vec.items()})
        if any(j < self.ambient for j in row):
            return None
        out = {}
        for j, v in row.items():
            out[j - self.ambient] = -v
        return out
