"""Sparse linear operators over Q, stored column-wise.

Every operator this package builds (Clifford generators, spin basis
matrices, complex/quaternionic structures) is a sum of very few signed
basis moves, so columns are dicts row -> Q and most stay single-entry.
"""

from .exact import Q, ZERO, ONE, SparseMatrix


class Op:
    __slots__ = ("n", "cols")

    def __init__(self, n, cols=None):
        self.n = n
        self.cols = cols if cols is not None else [dict() for _ in range(n)]

    @classmethod
    def identity(cls, n):
        return cls(n, [{i: ONE} for i in range(n)])

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def from_entries(cls, n, entries):
        cols = [dict() for _ in range(n)]
        for (r, c), v in entries.items():
            v = Q(v)
            if v:
                cols[c][r] = v
        return cls(n, cols)

    @classmethod
    def blocks2(cls, a, b, c, d, half):
        """2x2 block matrix [[a, b], [c, d]]; each block half x half or None."""
        cols = [dict() for _ in range(2 * half)]
        for blk, roff, coff in ((a, 0, 0), (b, 0, half),
                                (c, half, 0), (d, half, half)):
            if blk is None:
                continue
            for j, col in enumerate(blk.cols):
                dst = cols[coff + j]
                for i, v in col.items():
                    dst[roff + i] = v
        return cls(2 * half, cols)

    def entry(self, r, c):
        return self.cols[c].get(r, ZERO)

    def items(self):
        for c, col in enumerate(self.cols):
            for r, v in col.items():
                yield (r, c), v

    def nnz(self):
        return sum(len(col) for col in self.cols)

    def is_zero(self):
        return all(not col for col in self.cols)

    def is_monomial(self):
        """True when every column has at most one nonzero entry."""
        return all(len(col) <= 1 for col in self.cols)

    def __eq__(self, other):
        return self.n == other.n and self.cols == other.cols

    def __repr__(self):
        return "Op(%d, nnz=%d)" % (self.n, self.nnz())

    def copy(self):
        return Op(self.n, [dict(col) for col in self.cols])

    def apply(self, vec):
        """Image of a sparse vector (dict index -> Q)."""
        out = {}
        for i, v in vec.items():
            for r, a in self.cols[i].items():
                w = out.get(r)
                if w is None:
                    out[r] = a * v
                else:
                    w = w + a * v
                    if w:
                        out[r] = w
                    else:
                        del out[r]
        return out

    def mul(self, other):
        """Composition self ∘ other."""
        return Op(self.n, [self.apply(col) for col in other.cols])

    def add(self, other):
        cols = []
        for c1, c2 in zip(self.cols, other.cols):
            col = dict(c1)
            for r, v in c2.items():
                w = col.get(r)
                if w is None:
                    col[r] = v
                else:
                    w = w + v
                    if w:
                        col[r] = w
                    else:
                        del col[r]
            cols.append(col)
        return Op(self.n, cols)

    def sub(self, other):
        return self.add(other.scale(-1))

    def scale(self, c):
        c = Q(c)
        if not c:
            return Op.zero(self.n)
        return Op(self.n, [{r: c * v for r, v in col.items()}
                           for col in self.cols])

    def neg(self):
        return self.scale(-1)

    def commutator(self, other):
        return self.mul(other).sub(other.mul(self))

    def anticommutator(self, other):
        return self.mul(other).add(other.mul(self))

    def transpose(self):
        cols = [dict() for _ in range(self.n)]
        for c, col in enumerate(self.cols):
            for r, v in col.items():
                cols[r][c] = v
        return Op(self.n, cols)

    def trace(self):
        return sum((col[c] for c, col in enumerate(self.cols) if c in col),
                   ZERO)

    def tensor(self, other):
        """Kronecker product acting on V (x) W, index i*dim(W) + j."""
        m = other.n
        cols = [dict() for _ in range(self.n * m)]
        for c, col in enumerate(self.cols):
            for cj, colj in enumerate(other.cols):
                dst = cols[c * m + cj]
                for r, v in col.items():
                    for rj, w in colj.items():
                        dst[r * m + rj] = v * w
        return Op(self.n * m, cols)

    def direct_sum(self, other):
        half = self.n
        cols = [dict(col) for col in self.cols]
        cols += [{half + r: v for r, v in col.items()} for col in other.cols]
        return Op(half + other.n, cols)

    def to_sparse_matrix(self):
        return SparseMatrix(self.n, self.n,
                            {(r, c): v for (r, c), v in self.items()})

    def restrict(self, basis, solver):
        """Matrix of self on span(basis) in the given basis coordinates.

        basis is a list of sparse vectors, solver a SpanSolver loaded with
        them; raises if the span is not invariant.
        """
        cols = []
        for b in basis:
            coords = solver.solve(self.apply(b))
            if coords is None:
                raise ValueError("subspace not invariant")
            cols.append(coords)
        return Op(len(basis), cols)


def gram_matrix(vectors, gram=None):
    """Gram matrix of sparse vectors under an optional SparseMatrix form."""
    n = len(vectors)
    ent = {}
    for i, u in enumerate(vectors):
        gu = u if gram is None else _sym_apply(gram, u)
        for j in range(i, n):
            s = ZERO
            v = vectors[j]
            for t, a in gu.items():
                b = v.get(t)
                if b is not None:
                    s += a * b
            if s:
                ent[(i, j)] = s
                if i != j:
                    ent[(j, i)] = s
    return SparseMatrix(n, n, ent)


def _sym_apply(gram, vec):
    # full scan of the form's entries; fine for the small Gram matrices here
    out = {}
    for (r, c), g in gram.entries.items():
        v = vec.get(c)
        if v is not None:
            w = out.get(r)
            s = g * v
            out[r] = w + s if w is not None else s
            if out[r] == 0:
                del out[r]
    return out
