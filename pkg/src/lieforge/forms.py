"""Sparse alternating forms over an ordered basis.

Keys are strictly increasing index tuples, values exact rationals; no
zero is ever stored.  The wedge normalization is fixed so that
(e1^e2)(e1, e2) = 1 and, for two-forms s and t,

    (s ^ t)(u, v, w, z) = s(u,v)t(w,z) - s(u,w)t(v,z) + s(u,z)t(v,w)
                        + s(v,w)t(u,z) - s(v,z)t(u,w) + s(w,z)t(u,v).

Under this convention the squared lift of a skew action satisfies the
obstruction identity used by the s-representation engine with the
factor 1/2 on the four-form side.
"""

from .exact import Q, ZERO, ONE


def merge_sign(s, t):
    """Merge two disjoint increasing tuples; (sorted tuple, Koszul sign)."""
    out = []
    i = j = 0
    sign = 1
    ls, lt = len(s), len(t)
    while i < ls and j < lt:
        if s[i] < t[j]:
            out.append(s[i])
            i += 1
        else:
            # t[j] jumps over the remaining entries of s
            if (ls - i) & 1:
                sign = -sign
            out.append(t[j])
            j += 1
    out.extend(s[i:])
    out.extend(t[j:])
    return tuple(out), sign


def sort_key(idx):
    """Canonicalize an index tuple; (sorted tuple, sign), sign 0 on repeats."""
    idx = list(idx)
    sign = 1
    n = len(idx)
    for i in range(1, n):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for i in range(1, n):
        if idx[i - 1] == idx[i]:
            return tuple(idx), 0
    return tuple(idx), sign


class AltForm:
    """Alternating k-form with sparse exact coefficients."""

    __slots__ = ("dim", "degree", "entries")

    def __init__(self, dim, degree, entries=None):
        self.dim = dim
        self.degree = degree
        self.entries = {}
        if entries:
            for key, v in entries.items():
                v = Q(v)
                if v:
                    key, sgn = sort_key(key)
                    if sgn == 0:
                        continue
                    self.entries[key] = sgn * v

    def __eq__(self, other):
        return (self.dim == other.dim and self.degree == other.degree
                and self.entries == other.entries)

    def __repr__(self):
        return "AltForm(dim=%d, deg=%d, nnz=%d)" % (
            self.dim, self.degree, len(self.entries))

    def is_zero(self):
        return not self.entries

    def get(self, *idx):
        key, sgn = sort_key(idx)
        if sgn == 0:
            return ZERO
        return sgn * self.entries.get(key, ZERO)

    def add_term(self, key, value):
        if not value:
            return
        cur = self.entries.get(key)
        if cur is None:
            self.entries[key] = value
        else:
            cur = cur + value
            if cur:
                self.entries[key] = cur
            else:
                del self.entries[key]

    def plus(self, other, coeff=ONE):
        out = AltForm(self.dim, self.degree)
        out.entries = dict(self.entries)
        for key, v in other.entries.items():
            out.add_term(key, coeff * v)
        return out

    def accumulate(self, other, coeff=ONE):
        """In-place version of plus, for builders accumulating many terms."""
        for key, v in other.entries.items():
            self.add_term(key, coeff * v)
        return self

    def scaled(self, c):
        c = Q(c)
        if not c:
            return AltForm(self.dim, self.degree)
        out = AltForm(self.dim, self.degree)
        out.entries = {k: c * v for k, v in self.entries.items()}
        return out

    def wedge(self, other):
        out = AltForm(self.dim, self.degree + other.degree)
        add = out.add_term
        for ks, vs in self.entries.items():
            for kt, vt in other.entries.items():
                if set(ks) & set(kt):
                    continue
                key, sgn = merge_sign(ks, kt)
                add(key, sgn * vs * vt)
        return out

    def contract(self, vec):
        """Inner product with a sparse vector: (v -| t)(...) = t(v, ...)."""
        out = AltForm(self.dim, self.degree - 1)
        add = out.add_term
        for key, c in self.entries.items():
            for pos, idx in enumerate(key):
                a = vec.get(idx)
                if a is not None:
                    rest = key[:pos] + key[pos + 1:]
                    add(rest, a * c if pos % 2 == 0 else -a * c)
        return out

    def evaluate(self, *vectors):
        """Multilinear alternating evaluation at sparse vectors."""
        form = self
        for v in vectors:
            if form.degree == 0:
                break
            form = form.contract(v)
        if form.degree != 0:
            raise ValueError("wrong number of arguments")
        return form.entries.get((), ZERO)

    def induced_action(self, op):
        """Lie-algebra action of an operator: (a.t)(u,..) = -sum t(..au..).

        On basis covectors a.e_k* = -sum_m op[k, m] e_m*, so each slot
        index k is replaced along row k of the operator.
        """
        rows = op.transpose()
        out = AltForm(self.dim, self.degree)
        add = out.add_term
        for key, c in self.entries.items():
            for pos, idx in enumerate(key):
                for m, a in rows.cols[idx].items():
                    newkey = key[:pos] + (m,) + key[pos + 1:]
                    skey, sgn = sort_key(newkey)
                    if sgn:
                        add(skey, -sgn * a * c)
        return out


def two_form_of_operator(op, gram=None):
    """The two-form t(u, v) = B(op u, v) of a B-skew operator."""
    n = op.n
    out = AltForm(n, 2)
    add = out.add_term
    if gram is None:
        for j, col in enumerate(op.cols):
            for i, v in col.items():
                if j < i:
                    add((j, i), v)
    else:
        grows = {}
        for (r, c), g in gram.entries.items():
            grows.setdefault(r, {})[c] = g
        for j, col in enumerate(op.cols):
            acc = {}
            for t, a in col.items():
                for c, g in grows.get(t, {}).items():
                    acc[c] = acc.get(c, ZERO) + a * g
            # skewness makes the lower triangle redundant; the diagonal
            # must vanish for a B-skew operator
            for i, v in acc.items():
                if not v:
                    continue
                if j < i:
                    add((j, i), v)
                elif i == j:
                    raise ValueError("operator is not B-skew")
    return out


def kahler_contraction(form, structure):
    """Metric adjoint of wedging with the structure's two-form.

    Computes (1/2) sum_i (I e_i) -| e_i -| form, for the standard
    orthonormal basis; drops the degree by two.  `structure` is the
    orthogonal complex-structure operator I.
    """
    out = AltForm(form.dim, form.degree - 2)
    add = out.add_term
    half = Q(1, 2)
    for key, c in form.entries.items():
        # slot pair (p, q): contributes form(e_i, Ie_i, rest) with i = key[p]
        for p in range(len(key)):
            i = key[p]
            for q in range(len(key)):
                if q == p:
                    continue
                a = structure.cols[i].get(key[q])
                if a is None:
                    continue
                # bring slots p then q to the front: sign of that shuffle
                if q < p:
                    rest = key[:q] + key[q + 1:p] + key[p + 1:]
                    sgn = (-1) ** (p + q)
                else:
                    rest = key[:p] + key[p + 1:q] + key[q + 1:]
                    sgn = (-1) ** (p + q + 1)
                add(rest, half * sgn * a * c)
    return out


def bianchi(table, dim):
    """Cyclic sum of a symmetric pairing on two-forms, as a four-form.

    `table` maps ((i, j), (k, l)) with i<j, k<l to exact values and is
    assumed symmetric in the two pair slots (missing transposes are looked
    up automatically).  Returns b(T)(u,v,w,z) = T(u,v,w,z) + T(v,w,u,z)
    + T(w,u,v,z).
    """
    def lookup(a, b, c, d):
        (p, sp) = ((a, b), 1) if a < b else ((b, a), -1)
        (q, sq) = ((c, d), 1) if c < d else ((d, c), -1)
        v = table.get((p, q))
        if v is None:
            v = table.get((q, p))
        if v is None:
            return ZERO
        return sp * sq * v

    quads = set()
    for (p, q) in table:
        idx = set(p) | set(q)
        if len(idx) == 4:
            quads.add(tuple(sorted(idx)))
    out = AltForm(dim, 4)
    for (i, j, k, l) in quads:
        v = (lookup(i, j, k, l) + lookup(j, k, i, l) + lookup(k, i, j, l))
        if v:
            out.add_term((i, j, k, l), v)
    return out
