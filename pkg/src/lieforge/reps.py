"""Concrete orthogonal representations fed to the bracket engine.

Builders here return OrthRep values (plus the commuting structures where
the module is complex or quaternionic).  All matrices are exact; the
default invariant form on the acting algebra is B(a, b) = -tr(ab) on the
given basis, and the module forms are identities except for the harmonic
cubic module, whose natural basis is not orthonormal.
"""

from .exact import Q, ZERO, ONE, SparseMatrix, SpanSolver, kernel_basis
from .ops import Op
from .clifford import build_spin_rep, clifford_table
from .liealg import LieAlgebra, from_matrices
from .srep import OrthRep


def trace_product(a, b):
    """tr(a b) for operators, iterating the sparser factor."""
    s = ZERO
    for (r, c), v in a.items():
        w = b.cols[r].get(c)
        if w is not None:
            s += v * w
    return s


def trace_form_gram(mats):
    n = len(mats)
    ent = {}
    for i in range(n):
        for j in range(i, n):
            s = -trace_product(mats[i], mats[j])
            if s:
                ent[(i, j)] = s
                if i != j:
                    ent[(j, i)] = s
    return SparseMatrix(n, n, ent)


def so_structure_table(n):
    """Structure constants of so(n) on the basis X_ab = e_a e_b / 2.

    pairs lists (a, b) with a < b in lexicographic order;
    [X_ab, X_cd] = d_ac X_bd + d_bd X_ac - d_ad X_bc - d_bc X_ad,
    which matches the compact Clifford convention used by the spin
    modules (checked against matrix commutators in the tests).
    """
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    index = {p: i for i, p in enumerate(pairs)}

    def xind(a, b):
        if a == b:
            return None, 0
        if a < b:
            return index[(a, b)], 1
        return index[(b, a)], -1

    table = {}
    for pi, (a, b) in enumerate(pairs):
        for qi in range(pi + 1, len(pairs)):
            c, d = pairs[qi]
            row = {}
            for (delta_pair, x_pair, sgn) in (
                    ((a, c), (b, d), 1), ((b, d), (a, c), 1),
                    ((a, d), (b, c), -1), ((b, c), (a, d), -1)):
                if delta_pair[0] != delta_pair[1]:
                    continue
                k, s = xind(*x_pair)
                if k is None:
                    continue
                cur = row.get(k, 0) + sgn * s
                if cur:
                    row[k] = cur
                else:
                    del row[k]
            if row:
                table[(pi, qi)] = {k: Q(v) for k, v in row.items()}
    return pairs, table


def spin_orth_rep(n, chirality="full"):
    """spin(n) acting on its (half-)spinor module as an OrthRep.

    Returns (rep, spin) where spin is the underlying SpinRep carrying
    the commuting structures.  The invariant form on spin(n) is the
    trace form of this module, which is diagonal on the X_ab basis.
    """
    spin = build_spin_rep(n, chirality)
    pairs, table = so_structure_table(n)
    gram_h = trace_form_gram(spin.spin_basis)
    labels = ["X%d%d" % (a + 1, b + 1) for (a, b) in pairs]
    h = LieAlgebra(len(pairs), table, gram_h, labels)
    rep = OrthRep(h, spin.spin_basis, spin.gram)
    return rep, spin


def spin_cartan_seed(n):
    """Indices of X_12, X_34, ... in the pair basis of so(n)."""
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    index = {p: i for i, p in enumerate(pairs)}
    return [index[(2 * a, 2 * a + 1)] for a in range(n // 2)]


# ---------------------------------------------------------------------------
# classical families with exact integer models
# ---------------------------------------------------------------------------

def complex_to_real_op(n, entries):
    """Real 2n x 2n operator of a complex matrix given as (re, im) entries.

    Coordinate 2k is the real part of z_k, 2k+1 the imaginary part.
    """
    cols = [dict() for _ in range(2 * n)]
    for (r, c), (a, b) in entries.items():
        a, b = Q(a), Q(b)
        if a:
            cols[2 * c][2 * r] = a
            cols[2 * c + 1][2 * r + 1] = a
        if b:
            cols[2 * c][2 * r + 1] = b
            cols[2 * c + 1][2 * r] = cols[2 * c + 1].get(2 * r, ZERO) - b
    for col in cols:
        for k in [k for k, v in col.items() if not v]:
            del col[k]
    return Op(2 * n, cols)


def su_vector_rep(n):
    """su(n) on C^n as a real 2n-dim module; returns (rep, I).

    Basis: E_kl - E_lk and i(E_kl + E_lk) for k < l, then the diagonal
    i(E_kk - E_{k+1,k+1}).
    """
    mats = []
    labels = []
    for k in range(n):
        for l in range(k + 1, n):
            mats.append(complex_to_real_op(
                n, {(k, l): (1, 0), (l, k): (-1, 0)}))
            labels.append("S%d%d" % (k + 1, l + 1))
            mats.append(complex_to_real_op(
                n, {(k, l): (0, 1), (l, k): (0, 1)}))
            labels.append("T%d%d" % (k + 1, l + 1))
    for k in range(n - 1):
        mats.append(complex_to_real_op(
            n, {(k, k): (0, 1), (k + 1, k + 1): (0, -1)}))
        labels.append("D%d" % (k + 1))
    h = from_matrices(mats, labels)
    rep = OrthRep(h, mats, SparseMatrix.identity(2 * n))
    I = complex_to_real_op(n, {(k, k): (0, 1) for k in range(n)})
    return rep, I


_QUAT_UNITS = {
    # left multiplication columns on (1, i, j, k): unit -> op columns
    1: [{0: 1}, {1: 1}, {2: 1}, {3: 1}],
    "i": [{1: 1}, {0: -1}, {3: 1}, {2: -1}],
    "j": [{2: 1}, {3: -1}, {0: -1}, {1: 1}],
    "k": [{3: 1}, {2: 1}, {1: -1}, {0: -1}],
}

_QUAT_RIGHT = {
    "i": [{1: 1}, {0: -1}, {3: -1}, {2: 1}],
    "j": [{2: 1}, {3: 1}, {0: -1}, {1: -1}],
    "k": [{3: 1}, {2: -1}, {1: 1}, {0: -1}],
}


def _quat_block_op(n, entries):
    """Real 4n x 4n operator of an n x n quaternionic matrix.

    entries maps (r, c) to a dict unit -> coefficient over {1,'i','j','k'}
    acting by left multiplication on column vectors in H^n.
    """
    cols = [dict() for _ in range(4 * n)]
    for (r, c), qdict in entries.items():
        for unit, coeff in qdict.items():
            blk = _QUAT_UNITS[unit]
            for jj in range(4):
                for ii, v in blk[jj].items():
                    key = 4 * r + ii
                    dst = cols[4 * c + jj]
                    dst[key] = dst.get(key, ZERO) + Q(coeff) * v
    for col in cols:
        for k in [k for k, v in col.items() if not v]:
            del col[k]
    return Op(4 * n, cols)


def sp_vector_rep(n):
    """sp(n) on H^n as a real 4n-dim module; returns (rep, I, J).

    sp(n) is the quaternion skew-hermitian matrices acting from the
    left; the commuting structures are right multiplications by i, j.
    """
    mats = []
    labels = []
    for r in range(n):
        for unit in ("i", "j", "k"):
            mats.append(_quat_block_op(n, {(r, r): {unit: 1}}))
            labels.append("%s%d" % (unit, r + 1))
    for r in range(n):
        for c in range(r + 1, n):
            for unit, conj in ((1, {1: -1}), ("i", {"i": 1}),
                               ("j", {"j": 1}), ("k", {"k": 1})):
                mats.append(_quat_block_op(
                    n, {(r, c): {unit: 1},
                        (c, r): conj}))
                labels.append("E%d%d%s" % (r + 1, c + 1, unit))
    h = from_matrices(mats, labels)
    rep = OrthRep(h, mats, SparseMatrix.identity(4 * n))
    icols = [dict(c) for c in _QUAT_RIGHT["i"]]
    jcols = [dict(c) for c in _QUAT_RIGHT["j"]]
    I = Op(4 * n, [{(b * 4 + r): Q(v) for r, v in icols[jj].items()}
                   for b in range(n) for jj in range(4)])
    J = Op(4 * n, [{(b * 4 + r): Q(v) for r, v in jcols[jj].items()}
                   for b in range(n) for jj in range(4)])
    return rep, I, J


def so_vector_rep(n):
    """so(n) on R^n (the round-sphere isotropy module)."""
    mats = []
    labels = []
    for a in range(n):
        for b in range(a + 1, n):
            mats.append(Op.from_entries(n, {(b, a): ONE, (a, b): -ONE}))
            labels.append("L%d%d" % (a + 1, b + 1))
    h = from_matrices(mats, labels)
    return OrthRep(h, mats, SparseMatrix.identity(n))


def adjoint_orth_rep(L, gram=None):
    """An algebra acting on itself; gram defaults to minus the trace form
    of ad, which is the Killing-form sign convention for compact type."""
    mats = [L.ad(i) for i in range(L.dim)]
    if gram is None:
        gram = trace_form_gram(mats)
    h = LieAlgebra(L.dim, {k: dict(r) for k, r in L.table.items()},
                   gram, list(L.labels))
    return OrthRep(h, mats, gram)


def so3_vector_rep():
    return so_vector_rep(3)


def so3_harmonic7_rep():
    """so(3) on the 7-dim space of harmonic cubics, apolar inner product.

    The natural rational basis is not orthonormal, which exercises the
    general-Gram paths of the engine; the Casimir four-form of this
    module does not vanish.
    """
    monos = []
    for a in range(3, -1, -1):
        for b in range(3 - a, -1, -1):
            monos.append((a, b, 3 - a - b))
    index = {m: i for i, m in enumerate(monos)}

    def derivation(src, dst):
        # x_dst d/d x_src acting on cubic monomials
        cols = [dict() for _ in range(len(monos))]
        for i, m in enumerate(monos):
            if m[src] == 0:
                continue
            new = list(m)
            new[src] -= 1
            new[dst] += 1
            cols[i][index[tuple(new)]] = Q(m[src])
        return Op(len(monos), cols)

    # A_ab = x_a d/d x_b - x_b d/d x_a
    gens10 = [derivation(1, 0).sub(derivation(0, 1)),
              derivation(2, 1).sub(derivation(1, 2)),
              derivation(0, 2).sub(derivation(2, 0))]
    # Laplacian rows: second derivatives down to degree-1 monomials
    lap = {}
    deg1 = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    d1index = {m: i for i, m in enumerate(deg1)}
    for i, m in enumerate(monos):
        for axis in range(3):
            if m[axis] >= 2:
                new = list(m)
                new[axis] -= 2
                lap[(d1index[tuple(new)], i)] = Q(m[axis] * (m[axis] - 1))
    harm = kernel_basis(SparseMatrix(3, len(monos), lap))
    assert len(harm) == 7
    vecs = [v.entries for v in harm]
    solver = SpanSolver(len(monos))
    for v in vecs:
        solver.add(v)
    mats = [g.restrict(vecs, solver) for g in gens10]
    # apolar pairing of cubic monomials: <m, m> = a! b! c!
    def weight(m):
        f = [1, 1, 2, 6]
        return Q(f[m[0]] * f[m[1]] * f[m[2]])
    ent = {}
    for i, u in enumerate(vecs):
        for j in range(i, 7):
            v = vecs[j]
            s = ZERO
            for t, a in u.items():
                b = v.get(t)
                if b is not None:
                    s += a * b * weight(monos[t])
            if s:
                ent[(i, j)] = s
                if i != j:
                    ent[(j, i)] = s
    gram = SparseMatrix(7, 7, ent)
    h = from_matrices(mats, ["Az", "Ax", "Ay"])
    return OrthRep(h, mats, gram)
