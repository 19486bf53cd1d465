"""Real Clifford algebras and (half-)spin representations.

Conventions, fixed once for the whole package:

  * generators square to -1 (compact convention), so the even part
    exponentiates to the compact spin group;
  * the Clifford representation of Cl_n is the irreducible real
    representation for n != 3 mod 4 and the sum of the two inequivalent
    ones for n = 3 mod 4;
  * base cases Cl_1..Cl_8 are built from left/right multiplications of
    the quaternions and octonions, so every generator is a skew signed
    permutation matrix with entries 0, +-1; dimensions n > 8 extend by
    Cl_{n+8} = Cl_n (x) R(16) using the Cl_8 volume element;
  * the spin module for spin(n) is the Clifford representation of
    Cl_{n-1} through the even-part isomorphism, i.e. rho(e_i e_n) = g_i
    and rho(e_i e_j) = g_i g_j for i < j < n;
  * for n = 0 mod 4, the plus half-module is the +1 eigenspace of the
    image of e_1 e_2 ... e_n (a central involution of the Cl_{n-1}
    action), with the generator order fixed as written.
"""

from .exact import Q, ZERO, ONE, Echelon, SparseMatrix, SpanSolver
from .ops import Op
from .spectra import rotation_weights


class BadChirality(Exception):
    """Half-spin module requested for n not divisible by 4."""


class UnexpectedCentralizer(Exception):
    """Commutant dimension outside {1, 2, 4}."""


class NoInvariantMetric(Exception):
    """Construction failed to produce a skew-compatible inner product."""


# ---------------------------------------------------------------------------
# composition algebras
# ---------------------------------------------------------------------------

_QUAT_TRIPLES = [(1, 2, 3)]
_OCT_TRIPLES = [(i, (i % 7) + 1, ((i + 2) % 7) + 1) for i in range(1, 8)]


def _mult_table(dim, triples):
    table = {}
    for a in range(dim):
        table[(0, a)] = (a, 1)
        table[(a, 0)] = (a, 1)
    for a in range(1, dim):
        table[(a, a)] = (0, -1)
    for (a, b, c) in triples:
        for (x, y, z) in ((a, b, c), (b, c, a), (c, a, b)):
            table[(x, y)] = (z, 1)
            table[(y, x)] = (z, -1)
    return table


def _left_mults(dim, table):
    out = []
    for p in range(dim):
        cols = []
        for j in range(dim):
            t, s = table[(p, j)]
            cols.append({t: Q(s)})
        out.append(Op(dim, cols))
    return out


def _right_mults(dim, table):
    out = []
    for p in range(dim):
        cols = []
        for j in range(dim):
            t, s = table[(j, p)]
            cols.append({t: Q(s)})
        out.append(Op(dim, cols))
    return out


def _pair_generators(left):
    """Generators [[0, -L_q], [L_qbar, 0]] over a composition algebra."""
    dim = left[0].n
    gens = []
    for p, L in enumerate(left):
        conj = L if p == 0 else L.neg()
        gens.append(Op.blocks2(None, L.neg(), conj, None, dim))
    return gens


def _base_generators(n):
    if n == 1:
        return [Op(2, [{1: ONE}, {0: -ONE}])]
    qt = _mult_table(4, _QUAT_TRIPLES)
    if n == 2:
        L = _left_mults(4, qt)
        return [L[1], L[2]]
    if n <= 6:
        L = _left_mults(4, qt)
        R = _right_mults(4, qt)
        gens = _pair_generators(L)
        for p in (1, 2):
            gens.append(Op.blocks2(R[p], None, None, R[p].neg(), 4))
        return gens[:n]
    ot = _mult_table(8, _OCT_TRIPLES)
    return _pair_generators(_left_mults(8, ot))[:n]


def _volume(gens):
    v = gens[0]
    for g in gens[1:]:
        v = g.mul(v)                  # order is irrelevant up to sign here
    return v


_GEN_CACHE = {}


def clifford_generators(n):
    """Generator matrices of the Clifford representation of Cl_n."""
    if n < 1:
        raise ValueError("need n >= 1")
    if n in _GEN_CACHE:
        return _GEN_CACHE[n]
    if n <= 8:
        gens = _base_generators(n)
    else:
        sub = clifford_generators(n - 8)
        base = clifford_generators(8)
        omega = _volume(base)
        ident = Op.identity(sub[0].n)
        gens = [ident.tensor(g) for g in base]
        gens += [g.tensor(omega) for g in sub]
    d = gens[0].n
    for i, gi in enumerate(gens):
        for j in range(i, len(gens)):
            anti = gi.anticommutator(gens[j])
            want = Op.identity(d).scale(-2) if i == j else Op.zero(d)
            if anti != want:
                raise AssertionError("Clifford relation failed at (%d,%d)"
                                     % (i, j))
    _GEN_CACHE[n] = gens
    return gens


# ---------------------------------------------------------------------------
# the Cl_n classification table
# ---------------------------------------------------------------------------

_FIELD_DIM = {"R": 1, "C": 2, "H": 4}


class CliffordDescriptor:
    __slots__ = ("n", "base_field", "matrix_size", "split")

    def __init__(self, n, base_field, matrix_size, split):
        self.n = n
        self.base_field = base_field
        self.matrix_size = matrix_size
        self.split = split

    def real_dim(self):
        """Real dimension of the Clifford representation."""
        d = self.matrix_size * _FIELD_DIM[self.base_field]
        return 2 * d if self.split else d

    def __repr__(self):
        body = "%s(%d)" % (self.base_field, self.matrix_size)
        if self.split:
            body = body + " + " + body
        return "Cl_%d = %s" % (self.n, body)


def clifford_table(n):
    if n < 1:
        raise ValueError("need n >= 1")
    m = ((n - 1) % 8) + 1
    k = (n - m) // 8
    row = {1: ("C", 0, False), 2: ("H", 0, False), 3: ("H", 0, True),
           4: ("H", 1, False), 5: ("C", 2, False), 6: ("R", 3, False),
           7: ("R", 3, True), 8: ("R", 4, False)}[m]
    field, shift, split = row
    return CliffordDescriptor(n, field, 2 ** (4 * k + shift), split)


# ---------------------------------------------------------------------------
# spin modules
# ---------------------------------------------------------------------------

_TYPE_BY_RESIDUE = {0: "real", 1: "real", 7: "real",
                    2: "complex", 6: "complex",
                    3: "quaternionic", 4: "quaternionic", 5: "quaternionic"}


class SpinRep:
    """Spin(n) acting on its (half-)spinor module, all matrices exact.

    generators: the n-1 Clifford generator images (restricted to the
    chosen half when applicable), pairwise anticommuting with square -1.
    spin_basis[k] is the action of e_i e_j / 2 where pairs[k] = (i, j),
    0-based over range(n).  gram is the invariant inner product on the
    chosen basis (identity whenever the eigenbasis norms are uniform).
    """

    __slots__ = ("n", "chirality", "dim_real", "generators", "pairs",
                 "spin_basis", "type", "structures", "gram")

    def __init__(self, n, chirality, generators, pairs, spin_basis, gram):
        self.n = n
        self.chirality = chirality
        self.dim_real = spin_basis[0].n
        self.generators = generators
        self.pairs = pairs
        self.spin_basis = spin_basis
        self.gram = gram
        self.type = None
        self.structures = []

    def __repr__(self):
        tag = {"full": "", "plus": "+", "minus": "-"}[self.chirality]
        return "SpinRep(n=%d%s, dim=%d, type=%s)" % (
            self.n, tag, self.dim_real, self.type)

    def pair_index(self, i, j):
        return self.pairs.index((i, j) if i < j else (j, i))

    def cartan_ops(self):
        return [self.spin_basis[self.pair_index(2 * a, 2 * a + 1)]
                for a in range(self.n // 2)]


def _pair_image(gens, n, a, b):
    if b == n - 1:
        return gens[a]
    return gens[a].mul(gens[b])


def _chirality_eigenbasis(omega, target):
    """Eigenbasis of a symmetric signed-permutation involution."""
    d = omega.n
    vecs = []
    norms = []
    seen = set()
    for i in range(d):
        if i in seen:
            continue
        col = omega.cols[i]
        (j, s), = col.items()
        if j == i:
            if s == target:
                vecs.append({i: ONE})
                norms.append(ONE)
            seen.add(i)
        else:
            vecs.append({i: ONE, j: s * target})
            norms.append(Q(2))
            seen.add(i)
            seen.add(j)
    return vecs, norms


def build_spin_rep(n, chirality="full"):
    """Spin module of spin(n) from the Clifford representation of Cl_{n-1}.

    Half modules (chirality 'plus'/'minus') exist only for n = 0 mod 4.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    if chirality not in ("full", "plus", "minus"):
        raise ValueError("bad chirality %r" % chirality)
    if chirality != "full" and n % 4 != 0:
        raise BadChirality("half-spin modules need n = 0 mod 4")
    gens = clifford_generators(n - 1)
    d = clifford_table(n - 1).real_dim()
    assert gens[0].n == d
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    if chirality == "full":
        spin_basis = [_pair_image(gens, n, a, b).scale(Q(1, 2))
                      for (a, b) in pairs]
        rep = SpinRep(n, chirality, list(gens), pairs, spin_basis,
                      SparseMatrix.identity(d))
    else:
        omega = Op.identity(d)
        for a in range(n // 2):
            omega = omega.mul(_pair_image(gens, n, 2 * a, 2 * a + 1))
        if omega.mul(omega) != Op.identity(d) or not omega.is_monomial():
            raise AssertionError("chirality element is not an involution")
        target = 1 if chirality == "plus" else -1
        vecs, norms = _chirality_eigenbasis(omega, target)
        solver = SpanSolver(d)
        for v in vecs:
            solver.add(v)
        half_gens = [g.restrict(vecs, solver) for g in gens]
        spin_basis = [_pair_image(half_gens, n, a, b).scale(Q(1, 2))
                      for (a, b) in pairs]
        if all(x == norms[0] for x in norms):
            gram = SparseMatrix.identity(len(vecs))
        else:
            gram = SparseMatrix(len(vecs), len(vecs),
                                {(i, i): x for i, x in enumerate(norms)})
        rep = SpinRep(n, chirality, half_gens, pairs, spin_basis, gram)
    if chirality != "full" or n % 4 != 0:
        rep.type, rep.structures = detect_type(rep)
    invariant_inner_product(rep)
    return rep


# ---------------------------------------------------------------------------
# commutant and representation type
# ---------------------------------------------------------------------------

class _SignedDSU:
    """Union-find over matrix cells with a relative sign per link.

    sign[x] is value[x] / value[parent[x]]; a cell forced to equal its
    own negative kills the whole orbit (flag on the root).
    """

    def __init__(self, size):
        self.parent = list(range(size))
        self.sign = [1] * size
        self.dead = bytearray(size)

    def find(self, x):
        parent = self.parent
        sign = self.sign
        path = []
        while parent[x] != x:
            path.append(x)
            x = parent[x]
        cum = 1
        for node in reversed(path):
            cum *= sign[node]
            parent[node] = x
            sign[node] = cum
        return x, cum

    def union(self, x, y, rel):
        """Impose value[y] = rel * value[x]."""
        rx, sx = self.find(x)
        ry, sy = self.find(y)
        if rx == ry:
            if rel * sx != sy:
                self.dead[rx] = 1
            return
        self.parent[ry] = rx
        self.sign[ry] = rel * sx * sy      # sy in {1,-1}: 1/sy == sy
        if self.dead[ry]:
            self.dead[rx] = 1


def _monomial_pattern(op):
    """(perm, signs) with op e_i = c * signs[i] e_perm[i], or None."""
    perm = []
    signs = []
    scale = None
    for col in op.cols:
        if len(col) != 1:
            return None
        (r, v), = col.items()
        a = abs(v)
        if scale is None:
            scale = a
        elif a != scale:
            return None
        perm.append(r)
        signs.append(1 if v > 0 else -1)
    return perm, signs


def commutant_basis(mats, d):
    """Basis of the joint commutant of a list of operators on R^d.

    Monomial families (every generator a scaled signed permutation) go
    through a signed union-find over the d*d entry cells; the general
    case falls back to a stacked kernel of the commutation equations.
    """
    patterns = [_monomial_pattern(m) for m in mats]
    if all(p is not None for p in patterns):
        dsu = _SignedDSU(d * d)
        for perm, signs in patterns:
            for r in range(d):
                pr = perm[r] * d
                sr = signs[r]
                base = r * d
                for c in range(d):
                    dsu.union(base + c, pr + perm[c], sr * signs[c])
        orbits = {}
        for cell in range(d * d):
            root, s = dsu.find(cell)
            if dsu.dead[root]:
                continue
            orbits.setdefault(root, []).append((cell, s))
        basis = []
        for root in sorted(orbits):
            ent = {}
            for cell, s in orbits[root]:
                ent[(cell // d, cell % d)] = Q(s)
            basis.append(Op.from_entries(d, ent))
        return basis
    # generic path: (gX - Xg)[r, c] = 0 as linear equations on d^2 cells
    ech = Echelon(d * d)
    for g in mats:
        gt = g.transpose()
        for r in range(d):
            grow = gt.cols[r]              # row r of g
            for c in range(d):
                eq = {}
                for t, v in grow.items():       # g[r,t] X[t,c]
                    key = t * d + c
                    eq[key] = eq.get(key, ZERO) + v
                for t, v in g.cols[c].items():  # -X[r,t] g[t,c]
                    key = r * d + t
                    w = eq.get(key, ZERO) - v
                    if w:
                        eq[key] = w
                    else:
                        eq.pop(key, None)
                if eq:
                    ech.add_row(eq)
    basis = []
    for vec in ech.kernel():
        ent = {(k // d, k % d): v for k, v in vec.items()}
        basis.append(Op.from_entries(d, ent))
    return basis


def _find_units(basis, d):
    ident = Op.identity(d)
    neg_ident = ident.scale(-1)
    units = []
    cands = list(basis)
    for i, b1 in enumerate(basis):
        for b2 in basis[i + 1:]:
            cands.append(b1.mul(b2))
    for b in cands:
        if b.mul(b) == neg_ident:
            units.append(b)
    return units


def detect_type(rep):
    """Representation type and commuting structures of a SpinRep.

    Returns ('real', []), ('complex', [I]) with I*I = -1, or
    ('quaternionic', [I, J]) with I, J anticommuting complex structures.
    The commutant is computed from the Lie generators e_a e_{a+1}/2,
    which generate the full even action.
    """
    n = rep.n
    d = rep.dim_real
    gens = [rep.spin_basis[rep.pair_index(a, a + 1)] for a in range(n - 1)]
    basis = commutant_basis(gens, d)
    cdim = len(basis)
    if cdim == 1:
        return "real", []
    if cdim == 2:
        units = _find_units(basis, d)
        if not units:
            raise UnexpectedCentralizer("no complex unit in a 2-dim commutant")
        return "complex", [units[0]]
    if cdim == 4:
        units = _find_units(basis, d)
        for i, u in enumerate(units):
            for v in units[i + 1:]:
                if u.mul(v) == v.mul(u).scale(-1):
                    return "quaternionic", [u, v]
        raise UnexpectedCentralizer("no anticommuting unit pair found")
    raise UnexpectedCentralizer("commutant dimension %d" % cdim)


def invariant_inner_product(rep):
    """Invariant Gram matrix of a spin module; checks skewness exactly."""
    gram = rep.gram
    diag = {i: gram.entries.get((i, i), ZERO) for i in range(rep.dim_real)}
    for g in rep.spin_basis:
        for (r, c), v in g.items():
            if diag[r] * v + g.entry(c, r) * diag[c] != 0:
                raise NoInvariantMetric("spin generator is not B-skew")
    return gram


def spin_weights(rep):
    """Weight multiset from the Cartan rotations L_12, L_34, ...

    Returns a list of (tuple of rationals, multiplicity); the module has
    no zero weight, which is asserted.
    """
    zero, weights = rotation_weights(rep.cartan_ops(), rep.dim_real)
    if zero:
        raise AssertionError("spin module has a zero weight")
    return weights
