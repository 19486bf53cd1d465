"""Bracket construction, Casimir obstruction, and the u(1)/sp(1) scale.

Given a compact-type algebra h with invariant form B_h acting faithfully
on (m, B_m) by B_m-skew operators, there is a unique candidate bracket
on h + m extending the h-structure with [m, m] in h and
B_h(a, [v, w]) = B_m(av, w).  The candidate is a Lie algebra exactly
when the four-form sum_{k,l} Ginv_{kl} t_k ^ t_l vanishes, where t_k is
the two-form of the k-th basis action and Ginv the inverse Gram of the
h-basis; the engine computes that four-form exactly and never asserts
Jacobi without it.

Complex and quaternionic modules are never s-modules for h alone; the
augment operations adjoin u(1) or sp(1) acting through the commuting
structures, find the unique form scale r = -1/c from exact
proportionality of four-forms, and rebuild the candidate over the
extended algebra.
"""

from .exact import (Q, ZERO, ONE, SparseMatrix, Echelon, proportionality,
                    matrix_inverse)
from .ops import Op
from .forms import AltForm, two_form_of_operator
from .liealg import LieAlgebra


class DegenerateForm(Exception):
    """B_h or B_m singular where an inverse is required."""


class NotProportional(Exception):
    """Casimir four-form is not a multiple of the structure four-form."""


class NonNegativeC(Exception):
    """Proportionality constant fails to be negative (invariance bug)."""


class NotCentral(Exception):
    """Central-element candidate fails to commute with h."""


class NotProportionalToJ(Exception):
    """Central element does not act as a nonzero multiple of J."""


class NoSolution(Exception):
    """No null pair exists for the attempted reference vectors."""


class OrthRep:
    """A normed algebra acting orthogonally: the engine's only input.

    h: LieAlgebra whose form is B_h on its basis (any nondegenerate
    Gram, orthonormality is not assumed); rho: one operator per h basis
    element; gram: B_m as a symmetric positive-definite SparseMatrix
    (identity for every spin module this package builds).
    """

    __slots__ = ("h", "rho", "gram", "dim_m", "_ginv")

    def __init__(self, h, rho, gram):
        if len(rho) != h.dim:
            raise ValueError("need one operator per h basis element")
        self.h = h
        self.rho = rho
        self.gram = gram
        self.dim_m = rho[0].n
        self._ginv = None

    def __repr__(self):
        return "OrthRep(dim_h=%d, dim_m=%d)" % (self.h.dim, self.dim_m)

    def gram_h_inverse(self):
        if self._ginv is None:
            inv = matrix_inverse(self.h.form)
            if inv is None:
                raise DegenerateForm("B_h is singular")
            self._ginv = inv
        return self._ginv

    def gram_is_identity(self):
        n = self.dim_m
        return self.gram.entries == {(i, i): ONE for i in range(n)}

    def validate(self):
        """Exact checks: homomorphism, skewness, faithfulness."""
        h = self.h
        for k in range(h.dim):
            for l in range(k + 1, h.dim):
                comm = self.rho[k].commutator(self.rho[l])
                want = Op.zero(self.dim_m)
                for t, c in h.bracket_basis(k, l).items():
                    want = want.add(self.rho[t].scale(c))
                if comm != want:
                    raise ValueError("rho is not a homomorphism at (%d,%d)"
                                     % (k, l))
        for k in range(h.dim):
            two_form_of_operator(self.rho[k], self._gram_or_none())
        ech = Echelon(self.dim_m * self.dim_m)
        rank = 0
        for op in self.rho:
            flat = {r * self.dim_m + c: v for (r, c), v in op.items()}
            if ech.add_row(flat) is not None:
                rank += 1
        if rank != h.dim:
            raise ValueError("rho is not faithful")
        return True

    def _gram_or_none(self):
        return None if self.gram_is_identity() else self.gram

    def lift(self, a):
        """Two-form of the action of an h-vector (dict or basis index)."""
        if isinstance(a, int):
            return two_form_of_operator(self.rho[a], self._gram_or_none())
        op = Op.zero(self.dim_m)
        for k, c in a.items():
            op = op.add(self.rho[k].scale(c))
        return two_form_of_operator(op, self._gram_or_none())

    def basis_lifts(self):
        g = self._gram_or_none()
        return [two_form_of_operator(op, g) for op in self.rho]


def casimir_four_form(rep):
    """Image of the Casimir element as a four-form, exactly.

    sum_{k,l} Ginv_{kl} t_k ^ t_l over the basis lifts t_k; only the
    nonzero entries of the inverse Gram are visited, and the symmetric
    off-diagonal terms are folded into a factor 2.
    """
    ginv = rep.gram_h_inverse()
    lifts = rep.basis_lifts()
    out = AltForm(rep.dim_m, 4)
    for (k, l), g in ginv.entries.items():
        if k > l:
            continue
        coeff = g if k == l else 2 * g
        out.accumulate(lifts[k].wedge(lifts[l]), coeff)
    return out


class CandidateAlgebra:
    """The graded candidate g = h + m; Jacobi is NOT asserted here."""

    __slots__ = ("algebra", "dim_h", "dim_m", "rep")

    def __init__(self, algebra, dim_h, dim_m, rep):
        self.algebra = algebra
        self.dim_h = dim_h
        self.dim_m = dim_m
        self.rep = rep

    def __repr__(self):
        return "CandidateAlgebra(h=%d, m=%d)" % (self.dim_h, self.dim_m)

    def m_vector(self, vec):
        """Shift a dict over m-indices into algebra coordinates."""
        H = self.dim_h
        return {H + i: v for i, v in vec.items()}

    def h_part(self, vec):
        return {i: v for i, v in vec.items() if i < self.dim_h}

    def m_part(self, vec):
        H = self.dim_h
        return {i - H: v for i, v in vec.items() if i >= H}

    def bracket_mm(self, u, v):
        """[u, v] in h for sparse m-vectors."""
        return self.h_part(self.algebra.bracket(self.m_vector(u),
                                                self.m_vector(v)))


def build_candidate(rep):
    """Assemble the candidate algebra; all four bracket conditions hold.

    [e_i, e_j] = sum_{k,l} Ginv_{kl} t_k(e_i, e_j) a_l is the dual-basis
    form of the defining condition; the identity
    B_h(a_t, [e_i, e_j]) = t_t(e_i, e_j) is re-checked on every basis
    pair before returning.
    """
    h = rep.h
    H, M = h.dim, rep.dim_m
    ginv = rep.gram_h_inverse()
    lifts = rep.basis_lifts()
    ginv_rows = {}
    for (k, l), g in ginv.entries.items():
        ginv_rows.setdefault(k, {})[l] = g
    table = {}
    for key, row in h.table.items():
        table[key] = dict(row)
    for k in range(H):
        for i, col in enumerate(rep.rho[k].cols):
            if col:
                table[(k, H + i)] = {H + r: v for r, v in col.items()}
    mm = {}
    for k in range(H):
        for (i, j), val in lifts[k].entries.items():
            dst = mm.setdefault((i, j), {})
            for l, g in ginv_rows.get(k, {}).items():
                cur = dst.get(l)
                cur = g * val if cur is None else cur + g * val
                if cur:
                    dst[l] = cur
                else:
                    del dst[l]
    for (i, j), row in mm.items():
        if row:
            table[(H + i, H + j)] = row
    ent = dict(h.form.entries)
    for (r, c), v in rep.gram.entries.items():
        ent[(H + r, H + c)] = v
    form = SparseMatrix(H + M, H + M, ent)
    labels = list(h.labels) + ["m%d" % i for i in range(M)]
    g = LieAlgebra(H + M, table, form, labels)
    # condition (4) on every basis pair: B_h(a_t, [e_i, e_j]) = t_t(i, j)
    frows = {}
    for (r, c), v in h.form.entries.items():
        frows.setdefault(r, {})[c] = v
    for i in range(M):
        for j in range(i + 1, M):
            row = mm.get((i, j), {})
            for t in range(H):
                s = ZERO
                for l, gv in frows.get(t, {}).items():
                    cl = row.get(l)
                    if cl is not None:
                        s += gv * cl
                if s != lifts[t].entries.get((i, j), ZERO):
                    raise AssertionError("bracket condition failed")
    return CandidateAlgebra(g, H, M, rep)


def jacobi_defect(cand, u, v, w):
    """[[u,v],w] + [[v,w],u] + [[w,u],v] for sparse m-vectors, in m."""
    alg = cand.algebra
    uu, vv, ww = (cand.m_vector(x) for x in (u, v, w))
    out = {}
    for a, b, c in ((uu, vv, ww), (vv, ww, uu), (ww, uu, vv)):
        d = alg.bracket(alg.bracket(a, b), c)
        for t, x in d.items():
            cur = out.get(t)
            cur = x if cur is None else cur + x
            if cur:
                out[t] = cur
            else:
                del out[t]
    return cand.m_part(out)


def pairing(gram, u, v):
    """B(u, v) for sparse vectors under a symmetric SparseMatrix."""
    s = ZERO
    for (r, c), g in gram.entries.items():
        a = u.get(r)
        if a is None:
            continue
        b = v.get(c)
        if b is not None:
            s += a * g * b
    return s


def casimir_jacobi_residual(cand, cas, u, v, w, z):
    """B_m(J(u,v,w), z) - (1/2) cas(u,v,w,z); zero is the exact identity."""
    defect = jacobi_defect(cand, u, v, w)
    lhs = pairing(cand.rep.gram, defect, z)
    rhs = cas.evaluate(u, v, w, z) / 2
    return lhs - rhs


class AugmentationResult:
    __slots__ = ("c", "r", "augmented", "candidate")

    def __init__(self, c, r, augmented, candidate):
        self.c = c
        self.r = r
        self.augmented = augmented
        self.candidate = candidate

    def __repr__(self):
        from .exact import qstr
        return "AugmentationResult(c=%s, r=%s, dim=%s)" % (
            qstr(self.c), qstr(self.r), self.candidate.algebra.dim)


def _extend_algebra(h, extra_dim, extra_table, r, labels_extra):
    """h + abelian-or-sp(1) summand with form B_h + r * identity block."""
    H = h.dim
    table = {key: dict(row) for key, row in h.table.items()}
    for (i, j), row in extra_table.items():
        table[(H + i, H + j)] = {H + k: v for k, v in row.items()}
    ent = dict(h.form.entries)
    for i in range(extra_dim):
        ent[(H + i, H + i)] = r
    form = SparseMatrix(H + extra_dim, H + extra_dim, ent)
    return LieAlgebra(H + extra_dim, table, form,
                      list(h.labels) + labels_extra)


def complex_augment(rep, I):
    """Adjoin u(1) acting by the complex structure; compute the scale.

    Requires the Casimir four-form to be an exact multiple c * w ^ w of
    the squared structure two-form with c < 0; the augmented module has
    form B_h + r B_u1 with r = -1/c and an identically vanishing
    Casimir four-form, which is re-verified.
    """
    cas = casimir_four_form(rep)
    omega = two_form_of_operator(I, rep._gram_or_none())
    ww = omega.wedge(omega)
    if ww.is_zero():
        raise DegenerateForm("squared structure form vanishes")
    c = proportionality(cas.entries, ww.entries)
    if c is None:
        raise NotProportional("Casimir form is not a multiple of w^w")
    if c >= 0:
        raise NonNegativeC("expected negative constant, got %s" % c)
    r = -ONE / c
    h2 = _extend_algebra(rep.h, 1, {}, r, ["u1"])
    aug = OrthRep(h2, list(rep.rho) + [I], rep.gram)
    if not casimir_four_form(aug).is_zero():
        raise AssertionError("augmented Casimir form does not vanish")
    return AugmentationResult(c, r, aug, build_candidate(aug))


def quaternionic_augment(rep, I, J):
    """Adjoin sp(1) acting by the quaternionic structure.

    K = I J; the Casimir four-form must be an exact multiple of
    w_I^w_I + w_J^w_J + w_K^w_K with negative constant, and the sp(1)
    form makes i, j, k orthonormal before the scale r = -1/c.
    """
    if I.mul(J) != J.mul(I).scale(-1):
        raise ValueError("structures do not anticommute")
    K = I.mul(J)
    cas = casimir_four_form(rep)
    g = rep._gram_or_none()
    total = AltForm(rep.dim_m, 4)
    for S in (I, J, K):
        w = two_form_of_operator(S, g)
        total.accumulate(w.wedge(w))
    if total.is_zero():
        raise DegenerateForm("structure four-form vanishes")
    c = proportionality(cas.entries, total.entries)
    if c is None:
        raise NotProportional("Casimir form is not a multiple of the "
                              "quaternionic four-form")
    if c >= 0:
        raise NonNegativeC("expected negative constant, got %s" % c)
    r = -ONE / c
    sp1 = {(0, 1): {2: Q(2)}, (1, 2): {0: Q(2)}, (0, 2): {1: Q(-2)}}
    h2 = _extend_algebra(rep.h, 3, sp1, r, ["sp1_i", "sp1_j", "sp1_k"])
    aug = OrthRep(h2, list(rep.rho) + [I, J, K], rep.gram)
    if not casimir_four_form(aug).is_zero():
        raise AssertionError("augmented Casimir form does not vanish")
    return AugmentationResult(c, r, aug, build_candidate(aug))


def central_element(cand, J):
    """a_J = sum_i [e_i, J e_i] over a B_m-orthonormal basis, with mu.

    Verifies centrality, the proportional action a_J v = mu J v with a
    single nonzero exact mu, and the trace identity
    sum_j B_m(a_J e_j, J e_j) = 2 sum_{i,j} |[J e_i, e_j]|_h^2.
    Needs a diagonal B_m (every module this is used for has one).
    """
    rep = cand.rep
    M = rep.dim_m
    gram = rep.gram
    diag = {}
    for (r, c), v in gram.entries.items():
        if r != c:
            raise ValueError("central_element needs diagonal B_m")
        diag[r] = v
    aj = {}
    for i in range(M):
        je = {r: v for r, v in J.cols[i].items()}
        br = cand.bracket_mm({i: ONE}, je)
        w = ONE / diag[i]
        for t, x in br.items():
            cur = aj.get(t)
            cur = w * x if cur is None else cur + w * x
            if cur:
                aj[t] = cur
            else:
                del aj[t]
    for k in range(cand.dim_h):
        if cand.algebra.bracket(aj, {k: ONE}):
            raise NotCentral("a_J does not commute with basis element %d" % k)
    act = Op.zero(M)
    for k, c in aj.items():
        act = act.add(rep.rho[k].scale(c))
    flat_a = {r * M + c: v for (r, c), v in act.items()}
    flat_j = {r * M + c: v for (r, c), v in J.items()}
    mu = proportionality(flat_a, flat_j)
    if mu is None or mu == 0:
        raise NotProportionalToJ("a_J acts as %r" % mu)
    # trace identity, both sides over the orthonormalized basis
    lhs = ZERO
    for j in range(M):
        ajej = act.cols[j]
        jej = J.cols[j]
        s = ZERO
        for t, v in ajej.items():
            w = jej.get(t)
            if w is not None:
                s += v * diag[t] * w
        lhs += s / diag[j]
    rhs = ZERO
    hgram = rep.h.form
    for i in range(M):
        jei = {r: v for r, v in J.cols[i].items()}
        for j in range(M):
            br = cand.bracket_mm(jei, {j: ONE})
            if br:
                rhs += pairing(hgram, br, br) / (diag[i] * diag[j])
    if lhs != 2 * rhs:
        raise AssertionError("trace identity failed")
    return aj, mu


def find_null_pair(rep, tries=None):
    """Nonzero v0, w0 with w0-independent v0 and B_m(v0, a w0) = 0 always.

    Solves the (dim h) x (dim m) kernel system for successive reference
    vectors w0 (basis vectors, then a generic combination); NoSolution
    when every kernel is spanned by w0 itself.
    """
    M = rep.dim_m
    candidates = [{i: ONE} for i in range(M)]
    candidates.append({i: Q(i + 1) for i in range(M)})
    if tries is not None:
        candidates = candidates[:tries]
    grows = {}
    for (r, c), v in rep.gram.entries.items():
        grows.setdefault(r, {})[c] = v
    for w0 in candidates:
        ech = Echelon(M)
        for op in rep.rho:
            img = op.apply(w0)
            row = {}
            for t, v in img.items():
                for c, g in grows.get(t, {}).items():
                    cur = row.get(c)
                    cur = v * g if cur is None else cur + v * g
                    if cur:
                        row[c] = cur
                    else:
                        del row[c]
            if row:
                ech.add_row(row)
        for vec in ech.kernel():
            if proportionality(vec, w0) is None:
                return vec, w0
    raise NoSolution("no null pair for the attempted reference vectors")


def tensor_invariant_table(d1, d2):
    """Bianchi input for a tensor product: the pairing of skew images.

    Basis index i*d2 + j stands for x_i (x) y_j, identified with the map
    x_i -> y_j; the table pairs F(u, v) = u v* - v u* through the
    positive trace pairing <A, B> = tr(A B^T).  Returns (table, dim).
    """
    m = d1 * d2

    def skew(a, b, c, d):
        # F(z_ab, z_cd) = delta_ac (E_bd - E_db) as a d2 x d2 matrix
        if a != c:
            return None
        return (b, d)

    table = {}
    pairs = [(p, q) for p in range(m) for q in range(p + 1, m)]
    for pi, (p, q) in enumerate(pairs):
        a, b = divmod(p, d2)
        c, d = divmod(q, d2)
        F1 = skew(a, b, c, d)
        for (r, s) in pairs[pi:]:
            e, f = divmod(r, d2)
            g, h = divmod(s, d2)
            F2 = skew(e, f, g, h)
            if F1 is None or F2 is None:
                continue
            (b1, d1_) = F1
            (b2, d2_) = F2
            # tr((E_{b1 d1} - E_{d1 b1})(E_{b2 d2} - E_{d2 b2})^T)
            val = 0
            if (b1, d1_) == (b2, d2_):
                val += 1
            if (b1, d1_) == (d2_, b2):
                val -= 1
            if (d1_, b1) == (d2_, b2):
                val += 1
            if (d1_, b1) == (b2, d2_):
                val -= 1
            if val:
                table[((p, q), (r, s))] = Q(val)
    return table, m
