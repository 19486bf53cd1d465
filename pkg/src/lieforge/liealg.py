"""Lie algebras as exact structure constants with an invariant form.

The bracket table stores [b_i, b_j] for i < j only (antisymmetry is a
storage convention, not a runtime check).  The invariant form B is kept
as a symmetric SparseMatrix; ad-invariance of B is equivalent to every
ad_x being B-skew, which is how the verifier checks it.
"""

import random

from .exact import (Q, ZERO, ONE, SparseMatrix, SpanSolver, Echelon,
                    ldl_signature, qstr, qparse)
from .ops import Op
from .spectra import rotation_weights, NotDiagonalizable


class LieFileError(Exception):
    """Malformed structure-constant file; carries the offending line."""

    def __init__(self, message, line_no):
        super().__init__("line %d: %s" % (line_no, message))
        self.line_no = line_no


class LieAlgebra:
    __slots__ = ("dim", "labels", "table", "form", "verified")

    def __init__(self, dim, table, form, labels=None):
        self.dim = dim
        self.labels = list(labels) if labels else \
            ["b%d" % i for i in range(dim)]
        if len(self.labels) != dim:
            raise ValueError("label count != dim")
        self.table = {}
        for (i, j), row in table.items():
            if not i < j < dim:
                raise ValueError("bad bracket key (%d,%d)" % (i, j))
            row = {k: Q(v) for k, v in row.items() if Q(v)}
            if row:
                self.table[(i, j)] = row
        self.form = form
        self.verified = False

    def __repr__(self):
        return "LieAlgebra(dim=%d, nnz=%d)" % (
            self.dim, sum(len(r) for r in self.table.values()))

    def bracket_basis(self, i, j):
        """[b_i, b_j] as a sparse dict."""
        if i == j:
            return {}
        if i < j:
            return self.table.get((i, j), {})
        row = self.table.get((j, i))
        if not row:
            return {}
        return {k: -v for k, v in row.items()}

    def bracket(self, u, v):
        """[u, v] for sparse vectors."""
        out = {}
        for i, a in u.items():
            for j, b in v.items():
                if i == j:
                    continue
                c = a * b
                for k, w in self.bracket_basis(i, j).items():
                    cur = out.get(k)
                    cur = c * w if cur is None else cur + c * w
                    if cur:
                        out[k] = cur
                    else:
                        del out[k]
        return out

    def ad(self, i):
        """ad_{b_i} as an operator."""
        return Op(self.dim, [self.bracket_basis(i, j)
                             for j in range(self.dim)])

    def ad_vector(self, vec):
        op = Op.zero(self.dim)
        for i, c in vec.items():
            op = op.add(self.ad(i).scale(c))
        return op

    def jacobi_defect_basis(self, i, j, k):
        """[[b_i,b_j],b_k] + [[b_j,b_k],b_i] + [[b_k,b_i],b_j]."""
        out = {}
        for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
            for t, w in self.bracket_basis(a, b).items():
                if t == c:
                    continue
                for s, x in self.bracket_basis(t, c).items():
                    cur = out.get(s)
                    cur = w * x if cur is None else cur + w * x
                    if cur:
                        out[s] = cur
                    else:
                        del out[s]
        return out


class VerificationReport:
    __slots__ = ("jacobi_checked", "jacobi_ok", "jacobi_witness",
                 "invariance_ok", "killing_signature", "rank", "root_count")

    def __init__(self):
        self.jacobi_checked = None
        self.jacobi_ok = None
        self.jacobi_witness = None
        self.invariance_ok = None
        self.killing_signature = None
        self.rank = None
        self.root_count = None

    def ok(self):
        return bool(self.jacobi_ok and self.invariance_ok)

    def as_dict(self):
        return {
            "jacobi_checked": self.jacobi_checked,
            "jacobi_ok": self.jacobi_ok,
            "jacobi_witness": self.jacobi_witness,
            "invariance_ok": self.invariance_ok,
            "killing_signature": self.killing_signature,
            "rank": self.rank,
            "root_count": self.root_count,
        }


def _triples_full(dim):
    for i in range(dim):
        for j in range(i + 1, dim):
            for k in range(j + 1, dim):
                yield (i, j, k)


def _triples_sampled(dim, count, seed):
    rng = random.Random(seed)
    for _ in range(count):
        i, j, k = rng.sample(range(dim), 3)
        yield tuple(sorted((i, j, k)))


_SCAN_ALGEBRA = None


def _jacobi_chunk(bounds):
    lo, hi = bounds
    L = _SCAN_ALGEBRA
    for i in range(lo, hi):
        for j in range(i + 1, L.dim):
            for k in range(j + 1, L.dim):
                if L.jacobi_defect_basis(i, j, k):
                    return (i, j, k)
    return None


def _jacobi_scan_parallel(L, jobs):
    import multiprocessing
    global _SCAN_ALGEBRA
    _SCAN_ALGEBRA = L
    step = max(1, L.dim // (4 * jobs))
    chunks = [(lo, min(lo + step, L.dim)) for lo in range(0, L.dim, step)]
    try:
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(jobs) as pool:
            results = pool.map(_jacobi_chunk, chunks)
    finally:
        _SCAN_ALGEBRA = None
    for wit in results:                 # chunk order keeps this deterministic
        if wit is not None:
            return wit
    return None


def verify_structure(L, mode="full", samples=10000, seed=0,
                     cartan_seed=None, with_killing=True, jobs=1):
    """Check the algebra axioms exactly; failures are reported, not raised.

    mode 'full' scans all C(dim, 3) basis triples; 'sampled' draws the
    stated number of triples from a seeded generator.  Invariance of the
    form is always checked exactly (every ad_x must be B-skew).  jobs > 1
    splits the full scan over processes; the outcome is independent of
    the job count.
    """
    rep = VerificationReport()
    if mode == "full":
        rep.jacobi_checked = "full"
        if jobs > 1:
            rep.jacobi_witness = _jacobi_scan_parallel(L, jobs)
            rep.jacobi_ok = rep.jacobi_witness is None
        else:
            rep.jacobi_ok = True
            for (i, j, k) in _triples_full(L.dim):
                if L.jacobi_defect_basis(i, j, k):
                    rep.jacobi_ok = False
                    rep.jacobi_witness = (i, j, k)
                    break
    elif mode == "sampled":
        rep.jacobi_checked = "sampled(%d)" % samples
        rep.jacobi_ok = True
        for (i, j, k) in _triples_sampled(L.dim, samples, seed):
            if L.jacobi_defect_basis(i, j, k):
                rep.jacobi_ok = False
                rep.jacobi_witness = (i, j, k)
                break
    else:
        raise ValueError("mode must be 'full' or 'sampled'")
    rep.invariance_ok = _form_invariant(L)
    if with_killing:
        K = killing_form(L)
        rep.killing_signature = ldl_signature(K)
    if cartan_seed is not None:
        rank, roots = cartan_and_roots(L, cartan_seed)
        rep.rank = rank
        rep.root_count = len(roots)
    return rep


def _form_invariant(L):
    rows = {}
    for (r, c), v in L.form.entries.items():
        rows.setdefault(r, {})[c] = v
    for i in range(L.dim):
        # N = B ad_i must be antisymmetric
        ent = {}
        for j in range(L.dim):
            for t, v in L.bracket_basis(i, j).items():
                for c, g in rows.get(t, {}).items():
                    key = (c, j)
                    ent[key] = ent.get(key, ZERO) + g * v
        for (r, c), v in ent.items():
            if v and ent.get((c, r), ZERO) != -v:
                return False
    return True


def killing_form(L):
    """K(a, b) = trace(ad_a ad_b), exact."""
    dim = L.dim
    cols = []
    nonzero = []
    for i in range(dim):
        ci = [L.bracket_basis(i, j) for j in range(dim)]
        cols.append(ci)
        nonzero.append([(k, row) for k, row in enumerate(ci) if row])
    ent = {}
    for i in range(dim):
        ci = cols[i]
        for j in range(i, dim):
            s = ZERO
            for k, row in nonzero[j]:
                cik = ci
                for t, c2 in row.items():
                    c1 = cik[t].get(k)
                    if c1 is not None:
                        s += c1 * c2
            if s:
                ent[(i, j)] = s
                if i != j:
                    ent[(j, i)] = s
    return SparseMatrix(dim, dim, ent)


def cartan_and_roots(L, cartan_seed):
    """Rank and root multiset from an abelian diagonalizable seed.

    The seed indices must span a Cartan subalgebra whose ad-action has no
    zero weight outside itself; otherwise NotDiagonalizable is raised.
    Roots are tuples of exact eigenvalue coefficients in the basis dual
    to the seed, each repeated with its multiplicity.
    """
    for a in cartan_seed:
        for b in cartan_seed:
            if L.bracket_basis(a, b):
                raise NotDiagonalizable("seed is not abelian")
    ops = [L.ad(i) for i in cartan_seed]
    zero_basis, weights = rotation_weights(ops, L.dim)
    if len(zero_basis) != len(cartan_seed):
        raise NotDiagonalizable(
            "zero-weight space has dimension %d, seed has %d"
            % (len(zero_basis), len(cartan_seed)))
    roots = []
    for w, mult in weights:
        roots.extend([w] * mult)
    return len(cartan_seed), roots


def root_pairing_integral(roots, gram_inv):
    """Check q(a, b) = 2<a,b>/<b,b> integral with |q| <= 3 for all pairs.

    gram_inv is the inverse Gram of the seed elements under the algebra
    form (the natural metric on the dual of the Cartan).
    """
    def ip(a, b):
        s = ZERO
        for r in range(len(a)):
            if not a[r]:
                continue
            for c in range(len(b)):
                if b[c]:
                    g = gram_inv.entries.get((r, c))
                    if g is not None:
                        s += a[r] * b[c] * g
        return s
    norms = {}
    for b in set(roots):
        norms[b] = ip(b, b)
    for a in set(roots):
        for b in norms:
            q = 2 * ip(a, b) / norms[b]
            if q.denominator != 1 or abs(q) > 3:
                return False, (a, b, q)
    return True, None


def from_matrices(mats, labels=None, form=None):
    """LieAlgebra from matrices closing under commutator.

    Structure constants are solved exactly in the span of the given
    matrices; raises if the commutators leave the span.  The default
    form is B(a, b) = -trace(ab) on the given basis.
    """
    d = mats[0].n
    dim = len(mats)
    solver = SpanSolver(d * d)
    flats = []
    for m in mats:
        flat = {r * d + c: v for (r, c), v in m.items()}
        flats.append(flat)
        solver.add(flat)
    table = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            comm = mats[i].commutator(mats[j])
            flat = {r * d + c: v for (r, c), v in comm.items()}
            coords = solver.solve(flat)
            if coords is None:
                raise ValueError("matrices do not close under bracket")
            if coords:
                table[(i, j)] = coords
    if form is None:
        ent = {}
        for i in range(dim):
            for j in range(i, dim):
                s = -mats[i].mul(mats[j]).trace()
                if s:
                    ent[(i, j)] = s
                    if i != j:
                        ent[(j, i)] = s
        form = SparseMatrix(dim, dim, ent)
    return LieAlgebra(dim, table, form, labels)


# ---------------------------------------------------------------------------
# structure-constant files (lie-sc v1), bit-exact round trips
# ---------------------------------------------------------------------------

def write_lie_sc(L, path):
    lines = ["lie-sc v1 dim=%d" % L.dim,
             "labels %s" % ",".join(L.labels)]
    consts = []
    for (i, j), row in L.table.items():
        for k, v in row.items():
            consts.append((i, j, k, v))
    consts.sort(key=lambda t: (t[0], t[1], t[2]))
    for (i, j, k, v) in consts:
        lines.append("%d %d %d %s" % (i, j, k, qstr(v)))
    forms = []
    for (i, j), v in L.form.entries.items():
        if i <= j:
            forms.append((i, j, v))
    forms.sort(key=lambda t: (t[0], t[1]))
    for (i, j, v) in forms:
        lines.append("B %d %d %s" % (i, j, qstr(v)))
    data = "\n".join(lines) + "\n"
    with open(path, "w") as fh:
        fh.write(data)
    return data


def read_lie_sc(path):
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise LieFileError("empty file", 1)
    head = lines[0].split()
    if len(head) != 3 or head[0] != "lie-sc" or head[1] != "v1" \
            or not head[2].startswith("dim="):
        raise LieFileError("bad header %r" % lines[0], 1)
    try:
        dim = int(head[2][4:])
    except ValueError:
        raise LieFileError("bad dimension %r" % head[2], 1)
    if len(lines) < 2 or not lines[1].startswith("labels "):
        raise LieFileError("missing labels line", 2)
    labels = lines[1][len("labels "):].split(",")
    if len(labels) != dim:
        raise LieFileError("expected %d labels, got %d"
                           % (dim, len(labels)), 2)
    table = {}
    form_ent = {}
    for no, line in enumerate(lines[2:], start=3):
        if not line.strip():
            continue
        parts = line.split()
        try:
            if parts[0] == "B":
                if len(parts) != 4:
                    raise ValueError
                i, j = int(parts[1]), int(parts[2])
                v = qparse(parts[3])
                if not (0 <= i <= j < dim):
                    raise ValueError
                form_ent[(i, j)] = v
                if i != j:
                    form_ent[(j, i)] = v
            else:
                if len(parts) != 4:
                    raise ValueError
                i, j, k = int(parts[0]), int(parts[1]), int(parts[2])
                v = qparse(parts[3])
                if not (0 <= i < j < dim and 0 <= k < dim):
                    raise ValueError
                table.setdefault((i, j), {})[k] = v
        except (ValueError, ZeroDivisionError):
            raise LieFileError("cannot parse %r" % line, no)
    form = SparseMatrix(dim, dim, form_ent)
    return LieAlgebra(dim, table, form, labels)
