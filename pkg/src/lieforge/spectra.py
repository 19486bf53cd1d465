"""Simultaneous weight-space decomposition of commuting skew operators.

A family of commuting B-skew operators (a Cartan subalgebra acting on a
real representation, or on the algebra itself through ad) decomposes the
space into rotation planes.  All eigenvalues are i*q with q rational for
everything this package constructs, so the decomposition can be done by
exact rational elimination:

  * a piece is first split by the rational eigenvalues -q^2 of H^2;
  * once some H acts with q != 0, J := H/q is a complex structure on the
    piece, and the signed eigenvalue of any later H' is the rational
    eigenvalue of the real operator -J H';
  * orientation convention: the first nonzero coordinate of a recorded
    weight is positive, and each 2m-dimensional piece contributes the
    conjugate pair (w, m), (-w, m).

Eigenvalues are found by probing a fixed candidate grid (|q| <= 4 in
half-integer steps); if the probed eigenspaces do not exhaust a piece
the family is not simultaneously diagonalizable with such eigenvalues
and NotDiagonalizable is raised.
"""

from .exact import Q, ZERO, ONE, Echelon


class NotDiagonalizable(Exception):
    """Operator family is not a rotation family over the probe grid."""


CANDIDATE_MAGNITUDES = [Q(k, 2) for k in range(0, 9)]


def _combine(basis, coeffs):
    out = {}
    for i, c in coeffs.items():
        for t, v in basis[i].items():
            w = out.get(t)
            if w is None:
                out[t] = c * v
            else:
                w = w + c * v
                if w:
                    out[t] = w
                else:
                    del out[t]
    return out


def _split(basis, images, eigenvalues):
    """Split span(basis) into eigenspaces of the map basis[i] -> images[i].

    Returns a list of (eigenvalue, sub-basis); raises NotDiagonalizable
    when the candidate eigenvalues do not exhaust the span.
    """
    n = len(basis)
    pieces = []
    found = 0
    for lam in eigenvalues:
        # kernel over coefficient vectors of sum x_i (img_i - lam b_i)
        rows = {}
        for i in range(n):
            col = dict(images[i])
            if lam:
                for t, v in basis[i].items():
                    w = col.get(t)
                    w = -lam * v if w is None else w - lam * v
                    if w:
                        col[t] = w
                    else:
                        col.pop(t, None)
            for t, v in col.items():
                rows.setdefault(t, {})[i] = v
        ech = Echelon(n)
        for row in rows.values():
            ech.add_row(row)
        ker = ech.kernel()
        if ker:
            sub = [_combine(basis, x) for x in ker]
            pieces.append((lam, sub))
            found += len(ker)
            if found == n:
                break
    if found != n:
        raise NotDiagonalizable(
            "eigenspaces cover %d of %d dimensions" % (found, n))
    return pieces


def rotation_weights(ops, dim, magnitudes=None):
    """Joint weights of commuting skew operators on the standard space.

    Returns (zero_basis, weights) where zero_basis spans the common
    kernel and weights is a list of (tuple of signed rationals, mult);
    conjugate weights both appear, so total multiplicity counts real
    dimensions in pairs.
    """
    mags = magnitudes if magnitudes is not None else CANDIDATE_MAGNITUDES
    nonzero = [m for m in mags if m]
    start = [{i: ONE} for i in range(dim)]
    pieces = [((), None, start)]
    for H in ops:
        new = []
        for prefix, J, basis in pieces:
            if J is None:
                images = [H.apply(H.apply(b)) for b in basis]
                for lam, sub in _split(basis, images,
                                       [-(q * q) for q in mags]):
                    if lam == 0:
                        new.append((prefix + (ZERO,), None, sub))
                    else:
                        q = next(m for m in nonzero if -(m * m) == lam)
                        new.append((prefix + (q,), H.scale(ONE / q), sub))
            else:
                # signed coordinate: eigenvalue of -J H on the piece
                images = []
                for b in basis:
                    img = H.apply(b)
                    img = J.apply(img)
                    images.append({t: -v for t, v in img.items()})
                cands = [ZERO]
                for m in nonzero:
                    cands.append(m)
                    cands.append(-m)
                for lam, sub in _split(basis, images, cands):
                    new.append((prefix + (lam,), J, sub))
        pieces = new
    zero_basis = []
    weights = []
    for prefix, J, basis in pieces:
        if J is None:
            zero_basis.extend(basis)
            continue
        if len(basis) % 2:
            raise NotDiagonalizable("odd-dimensional rotation piece")
        mult = len(basis) // 2
        weights.append((prefix, mult))
        weights.append((tuple(-c for c in prefix), mult))
    return zero_basis, weights
