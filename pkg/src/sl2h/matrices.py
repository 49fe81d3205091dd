"""2x2 quaternionic matrices and their quaternionic determinant.

The determinant of M = [[a, b], [c, d]] is the non-negative real
|ad - a c a^{-1} b| (the absolute Dieudonne determinant); matrices with
determinant 1 form the group acting on the boundary of hyperbolic 5-space.
An explicit inverse exists whenever det M > 0:

    M^{-1} = [[ l11^{-1} d, -l12^{-1} b ],
              [ -l21^{-1} c, l22^{-1} a ]]

with l11 = da - d b d^{-1} c, l12 = b d b^{-1} a - bc,
l21 = c a c^{-1} d - cb, l22 = ad - a c a^{-1} b.  The l-factor form needs
all four entries nonzero; degenerate entries are handled through the
complex embedding below.

Each quaternion q = za + zb j (za, zb complex) embeds as the 2x2 complex
block [[za, zb], [-conj(zb), conj(za)]], giving a ring homomorphism from
2x2 quaternionic matrices to 4x4 complex matrices.  The embedding serves
as an independent oracle: |det_C(embed M)| = (det M)^2, and the
eigenvalues of embed(M) come in conjugate pairs {lam, conj(lam), mu,
conj(mu)} whose half with non-negative imaginary part represents the
right-eigenvalue classes of M.
"""

import cmath
import math

import numpy as np

from .quaternions import Quaternion, _coerce

TOL_DET = 1e-9
TOL_RANK = 1e-8
# entries below this norm are treated as exactly zero when choosing the
# inverse route; well inside float range so l-factor inverses stay finite
ZERO_ENTRY = 1e-150
# moduli closer than this are a tie when ordering eigenvalue representatives
EIGEN_TIE = 1e-9


class SingularMatrixError(ValueError):
    pass


class MatH2:
    """Quaternionic matrix [[a, b], [c, d]], immutable."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        object.__setattr__(self, "a", _coerce(a))
        object.__setattr__(self, "b", _coerce(b))
        object.__setattr__(self, "c", _coerce(c))
        object.__setattr__(self, "d", _coerce(d))

    def __setattr__(self, name, value):
        raise AttributeError("MatH2 is immutable")

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    @classmethod
    def diagonal(cls, top, bottom):
        return cls(top, 0, 0, bottom)

    @classmethod
    def from_complex_diag(cls, lam, mu):
        """diag(lam, mu) with complex entries in the (1, i)-plane."""
        return cls(Quaternion.from_complex(lam), 0, 0, Quaternion.from_complex(mu))

    @classmethod
    def from_json(cls, data):
        (qa, qb), (qc, qd) = data
        return cls(Quaternion.from_json(qa), Quaternion.from_json(qb),
                   Quaternion.from_json(qc), Quaternion.from_json(qd))

    def to_json(self):
        return [[self.a.to_json(), self.b.to_json()],
                [self.c.to_json(), self.d.to_json()]]

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __matmul__(self, other):
        return MatH2(self.a * other.a + self.b * other.c,
                     self.a * other.b + self.b * other.d,
                     self.c * other.a + self.d * other.c,
                     self.c * other.b + self.d * other.d)

    def __neg__(self):
        return MatH2(-self.a, -self.b, -self.c, -self.d)

    def scale(self, s):
        """Entrywise multiplication by a real scalar."""
        return MatH2(self.a * s, self.b * s, self.c * s, self.d * s)

    def max_entry_norm(self):
        return max(q.norm() for q in self.entries())

    def distance_to(self, other):
        return max((p - q).norm() for p, q in zip(self.entries(), other.entries()))

    def det(self):
        """Non-negative quaternionic determinant |ad - a c a^{-1} b|.

        Falls back to |b||c| when a = 0 (a row swap makes the matrix
        triangular and the absolute determinant is swap-invariant).
        """
        if self.a.norm() <= ZERO_ENTRY:
            return self.b.norm() * self.c.norm()
        a = self.a
        return (a * self.d - a * self.c * a.inverse() * self.b).norm()

    def normalized(self, tol=TOL_DET):
        """Rescale by det^{-1/2} to determinant 1; raises when singular."""
        d = self.det()
        if d <= tol:
            raise SingularMatrixError("cannot normalize a singular matrix")
        return self.scale(1.0 / math.sqrt(d))

    def inverse(self, tol=TOL_DET):
        """Inverse via the l-factor formula, or the embedding when an
        entry vanishes."""
        if self.det() <= tol:
            raise SingularMatrixError("singular matrix")
        a, b, c, d = self.entries()
        if min(q.norm() for q in self.entries()) <= ZERO_ENTRY:
            return from_embedding(np.linalg.inv(embed(self)))
        l11 = d * a - d * b * d.inverse() * c
        l12 = b * d * b.inverse() * a - b * c
        l21 = c * a * c.inverse() * d - c * b
        l22 = a * d - a * c * a.inverse() * b
        return MatH2(l11.inverse() * d, -(l12.inverse() * b),
                     -(l21.inverse() * c), l22.inverse() * a)

    def __repr__(self):
        return "MatH2({!r}, {!r}, {!r}, {!r})".format(self.a, self.b, self.c, self.d)


def _block(q):
    return np.array([[q.za, q.zb], [-q.zb.conjugate(), q.za.conjugate()]],
                    dtype=complex)


def embed(m):
    """4x4 complex embedding; a ring homomorphism."""
    e = np.empty((4, 4), dtype=complex)
    e[0:2, 0:2] = _block(m.a)
    e[0:2, 2:4] = _block(m.b)
    e[2:4, 0:2] = _block(m.c)
    e[2:4, 2:4] = _block(m.d)
    return e


def _unblock(block):
    # average the two redundant copies to strip rounding asymmetry
    za = 0.5 * (block[0, 0] + block[1, 1].conjugate())
    zb = 0.5 * (block[0, 1] - block[1, 0].conjugate())
    return Quaternion(za.real, za.imag, zb.real, zb.imag)


def from_embedding(e):
    """Inverse of embed for 4x4 matrices (approximately) in its image."""
    return MatH2(_unblock(e[0:2, 0:2]), _unblock(e[0:2, 2:4]),
                 _unblock(e[2:4, 0:2]), _unblock(e[2:4, 2:4]))


def _pair_conjugates(values):
    """Group 4 eigenvalues into conjugate pairs, returning one
    representative with non-negative imaginary part per pair."""
    pool = list(values)
    reps = []
    while pool:
        e = max(pool, key=lambda v: abs(v.imag))
        pool.remove(e)
        partner = min(pool, key=lambda v: abs(v - e.conjugate()))
        pool.remove(partner)
        rep = 0.5 * (e + partner.conjugate())
        if rep.imag < 0:
            rep = rep.conjugate()
        reps.append(rep)
    return reps


def eigen_representatives(m, tol=TOL_DET, tol_rank=TOL_RANK):
    """Eigenvalue representatives (lam, mu, diagonalizable) of m.

    lam and mu are the half of the embedding's spectrum with non-negative
    imaginary part, ordered by modulus descending with ties (within
    EIGEN_TIE) broken by argument ascending.  diagonalizable is False when
    some eigenvalue's geometric multiplicity falls short of its algebraic
    one, detected by a rank test on the embedding.
    """
    if m.det() <= tol:
        raise SingularMatrixError("eigen data of a singular matrix")
    e = embed(m)
    values = np.linalg.eigvals(e)
    lam, mu = _pair_conjugates(values)
    if abs(abs(lam) - abs(mu)) > EIGEN_TIE:
        if abs(lam) < abs(mu):
            lam, mu = mu, lam
    else:
        if abs(cmath.phase(lam)) > abs(cmath.phase(mu)):
            lam, mu = mu, lam
    diagonalizable = _is_diagonalizable(e, values, tol_rank)
    return lam, mu, diagonalizable


def _is_diagonalizable(e, values, tol_rank):
    scale = max(1.0, float(np.abs(values).max()))
    clusters = []
    for v in sorted(values, key=lambda v: (v.real, v.imag)):
        for cluster in clusters:
            if abs(v - cluster[0]) <= 1e-6 * scale:
                cluster.append(v)
                break
        else:
            clusters.append([v])
    for cluster in clusters:
        if len(cluster) == 1:
            continue
        center = sum(cluster) / len(cluster)
        sv = np.linalg.svd(e - center * np.eye(4), compute_uv=False)
        rank = int(np.sum(sv > tol_rank * max(1.0, sv[0])))
        if rank > 4 - len(cluster):
            return False
    return True
