"""Mobius action on the extended quaternionic line and isometry classification.

An invertible quaternionic matrix [[a, b], [c, d]] acts on H-hat = H u {inf}
(the boundary 4-sphere of hyperbolic 5-space) by Z -> (aZ + b)(cZ + d)^{-1}.
Boundary points compare chordally: finite points of norm above 1/tol_fix are
identified with inf.

Classification of an SL-normalized matrix uses its eigenvalue representatives
(lam, mu).  With at = argument(lam) + argument(mu) (argument trace) and
abt = |lam| + |mu| (absolute trace):

    hyperbolic   abt > 2, equivalently both moduli differ from 1
    parabolic    unit moduli, embedding non-diagonalizable
    elliptic     unit moduli, diagonalizable; 2-rotatory when lam is not
                 similar to mu, 1-rotatory otherwise
    identity     the matrix is +-I

tau = 2 log|lam| (larger-modulus representative) is the translation length
parameter of a hyperbolic element; 2 cosh(tau) = |lam|^2 + |lam|^{-2}.

Inputs within tol_cls of the hyperbolic/non-hyperbolic boundary that are not
resolved by the unit-moduli test raise AmbiguousClassificationError instead
of guessing; certificates downstream must not rest on knife-edge kinds.
"""

import math
from dataclasses import dataclass

import numpy as np

from .matrices import MatH2, SingularMatrixError, TOL_DET, eigen_representatives, embed
from .quaternions import Quaternion, argument, is_similar

TOL_FIX = 1e-8
TOL_CLS = 1e-6

KINDS = ("identity", "parabolic", "elliptic_1rot", "elliptic_2rot", "hyperbolic")


class BoundaryPoint:
    """A point of H u {inf}; value is a Quaternion or None for inf."""

    __slots__ = ("value",)

    def __init__(self, value=None):
        if value is not None and not isinstance(value, Quaternion):
            value = Quaternion(value.real, value.imag) if isinstance(value, complex) \
                else Quaternion(float(value))
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("BoundaryPoint is immutable")

    @classmethod
    def infinity(cls):
        return cls(None)

    @property
    def is_infinity(self):
        return self.value is None

    def effectively_infinite(self, tol=TOL_FIX):
        if self.value is None:
            return True
        return tol > 0.0 and self.value.norm() > 1.0 / tol

    def distance_to(self, other, tol=TOL_FIX):
        """Chordal-flavoured distance: 0 between two effectively infinite
        points, inf between an infinite and a finite point, euclidean
        otherwise."""
        self_inf = self.effectively_infinite(tol)
        other_inf = other.effectively_infinite(tol)
        if self_inf and other_inf:
            return 0.0
        if self_inf or other_inf:
            return math.inf
        return self.value.distance_to(other.value)

    def close_to(self, other, tol=TOL_FIX):
        return self.distance_to(other, tol) <= tol

    @classmethod
    def from_json(cls, data):
        if isinstance(data, dict):
            if data.get("inf") is True:
                return cls.infinity()
            raise ValueError("boundary point object must be {'inf': true}")
        return cls(Quaternion.from_json(data))

    def to_json(self):
        if self.is_infinity:
            return {"inf": True}
        return self.value.to_json()

    def __repr__(self):
        if self.is_infinity:
            return "BoundaryPoint(inf)"
        return "BoundaryPoint({!r})".format(self.value)


INFINITY = BoundaryPoint.infinity()

# denominators below this norm count as exactly zero in the action
_DENOM_ZERO = 1e-150


def apply_mobius(m, z, tol_det=TOL_DET):
    """Z -> (aZ + b)(cZ + d)^{-1}; inf -> a c^{-1} (or inf when c = 0)."""
    if m.det() <= tol_det:
        raise SingularMatrixError("singular matrix does not act")
    if z.is_infinity:
        if m.c.norm() <= _DENOM_ZERO:
            return INFINITY
        return BoundaryPoint(m.a * m.c.inverse())
    q = z.value
    denom = m.c * q + m.d
    if denom.norm() <= _DENOM_ZERO:
        return INFINITY
    return BoundaryPoint((m.a * q + m.b) * denom.inverse())


def _is_central(m, tol):
    ident = MatH2.identity()
    return m.distance_to(ident) <= tol or m.distance_to(-ident) <= tol


def fixed_points(m, tol_fix=TOL_FIX, tol_det=TOL_DET):
    """Boundary fixed points of m, from eigenvectors of the embedding.

    Each eigenvector (v1, v2, v3, v4) of embed(m) reassembles to a
    quaternion column (V1, V2) (first columns of the entry blocks), and
    V1 V2^{-1} is fixed by the action.  Duplicates within tol_fix are
    merged and every returned point is re-verified against the action.
    """
    if m.det() <= tol_det:
        raise SingularMatrixError("singular matrix has no boundary action")
    if _is_central(m, tol_fix):
        raise ValueError("no isolated fixed points")
    _, vectors = np.linalg.eig(embed(m))
    points = []
    for k in range(4):
        v = vectors[:, k]
        v1 = Quaternion(v[0].real, v[0].imag, -v[1].real, v[1].imag)
        v2 = Quaternion(v[2].real, v[2].imag, -v[3].real, v[3].imag)
        if v2.norm() <= tol_fix:
            p = INFINITY
        else:
            p = BoundaryPoint(v1 * v2.inverse())
        if apply_mobius(m, p).distance_to(p, tol_fix) > tol_fix:
            continue
        if not any(p.close_to(seen, tol_fix) for seen in points):
            points.append(p)
    return points


@dataclass(frozen=True)
class Classification:
    kind: str
    lam: complex
    mu: complex
    at: float
    abt: float
    tau: float

    def to_json(self):
        return {
            "kind": self.kind,
            "lambda": [self.lam.real, self.lam.imag],
            "mu": [self.mu.real, self.mu.imag],
            "at": self.at,
            "abt": self.abt,
            "tau": self.tau,
        }


class AmbiguousClassificationError(ValueError):
    """Raised inside the tol_cls band around a classification boundary."""

    def __init__(self, abt_margin, modulus_margin):
        self.abt_margin = abt_margin
        self.modulus_margin = modulus_margin
        super().__init__(
            "ambiguous classification: |abt - 2| = {:.3e}, "
            "max modulus deviation = {:.3e}".format(abt_margin, modulus_margin))


def _complex_argument(c):
    return argument(Quaternion.from_complex(c))


def classify(m, tol_cls=TOL_CLS, tol_det=TOL_DET):
    det = m.det()
    if abs(det - 1.0) > tol_det:
        raise ValueError("not SL-normalized: det = {!r}".format(det))
    lam, mu, diagonalizable = eigen_representatives(m)
    at = _complex_argument(lam) + _complex_argument(mu)
    abt = abs(lam) + abs(mu)
    tau = 2.0 * math.log(max(abs(lam), abs(mu)))
    if _is_central(m, tol_cls):
        kind = "identity"
    elif abt > 2.0 + tol_cls:
        kind = "hyperbolic"
    else:
        unit_moduli = (abs(abs(lam) - 1.0) <= tol_cls
                       and abs(abs(mu) - 1.0) <= tol_cls)
        if not unit_moduli:
            # abt within the band of 2 but moduli resolvably off 1: a
            # knife-edge hyperbolic candidate we refuse to name
            raise AmbiguousClassificationError(
                abs(abt - 2.0),
                max(abs(abs(lam) - 1.0), abs(abs(mu) - 1.0)))
        if not diagonalizable:
            kind = "parabolic"
        else:
            similar = is_similar(Quaternion.from_complex(lam),
                                 Quaternion.from_complex(mu), tol=tol_cls)
            kind = "elliptic_1rot" if similar else "elliptic_2rot"
    return Classification(kind=kind, lam=lam, mu=mu, at=at, abt=abt, tau=tau)


def conjugate(m, p):
    """P M P^{-1}; callers supply SL-normalized inputs."""
    return p @ m @ p.inverse()
