"""Jorgensen-type inequality certificates for pairs in SL(2,H).

Each test evaluates a necessary condition for a two-generator group to be
discrete and non-elementary.  A `violated` verdict therefore certifies the
negative: the pair generates a group that is NOT both discrete and
non-elementary.  `satisfied` carries no information in the other direction.

Tests:
  jorgensen_general             {(Re lam - Re mu)^2 + (|Im lam| + |Im mu|)^2}
                                  (1 + |bc|) >= 1, for diagonal T with
                                  eigenvalue classes lam not similar to mu
  jorgensen_elliptic_hyperbolic 2(cosh tau - cos(alpha + beta))(1 + |bc|) >= 1
  shimizu_translation           |c| |mu| >= 1 for T = [[1, mu], [0, 1]]
  testmap_elliptic / _hyperbolic / _parabolic
                                admissibility of a test map f: 0 < at < pi/3,
                                (abt^2 - 3)/2 < cos(at), or unipotent with
                                |mu| <= 1, by dynamical kind

Strict inequalities cannot be certified at the boundary in floating point:
values within tol_cert of the threshold come back `satisfied` with
at_boundary set, never `violated`.
"""

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .matrices import MatH2, eigen_representatives, embed
from .mobius import classify, conjugate
from .quaternions import Quaternion, _coerce, argument, is_similar

TOL_CERT = 1e-10

TEST_NAMES = (
    "jorgensen_general",
    "jorgensen_elliptic_hyperbolic",
    "shimizu_translation",
    "testmap_elliptic",
    "testmap_hyperbolic",
    "testmap_parabolic",
)


@dataclass(frozen=True)
class Certificate:
    test_name: str
    verdict: str
    lhs: Optional[float]
    threshold: Optional[float]
    at_boundary: bool = False
    inputs: dict = field(default_factory=dict)
    reason: Optional[str] = None

    @property
    def margin(self):
        if self.lhs is None:
            return None
        return abs(self.lhs - self.threshold)

    @property
    def violated(self):
        return self.verdict == "violated"

    def to_json(self):
        data = {
            "test": self.test_name,
            "verdict": self.verdict,
            "lhs": self.lhs,
            "threshold": self.threshold,
            "margin": self.margin,
            "at_boundary": self.at_boundary,
            "inputs": self.inputs,
        }
        if self.reason is not None:
            data["reason"] = self.reason
        return data


def _certify(test_name, lhs, threshold, inputs, tol_cert=TOL_CERT):
    if lhs < threshold - tol_cert:
        verdict, boundary = "violated", False
    else:
        verdict = "satisfied"
        boundary = abs(lhs - threshold) <= tol_cert
    return Certificate(test_name=test_name, verdict=verdict, lhs=lhs,
                       threshold=threshold, at_boundary=boundary, inputs=inputs)


def _inapplicable(test_name, reason, inputs):
    return Certificate(test_name=test_name, verdict="inapplicable", lhs=None,
                       threshold=None, inputs=inputs, reason=reason)


def _complex_pair(c):
    return [c.real, c.imag]


def jorgensen_general(t_lambda, t_mu, s=None, bc_norm=None, tol_cert=TOL_CERT):
    """Certificate for {(Re lam - Re mu)^2 + (|Im lam| + |Im mu|)^2}(1+|bc|) >= 1.

    t_lambda, t_mu are the eigenvalue representatives of the diagonal
    generator; |bc| is read off S's off-diagonal entries when S is given,
    or passed directly as bc_norm.
    """
    t_lambda = complex(t_lambda)
    t_mu = complex(t_mu)
    if s is not None:
        bc_norm = s.b.norm() * s.c.norm()
    elif bc_norm is None:
        raise ValueError("supply either S or bc_norm")
    inputs = {"lambda": _complex_pair(t_lambda), "mu": _complex_pair(t_mu),
              "bc_norm": bc_norm}
    if s is not None:
        inputs["S"] = s.to_json()
    if is_similar(Quaternion.from_complex(t_lambda), Quaternion.from_complex(t_mu)):
        return _inapplicable("jorgensen_general",
                             "diagonal part is 1-rotatory or repeated", inputs)
    trace_factor = ((t_lambda.real - t_mu.real) ** 2
                    + (abs(t_lambda.imag) + abs(t_mu.imag)) ** 2)
    lhs = trace_factor * (1.0 + bc_norm)
    return _certify("jorgensen_general", lhs, 1.0, inputs, tol_cert)


def _diagonalizing_frame(t, lam, mu):
    """A matrix Q with Q^{-1} T Q diagonal, from eigenvectors of embed(T).

    The frame is unique only up to a right diagonal factor, but |bc| of a
    conjugated matrix is invariant under exactly that freedom, so any
    choice gives the same certificate.
    """
    values, vectors = np.linalg.eig(embed(t))
    def column_for(target):
        k = int(np.argmin(np.abs(values - target)))
        v = vectors[:, k]
        v1 = Quaternion(v[0].real, v[0].imag, -v[1].real, v[1].imag)
        v2 = Quaternion(v[2].real, v[2].imag, -v[3].real, v[3].imag)
        return v1, v2
    top_l, bot_l = column_for(lam)
    top_m, bot_m = column_for(mu)
    return MatH2(top_l, top_m, bot_l, bot_m)


def jorgensen_elliptic_hyperbolic(s, t, tol_cert=TOL_CERT):
    """Certificate for 2(cosh tau - cos(alpha + beta))(1 + |bc|) >= 1.

    alpha, beta, tau come from T's eigenvalue representatives; when T is
    not already diagonal, both matrices are conjugated by a diagonalizing
    frame of T before |bc| is read off S.
    """
    inputs = {"S": s.to_json(), "T": t.to_json()}
    lam, mu, diagonalizable = eigen_representatives(t)
    if is_similar(Quaternion.from_complex(lam), Quaternion.from_complex(mu)):
        return _inapplicable("jorgensen_elliptic_hyperbolic",
                             "diagonal part is 1-rotatory or repeated", inputs)
    if not diagonalizable:
        return _inapplicable("jorgensen_elliptic_hyperbolic",
                             "T is not diagonalizable", inputs)
    scale = max(t.b.norm(), t.c.norm())
    if scale > 1e-13 * max(1.0, t.max_entry_norm()):
        frame = _diagonalizing_frame(t, lam, mu)
        s = conjugate(s, frame.inverse())
    alpha = argument(Quaternion.from_complex(lam))
    beta = argument(Quaternion.from_complex(mu))
    tau = 2.0 * math.log(max(abs(lam), abs(mu)))
    bc_norm = s.b.norm() * s.c.norm()
    inputs["bc_norm"] = bc_norm
    lhs = 2.0 * (math.cosh(tau) - math.cos(alpha + beta)) * (1.0 + bc_norm)
    return _certify("jorgensen_elliptic_hyperbolic", lhs, 1.0, inputs, tol_cert)


def shimizu_translation(s, t_mu, tol_cert=TOL_CERT):
    """Certificate for |c| |mu| >= 1 against the translation [[1, mu], [0, 1]]."""
    t_mu = _coerce(t_mu)
    inputs = {"S": s.to_json(), "mu": t_mu.to_json()}
    if t_mu.is_zero():
        return _inapplicable("shimizu_translation", "T is identity", inputs)
    lhs = s.c.norm() * t_mu.norm()
    return _certify("shimizu_translation", lhs, 1.0, inputs, tol_cert)


# admissibility of a parabolic test map is only defined in triangular
# coordinates; entries below this relative size count as the zero corner
_TRIANGULAR_TOL = 1e-12


def testmap_admissible(f, tol_cert=TOL_CERT):
    """Admissibility certificate for a test map f, by dynamical kind.

    elliptic_2rot: 0 < at(f) < pi/3.  hyperbolic: (abt^2 - 3)/2 < cos(at).
    parabolic: unipotent with off-diagonal norm <= 1 in the supplied
    coordinates.  Conditions are encoded as slack lhs >= 0, so `violated`
    means inadmissible and boundary cases surface as at_boundary, never
    violated.
    """
    cls = classify(f)
    inputs = {"f": f.to_json(), "kind": cls.kind}
    if cls.kind in ("elliptic_1rot", "identity"):
        return _inapplicable("testmap_elliptic",
                             "kind {} has no admissibility test".format(cls.kind),
                             inputs)
    if cls.kind == "elliptic_2rot":
        # slack to the nearer edge of the open interval (0, pi/3)
        lhs = min(cls.at, math.pi / 3.0 - cls.at)
        return _certify("testmap_elliptic", lhs, 0.0, inputs, tol_cert)
    if cls.kind == "hyperbolic":
        lhs = math.cos(cls.at) - (cls.abt ** 2 - 3.0) / 2.0
        return _certify("testmap_hyperbolic", lhs, 0.0, inputs, tol_cert)
    # parabolic
    if not is_similar(Quaternion.from_complex(cls.lam), Quaternion(1.0), tol=1e-6):
        return _inapplicable("testmap_parabolic",
                             "rotatory parabolic is outside the test-map family",
                             inputs)
    scale = max(1.0, f.max_entry_norm())
    if f.c.norm() <= _TRIANGULAR_TOL * scale:
        offdiag = f.b
    elif f.b.norm() <= _TRIANGULAR_TOL * scale:
        offdiag = f.c
    else:
        return _inapplicable("testmap_parabolic",
                             "parabolic is not in triangular coordinates; "
                             "|mu| <= 1 is checked only in the supplied frame",
                             inputs)
    inputs["offdiag"] = offdiag.to_json()
    lhs = 1.0 - offdiag.norm()
    return _certify("testmap_parabolic", lhs, 0.0, inputs, tol_cert)
