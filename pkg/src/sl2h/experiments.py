"""Batch experiments replaying the discreteness-test limit arguments.

A trial fixes a base point z0, a hyperbolic g fixing z0, and an admissible
test map f, then drives a sequence of conjugators h_n toward the exact
conjugator (h sending z0 to 0, or the parabolic u fixing 0):

    h = [[z0^{-1}, -1], [0, z0]]        u = [[1, 0], [-z0^{-1}, 1]]
    h_n = SL-normalize(h + (eps0 / n) Delta),  Delta fixed per trial

Monitored along the sequence, per mode:

    thm1_elliptic / thm1_hyperbolic   M_n = h_n g h_n^{-1}, scalar |b_n c_n|
    thm1_parabolic                    M_n = u_n g u_n^{-1}, scalar |c_n|
    thm2_*                            L_n = h_n g h_n^{-1} f h_n g^{-1} h_n^{-1},
                                      scalar |B_n C_n| (|C_n| when f is a
                                      translation)

Because g fixes z0, the exact conjugator kills the scalar (b0 = 0 for h,
c_inf = 0 for u), so the matching inequality certificate is violated for
all large n; each trial reports the first such index.  Runs are
deterministic: a config reproduces its JSONL output byte for byte.
"""

import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .certificates import (
    Certificate,
    jorgensen_elliptic_hyperbolic,
    jorgensen_general,
    shimizu_translation,
    testmap_admissible,
)
from .matrices import MatH2
from .mobius import BoundaryPoint, apply_mobius, fixed_points
from .quaternions import Quaternion, _coerce

TOL_IDENTITY = 1e-8

MODES = ("thm1_elliptic", "thm1_hyperbolic", "thm1_parabolic",
         "thm2_elliptic", "thm2_hyperbolic", "thm2_parabolic")

# default test maps, one comfortably inside each admissibility region
_ELLIPTIC_ANGLES = (math.pi / 12.0, math.pi / 6.0)
_HYPERBOLIC_STRETCH = 1.05
_PARABOLIC_MU = 0.5


class IdentityViolatedError(ValueError):
    pass


class SequenceDivergedError(RuntimeError):
    pass


def _as_rng(rng_seed):
    if isinstance(rng_seed, np.random.Generator):
        return rng_seed
    return np.random.default_rng(rng_seed)


def conjugator_h(z0):
    """[[z0^{-1}, -1], [0, z0]]; sends z0 to 0, det = 1."""
    z0 = _coerce(z0)
    if z0.is_zero():
        raise ValueError("conjugator needs z0 != 0")
    return MatH2(z0.inverse(), -1, 0, z0)


def conjugator_u(z0):
    """Parabolic [[1, 0], [-z0^{-1}, 1]]; fixes 0, sends z0 to inf."""
    z0 = _coerce(z0)
    if z0.is_zero():
        raise ValueError("conjugator needs z0 != 0")
    return MatH2(1, 0, -z0.inverse(), 1)


def _random_quaternion(rng, scale=1.0):
    return Quaternion(*rng.normal(0.0, scale, size=4))


def sample_hyperbolic_fixing(z0, rng_seed, min_stretch=1.2, max_stretch=2.0):
    """A random SL-normalized hyperbolic g with apply(g, z0) = z0.

    Built as P diag(lambda, mu) P^{-1} with |lambda| in
    [min_stretch, max_stretch], |lambda mu| = 1, and P sending 0 to z0.
    The second fixed point P(inf) is kept away from z0 so P stays well
    conditioned and g's entries stay moderate.
    """
    if isinstance(z0, BoundaryPoint):
        if z0.is_infinity:
            raise ValueError("z0 must be finite and nonzero")
        z0 = z0.value
    z0 = _coerce(z0)
    if z0.is_zero(tol=1e-12):
        raise ValueError("z0 must be finite and nonzero")
    rng = _as_rng(rng_seed)
    while True:
        other = _random_quaternion(rng)
        if (other - z0).norm() < 0.6 or other.norm() > 2.0:
            continue
        # P(0) = z0, P(inf) = other
        p = MatH2(other, z0, 1, 1)
        if p.det() < 0.3:
            continue
        p = p.normalized()
        r = rng.uniform(min_stretch, max_stretch)
        lam = r * np.exp(1j * rng.uniform(0.0, math.pi))
        mu = np.exp(1j * rng.uniform(0.0, math.pi)) / r
        g = p @ MatH2.from_complex_diag(complex(lam), complex(mu)) @ p.inverse()
        point = apply_mobius(g, BoundaryPoint(z0))
        if point.is_infinity or point.value.distance_to(z0) > 1e-8:
            continue
        return g


def sample_sl2h(rng_seed, weights=(0.6, 0.2, 0.2)):
    """Random SL-normalized matrix from a three-component mixture.

    Continuous entry distributions land on the elliptic and parabolic
    strata with probability zero, so those kinds are sampled as exact
    normal forms conjugated by a generic frame; weights order is
    (generic, elliptic, parabolic).
    """
    rng = _as_rng(rng_seed)
    branch = rng.choice(3, p=list(weights))
    if branch == 0:
        while True:
            m = MatH2(*[_random_quaternion(rng) for _ in range(4)])
            if m.det() >= 1e-6:
                return m.normalized()
    while True:
        frame = MatH2(*[_random_quaternion(rng) for _ in range(4)])
        if frame.det() > 0.3:
            frame = frame.normalized()
            break
    if branch == 1:
        alpha, beta = rng.uniform(0.0, math.pi, size=2)
        core = MatH2.from_complex_diag(complex(np.exp(1j * alpha)),
                                       complex(np.exp(1j * beta)))
    else:
        core = MatH2(1, _random_quaternion(rng), 0, 1)
    return frame @ core @ frame.inverse()


def _hgh_closed_form(g, z0):
    """h g h^{-1} assembled from per-entry closed forms (hand expansion
    of the triple product; the top-left needs both of its terms)."""
    z0i = z0.inverse()
    a, b, c, d = g.entries()
    return MatH2(z0i * a * z0 - c * z0,
                 z0i * a + z0i * b * z0i - c - d * z0i,
                 z0 * c * z0,
                 z0 * c + z0 * d * z0i)


def _ugu_closed_form(g, z0):
    """u g u^{-1} assembled entrywise; bottom-left vanishes when g fixes z0."""
    z0i = z0.inverse()
    a, b, c, d = g.entries()
    top_left = a + b * z0i
    return MatH2(top_left,
                 b,
                 -(z0i * top_left) + (c + d * z0i),
                 -(z0i * b) + d)


@dataclass(frozen=True)
class VanishingRecord:
    matrix: MatH2
    residual: float
    entry_deviation: float

    def to_json(self):
        return {"matrix": self.matrix.to_json(), "monitored": self.residual,
                "entry_deviation": self.entry_deviation}


def verify_offdiag_vanishing(g, z0, tol_identity=TOL_IDENTITY):
    """|b0 c0| for h g h^{-1}, asserted to vanish when g fixes z0.

    Also cross-checks the literal triple product against the entrywise
    closed form.  Raises IdentityViolatedError when the residual exceeds
    tol_identity at the scale of the entries.
    """
    z0 = _coerce(z0)
    h = conjugator_h(z0)
    conjugated = h @ g @ h.inverse()
    expected = _hgh_closed_form(g, z0)
    scale = max(1.0, conjugated.max_entry_norm())
    entry_deviation = conjugated.distance_to(expected)
    if entry_deviation > 1e-9 * scale:
        raise IdentityViolatedError(
            "closed form mismatch: deviation {:.3e}".format(entry_deviation))
    residual = conjugated.b.norm() * conjugated.c.norm()
    if residual > tol_identity * scale * scale:
        raise IdentityViolatedError(
            "identity violated: |b0 c0| = {:.3e}".format(residual))
    return VanishingRecord(matrix=conjugated, residual=residual,
                           entry_deviation=entry_deviation)


def build_Ln(f, g, hn):
    """The five-fold product h_n g h_n^{-1} f h_n g^{-1} h_n^{-1}."""
    hn_inv = hn.inverse()
    return hn @ g @ hn_inv @ f @ hn @ g.inverse() @ hn_inv


@dataclass(frozen=True)
class ExperimentConfig:
    seed: int = 0
    trials: int = 1
    sequence_length: int = 64
    perturbation_scale: float = 0.1
    z0: Quaternion = field(default_factory=lambda: Quaternion(1.0, 1.0))
    tolerances: dict = field(default_factory=dict)
    output: Optional[str] = None

    def __post_init__(self):
        if self.trials < 1 or self.sequence_length < 1:
            raise ValueError("trials and sequence_length must be positive")
        if self.perturbation_scale <= 0.0:
            raise ValueError("perturbation_scale must be positive")
        if not isinstance(self.z0, Quaternion):
            object.__setattr__(self, "z0", _coerce(self.z0))
        if self.z0.is_zero(tol=1e-12):
            raise ValueError("z0 must be nonzero")

    def tol(self, name, default):
        return float(self.tolerances.get(name, default))

    @classmethod
    def from_json(cls, data):
        kwargs = {}
        for key in ("seed", "trials", "sequence_length", "perturbation_scale",
                    "tolerances", "output"):
            if key in data:
                kwargs[key] = data[key]
        if "z0" in data:
            kwargs["z0"] = Quaternion.from_json(data["z0"])
        return cls(**kwargs)

    def to_json(self):
        return {
            "seed": self.seed,
            "trials": self.trials,
            "sequence_length": self.sequence_length,
            "perturbation_scale": self.perturbation_scale,
            "z0": self.z0.to_json(),
            "tolerances": dict(self.tolerances),
            "output": self.output,
        }


@dataclass(frozen=True)
class SequenceRecord:
    trial: int
    n: Optional[int]
    matrix: MatH2
    monitored: float
    certificate: Certificate

    def to_json(self):
        return {
            "trial": self.trial,
            "n": self.n,
            "matrix": self.matrix.to_json(),
            "monitored": self.monitored,
            "certificate": self.certificate.to_json(),
        }


@dataclass(frozen=True)
class TrialSummary:
    trial: int
    violation_index: Optional[int]
    burn_in: Optional[int]
    possibly_elementary: bool
    min_image_gap: float
    g: MatH2
    f: MatH2

    def to_json(self):
        return {
            "trial": self.trial,
            "violation_index": self.violation_index,
            "burn_in": self.burn_in,
            "possibly_elementary": self.possibly_elementary,
            "min_image_gap": self.min_image_gap,
            "g": self.g.to_json(),
            "f": self.f.to_json(),
        }


@dataclass(frozen=True)
class SequenceReport:
    mode: str
    config: ExperimentConfig
    records: list
    summaries: list

    def to_json(self):
        return {
            "mode": self.mode,
            "config": self.config.to_json(),
            "records": [r.to_json() for r in self.records],
            "trials": [s.to_json() for s in self.summaries],
        }

    def jsonl_lines(self):
        return [json.dumps(r.to_json(), sort_keys=True, separators=(",", ":"))
                for r in self.records]


def default_testmap(mode):
    if mode.endswith("elliptic"):
        alpha, beta = _ELLIPTIC_ANGLES
        return MatH2.from_complex_diag(complex(np.exp(1j * alpha)),
                                       complex(np.exp(1j * beta)))
    if mode.endswith("hyperbolic"):
        return MatH2.diagonal(_HYPERBOLIC_STRETCH, 1.0 / _HYPERBOLIC_STRETCH)
    return MatH2(1, _PARABOLIC_MU, 0, 1)


def _elliptic_eigen():
    alpha, beta = _ELLIPTIC_ANGLES
    return complex(np.exp(1j * alpha)), complex(np.exp(1j * beta))


def _certificate_for(mode, matrix, f):
    if mode.endswith("elliptic"):
        lam, mu = _elliptic_eigen()
        return jorgensen_general(lam, mu, s=matrix)
    if mode.endswith("hyperbolic"):
        return jorgensen_elliptic_hyperbolic(matrix, f)
    return shimizu_translation(matrix, f.b)


def _monitored_for(mode, matrix):
    if mode.endswith("parabolic"):
        return matrix.c.norm()
    return matrix.b.norm() * matrix.c.norm()


def _sequence_matrix(mode, g, f, conj):
    if mode.startswith("thm1"):
        return conj @ g @ conj.inverse()
    return build_Ln(f, g, conj)


def _shares_fixed_point(f, limit_matrix, tol_fix):
    try:
        f_points = fixed_points(f, tol_fix=tol_fix)
        limit_points = fixed_points(limit_matrix, tol_fix=tol_fix)
    except ValueError:
        return True
    return any(p.close_to(q, tol=1e-6) for p in f_points for q in limit_points)


def _run_trial(trial, mode, config, rng):
    tol_fix = config.tol("tol_fix", 1e-8)
    tol_identity = config.tol("tol_identity", TOL_IDENTITY)
    eps0 = config.perturbation_scale
    n_max = config.sequence_length
    z0 = config.z0
    z0_point = BoundaryPoint(z0)

    g = sample_hyperbolic_fixing(z0, rng)
    f = default_testmap(mode)
    admissibility = testmap_admissible(f)
    if admissibility.verdict != "satisfied":
        raise ValueError("test map for mode {} is not admissible".format(mode))
    parabolic_mode = mode.endswith("parabolic")
    exact = conjugator_u(z0) if parabolic_mode else conjugator_h(z0)
    # the limit conjugator sends z0 exactly onto the excluded value (0 for
    # h, inf for u); each finite index must miss it, so a perturbation
    # direction that lands on it at any index is redrawn wholesale (the
    # direction stays constant within a trial to keep the decay monotone)
    zero = BoundaryPoint(Quaternion())
    while True:
        delta = MatH2(*[_random_quaternion(rng) for _ in range(4)])
        conjugators = []
        min_gap = math.inf
        ok = True
        for n in range(1, n_max + 1):
            perturbed = MatH2(
                exact.a + delta.a * (eps0 / n),
                exact.b + delta.b * (eps0 / n),
                exact.c + delta.c * (eps0 / n),
                exact.d + delta.d * (eps0 / n))
            if perturbed.det() < 0.25:
                ok = False
                break
            hn = perturbed.normalized()
            image = apply_mobius(hn, z0_point)
            if parabolic_mode:
                if image.is_infinity:
                    ok = False
                    break
                gap = 1.0 / max(image.value.norm(), 1.0)
            else:
                gap = image.distance_to(zero, tol=tol_fix)
                if gap < 1e-12:
                    ok = False
                    break
            min_gap = min(min_gap, gap)
            conjugators.append(hn)
        if ok:
            break

    records = []
    monitored_by_n = {}
    for n, hn in enumerate(conjugators, start=1):
        matrix = _sequence_matrix(mode, g, f, hn)
        monitored = _monitored_for(mode, matrix)
        cert = _certificate_for(mode, matrix, f)
        monitored_by_n[n] = monitored
        records.append(SequenceRecord(trial=trial, n=n, matrix=matrix,
                                      monitored=monitored, certificate=cert))

    limit_matrix = _sequence_matrix(mode, g, f, exact)
    limit_monitored = _monitored_for(mode, limit_matrix)
    scale = max(1.0, limit_matrix.max_entry_norm())
    if limit_monitored > tol_identity * scale * scale:
        raise IdentityViolatedError(
            "limit identity failed: monitored = {:.3e}".format(limit_monitored))
    limit_cert = _certificate_for(mode, limit_matrix, f)
    records.append(SequenceRecord(trial=trial, n=None, matrix=limit_matrix,
                                  monitored=limit_monitored, certificate=limit_cert))

    # convergence diagnostics against the halved index
    burn_in = None
    for k in sorted(monitored_by_n):
        if 2 * k not in monitored_by_n:
            break
        if monitored_by_n[2 * k] <= monitored_by_n[k] + 1e-12:
            if burn_in is None:
                burn_in = k
        else:
            burn_in = None
    top = n_max // 2
    if top >= 4 and 2 * top in monitored_by_n:
        floor = 1e-13 * scale * scale
        if monitored_by_n[2 * top] > max(0.75 * monitored_by_n[top], floor):
            raise SequenceDivergedError(
                "sequence diverged: monitored {:.3e} -> {:.3e} from n = {} to {}"
                .format(monitored_by_n[top], monitored_by_n[2 * top], top, 2 * top))

    violation_index = None
    for record in reversed(records[:-1]):
        if record.certificate.verdict == "violated":
            violation_index = record.n
        else:
            break

    summary = TrialSummary(
        trial=trial,
        violation_index=violation_index,
        burn_in=burn_in,
        possibly_elementary=_shares_fixed_point(f, limit_matrix, tol_fix),
        min_image_gap=min_gap,
        g=g,
        f=f)
    return records, summary


def run_testmap_experiment(config, mode):
    if mode not in MODES:
        raise ValueError("unknown mode {!r}".format(mode))
    all_records = []
    summaries = []
    for trial in range(config.trials):
        rng = np.random.default_rng(np.random.SeedSequence(config.seed,
                                                           spawn_key=(trial,)))
        records, summary = _run_trial(trial, mode, config, rng)
        all_records.extend(records)
        summaries.append(summary)
    all_records.sort(key=lambda r: (r.trial, r.n is None, r.n or 0))
    return SequenceReport(mode=mode, config=config, records=all_records,
                          summaries=summaries)


def write_jsonl(report, path):
    with open(path, "w") as fh:
        for line in report.jsonl_lines():
            fh.write(line + "\n")
