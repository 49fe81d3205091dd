"""Quaternionic 2x2 matrix toolkit: determinants, Mobius dynamics on the
quaternionic half-space boundary, discreteness inequality certificates, and
perturbation experiments around shared fixed points."""

__version__ = "0.1.0"

from .quaternions import (Quaternion, argument, complex_representative,
                          is_similar)
from .matrices import (MatH2, SingularMatrixError, eigen_representatives,
                       embed, from_embedding)
from .mobius import (AmbiguousClassificationError, BoundaryPoint,
                     Classification, INFINITY, apply_mobius, classify,
                     conjugate, fixed_points)
from .certificates import (Certificate, jorgensen_elliptic_hyperbolic,
                           jorgensen_general, shimizu_translation,
                           testmap_admissible)
from .experiments import (ExperimentConfig, IdentityViolatedError,
                          SequenceDivergedError, SequenceReport, build_Ln,
                          conjugator_h, conjugator_u, default_testmap,
                          run_testmap_experiment, sample_hyperbolic_fixing,
                          sample_sl2h, verify_offdiag_vanishing, write_jsonl)

__all__ = [
    "Quaternion", "argument", "complex_representative", "is_similar",
    "MatH2", "SingularMatrixError", "eigen_representatives", "embed",
    "from_embedding",
    "AmbiguousClassificationError", "BoundaryPoint", "Classification",
    "INFINITY", "apply_mobius", "classify", "conjugate", "fixed_points",
    "Certificate", "jorgensen_elliptic_hyperbolic", "jorgensen_general",
    "shimizu_translation", "testmap_admissible",
    "ExperimentConfig", "IdentityViolatedError", "SequenceDivergedError",
    "SequenceReport", "build_Ln", "conjugator_h", "conjugator_u",
    "default_testmap", "run_testmap_experiment", "sample_hyperbolic_fixing",
    "sample_sl2h", "verify_offdiag_vanishing", "write_jsonl",
    "__version__",
]
