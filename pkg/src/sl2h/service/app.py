"""HTTP service exposing the core operations.

Thin wrappers: parse the payload, call the library, return to_json output.
Domain failures (singular matrix, unnormalized input, ambiguous
classification, inapplicable combinations passed as hard errors) surface as
422 with the library's message in `detail`; malformed payloads are rejected
by the model layer before we see them.
"""

from contextlib import contextmanager

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..certificates import (TOL_CERT, jorgensen_elliptic_hyperbolic,
                            jorgensen_general, shimizu_translation,
                            testmap_admissible)
from ..experiments import ExperimentConfig, run_testmap_experiment
from ..matrices import MatH2, TOL_DET
from ..mobius import TOL_CLS, TOL_FIX, classify, fixed_points
from ..quaternions import Quaternion
from . import schemas


@contextmanager
def _domain_errors():
    try:
        yield
    except (ValueError, ZeroDivisionError) as exc:
        raise HTTPException(status_code=422, detail=str(exc))


def _matrix(data):
    with _domain_errors():
        return MatH2.from_json(data)


def _require(value, name):
    if value is None:
        raise HTTPException(status_code=422,
                            detail="missing field: %s" % name)
    return value


def _as_complex(pair, name):
    if len(pair) != 2:
        raise HTTPException(status_code=422,
                            detail="%s must be [re, im]" % name)
    return complex(pair[0], pair[1])


def _as_quaternion(values, name):
    # translation amounts arrive either as a full quaternion or as [re, im]
    if len(values) == 4:
        return Quaternion.from_json(values)
    if len(values) == 2:
        return Quaternion(values[0], values[1])
    raise HTTPException(status_code=422,
                        detail="%s must be [w, x, y, z] or [re, im]" % name)


def create_app():
    app = FastAPI(title="sl2h", version=__version__)

    @app.get("/health", response_model=schemas.HealthResponse)
    def health():
        return {"status": "ok", "version": __version__}

    @app.post("/det", response_model=schemas.DetResponse)
    def det(req: schemas.MatrixRequest):
        m = _matrix(req.matrix)
        with _domain_errors():
            return {"det": m.det()}

    @app.post("/inverse", response_model=schemas.MatrixResponse)
    def inverse(req: schemas.MatrixRequest):
        m = _matrix(req.matrix)
        tol = req.tol if req.tol is not None else TOL_DET
        with _domain_errors():
            return {"matrix": m.inverse(tol=tol).to_json()}

    @app.post("/classify", response_model=schemas.ClassificationResponse)
    def classify_endpoint(req: schemas.MatrixRequest):
        m = _matrix(req.matrix)
        tol = req.tol if req.tol is not None else TOL_CLS
        with _domain_errors():
            return classify(m, tol_cls=tol).to_json()

    @app.post("/fixedpoints", response_model=schemas.FixedPointsResponse)
    def fixedpoints(req: schemas.MatrixRequest):
        m = _matrix(req.matrix)
        tol = req.tol if req.tol is not None else TOL_FIX
        with _domain_errors():
            points = fixed_points(m, tol_fix=tol)
        return {"points": [p.to_json() for p in points]}

    @app.post("/jorgensen", response_model=schemas.CertificateResponse)
    def jorgensen(req: schemas.JorgensenRequest):
        tol = req.tol if req.tol is not None else TOL_CERT
        with _domain_errors():
            if req.test == "jorgensen_general":
                lam = _as_complex(_require(req.lambda_, "lambda"), "lambda")
                mu = _as_complex(_require(req.mu, "mu"), "mu")
                s = MatH2.from_json(req.S) if req.S is not None else None
                cert = jorgensen_general(lam, mu, s=s, bc_norm=req.bc_norm,
                                         tol_cert=tol)
            elif req.test == "jorgensen_elliptic_hyperbolic":
                s = MatH2.from_json(_require(req.S, "S"))
                t = MatH2.from_json(_require(req.T, "T"))
                cert = jorgensen_elliptic_hyperbolic(s, t, tol_cert=tol)
            elif req.test == "shimizu_translation":
                s = MatH2.from_json(_require(req.S, "S"))
                mu = _as_quaternion(_require(req.mu, "mu"), "mu")
                cert = shimizu_translation(s, mu, tol_cert=tol)
            else:
                raise ValueError("unknown test: %s" % req.test)
        return cert.to_json()

    @app.post("/testmap", response_model=schemas.CertificateResponse)
    def testmap(req: schemas.MatrixRequest):
        m = _matrix(req.matrix)
        tol = req.tol if req.tol is not None else TOL_CERT
        with _domain_errors():
            return testmap_admissible(m, tol_cert=tol).to_json()

    @app.post("/experiment", response_model=schemas.ExperimentResponse)
    def experiment(req: schemas.ExperimentRequest):
        with _domain_errors():
            config = ExperimentConfig.from_json(req.config)
            report = run_testmap_experiment(config, req.mode)
        return report.to_json()

    return app
