"""Request/response models for the HTTP service.

Quaternions travel as [w, x, y, z]; matrices as [[a, b], [c, d]] of those;
boundary points as either a quaternion array or {"inf": true}.  Nested
certificate and experiment payloads mirror the core to_json shapes.
"""

from typing import List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

QuaternionData = List[float]
MatrixData = List[List[QuaternionData]]
BoundaryPointData = Union[dict, QuaternionData]


class MatrixRequest(BaseModel):
    matrix: MatrixData
    tol: Optional[float] = None


class DetResponse(BaseModel):
    det: float


class MatrixResponse(BaseModel):
    matrix: MatrixData


class ClassificationResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    kind: str
    lam: List[float] = Field(alias="lambda")
    mu: List[float]
    at: float
    abt: float
    tau: float


class FixedPointsResponse(BaseModel):
    points: List[BoundaryPointData]


class CertificateResponse(BaseModel):
    test: str
    verdict: str
    lhs: Optional[float]
    threshold: Optional[float]
    margin: Optional[float]
    at_boundary: bool
    inputs: dict
    reason: Optional[str] = None


class JorgensenRequest(BaseModel):
    """One of the three inequality tests, selected by `test`.

    jorgensen_general: lambda_/mu as [re, im] plus either S or bc_norm.
    jorgensen_elliptic_hyperbolic: matrices S and T.
    shimizu_translation: matrix S plus mu as a quaternion (or [re, im]).
    """
    model_config = ConfigDict(populate_by_name=True)

    test: str
    S: Optional[MatrixData] = None
    T: Optional[MatrixData] = None
    lambda_: Optional[List[float]] = Field(default=None, alias="lambda")
    mu: Optional[List[float]] = None
    bc_norm: Optional[float] = None
    tol: Optional[float] = None


class ExperimentRequest(BaseModel):
    mode: str
    config: dict = Field(default_factory=dict)


class TrialSummaryData(BaseModel):
    trial: int
    violation_index: Optional[int]
    burn_in: Optional[int]
    possibly_elementary: bool
    min_image_gap: float
    g: MatrixData
    f: MatrixData


class SequenceRecordData(BaseModel):
    trial: int
    n: Optional[int]
    matrix: MatrixData
    monitored: float
    certificate: dict


class ExperimentResponse(BaseModel):
    mode: str
    config: dict
    records: List[SequenceRecordData]
    trials: List[TrialSummaryData]


class HealthResponse(BaseModel):
    status: str
    version: str
