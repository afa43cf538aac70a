from __future__ import annotations
from typing import List, Optional, Literal, Dict, Tuple, Any
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

class FiniteMetricSpace(BaseModel):
    """Labeled point set with a validated distance matrix.

    Build instances through `ghdist.space.validate.validate_space`; the model itself
    only checks shape so that internal constructions stay cheap.
    """
    model_config = ConfigDict(frozen=True)

    labels: List[str]
    dist: List[List[float]]

    @model_validator(mode="after")
    def _shape(self) -> "FiniteMetricSpace":
        n = len(self.labels)
        if n == 0 or len(self.dist) != n or any(len(row) != n for row in self.dist):
            raise ValueError(f"expected a non-empty {n}x{n} distance matrix")
        return self

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def matrix(self) -> np.ndarray:
        return np.asarray(self.dist, dtype=float)

class PointSubset(BaseModel):
    model_config = ConfigDict(frozen=True)

    space: FiniteMetricSpace
    members: Tuple[int, ...]

    @field_validator("members")
    @classmethod
    def _canonical(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        if not v:
            raise ValueError("subset must be nonempty")
        return tuple(sorted(set(v)))

    @model_validator(mode="after")
    def _in_range(self) -> "PointSubset":
        bad = [i for i in self.members if not 0 <= i < self.space.n]
        if bad:
            raise ValueError(f"indices out of range: {bad}")
        return self

Pair = Tuple[int, int]

class Correspondence(BaseModel):
    model_config = ConfigDict(frozen=True)

    nX: int
    nY: int
    pairs: Tuple[Pair, ...]

    @field_validator("pairs")
    @classmethod
    def _canonical(cls, v: Tuple[Pair, ...]) -> Tuple[Pair, ...]:
        if not v:
            raise ValueError("correspondence must be nonempty")
        return tuple(sorted(set(v)))

    @model_validator(mode="after")
    def _surjective(self) -> "Correspondence":
        for i, j in self.pairs:
            if not (0 <= i < self.nX and 0 <= j < self.nY):
                raise ValueError(f"pair ({i},{j}) outside {self.nX}x{self.nY}")
        xs = {i for i, _ in self.pairs}
        ys = {j for _, j in self.pairs}
        if len(xs) != self.nX or len(ys) != self.nY:
            raise ValueError("both projections must be surjective")
        return self

    def transpose(self) -> "Correspondence":
        return Correspondence(nX=self.nY, nY=self.nX, pairs=tuple((j, i) for i, j in self.pairs))

class GHResult(BaseModel):
    value: float
    certificate: Correspondence
    lower_bound: float
    upper_bound: float
    nodes_explored: int = 0
    truncated: bool = False
    method: Literal["branch_and_bound", "oracle"] = "branch_and_bound"

    @model_validator(mode="after")
    def _bounds(self) -> "GHResult":
        if self.lower_bound > self.upper_bound:
            raise ValueError("lower_bound exceeds upper_bound")
        return self

class PointMap(BaseModel):
    model_config = ConfigDict(frozen=True)

    source: FiniteMetricSpace
    target: FiniteMetricSpace
    image: Tuple[int, ...]

    @model_validator(mode="after")
    def _total(self) -> "PointMap":
        if len(self.image) != self.source.n:
            raise ValueError(f"image has {len(self.image)} entries for {self.source.n} source points")
        bad = [j for j in self.image if not 0 <= j < self.target.n]
        if bad:
            raise ValueError(f"image indices out of range: {bad}")
        return self

class AdmissibleMetric(BaseModel):
    """Metric on X ⊔ Y given by the two blocks plus the cross distances ρ(x_i, y_j)."""
    model_config = ConfigDict(frozen=True)

    X: FiniteMetricSpace
    Y: FiniteMetricSpace
    cross: List[List[float]]

    @field_validator("cross")
    @classmethod
    def _positive(cls, v: List[List[float]]) -> List[List[float]]:
        if any(c <= 0 for row in v for c in row):
            raise ValueError("cross distances must be positive")
        return v

    @model_validator(mode="after")
    def _shape(self) -> "AdmissibleMetric":
        if len(self.cross) != self.X.n or any(len(r) != self.Y.n for r in self.cross):
            raise ValueError(f"cross must be {self.X.n}x{self.Y.n}")
        return self

    def full_matrix(self) -> np.ndarray:
        C = np.asarray(self.cross, dtype=float)
        return np.block([[self.X.matrix, C], [C.T, self.Y.matrix]])

class SupNormPointSet(BaseModel):
    dim: int
    points: List[List[float]]

    @model_validator(mode="after")
    def _dims(self) -> "SupNormPointSet":
        if any(len(p) != self.dim for p in self.points):
            raise ValueError(f"every vector must have {self.dim} coordinates")
        return self

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=float).reshape(len(self.points), self.dim)

class HatResult(BaseModel):
    value: float
    attained: bool
    forward: List[int] = Field(default_factory=list)   # best X→Y image
    backward: List[int] = Field(default_factory=list)  # best Y→X image

class AlignResult(BaseModel):
    value: float
    translation: List[float] = Field(default_factory=list)
    restart: int = 0
    permutation: List[int] = Field(default_factory=list)

class PropertyOutcome(BaseModel):
    name: str
    passed: bool
    checks: int = 0
    max_deviation: Optional[float] = None
    witness: Dict[str, Any] = Field(default_factory=dict)
    note: Optional[str] = None

class RunReport(BaseModel):
    version: str = "0.1.0"
    command: List[str]
    inputs_digest: str
    results: Dict[str, Any] = Field(default_factory=dict)
    tables: Dict[str, List[Dict[str, Any]]] = Field(default_factory=dict)
    properties: List[PropertyOutcome] = Field(default_factory=list)
    artifacts: List[str] = Field(default_factory=list)
    exit_code: int = 0
    # volatile fields, excluded from determinism comparisons
    timing: Dict[str, Any] = Field(default_factory=dict)

    def failures(self) -> List[PropertyOutcome]:
        return [p for p in self.properties if not p.passed]
