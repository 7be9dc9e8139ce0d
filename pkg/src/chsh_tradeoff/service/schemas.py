"""Pydantic request/response models for the service endpoints."""

from __future__ import annotations

from typing import Any, Literal, Optional

from pydantic import BaseModel, Field

from ..constants import MAX_QUBITS


class StatePayload(BaseModel):
    """Wire form of a pure state; mirrors the state file format."""

    n: int = Field(ge=1, le=MAX_QUBITS)
    amplitudes: list[tuple[float, float]]


class FamilyPayload(BaseModel):
    """3-qubit family parameter record, an alternative way to name a state."""

    family: Literal["product", "biseparable", "w", "ghz"]
    free_qubit: Optional[str] = None
    delta: Optional[float] = None
    alpha: Optional[float] = None
    beta: Optional[float] = None
    gamma: Optional[float] = None
    phi: Optional[float] = None
    a: Optional[float] = None
    b: Optional[float] = None
    c: Optional[float] = None


class AnalyzeRequest(BaseModel):
    state: StatePayload | FamilyPayload
    format: Literal["json", "csv"] = "json"
    config: dict[str, Any] = Field(default_factory=dict)


class SweepRequest(BaseModel):
    family: Literal["biseparable", "w", "ghz"]
    grid: str
    phi: float = 1.5707963267948966  # pi/2, the validated comparison slice
    threads: int = Field(default=1, ge=1)
    config: dict[str, Any] = Field(default_factory=dict)


class SearchRequest(BaseModel):
    n: int = Field(ge=3, le=MAX_QUBITS)
    samples: int = Field(ge=1)
    restarts: int = Field(default=10, ge=0)
    seed: int = 0
    anchor: str = "A"
    threads: int = Field(default=1, ge=1)
    warm_starts: list[StatePayload | FamilyPayload] = Field(default_factory=list)
    config: dict[str, Any] = Field(default_factory=dict)


class RandomRequest(BaseModel):
    n: int = Field(ge=1, le=MAX_QUBITS)
    count: int = Field(ge=1)
    seed: int = 0
    config: dict[str, Any] = Field(default_factory=dict)


class VerifyRequest(BaseModel):
    suite: str = "all"
    samples: Optional[int] = Field(default=None, ge=1)
    restarts: Optional[int] = Field(default=None, ge=0)
    seed: Optional[int] = None
    config: dict[str, Any] = Field(default_factory=dict)


class HealthResponse(BaseModel):
    status: str
    version: str
