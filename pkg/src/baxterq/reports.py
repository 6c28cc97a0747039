"""Verification reports and their JSON form."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Type

import numpy as np

from .errors import VerificationError

SCHEMA_VERSION = 1


def jsonable(obj: Any) -> Any:
    """Convert numbers and containers into JSON-friendly values.

    Complex numbers become ``{"re": .., "im": ..}``, fractions become the
    string ``"p/q"`` and non-finite floats become strings.
    """
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else str(v)
    if isinstance(obj, (complex, np.complexfloating)):
        c = complex(obj)
        return {"re": jsonable(c.real), "im": jsonable(c.imag)}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if hasattr(obj, "__dict__") and not callable(obj):
        return jsonable(vars(obj))
    return str(obj)


@dataclass
class Report:
    """Outcome of one verification.

    ``passed`` is the conjunction of the ``passed`` flags of all cases.
    Residuals are recorded for every case, also when it passes.
    """

    check: str
    config: Dict[str, Any] = field(default_factory=dict)
    cases: List[Dict[str, Any]] = field(default_factory=list)
    timing: Dict[str, float] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    def add_case(self, passed: bool, **record) -> Dict[str, Any]:
        rec = dict(record)
        rec["passed"] = bool(passed)
        self.cases.append(rec)
        return rec

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.cases)

    def worst(self, key: str = "residual") -> Optional[float]:
        vals = [c[key] for c in self.cases if isinstance(c.get(key), (int, float))]
        return max(vals) if vals else None

    def to_dict(self, with_timing: bool = True) -> Dict[str, Any]:
        out = {
            "schema": SCHEMA_VERSION,
            "check": self.check,
            "config": jsonable(self.config),
            "cases": jsonable(self.cases),
            "pass": self.passed,
            "notes": list(self.notes),
        }
        if with_timing:
            out["timing"] = jsonable(self.timing)
        return out

    def to_json(self, with_timing: bool = True) -> str:
        return json.dumps(self.to_dict(with_timing), indent=2, sort_keys=True)

    def raise_if_failed(self, exc_type: Type[VerificationError], message: str) -> "Report":
        if not self.passed:
            raise exc_type(message, self)
        return self
