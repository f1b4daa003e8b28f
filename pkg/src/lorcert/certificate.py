"""Certificate container shared by the decision engine and the screens."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np


class Verdict(str, Enum):
    SEMIPOSITIVE = "semipositive"
    NOT_SEMIPOSITIVE = "not_semipositive"
    UNDECIDED = "undecided"
    NO_VERDICT = "no_verdict"


@dataclass
class Certificate:
    """Outcome of a semipositivity test.

    SEMIPOSITIVE carries a primal witness x (x in the cone, Ax interior);
    NOT_SEMIPOSITIVE carries a dual witness y (-y in the cone, A^T y in the
    cone).  UNDECIDED reports the best margin a full search achieved;
    NO_VERDICT means an individual screen was inconclusive and proves
    nothing.  ``margin`` is sqrt(2)*(Ax)_n - ||Ax|| at the witness for
    primal certificates, the smaller of the two cone margins for dual ones.
    """

    verdict: Verdict
    method: str
    margin: float = 0.0
    primal: Optional[np.ndarray] = field(default=None)
    dual: Optional[np.ndarray] = field(default=None)

    @property
    def is_definite(self):
        return self.verdict in (Verdict.SEMIPOSITIVE, Verdict.NOT_SEMIPOSITIVE)
