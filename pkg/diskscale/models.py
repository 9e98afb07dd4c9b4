import time
from dataclasses import dataclass, field
from typing import Optional

import pandas as pd

from diskscale.errors import SolveTimeout
from diskscale.geometry import RadiusAssignment


# =============================================================================
# Solver results
# =============================================================================
@dataclass
class SolveStats():
    algorithm: str
    branches: int = 0
    lp_calls: int = 0
    millis: float = 0.0
    routed_from: str = ''  # 'auto' when the dispatcher picked the algorithm

    def to_dict(self):
        return {'algorithm': self.algorithm,
                'branches': self.branches,
                'lp_calls': self.lp_calls,
                'millis': round(self.millis, 3),
                'routed_from': self.routed_from}


@dataclass
class SolveOutcome():
    answer: bool
    witness: Optional[RadiusAssignment] = None
    stats: SolveStats = field(default_factory=lambda: SolveStats('unknown'))

    def __post_init__(self):
        assert not self.answer or self.witness is not None, "a yes answer carries a witness"

    def __bool__(self):
        return self.answer

    def to_row(self):
        """Return answer and stats as a one-row pd.DataFrame"""
        row = {'answer': 'yes' if self.answer else 'no', **self.stats.to_dict()}
        return pd.Series(row).to_frame().T

    def __str__(self):
        return f"{'yes' if self.answer else 'no'} ({self.stats.algorithm}, {self.stats.branches} branches, {self.stats.lp_calls} LP calls)"


class Deadline():
    """Cooperative timeout, polled at branch boundaries"""

    def __init__(self, seconds=None):
        self.seconds = seconds
        self.expires = None if seconds is None else time.monotonic() + float(seconds)

    def check(self):
        if self.expires is not None and time.monotonic() > self.expires:
            raise SolveTimeout(f"no answer within {self.seconds} s")
