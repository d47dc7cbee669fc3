"""
shared estimate type for all entropy estimators
"""

# internal python imports
from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class EntropyEstimate:
    """
    an entropy estimate in nats

    Parameters:
        value: the estimate, always finite
        estimator_id: cli id of the producing estimator (e.g. 'vasicek', 'kernel')
        n: sample size
        tuning: the SpacingConfig or KernelConfig used
    """
    value: float
    estimator_id: str
    n: int
    tuning: Any = None

    def __post_init__(self):
        assert self.value == self.value and abs(self.value) != float('inf'), \
            '%s produced a non-finite estimate' % self.estimator_id

    def __float__(self):
        return float(self.value)
