"""
Count tables: triangles of exact counts indexed by (size, statistic value),
tagged with the statistic and the engine that produced them.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Tuple

from utils.errors import PreconditionError

logger = logging.getLogger(__name__)


class Statistic(str, Enum):
    LR = 'lr'  # left-to-right minima, min-path length
    RL = 'rl'  # right-to-left minima, max-path length


class Engine(str, Enum):
    BRUTE = 'brute'
    ECO = 'eco'
    SERIES = 'series'
    RECURSION = 'recursion'


@dataclass
class CountTable:
    """Counts for sizes 1..n_max.

    ``columns`` lists the statistic values this engine defines; ``None`` means
    every value. Cells outside it are unknown rather than zero.
    """
    statistic: Statistic
    engine: Engine
    n_max: int
    entries: Dict[Tuple[int, int], int] = field(default_factory=dict)
    columns: Optional[FrozenSet[int]] = None

    def add(self, n, stat, count=1):
        if count < 0:
            logger.error(f"{self.label()} received count {count} at ({n}, {stat})")
            raise PreconditionError(f"negative count {count} at ({n}, {stat})")
        key = (n, stat)
        self.entries[key] = self.entries.get(key, 0) + count

    def entry(self, n, stat):
        return self.entries.get((n, stat), 0)

    def defines(self, stat):
        return self.columns is None or stat in self.columns

    def stat_values(self) -> List[int]:
        """Printed columns, ascending, zeros included."""
        values = range(1, self.n_max + 1)
        return [s for s in values if self.defines(s)]

    def row(self, n) -> List[int]:
        return [self.entry(n, s) for s in self.stat_values()]

    def row_sum(self, n):
        return sum(count for (size, _), count in self.entries.items() if size == n)

    def label(self):
        return f"{self.statistic.value}/{self.engine.value}"
