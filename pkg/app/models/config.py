"""Engine and scan configuration data models."""

from dataclasses import dataclass, field

from app.constants import (
    DEFAULT_D_INIT,
    DEFAULT_D_MAX,
    DEFAULT_SCAN_WORKERS,
    DEFAULT_STRATEGY,
    ENGINE_STRATEGIES,
)


@dataclass
class EngineConfig:
    """Certified delta engine parameters.

    Attributes:
        d_init: First precision D of the iterative deepening.
        d_max: Largest precision tried before giving up (Undecided).
        strategy: ``"closure"`` (multiply basis rows by generators until
            stable) or ``"monomials"`` (enumerate all x^α with |α| ≤ D).
    """
    d_init: int = DEFAULT_D_INIT
    d_max: int = DEFAULT_D_MAX
    strategy: str = DEFAULT_STRATEGY

    def validate(self) -> None:
        if self.d_init < 1:
            raise ValueError(f"d_init must be >= 1, got {self.d_init!r}")
        if self.d_max < self.d_init:
            raise ValueError(f"d_max ({self.d_max}) must be >= d_init ({self.d_init})")
        if self.strategy not in ENGINE_STRATEGIES:
            raise ValueError(f"Unknown engine strategy: {self.strategy!r}")

    def precisions(self) -> list[int]:
        """Deepening schedule d_init, 2·d_init, … capped by d_max."""
        out = []
        d = self.d_init
        while d < self.d_max:
            out.append(d)
            d *= 2
        out.append(self.d_max)
        return out


@dataclass
class ScanConfig:
    """Family scan parameters.

    Attributes:
        engine: Engine settings used for every row.
        workers: Thread count for row evaluation (1 = sequential).
        truncate_generic: Truncate the generic specialization at
            4·(min certified special δ) − 1 before certifying it.
    """
    engine: EngineConfig = field(default_factory=EngineConfig)
    workers: int = DEFAULT_SCAN_WORKERS
    truncate_generic: bool = False

    def validate(self) -> None:
        self.engine.validate()
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers!r}")
