"""Input document data model."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Union

if TYPE_CHECKING:
    from app.models.family import FamilyParameterization, SpecPoint
    from app.models.param import Parameterization


@dataclass
class DocumentOptions:
    """Engine options stored in a document (all optional).

    Attributes:
        dinit: Initial precision of the deepening.
        dmax: Largest precision.
        strategy: Spanning strategy name.
    """
    dinit: int | None = None
    dmax: int | None = None
    strategy: str | None = None

    def is_empty(self) -> bool:
        return self.dinit is None and self.dmax is None and self.strategy is None


@dataclass
class InputDocument:
    """Parsed input document.

    Attributes:
        value: Parameterization (``"field"`` tag) or family (``"ring"`` tag).
        options: Engine options from the ``"options"`` object.
        points: Specialization points from ``"points"`` (families only).
        name: Optional display name.
    """
    value: Union[Parameterization, FamilyParameterization]
    options: DocumentOptions = field(default_factory=DocumentOptions)
    points: list[SpecPoint] = field(default_factory=list)
    name: str = ""
