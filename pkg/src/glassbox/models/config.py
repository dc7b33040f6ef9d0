"""Training hyperparameters with the documented defaults."""

from __future__ import annotations

from dataclasses import dataclass, field

from glassbox.errors import ValidationError


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 0.1
    epochs: int = 200
    seed: int = 0
    hidden_sizes: tuple[int, ...] = (16,)
    max_depth: int = 5
    min_leaf: int = 2
    grid: tuple[int, int] = (4, 4)  # patch-mean grid for image models

    def __post_init__(self) -> None:
        if self.learning_rate <= 0:
            raise ValidationError("learning_rate must be > 0")
        if self.epochs < 1:
            raise ValidationError("epochs must be >= 1")
        if self.seed < 0:
            raise ValidationError("seed must be unsigned")
        if any(h < 1 for h in self.hidden_sizes):
            raise ValidationError("hidden sizes must be >= 1")
        if self.max_depth < 1 or self.min_leaf < 1:
            raise ValidationError("max_depth and min_leaf must be >= 1")
        if self.grid[0] < 1 or self.grid[1] < 1:
            raise ValidationError("grid dimensions must be >= 1")
