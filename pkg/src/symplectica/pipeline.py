"""Ordered sequences of symplectic transformation steps.

A pipeline records the steps of a decoupling / diagonalization /
normalization recipe together with the accumulated transport matrix.
Applying the pipeline conjugates with the steps in order: first step
innermost, so ``pipeline.matrix = R_n @ ... @ R_1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["TransformPipeline"]


@dataclass(frozen=True)
class TransformPipeline:
    """Immutable ordered list of transforms; each step exposes ``.matrix``."""

    order: int
    steps: tuple = ()

    @property
    def matrix(self) -> np.ndarray:
        """Accumulated representative, product of the step matrices."""
        acc = np.eye(self.order)
        for step in self.steps:
            acc = step.matrix @ acc
        return acc

    def extended(self, step) -> "TransformPipeline":
        return TransformPipeline(self.order, self.steps + (step,))

    def conjugate(self, m: np.ndarray) -> np.ndarray:
        """R M R^T with the accumulated representative."""
        r = self.matrix
        return r @ m @ r.T

    def symplecticity_residual(self, form) -> float:
        r = self.matrix
        form = np.asarray(form, dtype=float)
        return float(np.abs(r @ form @ r.T - form).max())

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)
