"""Base window interface."""

from abc import ABC, abstractmethod

import numpy as np


class BaseWindow(ABC):
    """Abstract base class for radial and angular filter windows."""

    name: str = "base"

    @abstractmethod
    def __call__(self, values: np.ndarray) -> np.ndarray:
        """Evaluate the window pointwise."""
        pass

    @abstractmethod
    def l1_norm(self) -> float:
        """L1 norm over its domain (the real line or the circle)."""
        pass

    @abstractmethod
    def derivative_norm(self) -> float:
        """L1 norm of the (distributional) derivative."""
        pass
