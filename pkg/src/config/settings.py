"""
Configuration settings for the wavefront pipeline.
Loads environment variables and defines filter/extraction defaults.
"""

import math
import os
from pathlib import Path
from dotenv import load_dotenv

# Load .env file
load_dotenv(Path(__file__).parent.parent.parent / ".env")


class Settings:
    """Central configuration for wavefront experiments."""

    # Runtime
    THREADS: int = int(os.getenv("WFK_THREADS", str(os.cpu_count() or 1)))
    LOG_LEVEL: str = os.getenv("WFK_LOG_LEVEL", "INFO")

    # Grid
    DEFAULT_M: int = int(os.getenv("WFK_M", "6"))

    # Directional filters
    # alpha follows the experiments (pi/16); --strict-parabolic switches to the equality scaling
    DEFAULT_ALPHA: float = math.pi / 16
    DEFAULT_NUM_ANGLES: int = 16

    # Surfel extraction
    TAU_FRACTION: float = float(os.getenv("WFK_TAU_FRACTION", "0.5"))
    CLUSTER_MIN_PX: float = 1.5
    CLUSTER_MAX_PX: float = 4.0
    MIDLINE_GAP_PX: float = 2.0
    MIDLINE_NMS_PX: float = 1.5

    # Segmentation
    ZETA_MAX_PX: float = 1.0
    LINK_RADIUS_PX: float = 4.0
    BRIDGE_RADIUS_PX: float = 8.0
    ROTATION_WALK: int = 8
    CHORD_MARGIN: float = math.pi / 4
    HERMITE_SAMPLES: int = 16

    # Storage Configuration
    BASE_DIR: Path = Path(__file__).parent.parent.parent
    DATA_DIR: Path = BASE_DIR / "data"
    PHANTOM_DIR: Path = DATA_DIR / "phantoms"
    DEFAULT_PHANTOM: Path = PHANTOM_DIR / "default.phantom"
    OUTPUT_DIR: Path = Path(os.getenv("WFK_OUTPUT_DIR", str(BASE_DIR / "runs")))

    def __init__(self):
        if self.THREADS < 1:
            raise ValueError(f"WFK_THREADS must be a positive integer, got {self.THREADS}")


settings = Settings()
