"""
Wavefront pipeline entry point.

    python main.py run --config data/phantoms/default.phantom --out-dir runs/default
    python main.py constants --config data/phantoms/default.phantom

Defaults live in src/config/settings.py and can be overridden with WFK_*
environment variables or a .env file.
"""

import sys

from src.cli import main

if __name__ == "__main__":
    sys.exit(main())
