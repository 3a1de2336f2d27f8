from pathlib import Path


def read_text(path: str | Path, fallback: str | None = None) -> str:
    p = Path(path)
    if p.exists():
        return p.read_text(encoding="utf-8")

    if fallback is None:
        raise FileNotFoundError(f"No such file: {p}")
    return fallback
