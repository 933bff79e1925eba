"""Shipped data: the cubic catalog, the report schema and example pairs."""
from __future__ import annotations

from importlib import resources


def example_names() -> list[str]:
    root = resources.files(__name__).joinpath("pairs")
    return sorted(p.name for p in root.iterdir() if p.is_dir())


def example_pair(name: str):
    """(F, B) of a shipped example such as ``family-4-2-2-2``."""
    from zariski.core.parse import parse_poly

    root = resources.files(__name__).joinpath("pairs", name)
    if not root.is_dir():
        raise KeyError(f"no shipped example {name!r}; have {', '.join(example_names())}")
    return tuple(parse_poly(_strip(root.joinpath(f).read_text())) for f in ("F.txt", "B.txt"))


def _strip(text: str) -> str:
    return " ".join(line for line in text.splitlines() if not line.lstrip().startswith("#"))
