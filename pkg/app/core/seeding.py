"""Counter-based seed splitting.

Every random draw in the toolkit comes from a generator derived from the
master seed plus a key path, so a sub-algorithm can be replayed on its own.
"""

import hashlib
from typing import Union

import numpy as np
from numpy.random import Generator, SeedSequence

KeyPart = Union[int, str]


def _key_to_int(part: KeyPart) -> int:
    if isinstance(part, int):
        if part < 0:
            raise ValueError(f"Seed key parts must be non-negative, got {part}")
        return part
    digest = hashlib.sha256(part.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")


def seed_sequence(seed: int, *path: KeyPart) -> SeedSequence:
    return SeedSequence(seed, spawn_key=tuple(_key_to_int(p) for p in path))


def derive_rng(seed: int, *path: KeyPart) -> Generator:
    """Generator for ``(seed, *path)``; identical inputs give identical streams."""
    return np.random.default_rng(seed_sequence(seed, *path))


def derive_seed(seed: int, *path: KeyPart) -> int:
    """A plain integer seed for ``(seed, *path)``, for APIs that take ints."""
    return int(seed_sequence(seed, *path).generate_state(1, dtype=np.uint32)[0])
