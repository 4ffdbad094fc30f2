#!/usr/bin/env python3
"""
Write a small set of sample instances for trying out the CLI.

Works from any directory: the project root is located from pyproject.toml.
"""
import sys
from pathlib import Path


def find_project_root() -> Path:
    """Find the project root (the directory holding pyproject.toml)."""
    current = Path(__file__).resolve().parent
    while current != current.parent:
        if (current / "pyproject.toml").exists():
            return current
        current = current.parent
    raise RuntimeError("Could not find the project root (no pyproject.toml)")


project_root = find_project_root()
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from app.application.use_cases.string_quasi_eh import string_quasi_eh  # noqa: E402
from app.core.config import settings  # noqa: E402
from app.core.seeding import derive_rng  # noqa: E402
from app.domain.geometry import permutation_to_segments  # noqa: E402
from app.domain.graph import build_graph  # noqa: E402
from app.domain.poset import (  # noqa: E402
    incomparability_graph,
    poset_from_relations,
    random_poset_dimension_k,
)
from app.infrastructure.io.loaders import (  # noqa: E402
    format_edge_list,
    to_json,
    write_text,
)
from app.infrastructure.io.schemas import (  # noqa: E402
    CertificateSchema,
    CurvesSchema,
    PosetSchema,
)


def seed_data(target: Path, seed: int) -> list[Path]:
    written = []

    def save(name: str, text: str) -> None:
        path = target / name
        write_text(path, text)
        written.append(path)

    chain = poset_from_relations(10, [(i, i + 1) for i in range(9)])
    save("chain_10.poset.json", to_json(PosetSchema.from_entity(chain)))

    dim2 = random_poset_dimension_k(60, 2, seed)
    save("dim2_60.poset.json", to_json(PosetSchema.from_entity(dim2)))

    pi = derive_rng(seed, "seed-data", 40).permutation(40)
    curves, witness = permutation_to_segments(pi)
    save("perm_40.curves.json", to_json(CurvesSchema.from_entity(curves)))
    save("perm_40.witness.json", to_json(PosetSchema.from_entity(witness)))

    cycle = build_graph(5, [(i, (i + 1) % 5) for i in range(5)])
    save("c5.txt", format_edge_list(cycle))

    cert = string_quasi_eh(incomparability_graph(dim2), dim2)
    save("dim2_60.cert.json", to_json(CertificateSchema.from_entity(cert)))
    return written


if __name__ == "__main__":
    target = Path(sys.argv[1]) if len(sys.argv) > 1 else project_root / "data"
    for path in seed_data(target, settings.seed):
        print(f"wrote {path}")
