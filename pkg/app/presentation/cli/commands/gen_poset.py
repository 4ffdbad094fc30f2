import argparse

from app.core.logger import logger
from app.domain.poset import random_poset_dimension_k
from app.infrastructure.io.loaders import poset_frame
from app.infrastructure.io.schemas import PosetSchema
from app.presentation.cli.common import (
    add_format_option,
    add_output_option,
    add_seed_option,
    emit,
    resolve_seed,
)


def register(subparsers, name: str) -> None:
    parser = subparsers.add_parser(
        name,
        help="Generate a random poset",
        description="Intersect DIM uniformly random linear orders on N elements.",
    )
    parser.add_argument("--n", type=int, required=True, help="Number of elements")
    parser.add_argument("--dim", type=int, default=2, help="Dimension (default: 2)")
    add_seed_option(parser)
    add_format_option(parser)
    add_output_option(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    seed = resolve_seed(args)
    poset = random_poset_dimension_k(args.n, args.dim, seed)
    logger.info(
        f"gen-poset: n={args.n}, dim={args.dim}, seed={seed}, "
        f"{poset.relation_count()} relations"
    )
    schema = PosetSchema.from_entity(poset)
    emit(args, schema, lambda: poset_frame(schema))
    return 0
