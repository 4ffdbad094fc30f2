import argparse

from app.application.witness import poset_to_segments
from app.core.logger import logger
from app.core.seeding import derive_rng
from app.domain.geometry import permutation_to_segments
from app.infrastructure.exceptions import InvalidInputException
from app.infrastructure.io.loaders import curves_frame, load_poset, to_json, write_text
from app.infrastructure.io.schemas import CurvesSchema, PosetSchema
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
        help="Generate segment families",
        description=(
            "Segments of a random permutation, or segments realizing a "
            "poset of dimension at most two."
        ),
    )
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument(
        "--perm-n", type=int, help="Segments of a random permutation of this size"
    )
    source.add_argument(
        "--from-poset", help="Poset JSON whose incomparability graph to realize"
    )
    parser.add_argument(
        "--witness-out", default=None, help="Also write the witness poset here"
    )
    add_seed_option(parser)
    add_format_option(parser)
    add_output_option(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    if args.from_poset is not None:
        curves, witness = poset_to_segments(load_poset(args.from_poset))
        logger.info(f"gen-curves: {len(curves)} segments from {args.from_poset}")
    else:
        if args.perm_n < 1:
            raise InvalidInputException(f"--perm-n must be >= 1, got {args.perm_n}")
        seed = resolve_seed(args)
        pi = derive_rng(seed, "gen-curves", args.perm_n).permutation(args.perm_n)
        curves, witness = permutation_to_segments(pi)
        logger.info(f"gen-curves: permutation of size {args.perm_n}, seed={seed}")
    if args.witness_out:
        write_text(args.witness_out, to_json(PosetSchema.from_entity(witness)))
    emit(args, CurvesSchema.from_entity(curves), lambda: curves_frame(curves))
    return 0
