import argparse

from app.application.ramsey import brute_force_ramsey
from app.application.use_cases.string_eh import StringEHUseCase
from app.core.config import settings
from app.core.logger import logger
from app.infrastructure.io.loaders import (
    load_instance,
    load_poset,
    ramsey_frame,
    to_json,
    write_text,
)
from app.infrastructure.io.schemas import CotreeSchema, RamseyResultSchema
from app.presentation.cli.common import (
    add_format_option,
    add_output_option,
    add_pipeline_options,
    emit,
    pipeline_config,
)


def register(subparsers, name: str) -> None:
    parser = subparsers.add_parser(
        name,
        help="Find a large clique or independent set",
        description=(
            "Exact search up to --exact-cap vertices; larger inputs go "
            "through the certificate recursion."
        ),
    )
    parser.add_argument("--input", required=True, help="Graph, poset or curves file")
    parser.add_argument(
        "--exact-cap",
        type=int,
        default=settings.exact_cap,
        help=f"Largest n solved exactly (default: {settings.exact_cap})",
    )
    parser.add_argument(
        "--witness", default=None, help="Poset JSON witnessing the input graph"
    )
    parser.add_argument(
        "--cotree-out",
        default=None,
        help="Write the recursion's cotree as JSON here (skips the exact search)",
    )
    add_pipeline_options(parser)
    add_format_option(parser)
    add_output_option(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    instance = load_instance(args.input)
    g = instance.graph
    if g.n <= args.exact_cap and args.cotree_out is None:
        result = brute_force_ramsey(g, args.exact_cap)
    else:
        witness = load_poset(args.witness) if args.witness else instance.poset
        result = StringEHUseCase(pipeline_config(args)).execute(g, witness)
    logger.info(
        f"ramsey: n={g.n}, clique {len(result.clique)}, "
        f"independent {len(result.independent)}, exact={result.exact}"
    )
    if args.cotree_out is not None:
        write_text(args.cotree_out, to_json(CotreeSchema.from_entity(result.cotree)))
    emit(args, RamseyResultSchema.from_entity(result), lambda: ramsey_frame(result))
    return 0
