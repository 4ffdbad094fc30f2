import argparse
import sys

from app.application.certificates import validate_certificate
from app.core.logger import logger
from app.infrastructure.io.loaders import (
    load_certificate,
    load_instance,
    verdict_frame,
)
from app.infrastructure.io.schemas import VerdictSchema
from app.presentation.cli.common import (
    add_format_option,
    add_graph_kind_option,
    add_output_option,
    emit,
    instance_graph,
)


def register(subparsers, name: str) -> None:
    parser = subparsers.add_parser(
        name,
        help="Validate a block certificate",
        description="Exit 0 when the certificate is valid for the graph, 1 otherwise.",
    )
    parser.add_argument("--graph", required=True, help="Graph, poset or curves file")
    parser.add_argument("--cert", required=True, help="Certificate JSON")
    add_graph_kind_option(parser)
    add_format_option(parser)
    add_output_option(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    g = instance_graph(load_instance(args.graph), args.graph_kind)
    report = validate_certificate(g, load_certificate(args.cert))
    if report.passed:
        logger.info(f"verify: {args.cert} is valid for {args.graph}")
    else:
        logger.warning(f"verify: {args.cert} failed: {report.message}")
        sys.stderr.write(f"Certificate invalid: {report.message}\n")
    verdict = VerdictSchema.from_entity(report)
    emit(args, verdict, lambda: verdict_frame(verdict))
    return 0 if report.passed else 1
