import argparse

from app.application.certificates import validate_certificate
from app.application.extraction import (
    extract_blocks_comparability,
    extract_blocks_incomparability,
)
from app.application.use_cases.string_quasi_eh import StringQuasiEHUseCase
from app.application.witness import reconstruct_incomparability_witness
from app.core.logger import logger
from app.domain.poset import Poset
from app.infrastructure.io.loaders import (
    Instance,
    InstanceKind,
    certificate_frame,
    load_instance,
    load_poset,
)
from app.infrastructure.io.schemas import (
    CertificateSchema,
    ExtractionReportSchema,
    VerdictSchema,
)
from app.presentation.cli.common import (
    GraphKind,
    add_format_option,
    add_graph_kind_option,
    add_output_option,
    add_pipeline_options,
    algo_config,
    emit,
    instance_graph,
    pipeline_config,
)

DIRECT_BRANCH = "direct"


def register(subparsers, name: str) -> None:
    parser = subparsers.add_parser(
        name,
        help="Extract a block certificate",
        description=(
            "Run the string-graph pipeline on a graph, poset or curve family. "
            "With --alpha the block extraction runs directly on the poset "
            "witness instead."
        ),
    )
    parser.add_argument("--input", required=True, help="Graph, poset or curves file")
    parser.add_argument(
        "--input-type",
        type=InstanceKind,
        choices=list(InstanceKind),
        default=None,
        help="Instance type (default: detected from the file)",
    )
    parser.add_argument(
        "--witness", default=None, help="Poset JSON witnessing the input graph"
    )
    parser.add_argument(
        "--alpha", type=float, default=None, help="Density parameter in (0, 1]"
    )
    add_graph_kind_option(parser)
    add_pipeline_options(parser)
    add_format_option(parser)
    add_output_option(parser)
    parser.set_defaults(handler=run)


def _witness(instance: Instance, path) -> Poset:
    if instance.poset is not None:
        return instance.poset
    if path is not None:
        return load_poset(path)
    return reconstruct_incomparability_witness(instance.graph)


def run(args: argparse.Namespace) -> int:
    instance = load_instance(args.input, args.input_type)
    g = instance_graph(instance, args.graph_kind)
    if args.alpha is not None:
        poset = _witness(instance, args.witness)
        if args.graph_kind is GraphKind.COMPARABILITY:
            cert = extract_blocks_comparability(poset, args.alpha, algo_config(args))
        else:
            cert = extract_blocks_incomparability(
                g, poset, args.alpha, algo_config(args)
            )
        branch = DIRECT_BRANCH
    else:
        witness = None
        if args.witness is not None:
            witness = load_poset(args.witness)
        elif args.graph_kind is GraphKind.INCOMPARABILITY:
            witness = instance.poset
        outcome = StringQuasiEHUseCase(pipeline_config(args)).execute(g, witness)
        cert, branch = outcome.certificate, outcome.branch

    report = validate_certificate(g, cert)
    logger.info(f"extract: {branch} branch, t={cert.t}, valid={report.passed}")
    schema = ExtractionReportSchema(
        branch=branch,
        certificate=CertificateSchema.from_entity(cert),
        verdict=VerdictSchema.from_entity(report),
    )
    emit(args, schema, lambda: certificate_frame(cert))
    return 0 if report.passed else 1
