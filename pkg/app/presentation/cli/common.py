"""Options and output helpers shared by the subcommands."""

import argparse
import sys
from enum import Enum
from typing import Callable, Optional

import pandas as pd
from pydantic import BaseModel

from app.core.config import (
    AlgoConfig,
    OutputFormat,
    PipelineConfig,
    SeparatorStrategy,
    WitnessMode,
    settings,
)
from app.domain.graph import Graph
from app.domain.poset import comparability_graph
from app.infrastructure.io.loaders import Instance, to_csv, to_json, write_text


class GraphKind(str, Enum):
    INCOMPARABILITY = "incomparability"
    COMPARABILITY = "comparability"


def add_format_option(parser: argparse.ArgumentParser, *flags: str) -> None:
    parser.add_argument(
        *(flags or ("--format",)),
        dest="format",
        type=OutputFormat,
        choices=list(OutputFormat),
        default=OutputFormat.JSON,
        help="Output format (default: json)",
    )


def add_output_option(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--output", "-o", default=None, help="Write to this file instead of stdout"
    )


def add_seed_option(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--seed", type=int, default=None, help="Master seed (default: EH_SEED)"
    )


def add_graph_kind_option(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--graph-kind",
        type=GraphKind,
        choices=list(GraphKind),
        default=GraphKind.INCOMPARABILITY,
        help="Graph a poset input stands for (default: incomparability)",
    )


def add_pipeline_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--lambda",
        dest="lambda_",
        type=float,
        default=None,
        help="Sparse/dense edge-density cut (default: EH_LAMBDA)",
    )
    eps = parser.add_mutually_exclusive_group()
    eps.add_argument(
        "--paper-eps",
        dest="safe_eps",
        action="store_false",
        help="Use the configured epsilon (default)",
    )
    eps.add_argument(
        "--safe-eps",
        dest="safe_eps",
        action="store_true",
        help="Use epsilon_safe from the start",
    )
    parser.set_defaults(safe_eps=False)
    parser.add_argument(
        "--separator",
        type=SeparatorStrategy,
        choices=list(SeparatorStrategy),
        default=None,
        help="Separator strategy for sparse inputs (default: auto)",
    )
    parser.add_argument(
        "--witness-mode",
        type=WitnessMode,
        choices=list(WitnessMode),
        default=None,
        help="How dense inputs without a witness are handled",
    )
    add_seed_option(parser)


def resolve_seed(args: argparse.Namespace) -> int:
    seed = getattr(args, "seed", None)
    return settings.seed if seed is None else seed


def algo_config(args: argparse.Namespace) -> AlgoConfig:
    algo = AlgoConfig.from_settings(seed=resolve_seed(args))
    return algo.with_safe_epsilon() if getattr(args, "safe_eps", False) else algo


def pipeline_config(args: argparse.Namespace) -> PipelineConfig:
    return PipelineConfig.from_settings(
        algo=algo_config(args),
        lambda_=getattr(args, "lambda_", None),
        separator_strategy=getattr(args, "separator", None),
        dense_witness=getattr(args, "witness_mode", None),
        output_format=getattr(args, "format", None),
    )


def instance_graph(instance: Instance, kind: GraphKind) -> Graph:
    if instance.poset is not None and kind is GraphKind.COMPARABILITY:
        return comparability_graph(instance.poset)
    return instance.graph


def emit(
    args: argparse.Namespace,
    model: BaseModel,
    frame: Optional[Callable[[], pd.DataFrame]] = None,
) -> None:
    """Write ``model`` as JSON, or ``frame()`` as CSV when asked for csv."""
    if args.format is OutputFormat.CSV and frame is not None:
        text = to_csv(frame())
    else:
        text = to_json(model)
    if args.output:
        write_text(args.output, text)
    else:
        sys.stdout.write(text)
