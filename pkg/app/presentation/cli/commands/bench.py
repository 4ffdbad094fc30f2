import argparse
import sys
from pathlib import Path

from app.application.use_cases.bench import BenchFamily, BenchUseCase, parse_n_range
from app.core.config import OutputFormat
from app.domain.interfaces import RunRecordRepository
from app.infrastructure.exceptions import InvalidInputException
from app.infrastructure.io.repositories import (
    CsvRunRecordRepository,
    InMemoryRunRecordRepository,
    JsonLinesRunRecordRepository,
    records_frame,
)
from app.infrastructure.io.schemas import RunRecordSchema
from app.presentation.cli.common import (
    add_format_option,
    add_output_option,
    add_pipeline_options,
    pipeline_config,
)


def register(subparsers, name: str) -> None:
    parser = subparsers.add_parser(
        name,
        help="Benchmark the pipeline on a generated family",
        description=(
            "Run seeded trials for sizes doubling across --n-range and record "
            "one row per trial, ordered by (n, seed)."
        ),
    )
    parser.add_argument(
        "--family", type=BenchFamily, choices=list(BenchFamily), required=True
    )
    parser.add_argument(
        "--n-range", required=True, help="Sizes as a..b (doubling) or a single n"
    )
    parser.add_argument("--trials", type=int, default=1, help="Trials per size")
    parser.add_argument(
        "--workers", type=int, default=1, help="Worker processes (default: 1)"
    )
    parser.add_argument(
        "--no-ramsey",
        dest="with_ramsey",
        action="store_false",
        help="Skip the clique/independent-set recursion",
    )
    add_pipeline_options(parser)
    add_format_option(parser, "--out", "--format")
    add_output_option(parser)
    parser.set_defaults(handler=run)


def _repository(args: argparse.Namespace) -> RunRecordRepository:
    if not args.output:
        return InMemoryRunRecordRepository()
    path = Path(args.output)
    if args.format is OutputFormat.CSV:
        return CsvRunRecordRepository(path)
    return JsonLinesRunRecordRepository(path)


def run(args: argparse.Namespace) -> int:
    if args.workers < 1:
        raise InvalidInputException(f"--workers must be >= 1, got {args.workers}")
    repository = _repository(args)
    records = BenchUseCase(repository, pipeline_config(args)).execute(
        args.family,
        parse_n_range(args.n_range),
        args.trials,
        workers=args.workers,
        with_ramsey=args.with_ramsey,
    )
    if not args.output:
        if args.format is OutputFormat.CSV:
            sys.stdout.write(records_frame(records).to_csv(index=False))
        else:
            for record in records:
                sys.stdout.write(RunRecordSchema.from_entity(record).model_dump_json())
                sys.stdout.write("\n")
    return 0 if all(r.certificate_valid for r in records) else 1
