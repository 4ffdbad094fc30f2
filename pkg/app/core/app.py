import argparse
import sys
from typing import Optional, Sequence

from app.core.logger import configure_logging, logger
from app.infrastructure.exceptions import EHToolkitException
from app.presentation.cli.router import include_commands

VERSION = "0.1.0"


def create_app() -> argparse.ArgumentParser:
    """Create and configure the command-line application."""
    app = argparse.ArgumentParser(
        prog="eh-toolkit",
        description=(
            "Certified block extraction and clique/independent-set search "
            "for string graphs and incomparability graphs"
        ),
    )
    app.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    app.add_argument("--verbose", "-v", action="store_true", help="Also log to stderr")
    subparsers = app.add_subparsers(dest="command", metavar="COMMAND", required=True)
    include_commands(subparsers)
    return app


def run_app(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv``, dispatch the subcommand and map errors to exit codes."""
    args = create_app().parse_args(argv)
    if args.verbose:
        configure_logging(console=True)
    logger.info(f"Running {args.command}...")
    try:
        return args.handler(args)
    except EHToolkitException as e:
        logger.error(f"{args.command} failed ({type(e).__name__}): {e}")
        sys.stderr.write(f"error: {e}\n")
        return e.exit_code
    except Exception as e:
        logger.error(f"Unhandled exception in {args.command}: {e}", exc_info=True)
        sys.stderr.write(f"internal error: {e}\n")
        return 1
