from app.presentation.cli.commands import (
    bench,
    extract,
    gen_curves,
    gen_poset,
    ramsey,
    verify,
)

COMMANDS = {
    "gen-poset": gen_poset,
    "gen-curves": gen_curves,
    "extract": extract,
    "ramsey": ramsey,
    "verify": verify,
    "bench": bench,
}


def include_commands(subparsers) -> None:
    for name, module in COMMANDS.items():
        module.register(subparsers, name)
