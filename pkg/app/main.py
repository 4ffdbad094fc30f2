import sys
from typing import Optional, Sequence

from app.core.app import run_app

__all__ = ["main"]


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run_app(argv)


if __name__ == "__main__":
    sys.exit(main())
