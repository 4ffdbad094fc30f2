#!/usr/bin/env python3
"""
Format and lint the toolkit sources.

Runs isort, black and ruff over the given paths (``app``, ``tests`` and
``scripts`` when none are given), then the default pytest selection with
coverage when ``--tests`` is passed.
"""

import subprocess
import sys
from pathlib import Path
from typing import List

DEFAULT_PATHS = ["app", "tests", "scripts"]


class CodeQualityChecker:
    def __init__(self, paths: List[str], run_tests: bool = False):
        self.paths = [Path(p) for p in paths]
        self.run_tests = run_tests
        self.failed_checks = 0

    def run_checks(self) -> bool:
        """Run every check; True when all of them pass."""
        missing = [p for p in self.paths if not p.exists()]
        for path in missing:
            print(f"❌ Path not found: {path}")
        self.failed_checks += len(missing)
        targets = [str(p) for p in self.paths if p.exists()]

        if targets:
            print(f"\n🔍 Checking {', '.join(targets)}\n")
            steps = [
                (["isort", *targets], "Import sorting (isort)"),
                (["black", *targets], "Code formatting (black)"),
                (["ruff", "check", "--fix", *targets], "Lint and auto-fix (ruff)"),
            ]
            if self.run_tests:
                steps.append(
                    (["pytest", "-q", "--cov"], "Default test selection (pytest-cov)")
                )
            for cmd, name in steps:
                if not self.run_command(cmd, name):
                    self.failed_checks += 1

        if self.failed_checks == 0:
            print("\n✅ All code quality checks passed")
            return True
        print(f"\n❌ {self.failed_checks} checks failed")
        return False

    def run_command(self, cmd: List[str], check_name: str) -> bool:
        try:
            subprocess.run(cmd, check=True, capture_output=True, text=True)
            print(f"  ✔ {check_name} passed")
            return True
        except FileNotFoundError:
            print(f"  ❌ {check_name}: {cmd[0]} is not installed")
            return False
        except subprocess.CalledProcessError as e:
            print(f"  ❌ {check_name} failed:")
            print(e.stderr or e.stdout)
            return False


def main():
    args = sys.argv[1:]
    run_tests = "--tests" in args
    paths = [a for a in args if a != "--tests"] or DEFAULT_PATHS
    checker = CodeQualityChecker(paths, run_tests=run_tests)
    sys.exit(0 if checker.run_checks() else 1)


if __name__ == "__main__":
    main()
