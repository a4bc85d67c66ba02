"""Command-line surface: ``python -m lattice <subcommand> ...``.

Every subcommand is a Django management command of the ``lattice`` app;
``run`` dispatches to them and turns errors into exit statuses
(0 ok, 1 usage, 2 numeric failure, 3 oracle or identity mismatch).
"""
from __future__ import annotations

import logging
import math
import sys
from dataclasses import dataclass
from typing import Optional, Sequence, TextIO

from django.core.management import call_command
from django.core.management.base import CommandError

from .conf import setting
from .exceptions import (DomainError, IdentityViolation, LatticeError, NumericFailure,
                         OracleMismatch)

log = logging.getLogger("lattice")

SUBCOMMANDS = ("fields", "sieve", "count", "circle", "fit", "perron", "oracle")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERIC = 2
EXIT_MISMATCH = 3


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    d: Optional[int] = None
    m: int = 1
    s: int = 1
    x_min: Optional[float] = None
    x_max: Optional[float] = None
    grid_ratio: float = 1.25
    limit: Optional[int] = None
    out: Optional[str] = None
    workers: int = 1
    tol: Optional[float] = None

    @classmethod
    def from_options(cls, subcommand: str, options: dict) -> "RunConfig":
        workers = options.get("workers")
        if workers is None:
            workers = setting("VLP_WORKERS")
        ratio = options.get("ratio")
        if ratio is None:
            ratio = setting("VLP_GRID_RATIO")
        config = cls(
            subcommand=subcommand,
            d=options.get("d"),
            m=options.get("m") or 1,
            s=options.get("s") or 1,
            x_min=options.get("xmin"),
            x_max=options.get("xmax"),
            grid_ratio=ratio,
            limit=options.get("limit"),
            out=options.get("out"),
            workers=workers,
            tol=options.get("tol"),
        )
        config.validate()
        return config

    def validate(self) -> None:
        if self.grid_ratio <= 1:
            raise DomainError("--ratio must be greater than 1")
        if self.workers < 1:
            raise DomainError("--workers must be at least 1")
        if self.limit is not None and self.x_max is not None and self.limit < math.floor(self.x_max):
            raise DomainError("--limit must be at least --xmax")
        if self.tol is not None and self.tol <= 0:
            raise DomainError("--tol must be positive")

    @property
    def table_limit(self) -> int:
        if self.limit is not None:
            return self.limit
        return max(1, math.floor(self.x_max or 1))


def command_error(exc: LatticeError) -> CommandError:
    if isinstance(exc, (OracleMismatch, IdentityViolation)):
        code = EXIT_MISMATCH
    elif isinstance(exc, NumericFailure):
        code = EXIT_NUMERIC
    else:
        code = EXIT_USAGE
    return CommandError(str(exc), returncode=code)


def run(argv: Sequence[str], stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    if not argv or argv[0] not in SUBCOMMANDS:
        stderr.write(f"usage: {' | '.join(SUBCOMMANDS)} [options]\n")
        return EXIT_USAGE
    name, *rest = argv
    try:
        call_command(name, *rest, stdout=stdout, stderr=stderr)
    except CommandError as exc:
        stderr.write(f"{exc}\n")
        return exc.returncode
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    return EXIT_OK
