from __future__ import annotations

import json
from contextlib import contextmanager
from typing import Iterable, Sequence

import numpy as np

from django.core.management.base import BaseCommand

from lattice.cli import RunConfig, command_error
from lattice.exceptions import LatticeError


def fmt(value) -> str:
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(value)
    return format(float(value), ".15g")


class LatticeCommand(BaseCommand):
    """Shared plumbing: --workers/--out, CSV and JSON output, error mapping."""

    requires_system_checks: list = []
    name = ""

    def add_output_arguments(self, parser, workers: bool = False) -> None:
        parser.add_argument("--out", default=None, help="output path (default: stdout)")
        if workers:
            parser.add_argument("--workers", type=int, default=None,
                                help="parallel lanes (default: VLP_WORKERS)")

    def handle(self, *args, **options):
        try:
            config = RunConfig.from_options(self.name, options)
            self.perform(config, **options)
        except LatticeError as exc:
            raise command_error(exc) from exc

    def perform(self, config: RunConfig, **options) -> None:
        raise NotImplementedError

    @contextmanager
    def _sink(self, out: str | None):
        if out:
            with open(out, "w", encoding="utf-8", newline="") as fh:
                yield fh.write
        else:
            yield lambda text: self.stdout.write(text, ending="")

    def emit_csv(self, config: RunConfig, header: Sequence[str], rows: Iterable[Sequence]) -> None:
        with self._sink(config.out) as write:
            write(",".join(header) + "\n")
            for row in rows:
                write(",".join(fmt(v) for v in row) + "\n")

    def emit_json(self, config: RunConfig, document: dict) -> None:
        with self._sink(config.out) as write:
            write(json.dumps(document, sort_keys=True) + "\n")
