"""
Shared plumbing for the lab management commands: exit codes and file helpers.

Exit codes: 0 success, 2 config or usage, 3 I/O or parse, 4 internal error.
"""

import json
import logging
from pathlib import Path

import pandas as pd
from django.core.management.base import BaseCommand, CommandError
from rest_framework import serializers

from cohesion.exceptions import CohesionError
from dynamics.exceptions import DynamicsError, UnknownModel
from experiments.exceptions import ExperimentError, UnknownDistribution
from networks.core import InfluenceNetwork
from networks.exceptions import BadParameters, NetworkError, ParseError
from networks.formats import FORMATS, deserialize, guess_format
from validation.exceptions import MissingData, ValidationPipelineError

from .config import ConfigError

logger = logging.getLogger(__name__)

CONFIG_ERROR = 2
IO_ERROR = 3
INTERNAL_ERROR = 4

CONFIG_ERRORS = (serializers.ValidationError, ConfigError, BadParameters, UnknownDistribution, UnknownModel)
IO_ERRORS = (
    OSError,
    ParseError,
    json.JSONDecodeError,
    UnicodeDecodeError,
    MissingData,
    pd.errors.ParserError,
    pd.errors.EmptyDataError,
)
INTERNAL_ERRORS = (NetworkError, CohesionError, DynamicsError, ExperimentError, ValidationPipelineError)


def describe(exc) -> str:
    if isinstance(exc, serializers.ValidationError):
        return json.dumps(exc.detail, default=str)
    return str(exc)


class LabCommand(BaseCommand):
    """Subclasses implement ``run``; package errors leave as ``CommandError`` with a lab exit code."""

    def handle(self, *args, **options):
        try:
            return self.run(*args, **options)
        except CommandError:
            raise
        except CONFIG_ERRORS as exc:
            raise CommandError(f"config error: {describe(exc)}", returncode=CONFIG_ERROR) from exc
        except IO_ERRORS as exc:
            raise CommandError(f"I/O error: {exc}", returncode=IO_ERROR) from exc
        except INTERNAL_ERRORS as exc:
            logger.exception("%s failed", self.__module__.rsplit(".", 1)[-1])
            raise CommandError(f"internal error: {exc}", returncode=INTERNAL_ERROR) from exc

    def run(self, *args, **options):
        raise NotImplementedError

    def add_output_arguments(self, parser, out_help="output directory (default: MEDYN_OUTPUT_DIR)", config=True):
        """``--out``, ``--format`` and ``--threads`` for every command, plus ``--config`` unless turned off."""
        parser.add_argument("--out", help=out_help)
        parser.add_argument("--format", choices=FORMATS, help="json or csv for the tables a command writes")
        parser.add_argument("--threads", type=int, help="workers (default: MEDYN_THREADS); never changes results")
        if config:
            parser.add_argument("--config", help="JSON run config; flags override its fields")


def read_network(path) -> InfluenceNetwork:
    """Load a network file; a file that is not a valid network is a parse error."""
    path = Path(path)
    data = path.read_bytes()
    try:
        return deserialize(data, guess_format(path))
    except ParseError:
        raise
    except NetworkError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def write_json(document, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(document, indent=2, sort_keys=True) + "\n")
    return path
