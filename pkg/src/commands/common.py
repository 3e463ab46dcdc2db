from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path

from config import DEFAULT_STATE_DIR, STATE_DIR_ENV
from memory import MemoryStore
from utils.errors import StoreError, ValidationError
from utils.jsonlHelper import dumps_record, load_document, read_lines

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_DATA = 3


@dataclass
class CommandResult:
    """
    Outcome of one CLI command: exit code plus the lines for stdout and stderr.
    """
    exit_code: int = EXIT_OK
    lines: list = field(default_factory=list)
    errors: list = field(default_factory=list)

    def emit(self, text):
        self.lines.append(text)

    def record(self, record):
        self.lines.append(dumps_record(record))

    @property
    def output(self):
        return "\n".join(self.lines) + ("\n" if self.lines else "")


def failure(message, exit_code=EXIT_DATA):
    # main prints the message once; the log line only shows under --verbose
    logger.debug(f"Command failed with exit {exit_code}: {message}")
    return CommandResult(exit_code=exit_code, errors=[message])


def resolve_state_dir(flag_value=None):
    """
    State directory from the flag, then the environment, then ./state.
    """
    return Path(flag_value or os.environ.get(STATE_DIR_ENV) or DEFAULT_STATE_DIR)


def open_memory(args, must_exist=True):
    """
    Memory store for the command's state directory.

    Raises:
        StoreError: If the directory is required but missing.
    """
    state_dir = resolve_state_dir(getattr(args, "state_dir", None))
    if must_exist and not state_dir.is_dir():
        raise StoreError("State directory not found", path=state_dir)
    return MemoryStore(state_dir)


def read_json_file(path):
    """
    Load a JSON document from a path given on the command line.

    Raises:
        StoreError: If the file is missing or not valid JSON.
    """
    return load_document(Path(path))


def read_record_file(path):
    """
    Load a line-record file as (line number, record) pairs.

    A plain JSON array is accepted too; its items are numbered from 1.

    Raises:
        StoreError: If the file is missing or a line is malformed.
    """
    path = Path(path)
    if not path.is_file():
        raise StoreError("File not found", path=path)
    text = path.read_text(encoding="utf-8")
    if text.lstrip().startswith("["):
        try:
            items = json.loads(text)
        except json.JSONDecodeError as e:
            raise StoreError(f"Malformed JSON: {e.msg}", path=path, line=e.lineno) from e
        return list(enumerate(items, start=1))
    lines, _ = read_lines(path)
    return lines


def run_guarded(handler, args):
    """
    Call a command handler, turning library errors into exit codes.

    Returns:
        CommandResult: The handler's result, or a failure result.
    """
    try:
        return handler(args)
    except StoreError as e:
        return failure(str(e), EXIT_DATA)
    except ValidationError as e:
        return failure(str(e), EXIT_DATA)
