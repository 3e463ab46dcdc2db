import json
import logging
import os
from pathlib import Path
from utils.errors import StoreError

logger = logging.getLogger(__name__)


def dumps_record(record):
    """
    Serialize one record as a single canonical JSON line (no newline).

    Keys are sorted so equal records always produce equal bytes.
    """
    return json.dumps(record, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _drop_uncommitted_tail(path):
    """
    Remove bytes after the last newline of a file.

    A line only counts as committed once its newline is on disk, so a
    crash mid-write leaves an uncommitted tail that must not be glued to
    the next record.

    Args:
        path (Path): The store file.

    Returns:
        int: Number of bytes dropped.
    """
    size = path.stat().st_size
    if size == 0:
        return 0
    with open(path, "rb") as handle:
        data = handle.read()
    if data.endswith(b"\n"):
        return 0
    keep = data.rfind(b"\n") + 1
    os.truncate(path, keep)
    logger.warning(f"Dropped {size - keep} uncommitted bytes at the tail of {path}")
    return size - keep


def append_line(path, record):
    """
    Append one record to a line-record file and flush it to disk.

    Args:
        path (Path): Target file; parent directories are created.
        record (dict): JSON-serializable record.

    Raises:
        StoreError: If the write fails.
    """
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        if path.exists():
            _drop_uncommitted_tail(path)
        line = dumps_record(record) + "\n"
        with open(path, "a", encoding="utf-8") as handle:
            handle.write(line)
            handle.flush()
            os.fsync(handle.fileno())
    except OSError as e:
        logger.error(f"Failed to append to {path}: {str(e)}")
        raise StoreError(f"Write failed: {e}", path=path) from e


def read_lines(path):
    """
    Read every committed record of a line-record file.

    An unparseable final line without a terminating newline is a partial
    write: it is skipped and counted. Any other unparseable line is
    corruption.

    Args:
        path (Path): File to read; a missing file reads as empty.

    Returns:
        tuple: (list of (line_number, record) pairs, number of skipped lines).

    Raises:
        StoreError: On mid-file corruption or an unreadable file.
    """
    path = Path(path)
    if not path.exists():
        return [], 0
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise StoreError(f"Unreadable store file: {e}", path=path) from e

    lines = text.split("\n")
    terminated = text.endswith("\n")
    if terminated:
        lines = lines[:-1]

    records, skipped = [], 0
    for index, raw in enumerate(lines):
        line_number = index + 1
        if not raw.strip():
            continue
        try:
            record = json.loads(raw)
            if not isinstance(record, dict):
                raise ValueError("record is not an object")
        except ValueError as e:
            is_tail = index == len(lines) - 1 and not terminated
            if is_tail:
                logger.warning(f"Skipping partial trailing line {line_number} in {path}")
                skipped += 1
                continue
            raise StoreError(f"Corrupt record: {e}", path=path, line=line_number) from e
        records.append((line_number, record))
    return records, skipped


def load_document(path):
    """
    Load a JSON configuration or input document.

    Args:
        path (str | Path): Document path.

    Returns:
        object: The parsed JSON value.

    Raises:
        StoreError: If the file is missing or not valid JSON.
    """
    path = Path(path)
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as e:
        raise StoreError("File not found", path=path) from e
    except (OSError, ValueError) as e:
        raise StoreError(f"Unreadable document: {e}", path=path) from e
