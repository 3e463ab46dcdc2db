from __future__ import annotations

import logging
import threading
from dataclasses import dataclass, field
from pathlib import Path

from config import (
    AUXILIARY_STORE_NAMES,
    CYCLE_LOG_DIR_NAME,
    MEMORY_DIR_NAME,
    STORE_NAMES,
    STORE_VERSION,
)
from utils.errors import StoreError, ValidationError
from utils.jsonlHelper import append_line, read_lines
from utils.timeHelper import from_iso, to_iso, utc_date
from utils.validators import validate_store_name

logger = logging.getLogger(__name__)

# The cycle log is the only daily-rotated store
ROTATED_STORES = ("dag_nodes",)


@dataclass(frozen=True)
class StoreRecord:
    store: str
    sequence: int
    timestamp: float
    payload: dict

    def to_line(self):
        return {
            "v": STORE_VERSION,
            "store": self.store,
            "seq": self.sequence,
            "ts": to_iso(self.timestamp),
            "payload": self.payload,
        }

    @classmethod
    def from_line(cls, line, path=None, line_number=None):
        try:
            return cls(
                store=line["store"],
                sequence=int(line["seq"]),
                timestamp=from_iso(line["ts"]),
                payload=dict(line["payload"]),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise StoreError(f"Malformed store record: {e}", path=path, line=line_number) from e


@dataclass
class ReplayResult:
    records: list = field(default_factory=list)
    skipped: int = 0


@dataclass
class MemoryStore:
    """
    Append-only line-record stores under <state_dir>/memory.

    One writer per store; readers replay files into fresh snapshots.
    """
    state_dir: Path
    _sequences: dict = field(default_factory=dict)
    _lock: threading.Lock = field(default_factory=threading.Lock)

    def __post_init__(self):
        self.state_dir = Path(self.state_dir)

    @property
    def memory_dir(self):
        return self.state_dir / MEMORY_DIR_NAME

    @property
    def cycle_log_dir(self):
        return self.memory_dir / CYCLE_LOG_DIR_NAME

    def path_for(self, store, timestamp=None):
        """
        File a record of `store` written at `timestamp` belongs in.
        """
        if store in ROTATED_STORES:
            if timestamp is None:
                raise ValidationError(f"{store} is daily-rotated; a timestamp is required")
            return self.cycle_log_dir / f"{utc_date(timestamp)}.jsonl"
        return self.memory_dir / f"{store}.jsonl"

    def files_for(self, store):
        """
        Existing files of a store in replay order (by date for the cycle log).
        """
        if store in ROTATED_STORES:
            if not self.cycle_log_dir.exists():
                return []
            return sorted(self.cycle_log_dir.glob("*.jsonl"))
        path = self.memory_dir / f"{store}.jsonl"
        return [path] if path.exists() else []

    def _last_sequence(self, store):
        if store not in self._sequences:
            last = 0
            files = self.files_for(store)
            if files:
                records, _ = read_lines(files[-1])
                if records:
                    last = int(records[-1][1].get("seq", 0))
            self._sequences[store] = last
        return self._sequences[store]

    def append(self, store, payload, timestamp):
        """
        Append one record to a store.

        Args:
            store (str): Store name.
            payload (dict): Record body.
            timestamp (float): UTC seconds.

        Returns:
            int: The record's sequence number (previous + 1).

        Raises:
            ValidationError: Unknown store or non-object payload.
            StoreError: If the write fails; the sequence is not consumed.
        """
        is_valid, error_msg = validate_store_name(store)
        if not is_valid:
            raise ValidationError(error_msg)
        if not isinstance(payload, dict):
            raise ValidationError("Store payload must be an object")

        with self._lock:
            sequence = self._last_sequence(store) + 1
            record = StoreRecord(store, sequence, timestamp, payload)
            append_line(self.path_for(store, timestamp), record.to_line())
            self._sequences[store] = sequence
        return sequence

    def replay(self, store, date_from=None, date_to=None):
        """
        Read a store's records in (file date, sequence) order.

        Args:
            store (str): Store name.
            date_from (str, optional): Inclusive YYYY-MM-DD lower bound on record dates.
            date_to (str, optional): Inclusive YYYY-MM-DD upper bound.

        Returns:
            ReplayResult: Records plus the count of skipped partial lines.

        Raises:
            StoreError: On mid-file corruption, naming the file and line.
        """
        result = ReplayResult()
        for path in self.files_for(store):
            lines, skipped = read_lines(path)
            result.skipped += skipped
            file_records = [StoreRecord.from_line(line, path, number) for number, line in lines]
            file_records.sort(key=lambda record: record.sequence)
            for record in file_records:
                day = utc_date(record.timestamp)
                if date_from and day < date_from:
                    continue
                if date_to and day > date_to:
                    continue
                result.records.append(record)
        if result.skipped:
            logger.warning(f"Replay of {store} skipped {result.skipped} partial line(s)")
        logger.info(f"Replayed {len(result.records)} record(s) from {store}")
        return result

    def store_sizes(self):
        """
        Record count per store, for every known store.
        """
        sizes = {}
        for store in STORE_NAMES + AUXILIARY_STORE_NAMES:
            sizes[store] = len(self.replay(store).records)
        return sizes
