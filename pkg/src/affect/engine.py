from __future__ import annotations

import logging

from affect.compute import DEFAULT_PARAMS, AffectSnapshot, CycleTelemetry, compute_affect
from config import CALM_BASELINE

logger = logging.getLogger(__name__)


class AffectEngine:
    """
    Threads calm and pressure through successive cycles.

    With a memory store attached, every snapshot is appended to the affect
    store and the engine resumes from the last stored snapshot.
    """

    def __init__(self, memory=None, params=DEFAULT_PARAMS):
        self.memory = memory
        self.params = params
        self.last = None
        if memory is not None:
            self.last = self.restore()

    @property
    def prev_calm(self):
        return self.last.calm if self.last else CALM_BASELINE

    @property
    def prev_pressure(self):
        return self.last.pressure if self.last else None

    def restore(self):
        records = self.memory.replay("affect").records
        if not records:
            return None
        snapshot = AffectSnapshot.from_record(records[-1].payload)
        logger.info(f"Affect resumed at calm {snapshot.calm:.2f}, pressure {snapshot.pressure:.2f}")
        return snapshot

    def step(self, telemetry, timestamp):
        """
        Compute and record the snapshot for one cycle.

        Args:
            telemetry (CycleTelemetry | dict): The cycle's signals.
            timestamp (float): Cycle time in UTC seconds.

        Returns:
            AffectSnapshot: The new reading.
        """
        if isinstance(telemetry, dict):
            telemetry = CycleTelemetry.from_record(telemetry)
        snapshot = compute_affect(telemetry, self.prev_calm, self.prev_pressure, timestamp, self.params)
        if self.memory is not None:
            self.memory.append("affect", snapshot.to_record(), timestamp)
        self.last = snapshot
        return snapshot

    def replay(self, telemetry_records, start, interval=60.0):
        """
        Step through a telemetry sequence, one cycle every `interval` seconds.

        Returns:
            list: One AffectSnapshot per record.
        """
        return [self.step(record, start + index * interval) for index, record in enumerate(telemetry_records)]
