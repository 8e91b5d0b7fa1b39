"""Append-only, hash-chained, fsync-on-append event log.

One log file per session, one JSON record per line. Each record stores the
hash of its predecessor, so interior corruption is detected on load. A
torn final line (the crash case: unparseable or missing its newline) is
discarded; everything else must verify or the log is declared corrupt.
"""

import hashlib
import json
import os
import time
from dataclasses import dataclass
from pathlib import Path

from .. import canonjson
from ..core.events import SessionEvent
from ..core.serde import event_from_jsonable, event_to_jsonable
from ..errors import CorruptLog

GENESIS_HASH = "0" * 64


@dataclass(frozen=True)
class EventLogRecord:
    session_id: str
    seq: int
    ts: float
    event: SessionEvent
    prev_hash: str
    record_hash: str


def _record_body(session_id: str, seq: int, ts: float, event_jsonable: dict) -> dict:
    return {"session_id": session_id, "seq": seq, "ts": ts, "event": event_jsonable}


def _chain_hash(prev_hash: str, body: dict) -> str:
    return hashlib.sha256((prev_hash + canonjson.dumps(body)).encode("utf-8")).hexdigest()


class EventLog:
    """Writer/reader for one session's log file."""

    def __init__(self, path: str | Path, session_id: str):
        self.path = Path(path)
        self.session_id = session_id
        self._tip = GENESIS_HASH
        self._next_seq = 1
        if self.path.exists():
            records = read_records(self.path)
            if records:
                self._tip = records[-1].record_hash
                self._next_seq = records[-1].seq + 1

    def append(self, event: SessionEvent, ts: float | None = None) -> EventLogRecord:
        if event.seq != self._next_seq:
            raise CorruptLog(
                f"appending seq {event.seq}, log expects {self._next_seq}"
            )
        ts = time.time() if ts is None else ts
        body = _record_body(self.session_id, event.seq, round(ts, 6), event_to_jsonable(event))
        record_hash = _chain_hash(self._tip, body)
        line = canonjson.dumps({**body, "prev": self._tip, "hash": record_hash}) + "\n"
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "ab") as fh:
            fh.write(line.encode("utf-8"))
            fh.flush()
            os.fsync(fh.fileno())
        record = EventLogRecord(self.session_id, event.seq, round(ts, 6), event, self._tip, record_hash)
        self._tip = record_hash
        self._next_seq += 1
        return record


def read_records(path: str | Path) -> list[EventLogRecord]:
    """Parse and verify a log file. Raises CorruptLog on any verifiable
    damage; silently drops a torn final line."""
    raw = Path(path).read_bytes()
    if not raw:
        return []
    lines = raw.split(b"\n")
    # bytes after the last newline are a torn write from a crash; canonical
    # records never contain raw newlines, so every complete record has one
    lines = lines[:-1]

    records: list[EventLogRecord] = []
    tip = GENESIS_HASH
    expected_seq = 1
    for i, line in enumerate(lines):
        try:
            data = json.loads(line.decode("utf-8"))
        except (json.JSONDecodeError, UnicodeDecodeError) as exc:
            raise CorruptLog(f"record {i + 1} unparseable: {exc}") from exc
        try:
            session_id = data["session_id"]
            seq = data["seq"]
            ts = data["ts"]
            event_data = data["event"]
            prev = data["prev"]
            record_hash = data["hash"]
        except (KeyError, TypeError) as exc:
            raise CorruptLog(f"record {i + 1} missing field: {exc}") from exc
        if prev != tip:
            raise CorruptLog(f"record {i + 1} chain break: prev {prev[:8]} != tip {tip[:8]}")
        body = _record_body(session_id, seq, ts, event_data)
        if _chain_hash(prev, body) != record_hash:
            raise CorruptLog(f"record {i + 1} hash mismatch")
        if seq != expected_seq:
            raise CorruptLog(f"record {i + 1} seq {seq}, expected {expected_seq}")
        try:
            event = event_from_jsonable(event_data)
        except Exception as exc:
            raise CorruptLog(f"record {i + 1} bad event payload: {exc}") from exc
        if event.seq != seq:
            raise CorruptLog(f"record {i + 1} event seq {event.seq} != record seq {seq}")
        records.append(EventLogRecord(session_id, seq, ts, event, prev, record_hash))
        tip = record_hash
        expected_seq += 1
    return records


def load_events(path: str | Path) -> list[SessionEvent]:
    return [r.event for r in read_records(path)]
