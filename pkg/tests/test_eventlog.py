import json
import random

import pytest

from sketchquest.core import events as ev
from sketchquest.core.reducer import reduce
from sketchquest.core.serde import event_from_jsonable, serialize_session
from sketchquest.core.types import initial_session
from sketchquest.errors import CorruptLog
from sketchquest.service.eventlog import EventLog, load_events, read_records

from conftest import make_quest, random_stroke


def scripted_events(n_strokes: int = 10):
    """A plausible event sequence, validated through the reducer."""
    rng = random.Random(1234)
    session = initial_session("log-test")
    events = [ev.GoalSubmitted(1, "test goal"), ev.QuestGenerated(2, make_quest(goal="test goal"))]
    for i in range(n_strokes):
        events.append(ev.StrokeAdded(3 + i, random_stroke(rng, ident=f"s{i}")))
    for event in events:
        session, _ = reduce(session, event)
    return events, session


class TestAppendReload:
    def test_write_then_reload_reproduces_state(self, tmp_path):
        events, final = scripted_events()
        log = EventLog(tmp_path / "s.log", "log-test")
        for event in events:
            log.append(event)
        loaded = load_events(tmp_path / "s.log")
        assert loaded == events
        session = initial_session("log-test")
        for event in loaded:
            session, _ = reduce(session, event)
        assert serialize_session(session) == serialize_session(final)

    def test_reopen_continues_chain(self, tmp_path):
        events, _ = scripted_events(4)
        path = tmp_path / "s.log"
        log = EventLog(path, "log-test")
        for event in events[:3]:
            log.append(event)
        log2 = EventLog(path, "log-test")  # fresh handle, like a restart
        for event in events[3:]:
            log2.append(event)
        assert load_events(path) == events

    def test_append_rejects_seq_gap(self, tmp_path):
        events, _ = scripted_events(2)
        log = EventLog(tmp_path / "s.log", "log-test")
        log.append(events[0])
        with pytest.raises(CorruptLog):
            log.append(events[2])


class TestCorruption:
    def test_single_byte_flip_detected(self, tmp_path):
        events, _ = scripted_events(6)
        path = tmp_path / "s.log"
        log = EventLog(path, "log-test")
        for event in events:
            log.append(event)
        raw = bytearray(path.read_bytes())
        # flip a byte inside the third record's line
        lines = path.read_bytes().split(b"\n")
        offset = len(lines[0]) + 1 + len(lines[1]) + 1 + len(lines[2]) // 2
        raw[offset] ^= 0x01
        path.write_bytes(bytes(raw))
        with pytest.raises(CorruptLog):
            read_records(path)

    def test_chain_break_detected(self, tmp_path):
        events, _ = scripted_events(3)
        path = tmp_path / "s.log"
        log = EventLog(path, "log-test")
        for event in events:
            log.append(event)
        lines = path.read_bytes().decode().splitlines()
        del lines[2]  # removing an interior record breaks the chain
        path.write_text("\n".join(lines) + "\n")
        with pytest.raises(CorruptLog):
            read_records(path)

    def test_torn_final_line_discarded(self, tmp_path):
        events, _ = scripted_events(5)
        path = tmp_path / "s.log"
        log = EventLog(path, "log-test")
        for event in events:
            log.append(event)
        raw = path.read_bytes()
        path.write_bytes(raw[: len(raw) - 17])  # cut mid final record
        records = read_records(path)
        assert [r.event for r in records] == events[:-1]


class TestCrashRecovery:
    def test_random_crash_points_recover_prefix_fold(self, tmp_path):
        """Kill the writer at 100 random byte offsets; recovery must equal
        the independent fold of the complete-record prefix."""
        events, _ = scripted_events(20)
        path = tmp_path / "full.log"
        log = EventLog(path, "log-test")
        for event in events:
            log.append(event)
        raw = path.read_bytes()

        rng = random.Random(90)
        cut_points = sorted(rng.sample(range(len(raw) + 1), 100))
        for cut in cut_points:
            prefix_path = tmp_path / "prefix.log"
            prefix_path.write_bytes(raw[:cut])
            recovered = load_events(prefix_path)

            # prefix-fold oracle: parse complete lines directly, fold via reduce
            complete = raw[:cut].split(b"\n")[:-1]
            oracle_events = [
                event_from_jsonable(json.loads(line.decode())["event"]) for line in complete
            ]
            assert recovered == oracle_events

            recovered_state = initial_session("log-test")
            for event in recovered:
                recovered_state, _ = reduce(recovered_state, event)
            oracle_state = initial_session("log-test")
            for event in oracle_events:
                oracle_state, _ = reduce(oracle_state, event)
            assert serialize_session(recovered_state) == serialize_session(oracle_state)
