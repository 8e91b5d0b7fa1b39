"""Session manager: per-session event queues over the pure reducer.

One lock per session gives every session a single total order of events;
the hash-chained log is appended before the in-memory state advances, so
the log is always the source of truth. Provider calls run outside the
reduction and re-enter the queue as events (AnalysisArrived,
QuestGenerated, StyleApplied).
"""

import hashlib
import logging
import threading
import time
import uuid
from dataclasses import replace
from pathlib import Path

from ..canvas.model import HelperObject
from ..core import events as ev
from ..core.reducer import ReducerContext, reduce
from ..core.types import Session, SessionPhase, StyleKind, initial_session
from ..errors import EmptyGoal, UnknownHelper
from ..feedback.compose import MonitorPolicy, compose_feedback, should_analyze
from ..feedback.rules import FeedbackConfig, default_config, load_config
from ..quest.engine import generate_quest
from ..quest.templates import TemplateInventory, default_inventory, load_templates
from ..scaffold.catalog import HelperCatalog, default_catalog, load_catalog, request_helper
from ..scaffold.style import apply_style
from .config import ServiceConfig
from .eventlog import EventLog, load_events

logger = logging.getLogger("sketchquest.service")


class SessionRuntime:
    def __init__(self, session: Session, log: EventLog):
        self.session = session
        self.log = log
        self.lock = threading.Lock()
        self.pending_helpers: dict[str, HelperObject] = {}
        self.helper_nonce = 0
        self.last_cards: tuple = ()


class SessionManager:
    def __init__(self, config: ServiceConfig, provider):
        self.config = config
        self.provider = provider
        self.data_dir = Path(config.data_dir)
        self.sessions_dir = self.data_dir / "sessions"
        self.artifacts_dir = self.data_dir / "artifacts"
        self.sessions: dict[str, SessionRuntime] = {}
        self._registry_lock = threading.Lock()

        self.feedback_config: FeedbackConfig = (
            load_config(config.feedback_rules) if config.feedback_rules else default_config()
        )
        self.inventory: TemplateInventory = (
            load_templates(config.quest_templates) if config.quest_templates else default_inventory()
        )
        self.catalog: HelperCatalog = (
            load_catalog(config.helper_catalog) if config.helper_catalog else default_catalog()
        )
        self.policy: MonitorPolicy = config.policy
        self.ctx = ReducerContext(
            policy=self.policy,
            should_analyze=should_analyze,
            compose=self._compose,
        )
        self._monitor_stop = threading.Event()
        self._monitor_thread: threading.Thread | None = None

    def _compose(self, session, analysis, **kwargs):
        return compose_feedback(
            session, analysis, config=self.feedback_config, policy=self.policy, **kwargs
        )

    # --- lifecycle -------------------------------------------------------

    def load_all(self) -> int:
        """Fold every persisted log back into memory. Returns session count."""
        count = 0
        if not self.sessions_dir.is_dir():
            return 0
        for log_path in sorted(self.sessions_dir.glob("*.log")):
            session_id = log_path.stem
            session = initial_session(session_id)
            for event in load_events(log_path):
                session, _ = reduce(session, event, self.ctx)
            self.sessions[session_id] = SessionRuntime(session, EventLog(log_path, session_id))
            count += 1
        return count

    def start_monitor(self) -> None:
        if self._monitor_thread is not None:
            return
        self._monitor_thread = threading.Thread(target=self._monitor_loop, daemon=True)
        self._monitor_thread.start()

    def stop_monitor(self) -> None:
        self._monitor_stop.set()
        if self._monitor_thread is not None:
            self._monitor_thread.join(timeout=3)
            self._monitor_thread = None

    def _monitor_loop(self) -> None:
        while not self._monitor_stop.wait(1.0):
            now = int(time.time())
            for runtime in list(self.sessions.values()):
                session = runtime.session
                if session.phase != SessionPhase.QUEST_ACTIVE:
                    continue
                if now - session.monitor.last_analysis_tick < self.policy.tick_interval:
                    continue
                try:
                    self.tick(session.session_id, now)
                except Exception:
                    logger.exception("monitor tick failed for %s", session.session_id)

    # --- event application ------------------------------------------------

    def _runtime(self, session_id: str) -> SessionRuntime:
        runtime = self.sessions.get(session_id)
        if runtime is None:
            raise KeyError(session_id)
        return runtime

    def _apply(self, runtime: SessionRuntime, build) -> tuple[Session, list]:
        """Build the event under the session lock (correct seq), reduce,
        persist, then commit in memory."""
        with runtime.lock:
            event = build(runtime.session.event_seq + 1)
            new_session, effects = reduce(runtime.session, event, self.ctx)
            runtime.log.append(event)
            runtime.session = new_session
            return new_session, effects

    # --- operations -------------------------------------------------------

    def create_session(self, goal: str) -> Session:
        if not goal or not goal.strip():
            raise EmptyGoal("learning goal must be non-empty")
        goal = goal.strip()
        session_id = uuid.uuid4().hex[:12]
        log = EventLog(self.sessions_dir / f"{session_id}.log", session_id)
        runtime = SessionRuntime(initial_session(session_id), log)
        with self._registry_lock:
            self.sessions[session_id] = runtime
        _, effects = self._apply(runtime, lambda seq: ev.GoalSubmitted(seq, goal))
        for effect in effects:
            if isinstance(effect, ev.GenerateQuest):
                quest = generate_quest(effect.goal, self.provider)
                self._apply(runtime, lambda seq: ev.QuestGenerated(seq, quest))
        return runtime.session

    def get_session(self, session_id: str) -> Session:
        return self._runtime(session_id).session

    def add_stroke(self, session_id: str, stroke) -> Session:
        runtime = self._runtime(session_id)
        session, _ = self._apply(runtime, lambda seq: ev.StrokeAdded(seq, stroke))
        return session

    def check(self, session_id: str) -> tuple[Session, tuple]:
        """Manual check: always analyzes, returns the fresh cards."""
        runtime = self._runtime(session_id)
        _, effects = self._apply(runtime, lambda seq: ev.CheckRequested(seq))
        cards: tuple = ()
        for effect in effects:
            if isinstance(effect, ev.AnalyzeCanvas):
                cards = self._run_analysis(runtime, manual=True)
        return runtime.session, cards

    def tick(self, session_id: str, tick: int) -> tuple:
        runtime = self._runtime(session_id)
        _, effects = self._apply(runtime, lambda seq: ev.TickElapsed(seq, tick))
        cards: tuple = ()
        for effect in effects:
            if isinstance(effect, ev.AnalyzeCanvas):
                cards = self._run_analysis(runtime, manual=False)
        return cards

    def _run_analysis(self, runtime: SessionRuntime, manual: bool) -> tuple:
        session = runtime.session
        task = session.quest.active_task() if session.quest else None
        raw = self.provider.analyze_canvas(session.canvas, task)
        prev_rev = session.last_analysis.at_revision if session.last_analysis else -1
        analysis = replace(raw, changed=raw.at_revision > prev_rev)
        if session.goal:
            try:
                texts = self.provider.draft_feedback(session.goal, analysis)
            except Exception:
                texts = {}
            if texts:
                analysis = replace(analysis, draft_texts=dict(texts))
        _, effects = self._apply(runtime, lambda seq: ev.AnalysisArrived(seq, analysis))
        for effect in effects:
            if isinstance(effect, ev.ComposeFeedback):
                runtime.last_cards = effect.cards
                return effect.cards
        return ()

    def complete_task(self, session_id: str, task_id: str) -> tuple[Session, tuple]:
        runtime = self._runtime(session_id)
        _, effects = self._apply(
            runtime, lambda seq: ev.TaskCompletionConfirmed(seq, task_id)
        )
        cards: tuple = ()
        for effect in effects:
            if isinstance(effect, ev.ComposeFeedback):
                cards = effect.cards
        return runtime.session, cards

    def request_helper(self, session_id: str, hint: str) -> HelperObject:
        runtime = self._runtime(session_id)
        with runtime.lock:
            runtime.helper_nonce += 1
            nonce = runtime.helper_nonce
            session = runtime.session
        helper = request_helper(session, hint, self.provider, nonce=nonce)
        with runtime.lock:
            runtime.pending_helpers[helper.helper_id] = helper
        return helper

    def place_helper(self, session_id: str, helper_id: str, position: tuple[float, float]) -> Session:
        runtime = self._runtime(session_id)
        with runtime.lock:
            helper = runtime.pending_helpers.get(helper_id)
        if helper is None:
            placed = next(
                (h for h in runtime.session.canvas.helpers if h.helper_id == helper_id), None
            )
            if placed is None:
                raise UnknownHelper(f"no helper {helper_id!r} pending or placed")
            helper = placed
        helper = replace(helper, position=position)
        session, _ = self._apply(runtime, lambda seq: ev.HelperPlaced(seq, helper))
        with runtime.lock:
            runtime.pending_helpers.pop(helper_id, None)
        return session

    def apply_style(self, session_id: str, style: StyleKind, seed: int) -> tuple[Session, str]:
        runtime = self._runtime(session_id)
        _, effects = self._apply(runtime, lambda seq: ev.StyleRequested(seq, style, seed))
        artifact_ref = ""
        for effect in effects:
            if isinstance(effect, ev.ApplyStyle):
                png = apply_style(
                    runtime.session.canvas,
                    effect.style,
                    effect.seed,
                    self.provider,
                    phase=runtime.session.phase,
                )
                artifact_ref = f"{hashlib.sha256(png).hexdigest()[:16]}.png"
                target = self.artifacts_dir / session_id / artifact_ref
                target.parent.mkdir(parents=True, exist_ok=True)
                target.write_bytes(png)
                self._apply(runtime, lambda seq: ev.StyleApplied(seq, artifact_ref))
        return runtime.session, artifact_ref

    def get_artifact(self, session_id: str, artifact_ref: str) -> bytes | None:
        if "/" in artifact_ref or "\\" in artifact_ref or ".." in artifact_ref:
            return None
        path = self.artifacts_dir / session_id / artifact_ref
        if not path.is_file():
            return None
        return path.read_bytes()
