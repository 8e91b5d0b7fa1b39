"""Exception hierarchy shared across the package.

Every error the service maps onto an HTTP status lives here so the API
layer can translate by isinstance checks alone.
"""


class SketchQuestError(Exception):
    """Base class for all domain errors."""


# --- session state machine ---------------------------------------------------

class OutOfOrderEvent(SketchQuestError):
    """Event sequence number does not follow the session's event counter."""


class IllegalTransition(SketchQuestError):
    """Event is not legal in the session's current phase."""


class UnknownSession(SketchQuestError):
    pass


class UnknownTask(SketchQuestError):
    pass


class TaskNotReady(SketchQuestError):
    """Completion was confirmed for a task whose criteria are not yet met."""


class AlreadyCompleted(SketchQuestError):
    pass


# --- quest generation --------------------------------------------------------

class EmptyGoal(SketchQuestError):
    pass


class UnrepairableDraft(SketchQuestError):
    """A provider draft violates quest invariants even after repair."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations) or "unrepairable draft")


# --- canvas ------------------------------------------------------------------

class InvalidStroke(SketchQuestError):
    pass


class InvalidHelper(SketchQuestError):
    pass


class UnknownHelper(SketchQuestError):
    pass


class MalformedDocument(SketchQuestError):
    pass


class BadDimensions(SketchQuestError):
    pass


# --- scaffolds and style -----------------------------------------------------

class NoSuchHelper(SketchQuestError):
    pass


class UnsafeMarkup(SketchQuestError):
    pass


class PhaseViolation(SketchQuestError):
    """Style transformation requested before all tasks are complete."""


# --- feedback ----------------------------------------------------------------

class FramingViolation(SketchQuestError):
    """A composed card failed framing validation; the phrase table is broken."""


class MissingSlot(SketchQuestError):
    pass


# --- providers ---------------------------------------------------------------

class ProviderFailure(SketchQuestError):
    """Remote provider unreachable or unusable after retries."""


class Timeout(ProviderFailure):
    pass


class RemoteError(ProviderFailure):
    def __init__(self, status, message=""):
        self.status = status
        super().__init__(message or f"remote provider returned status {status}")


class MalformedProviderReply(ProviderFailure):
    pass


# --- persistence -------------------------------------------------------------

class CorruptLog(SketchQuestError):
    """Hash chain or record structure of an event log is broken."""
