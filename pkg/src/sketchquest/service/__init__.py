from .api import create_app
from .config import ServiceConfig, load_service_config
from .eventlog import EventLog, EventLogRecord, load_events, read_records
from .manager import SessionManager

__all__ = [
    "create_app",
    "ServiceConfig",
    "load_service_config",
    "EventLog",
    "EventLogRecord",
    "load_events",
    "read_records",
    "SessionManager",
]
