"""Service configuration.

Config file is JSON with the documented key set; every referenced file
must exist at startup and the data directory must be writable.

    {
      "listen": "127.0.0.1:8400",
      "data_dir": "./data",
      "enable_monitor": true,
      "provider": {"mode": "offline", "endpoint": null, "token_env": null,
                   "timeout": 20, "retries": 2, "cache_dir": null},
      "monitor": {"tick_interval": 30, "stall_ticks": 4, "debounce": true},
      "quest_templates": null,   // path; null = packaged defaults
      "feedback_rules": null,
      "helper_catalog": null
    }
"""

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from ..feedback.compose import MonitorPolicy
from ..providers.base import ProviderConfig, ProviderMode


@dataclass(frozen=True)
class ServiceConfig:
    listen_host: str = "127.0.0.1"
    listen_port: int = 8400
    data_dir: str = "./data"
    enable_monitor: bool = True
    provider: ProviderConfig = field(default_factory=ProviderConfig)
    policy: MonitorPolicy = field(default_factory=MonitorPolicy)
    quest_templates: str | None = None
    feedback_rules: str | None = None
    helper_catalog: str | None = None

    def validate(self) -> None:
        path = Path(self.data_dir)
        path.mkdir(parents=True, exist_ok=True)
        if not os.access(path, os.W_OK):
            raise ValueError(f"data directory {path} is not writable")
        for name, ref in (
            ("quest_templates", self.quest_templates),
            ("feedback_rules", self.feedback_rules),
        ):
            if ref is not None and not Path(ref).is_file():
                raise ValueError(f"{name} file {ref!r} does not exist")
        if self.helper_catalog is not None and not Path(self.helper_catalog).is_dir():
            raise ValueError(f"helper_catalog directory {self.helper_catalog!r} does not exist")


def config_from_jsonable(data: dict) -> ServiceConfig:
    listen = data.get("listen", "127.0.0.1:8400")
    host, _, port = listen.rpartition(":")
    provider_data = data.get("provider", {})
    provider = ProviderConfig(
        mode=ProviderMode(provider_data.get("mode", "offline")),
        endpoint=provider_data.get("endpoint"),
        token_env=provider_data.get("token_env"),
        timeout=provider_data.get("timeout", 20.0),
        retries=provider_data.get("retries", 2),
        cache_dir=provider_data.get("cache_dir"),
    )
    monitor_data = data.get("monitor", {})
    policy = MonitorPolicy(
        tick_interval=monitor_data.get("tick_interval", 30),
        stall_ticks=monitor_data.get("stall_ticks", 4),
        debounce=monitor_data.get("debounce", True),
    )
    return ServiceConfig(
        listen_host=host or "127.0.0.1",
        listen_port=int(port) if port else 8400,
        data_dir=data.get("data_dir", "./data"),
        enable_monitor=data.get("enable_monitor", True),
        provider=provider,
        policy=policy,
        quest_templates=data.get("quest_templates"),
        feedback_rules=data.get("feedback_rules"),
        helper_catalog=data.get("helper_catalog"),
    )


def load_service_config(path: str | Path) -> ServiceConfig:
    with open(path, encoding="utf-8") as fh:
        return config_from_jsonable(json.load(fh))
