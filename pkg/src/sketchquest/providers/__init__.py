from .base import HelperDraft, Provider, ProviderCapability, ProviderConfig, ProviderMode
from .offline import OfflineProvider
from .remote import FallbackProvider, RemoteProvider, build_provider, call_remote

__all__ = [
    "HelperDraft",
    "Provider",
    "ProviderCapability",
    "ProviderConfig",
    "ProviderMode",
    "OfflineProvider",
    "FallbackProvider",
    "RemoteProvider",
    "build_provider",
    "call_remote",
]
