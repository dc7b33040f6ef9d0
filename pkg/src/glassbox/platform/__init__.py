"""Persistence, HTTP service, CLI, and the bundled demo scenarios."""

from glassbox.platform.bundle import Registry, ScenarioBundle, load_bundle
from glassbox.platform.canonical import canonical_json, content_hash
from glassbox.platform.scenarios import build_demo_data
from glassbox.platform.service import ServiceConfig, create_app, serve
from glassbox.platform.store import ModelRecord, ModelStore

__all__ = [
    "ModelRecord",
    "ModelStore",
    "Registry",
    "ScenarioBundle",
    "ServiceConfig",
    "build_demo_data",
    "canonical_json",
    "content_hash",
    "create_app",
    "load_bundle",
    "serve",
]
