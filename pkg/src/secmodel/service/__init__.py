"""HTTP service: a FastAPI app exposing models and what-if sessions."""

from .app import create_app, load_registry

__all__ = ["create_app", "load_registry"]
