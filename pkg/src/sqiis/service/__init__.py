"""HTTP service wrapping the engine for long-running, multi-client use."""

from .app import create_app

__all__ = ["create_app"]
