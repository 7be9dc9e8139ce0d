"""FastAPI service wrapping the core package.

The ASGI instance lives at ``chsh_tradeoff.service.app:app`` (kept off this
namespace so the submodule name stays importable).
"""

from .app import create_app

__all__ = ["create_app"]
