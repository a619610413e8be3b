"""Подкоманды командной строки; каждая регистрируется через ``register``."""

from __future__ import annotations

from app.handlers import evaluate, experiment, optimize, profile

COMMANDS = (evaluate, optimize, experiment, profile)
