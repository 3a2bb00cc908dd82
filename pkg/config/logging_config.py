"""
Configuración de logging para los módulos de cálculo.
"""

import logging
import os

_MARKERS = {
    logging.DEBUG: "·",
    logging.INFO: "✓",
    logging.WARNING: "⚠",
    logging.ERROR: "✗",
    logging.CRITICAL: "✗",
}

_configured = False


class MarkerFormatter(logging.Formatter):
    """Antepone al mensaje el marcador de estado usado en la consola."""

    def format(self, record):
        marker = _MARKERS.get(record.levelno, "·")
        return f"{marker} [{record.name}] {record.getMessage()}"


def configure_logging(level=None):
    """
    Instala un único handler de consola para el paquete (idempotente).

    Args:
        level: Nivel de log; por defecto EBERLEIN_LOG_LEVEL o WARNING
    """
    global _configured
    root = logging.getLogger("eberlein")
    if level is None:
        level = os.getenv("EBERLEIN_LOG_LEVEL", "WARNING").upper()
    root.setLevel(level)

    if not _configured:
        handler = logging.StreamHandler()
        handler.setFormatter(MarkerFormatter())
        root.addHandler(handler)
        _configured = True


def get_logger(name: str) -> logging.Logger:
    """Obtiene un logger hijo del logger 'eberlein'."""
    if not name.startswith("eberlein"):
        name = f"eberlein.{name}"
    return logging.getLogger(name)
