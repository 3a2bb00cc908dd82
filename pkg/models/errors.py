"""
Jerarquía de excepciones del solver de Eberlein por bloques.
"""


class EberleinError(Exception):
    """Error base del proyecto."""


class InvalidArgumentError(EberleinError, ValueError):
    """Argumento inválido: dimensiones, particiones, ordenamientos, escalares."""


class ConvergenceFailure(EberleinError):
    """
    El Jacobi interno agotó sus barridos sin alcanzar la tolerancia.

    Attributes:
        best: Mejor iterado disponible (matriz unitaria acumulada)
        sweeps: Barridos ejecutados
    """

    def __init__(self, message, best=None, sweeps=0):
        super().__init__(message)
        self.best = best
        self.sweeps = sweeps


class NumericalFailure(EberleinError):
    """
    Aparecieron NaN/Inf en los iterados o falló la recursión sobre un bloque.

    Attributes:
        last_good: Último iterado finito
        log: ConvergenceLog acumulado hasta el fallo
    """

    def __init__(self, message, last_good=None, log=None):
        super().__init__(message)
        self.last_good = last_good
        self.log = log


class MatrixMarketParseError(EberleinError):
    """Archivo Matrix Market mal formado."""

    def __init__(self, message, path=None, line=None):
        location = str(path) if path is not None else "<desconocido>"
        if line is not None:
            location = f"{location}:{line}"
        super().__init__(f"{location}: {message}")
        self.path = path
        self.line = line


class OutputError(EberleinError, OSError):
    """No se pudo leer o escribir un archivo de resultados."""
