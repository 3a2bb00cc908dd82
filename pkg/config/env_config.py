"""
Variables de entorno y generador aleatorio reproducible.
"""

import os
from typing import Optional

import numpy as np
from dotenv import load_dotenv

from .settings import DEFAULT_MAX_CYCLES, DEFAULT_TOLERANCE, RNG_BIT_GENERATOR

# Cargar variables de entorno
load_dotenv()


def get_seed(explicit: Optional[int] = None) -> Optional[int]:
    """
    Resuelve la semilla efectiva.

    Orden: semilla explícita, variable EBERLEIN_SEED, y si no hay ninguna
    se devuelve None (entropía del sistema operativo).

    Raises:
        ValueError: Si EBERLEIN_SEED no es un entero
    """
    if explicit is not None:
        return int(explicit)

    raw = os.getenv("EBERLEIN_SEED")
    if raw is None or not raw.strip():
        return None

    try:
        return int(raw)
    except ValueError:
        raise ValueError(
            f"EBERLEIN_SEED debe ser un entero, se recibió '{raw}'. "
            "Revisa tu archivo .env."
        )


def get_rng(seed: Optional[int] = None) -> np.random.Generator:
    """
    Crea el generador aleatorio del proyecto (PCG64, portable entre plataformas).

    Args:
        seed: Semilla; si es None se consulta EBERLEIN_SEED

    Returns:
        numpy.random.Generator
    """
    bit_generator = getattr(np.random, RNG_BIT_GENERATOR)
    return np.random.Generator(bit_generator(get_seed(seed)))


def get_env_float(name: str, default: float) -> float:
    """Lee un real de una variable de entorno, con valor por defecto."""
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return float(raw)
    except ValueError:
        raise ValueError(f"{name} debe ser un número real, se recibió '{raw}'")


def get_env_int(name: str, default: int) -> int:
    """Lee un entero de una variable de entorno, con valor por defecto."""
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} debe ser un entero, se recibió '{raw}'")


def get_default_tolerance() -> float:
    """Tolerancia por defecto (EBERLEIN_TOLERANCE o la de settings)."""
    return get_env_float("EBERLEIN_TOLERANCE", DEFAULT_TOLERANCE)


def get_default_max_cycles() -> int:
    """Número máximo de ciclos por defecto (EBERLEIN_MAX_CYCLES o settings)."""
    return get_env_int("EBERLEIN_MAX_CYCLES", DEFAULT_MAX_CYCLES)


def verify_environment() -> bool:
    """
    Muestra la configuración efectiva del entorno.

    Returns:
        bool: True si todas las variables son válidas, False en caso contrario
    """
    try:
        seed = get_seed()
        print(f"✓ Semilla: {seed if seed is not None else 'entropía del sistema'}")
        print(f"✓ Tolerancia: {get_default_tolerance():.1e}")
        print(f"✓ Ciclos máximos: {get_default_max_cycles()}")
        print(f"✓ Nivel de log: {os.getenv('EBERLEIN_LOG_LEVEL', 'WARNING')}")
        return True
    except ValueError as e:
        print(f"✗ Error en configuración: {str(e)}")
        return False


if __name__ == "__main__":
    print("Verificando configuración del entorno...")
    if verify_environment():
        print("✓ Todo funcionando correctamente")
    else:
        print("✗ Hay problemas con la configuración")
