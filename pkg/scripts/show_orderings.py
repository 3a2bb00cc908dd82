"""
Script para mostrar ordenamientos de pivotes en forma de matriz.
"""

from typing import Optional

from eberlein import col_cyclic, is_serial_member, row_cyclic, serial_with_permutations
from eberlein.pivot import PivotOrdering, ordering_to_text
from models import InvalidArgumentError

ORDERING_KINDS = ["row", "col", "serial-perm", "serial-perm-row"]


def build_named_ordering(m: int, kind: str, seed: Optional[int] = None) -> PivotOrdering:
    if kind == "row":
        return row_cyclic(m)
    if kind == "col":
        return col_cyclic(m)
    if kind == "serial-perm":
        return serial_with_permutations(m, seed, "col")
    if kind == "serial-perm-row":
        return serial_with_permutations(m, seed, "row")
    raise InvalidArgumentError(f"Tipo de ordenamiento desconocido: {kind}")


def show_ordering(m: int, kind: str, seed: Optional[int] = None) -> str:
    """Imprime el ordenamiento y su clase serial; devuelve el texto de la matriz."""
    ordering = build_named_ordering(m, kind, seed)
    text = ordering_to_text(ordering)
    print(f"\n📐 Ordenamiento {ordering.provenance} (m = {m}, clase {is_serial_member(ordering)})")
    print(text)
    return text
