"""
Ordenamientos de pivotes: listas de los m(m-1)/2 pares (p, q), p < q, con
índices de bloque 1-based.

Incluye los ordenamientos cíclicos por filas y columnas, los ordenamientos
seriales con permutaciones (clases B_c y B_r), y las transformaciones de
equivalencia (desplazamiento, inversión, transposición admisible y
permutación de vértices).
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from config.env_config import get_rng
from models.errors import InvalidArgumentError, OutputError
from .blockmat import PivotPair


@dataclass(frozen=True)
class PivotOrdering:
    """Ordenamiento completo: cada par p < q aparece exactamente una vez."""

    m: int
    pairs: Tuple[PivotPair, ...]
    provenance: str = "custom"
    chain: Tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.m < 2:
            raise InvalidArgumentError(f"Se necesitan al menos dos bloques (m = {self.m})")
        pairs = tuple(pair if isinstance(pair, PivotPair) else PivotPair(*pair) for pair in self.pairs)
        object.__setattr__(self, "pairs", pairs)

        expected = self.m * (self.m - 1) // 2
        seen = set()
        for pair in pairs:
            if pair.q > self.m:
                raise InvalidArgumentError(f"Par {tuple(pair)} fuera de rango para m = {self.m}")
            if (pair.p, pair.q) in seen:
                raise InvalidArgumentError(f"Par repetido en el ordenamiento: {tuple(pair)}")
            seen.add((pair.p, pair.q))
        if len(pairs) != expected:
            raise InvalidArgumentError(
                f"Ordenamiento incompleto: {len(pairs)} pares, se esperaban {expected}"
            )

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[PivotPair]:
        return iter(self.pairs)

    def as_tuples(self) -> List[Tuple[int, int]]:
        return [(pair.p, pair.q) for pair in self.pairs]

    def index_matrix(self) -> np.ndarray:
        """Matriz m x m con la posición (0-based) de cada par en el triángulo superior; -1 en el resto."""
        grid = np.full((self.m, self.m), -1, dtype=int)
        for k, pair in enumerate(self.pairs):
            grid[pair.p - 1, pair.q - 1] = k
        return grid


# ------------------------------------------------------------------
# Constructores
# ------------------------------------------------------------------

def row_cyclic(m: int) -> PivotOrdering:
    """(1,2), (1,3), ..., (1,m), (2,3), ..., (m-1,m)."""
    pairs = [(p, q) for p in range(1, m + 1) for q in range(p + 1, m + 1)]
    return PivotOrdering(m, tuple(pairs), provenance="row")


def col_cyclic(m: int) -> PivotOrdering:
    """(1,2), (1,3), (2,3), (1,4), ..., (m-1,m)."""
    pairs = [(p, q) for q in range(2, m + 1) for p in range(1, q)]
    return PivotOrdering(m, tuple(pairs), provenance="col")


def serial_from_permutations(
    m: int,
    permutations: Sequence[Sequence[int]],
    direction: str = "col"
) -> PivotOrdering:
    """
    Ordenamiento serial con permutaciones explícitas.

    direction="col": permutations[j-3] es una permutación de 1..j-1 para j = 3..m,
    y se recorre (1,2), (tau_3(1),3), (tau_3(2),3), ..., (tau_m(m-1),m).

    direction="row": permutations[k] es una permutación de i+1..m para
    i = m-2, m-3, ..., 1 (en ese orden); la fila m-1 sólo contiene (m-1, m).
    """
    if m < 2:
        raise InvalidArgumentError(f"Se necesitan al menos dos bloques (m = {m})")
    if len(permutations) != max(m - 2, 0):
        raise InvalidArgumentError(f"Se esperaban {m - 2} permutaciones, se recibieron {len(permutations)}")

    if direction == "col":
        pairs = [(1, 2)]
        for j, tau in zip(range(3, m + 1), permutations):
            tau = [int(x) for x in tau]
            if sorted(tau) != list(range(1, j)):
                raise InvalidArgumentError(f"tau_{j} no es una permutación de 1..{j - 1}: {tau}")
            pairs.extend((i, j) for i in tau)
        return PivotOrdering(m, tuple(pairs), provenance="serial_perm_col")

    if direction == "row":
        pairs = [(m - 1, m)]
        for i, tau in zip(range(m - 2, 0, -1), permutations):
            tau = [int(x) for x in tau]
            if sorted(tau) != list(range(i + 1, m + 1)):
                raise InvalidArgumentError(f"tau_{i} no es una permutación de {i + 1}..{m}: {tau}")
            pairs.extend((i, j) for j in tau)
        return PivotOrdering(m, tuple(pairs), provenance="serial_perm_row")

    raise InvalidArgumentError(f"Dirección desconocida: {direction} (use 'col' o 'row')")


def serial_with_permutations(m: int, seed: Optional[int] = None, direction: str = "col") -> PivotOrdering:
    """Ordenamiento serial con permutaciones uniformes sacadas del generador sembrado."""
    rng = get_rng(seed)
    if direction == "col":
        taus = [rng.permutation(np.arange(1, j)) for j in range(3, m + 1)]
    elif direction == "row":
        taus = [rng.permutation(np.arange(i + 1, m + 1)) for i in range(m - 2, 0, -1)]
    else:
        raise InvalidArgumentError(f"Dirección desconocida: {direction} (use 'col' o 'row')")
    return serial_from_permutations(m, taus, direction)


def from_index_matrix(grid: Sequence[Sequence[int]], provenance: str = "custom") -> PivotOrdering:
    """
    Construye un ordenamiento a partir de su matriz de posiciones: grid[p-1][q-1]
    es la posición (0-based) del par (p, q); el resto de las entradas se ignora.
    """
    grid = np.asarray(grid, dtype=int)
    m = grid.shape[0]
    positions = {int(grid[p, q]): (p + 1, q + 1) for p in range(m) for q in range(p + 1, m)}
    if sorted(positions) != list(range(m * (m - 1) // 2)):
        raise InvalidArgumentError("La matriz de posiciones no enumera 0..M-1 exactamente una vez")
    return PivotOrdering(m, tuple(positions[k] for k in sorted(positions)), provenance=provenance)


# ------------------------------------------------------------------
# Equivalencias
# ------------------------------------------------------------------

@dataclass(frozen=True)
class Shift:
    t: int


@dataclass(frozen=True)
class Reverse:
    pass


@dataclass(frozen=True)
class TransposeAt:
    k: int


@dataclass(frozen=True)
class VertexPerm:
    q: Tuple[int, ...]


DerivationOp = Union[Shift, Reverse, TransposeAt, VertexPerm]


def is_admissible_transposition(a: PivotPair, b: PivotPair) -> bool:
    """Dos pares consecutivos conmutan si son disjuntos: {p,q} ∩ {p',q'} = ∅."""
    return not ({a.p, a.q} & {b.p, b.q})


def _describe(op: DerivationOp) -> str:
    if isinstance(op, Shift):
        return f"shift({op.t})"
    if isinstance(op, Reverse):
        return "reverse"
    if isinstance(op, TransposeAt):
        return f"transpose_at({op.k})"
    return f"vertex_perm({','.join(str(x) for x in op.q)})"


_DERIVED_TAGS = {
    Shift: "derived_shift",
    Reverse: "derived_reverse",
    TransposeAt: "derived_transposition",
    VertexPerm: "derived_vertex_perm",
}


def derive(o: PivotOrdering, op: DerivationOp) -> PivotOrdering:
    """
    Aplica una transformación de equivalencia y devuelve el nuevo ordenamiento
    con su cadena de derivación actualizada.

    Las transposiciones no admisibles (pares que comparten un índice) se rechazan.
    """
    pairs = list(o.pairs)
    count = len(pairs)

    if isinstance(op, Shift):
        t = op.t % count
        pairs = pairs[t:] + pairs[:t]
    elif isinstance(op, Reverse):
        pairs = pairs[::-1]
    elif isinstance(op, TransposeAt):
        k = op.k
        if not 0 <= k < count - 1:
            raise InvalidArgumentError(f"Posición de transposición fuera de rango: {k}")
        if not is_admissible_transposition(pairs[k], pairs[k + 1]):
            raise InvalidArgumentError(
                f"Transposición no admisible: {tuple(pairs[k])} y {tuple(pairs[k + 1])} comparten un índice"
            )
        pairs[k], pairs[k + 1] = pairs[k + 1], pairs[k]
    elif isinstance(op, VertexPerm):
        q = [int(x) for x in op.q]
        if sorted(q) != list(range(1, o.m + 1)):
            raise InvalidArgumentError(f"vertex_perm requiere una permutación de 1..{o.m}: {q}")
        mapped = []
        for pair in pairs:
            a, b = q[pair.p - 1], q[pair.q - 1]
            mapped.append(PivotPair(min(a, b), max(a, b)))
        pairs = mapped
    else:
        raise InvalidArgumentError(f"Operación de derivación desconocida: {op!r}")

    return PivotOrdering(
        o.m,
        tuple(pairs),
        provenance=_DERIVED_TAGS[type(op)],
        chain=o.chain + (_describe(op),),
    )


def _is_column_serial(pairs: Sequence[PivotPair]) -> bool:
    cols = [pair.q for pair in pairs]
    return all(a <= b for a, b in zip(cols, cols[1:]))


def _is_row_serial(pairs: Sequence[PivotPair]) -> bool:
    rows = [pair.p for pair in pairs]
    return all(a >= b for a, b in zip(rows, rows[1:]))


def is_serial_member(o: PivotOrdering) -> str:
    """
    Clasifica el ordenamiento: 'B_c' (columnas en orden no decreciente), 'B_r'
    (filas en orden no creciente), sus inversos ('B_c_reversed', 'B_r_reversed')
    o 'none'.
    """
    pairs = list(o.pairs)
    if _is_column_serial(pairs):
        return "B_c"
    if _is_column_serial(pairs[::-1]):
        return "B_c_reversed"
    if _is_row_serial(pairs):
        return "B_r"
    if _is_row_serial(pairs[::-1]):
        return "B_r_reversed"
    return "none"


# ------------------------------------------------------------------
# Archivos y presentación
# ------------------------------------------------------------------

def load_ordering(path: str, m: Optional[int] = None) -> PivotOrdering:
    """
    Lee un ordenamiento desde un archivo de texto con un par "p q" por línea.

    Se ignoran líneas vacías y comentarios que empiezan con '#'. Si m no se da,
    se toma el mayor índice de bloque que aparece.
    """
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as e:
        raise OutputError(f"No se pudo leer el ordenamiento {path}: {e}") from e

    pairs = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise InvalidArgumentError(f"{path}:{lineno}: se esperaba 'p q', se leyó {raw!r}")
        try:
            p, q = int(tokens[0]), int(tokens[1])
        except ValueError as e:
            raise InvalidArgumentError(f"{path}:{lineno}: índices no enteros en {raw!r}") from e
        try:
            pairs.append(PivotPair(p, q))
        except InvalidArgumentError as e:
            raise InvalidArgumentError(f"{path}:{lineno}: {e}") from e

    if not pairs:
        raise InvalidArgumentError(f"{path}: el archivo no contiene pares")
    if m is None:
        m = max(pair.q for pair in pairs)
    ordering = PivotOrdering(m, tuple(pairs), provenance="custom")
    return ordering


def ordering_to_text(o: PivotOrdering) -> str:
    """
    Representación en matriz: '*' en la diagonal, la posición de cada par en el
    triángulo superior y espacios en el inferior.
    """
    grid = o.index_matrix()
    width = len(str(len(o))) + 1
    rows = []
    for p in range(o.m):
        cells = []
        for q in range(o.m):
            if p == q:
                cells.append("*".rjust(width))
            elif q > p:
                cells.append(str(grid[p, q]).rjust(width))
            else:
                cells.append(" " * width)
        rows.append("".join(cells).rstrip())
    return "\n".join(rows)
