"""
Método de Eberlein por bloques: ciclos de pasos (p, q) que combinan una
etapa unitaria y una etapa de cizallas hasta que la parte hermítica se
estabiliza.

Uso:
    from eberlein import eberlein_solve, partition_from_block_size
    result = eberlein_solve(A, partition_from_block_size(A.shape[0], 8))
"""

import math
from dataclasses import replace
from typing import Optional, Tuple

import numpy as np
from tqdm import tqdm

from config.env_config import get_rng
from config.logging_config import get_logger
from config.settings import PRECONDITION_MIN_IMAG_RATIO, SAFE_SCALE_MAX, SAFE_SCALE_MIN
from models.errors import EberleinError, InvalidArgumentError, NumericalFailure
from models.schemas import ConvergenceLog, CycleRecord, EberleinResult, SolveOptions, StepRecord
from .blockmat import (
    BlockPartition,
    as_complex_matrix,
    c_operator,
    frobenius_norm,
    hermitian_part,
    off_norm,
    pivot_hermitian_core,
    similarity_inplace,
)
from .diagnostics import perturbation_bounds
from .eigenpairs import detect_block_structure, extract_eigenpairs
from .pivot import PivotOrdering, row_cyclic
from .shear_stage import compute_shear_block, shear_step
from .unitary_stage import jacobi_rotation_2x2, rotation_core, unitary_stage

logger = get_logger(__name__)


def precondition(A: np.ndarray, d: Optional[complex] = None, seed: Optional[int] = None) -> Tuple[np.ndarray, complex]:
    """
    Multiplica A por un escalar complejo d con Im(d) != 0.

    Separa las partes reales de autovalores conjugados (lambda y conj(lambda)
    pasan a d*lambda y d*conj(lambda)). Si no se da d, se sortea uno con
    |Im(d)| >= 0.1 |d|.
    """
    if d is None:
        rng = get_rng(seed)
        while True:
            d = complex(rng.standard_normal(), rng.standard_normal())
            if abs(d.imag) >= PRECONDITION_MIN_IMAG_RATIO * abs(d):
                break
    d = complex(d)
    if d.imag == 0:
        raise InvalidArgumentError(f"El escalar de precondicionamiento debe tener Im(d) != 0: {d}")
    return d * A, d


def scaling_exponent(A: np.ndarray) -> int:
    """
    Exponente k tal que A / 2^k tiene max|a_ij| en [SAFE_SCALE_MIN, SAFE_SCALE_MAX].

    Devuelve 0 si A ya está en el rango, es nula o tiene valores no finitos.
    """
    peak = float(np.max(np.abs(A))) if A.size else 0.0
    if peak == 0.0 or not math.isfinite(peak) or SAFE_SCALE_MIN <= peak <= SAFE_SCALE_MAX:
        return 0
    return math.frexp(peak)[1]


def ldexp_matrix(A: np.ndarray, exponent: int) -> np.ndarray:
    """A * 2^exponent, exacto y sin desbordes intermedios."""
    out = np.empty_like(A, dtype=np.complex128)
    out.real = np.ldexp(A.real, exponent)
    out.imag = np.ldexp(A.imag, exponent)
    return out


def _ldexp(value: float, exponent: int) -> float:
    with np.errstate(over="ignore"):
        return float(np.ldexp(value, exponent))


def _unscaled_cycle(record: CycleRecord, exponent: int) -> CycleRecord:
    if not exponent:
        return record
    return replace(
        record,
        off_a=_ldexp(record.off_a, exponent),
        off_b=_ldexp(record.off_b, exponent),
        norm_c=_ldexp(record.norm_c, 2 * exponent),
        frob_a=_ldexp(record.frob_a, exponent),
        cum_delta=_ldexp(record.cum_delta, 2 * exponent),
    )


def _cycle_record(cycle: int, A: np.ndarray, cum_delta: float) -> CycleRecord:
    return CycleRecord(
        cycle=cycle,
        off_a=off_norm(A),
        off_b=off_norm(hermitian_part(A)),
        norm_c=frobenius_norm(c_operator(A)),
        frob_a=frobenius_norm(A),
        cum_delta=cum_delta,
    )


def _check_violations(log: ConvergenceLog, cycle: int, step: int, pair, rotated, sres, scale2: float):
    bounds = perturbation_bounds(rotated, sres.a_next, sres.sum_c_abs)
    if bounds["violated"]:
        log.violations.append(
            f"ciclo {cycle} paso {step} {tuple(pair)}: perturbación {max(bounds['lhs_a'], bounds['lhs_b']):.3e} "
            f"> cota {bounds['bound']:.3e}"
        )
    slack = 1e-12 * scale2
    if sres.norm_reduction < -slack:
        log.violations.append(
            f"ciclo {cycle} paso {step} {tuple(pair)}: la norma creció ({sres.norm_reduction:.3e})"
        )
    lower = sres.sum_c2 / (3 * scale2) if scale2 else 0.0
    if sres.norm_reduction < lower - slack:
        log.violations.append(
            f"ciclo {cycle} paso {step} {tuple(pair)}: reducción {sres.norm_reduction:.3e} "
            f"menor que la cota inferior {lower:.3e}"
        )


def eberlein_solve(
    A,
    partition: BlockPartition,
    opts: Optional[SolveOptions] = None
) -> EberleinResult:
    """
    Ejecuta ciclos del método por bloques hasta estabilizar off(B).

    Se detiene cuando el cambio de off(B) entre ciclos consecutivos es menor
    que tolerance * ||A^(0)||_F (o tolerance, en modo absoluto). Si al parar
    Lambda conserva bloques acoplados el estado es "stalled"; si se agotan los
    ciclos, "max_cycles".

    Args:
        A: Matriz compleja n x n
        partition: Partición por bloques con partition.n = n
        opts: SolveOptions (por defecto, ordenamiento por filas)

    Returns:
        EberleinResult

    Raises:
        InvalidArgumentError: Dimensiones, partición u ordenamiento inválidos
        ConvergenceFailure: El Jacobi interno no convergió
        NumericalFailure: Aparecieron valores no finitos
    """
    opts = opts or SolveOptions()
    A0 = as_complex_matrix(A)
    n = A0.shape[0]
    if partition.n != n:
        raise InvalidArgumentError(f"La partición cubre n = {partition.n} pero A es {n}x{n}")

    ordering = opts.ordering or row_cyclic(partition.m)
    if ordering.m != partition.m:
        raise InvalidArgumentError(
            f"El ordenamiento es para m = {ordering.m} bloques y la partición tiene {partition.m}"
        )

    scalar = None
    work = A0.copy()
    if opts.precondition or opts.precondition_scalar is not None:
        work, scalar = precondition(A0, opts.precondition_scalar, opts.seed)
        logger.info(f"Precondicionado con d = {scalar:.6g}")

    exponent = scaling_exponent(work)
    if exponent:
        logger.info(f"Escalando A por 2^{-exponent} (max|a_ij| fuera del rango seguro)")
        work = ldexp_matrix(work, -exponent)

    scale = frobenius_norm(work)
    scale2 = scale * scale
    if opts.absolute_tolerance:
        threshold = _ldexp(opts.tolerance, -exponent)
    else:
        threshold = opts.tolerance * scale

    T = np.eye(n, dtype=np.complex128)
    T_inv = np.eye(n, dtype=np.complex128)
    log = ConvergenceLog()
    cum_delta = 0.0
    previous = _cycle_record(0, work, 0.0)

    status = "max_cycles"
    cycles_done = 0
    cycle_iter = range(1, opts.max_cycles + 1)
    if opts.verbose:
        cycle_iter = tqdm(cycle_iter, desc="Ciclos Eberlein", unit="ciclo")

    for cycle in cycle_iter:
        last_good = work.copy()
        try:
            for step, pair in enumerate(ordering):
                idx = partition.pivot_indices(pair.p, pair.q)
                split = (partition.block_size(pair.p), partition.block_size(pair.q))

                ustage = unitary_stage(
                    pivot_hermitian_core(work, idx), split,
                    enforce_ubc=opts.enforce_ubc,
                    tol=opts.inner_jacobi_tol,
                    max_sweeps=opts.inner_jacobi_max_sweeps,
                )
                R = ustage.r_core
                R_h = R.conj().T
                similarity_inplace(work, idx, R, R_h)

                sres = compute_shear_block(work, partition, pair.p, pair.q, sweeps=opts.shear_sweeps)
                if opts.diagnostics:
                    _check_violations(log, cycle, step, pair, work, sres, scale2)
                work = sres.a_next

                T[:, idx] = T[:, idx] @ (R @ sres.s_core)
                T_inv[idx, :] = (sres.s_core_inv @ R_h) @ T_inv[idx, :]
                cum_delta += sres.norm_reduction

                if opts.record_trace:
                    dim = len(idx)
                    log.steps.append(StepRecord(
                        cycle=cycle,
                        step=step,
                        p=pair.p,
                        q=pair.q,
                        delta=_ldexp(sres.norm_reduction, 2 * exponent),
                        sum_c2=_ldexp(sres.sum_c2, 4 * exponent),
                        lower_bound=_ldexp(sres.sum_c2 / (3 * scale2), 2 * exponent) if scale2 else 0.0,
                        shear_deviation=float(np.linalg.norm(sres.s_core - np.eye(dim))),
                        cond_estimate=sres.cond_estimate,
                    ))
        except (NumericalFailure, ArithmeticError) as e:
            raise NumericalFailure(str(e), last_good=ldexp_matrix(last_good, exponent), log=log) from e

        if not np.all(np.isfinite(work)):
            raise NumericalFailure(
                f"Valores no finitos en el ciclo {cycle}", last_good=ldexp_matrix(last_good, exponent), log=log
            )

        cycles_done = cycle
        record = _cycle_record(cycle, work, cum_delta)
        if opts.record_trace:
            log.cycles.append(_unscaled_cycle(record, exponent))
        if opts.callback is not None:
            opts.callback(_unscaled_cycle(record, exponent))
        if opts.verbose:
            cycle_iter.set_postfix(off_b=f"{record.off_b:.2e}", norm_c=f"{record.norm_c:.2e}")
        logger.debug(
            f"Ciclo {cycle}: off(A)={record.off_a:.3e} off(B)={record.off_b:.3e} ||C||={record.norm_c:.3e}"
        )

        if abs(record.off_b - previous.off_b) <= threshold:
            status = "converged"
            previous = record
            break
        previous = record

    if opts.verbose:
        cycle_iter.close()

    if exponent:
        work = ldexp_matrix(work, exponent)

    structure = detect_block_structure(work, opts.block_threshold)
    if status == "converged" and any(len(comp) > 1 for comp in structure):
        status = "stalled"
    if status == "max_cycles":
        logger.warning(f"Se alcanzó el máximo de {opts.max_cycles} ciclos sin estabilizar off(B)")

    for message in log.violations:
        logger.warning(message)

    if status == "stalled" and opts.post_precondition:
        # Rescate: se precondiciona la matriz final y se continúa
        inner = eberlein_solve(
            work, partition,
            replace(opts, precondition=True, precondition_scalar=None, post_precondition=False,
                    extract=False, seed=None if opts.seed is None else opts.seed + 1),
        )
        d2 = inner.scalar
        T = T @ inner.t_accum
        T_inv = inner.t_inv @ T_inv
        work = inner.lambda_matrix / d2
        status = inner.status
        offset = cycles_done
        cycles_done += inner.cycles
        for rec in inner.log.cycles:
            log.cycles.append(replace(rec, cycle=rec.cycle + offset))
        for rec in inner.log.steps:
            log.steps.append(replace(rec, cycle=rec.cycle + offset))
        log.violations.extend(inner.log.violations)
        structure = detect_block_structure(work, opts.block_threshold)
        logger.info(f"Rescate con d = {d2:.6g}: estado {status}")

    result = EberleinResult(
        lambda_matrix=work,
        t_accum=T,
        t_inv=T_inv,
        log=log,
        status=status,
        cycles=cycles_done,
        real_parts=np.real(np.diag(work)).copy(),
        block_structure=structure,
        scalar=scalar,
    )

    if opts.extract:
        try:
            result.eigenpairs, result.failures = extract_eigenpairs(
                A0, work, T, opts.block_threshold, scalar=scalar, seed=opts.seed,
            )
        except EberleinError as e:
            logger.warning(f"No se pudieron extraer los pares propios: {e}")
            result.failures = [(tuple(range(n)), str(e))]

    return result


def elementwise_cycle(A, ordering: Optional[PivotOrdering] = None, opts: Optional[SolveOptions] = None) -> np.ndarray:
    """
    Un ciclo del método clásico elemento a elemento (bloques 1 x 1).

    Cada paso (p, q) aplica una rotación de Jacobi 2x2 sobre la parte hermítica
    y una cizalla sobre el mismo par, en el orden dado. Devuelve el iterado
    tras el ciclo.
    """
    opts = opts or SolveOptions()
    work = as_complex_matrix(A).copy()
    n = work.shape[0]
    ordering = ordering or row_cyclic(n)
    if ordering.m != n:
        raise InvalidArgumentError(f"El ordenamiento es para m = {ordering.m} y A es {n}x{n}")

    for pair in ordering:
        r, s = pair.p - 1, pair.q - 1
        idx = [r, s]
        H = pivot_hermitian_core(work, idx)
        if off_norm(H) > opts.inner_jacobi_tol * frobenius_norm(H):
            R = rotation_core(jacobi_rotation_2x2(H[0, 0].real, complex(H[0, 1]), H[1, 1].real))
            similarity_inplace(work, idx, R, R.conj().T)
        scale2 = float(np.linalg.norm(work) ** 2)
        shear_step(work, r, s, scale2)
    return work
