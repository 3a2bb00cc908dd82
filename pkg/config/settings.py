"""
Configuraciones generales del solver de Eberlein por bloques.
"""

# Criterio de parada del método externo
DEFAULT_TOLERANCE = 1e-10  # Cambio de off(B) entre ciclos, relativo a ||A||_F
DEFAULT_MAX_CYCLES = 100
DEFAULT_BLOCK_THRESHOLD = 1e-8  # Umbral relativo para detectar bloques en Lambda

# Jacobi interno (etapa unitaria)
INNER_JACOBI_TOL = 1e-14
INNER_JACOBI_MAX_SWEEPS = 30
UBC_MIN_GAIN = 1e-12  # Mejora relativa mínima de sigma_min para permutar

# Etapa de cizallas (shears)
SHEAR_SKIP_TOL = 1e-15
TANH_PSI_LIMIT = 1.0 - 1e-15
COND_WARNING_LEVEL = 1e8  # Se avisa, nunca se recorta psi

# Extracción de pares propios
MAX_RECURSION_DEPTH = 2

# Precondicionamiento: se redibuja d mientras |Im(d)| < ratio * |d|
PRECONDITION_MIN_IMAG_RATIO = 0.1

# Escalado por potencias de 2 cuando max|a_ij| sale de este rango
SAFE_SCALE_MIN = 2.0 ** -200
SAFE_SCALE_MAX = 2.0 ** 200

# Diagnósticos teóricos
DIAGNOSTIC_SLACK = 10.0

# Generadores de matrices de prueba
MATRIX_KINDS = ["a0_normal", "a1_random", "a2_repeated", "from_file"]
DEFAULT_A2_MULTIPLICITIES = (8, 4, 4, 4, 4)
RNG_BIT_GENERATOR = "PCG64"

# Formatos de salida
TRACE_COLUMNS = ["cycle", "off_A", "off_B", "normC", "frob_A", "cum_delta"]
MM_DIGITS = 17  # Dígitos significativos al escribir Matrix Market

# Códigos de salida de la CLI
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2
EXIT_IO = 3
