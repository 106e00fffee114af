SCHEMA = "extroot/1"

# Precision schedule (bits)
DEFAULT_START_PREC = 64
DEFAULT_PRECISION_CEILING = 1 << 16
DEFAULT_GUARD_BITS = 32
DEFAULT_DIAGNOSTICS_PREC = 128
DEFAULT_ORACLE_PREC = 512

# Zero-test thresholds above this many bits are refused.
THRESHOLD_CEILING = 1 << 24

# Mantissa bits kept on ball radii (rounded upward).
RADIUS_BITS = 30

# Axes with fewer points than this are evaluated by Horner.
HORNER_CUTOFF = 32

CLUSTER_GAP_RATIO = 8
ROUCHE_DILATION = 4

# Marker returned by degree detection when every coefficient vanishes.
DEGREE_MINUS_INFINITY = -1

# Enumerating 2^(2n) sign patterns is refused past this n.
MAX_SQRTSUM_PATTERN_N = 10

ENV_PREC_CEILING = "EXTROOT_PREC_CEILING"
ENV_THREADS = "EXTROOT_THREADS"
