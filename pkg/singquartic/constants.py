DEFAULT_FIELD_DEGREE = 12
MAX_FIELD_DEGREE = 24

DEFAULT_SEED = 20240229
DEFAULT_D_MAX = 12
DEFAULT_THREADS = 4

# slices (fixed x1, x2, x3) per enumeration work unit
SLICE_BLOCK = 1 << 18

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_FAILED_CLAIMS = 1
EXIT_PARSE_ERROR = 2
EXIT_INCONCLUSIVE = 3
EXIT_INTERNAL = 4

PROBABLY_NORMAL = "probably-normal"
NON_NORMAL = "non-normal-detected"
INCONCLUSIVE = "inconclusive"

NODE = "Node"
BIPLANAR = "Biplanar"
UNIPLANAR = "Uniplanar"

DOUBLE_LINE = "DoubleLine"
TWO_LINES = "TwoLines"
SMOOTH_CONIC = "SmoothConic"

CONE_NAMES = {SMOOTH_CONIC: NODE, TWO_LINES: BIPLANAR, DOUBLE_LINE: UNIPLANAR}

# largest number of isolated singular points of a normal surface, by degree
NORMAL_SING_BOUND = {1: 0, 2: 1, 3: 4, 4: 16}
UNIPLANAR_SING_BOUND = 15
TRIPLE_POINT_SING_BOUND = 7
DOUBLE_LINE_CONE_SING_BOUND = 8
QUARTIC_GAUSS_DEGREE = 36
MIN_GAUSS_RESIDUAL = 3

RANDOM_LINES = 4
# random charts per local multiplicity; the smallest length wins
LOCAL_CHARTS = 3
ORBIT_SIZES = (0, 1, 4, 5, 6, 10, 12)
