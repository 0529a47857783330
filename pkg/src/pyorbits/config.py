TRACE_LOGGING = False
QUAD_NODES = 512
SEARCH_BOUND = 64
EXACT_THRESHOLD = 64
TIE_TOLERANCE = 1e-8
CERTIFY_TOLERANCE = 1e-8
ZERO_THRESHOLD = 1e-12
MAX_DEPTH = 12
FLOAT_RESIDUAL = 0.25
LINE_OVERSAMPLING = 8
LINE_TOLERANCE = 1e-12
LINE_MAX_POINTS = 1 << 22
