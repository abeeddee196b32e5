NOT_FINITE = "Matrix has non-finite entries"
NOT_SQUARE = "Matrix must be square"
SHAPE_MISMATCH = "Matrices must have the same shape"
NOT_PSD = "Matrix is not positive-semidefinite"
NOT_POSITIVE_DEFINITE = "Form is not positive-definite"
NOT_IDEMPOTENT = "Projection is not idempotent"
NOT_COMPLEMENTARY = "Projections do not sum to the identity"
TRIVIAL_PAIR = "Projection pair is trivial (one projection is null)"
NON_IDENTITY_H = "Full-space induced metrics require the identity scalar product"
DEGENERATE_SUBSPACE = "Subspace basis is degenerate"
NEARLY_PARALLEL = "Subspaces are not complementary (largest principal cosine too close to 1)"
SINGULAR_GRAM = "Gram matrix of the metric over the adapted basis is singular"
SELF_LOOP = "Graph contains a self-loop"
DISCONNECTED = "Graph is disconnected"
NO_EDGES = "Graph has no edges"
BAD_VERTEX = "Edge endpoint is not a vertex of the graph"
BAD_WEIGHT = "Edge weights must be strictly positive"
NOT_A_TREE = "Edge set is not a spanning tree"
TOO_LARGE_FOR_ORACLE = "Graph too large for spanning-tree enumeration"
WRONG_TOPOLOGY = "Input does not have the required topology"
SHORT_CIRCUIT = "Generator placement short-circuits the network"
INCONSISTENT_DRIVE = "Current sources do not cover the cotree left by the voltage sources"
NO_GENERATORS = "Netlist declares no generators for the requested drive mode"
SERIES_PARTNER_MISSING = "Current source is not in series with a resistor"
ALGEBRA_VIOLATION = "Supersymmetry algebra does not hold"
PARSE_ERROR = "Input file could not be parsed"
BAD_DRIVE = "Drive value refers to an edge that carries no generator"
