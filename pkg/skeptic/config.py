import os

NODE_CAP = int(os.environ.get("SKEPTIC_NODE_CAP", 1_000_000))
CLAMP_EPS = float(os.environ.get("SKEPTIC_CLAMP_EPS", 0.01))
TRACE_EVERY = int(os.environ.get("SKEPTIC_TRACE_EVERY", 10))
N_WORKERS = int(os.environ.get("SKEPTIC_WORKERS", os.cpu_count() or 1))
LOG_LEVEL = os.environ.get("SKEPTIC_LOG_LEVEL", "WARNING")

MLE_TOL = 1e-10
MLE_MAX_ITER = 100
# Beyond this norm a non-converging Newton iterate is treated as running off to infinity
SEPARATION_NORM = 50.0
# Converged iterates further out than this get an exact separation check
SEPARATION_CHECK_NORM = 15.0

DEFAULT_PRIOR_BOX = (0.0, 1.0)


def default_nodes_per_dim(d: int) -> int:
    if d <= 2:
        return 65
    if d == 3:
        return 33
    return max(2, int(NODE_CAP ** (1 / d)))
