from .dispersion import (
    cluster_count,
    cluster_spans,
    coherence_bandwidth,
    max_excess_delay,
    mean_excess_delay,
    rms_delay_spread,
    summarize,
)
from .compare import compare

__all__ = [
    "cluster_count",
    "cluster_spans",
    "coherence_bandwidth",
    "max_excess_delay",
    "mean_excess_delay",
    "rms_delay_spread",
    "summarize",
    "compare",
]
