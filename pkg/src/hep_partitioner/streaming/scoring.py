"""
HDRF scoring.

score(e, i) = C_rep + C_bal with
    g(x, i)  = 1 + (1 - theta_x) if x is replicated on i, else 0
    theta_u  = d(u) / (d(u) + d(v)),  theta_v = 1 - theta_u
    C_rep    = g(u, i) + g(v, i)
    C_bal    = lambda * (maxsize - |p_i|) / (epsilon + maxsize - minsize)
"""

import numpy as np

from .models import StreamingState


def hdrf_score(u: int, v: int, partition: int, st: StreamingState) -> float:
    """Score of placing edge (u, v) on one partition."""
    du = st.degrees.degree(u)
    dv = st.degrees.degree(v)
    theta_u = du / (du + dv)
    theta_v = 1.0 - theta_u

    g_u = 1.0 + (1.0 - theta_u) if st.cover[partition, u] else 0.0
    g_v = 1.0 + (1.0 - theta_v) if st.cover[partition, v] else 0.0

    sizes = st.sizes
    maxsize = int(sizes.max())
    minsize = int(sizes.min())
    c_bal = st.lam * (maxsize - int(sizes[partition])) / (st.epsilon + maxsize - minsize)
    return g_u + g_v + c_bal


def hdrf_scores(u: int, v: int, du: int, dv: int, st: StreamingState) -> np.ndarray:
    """Scores of edge (u, v) on all k partitions at once."""
    theta_u = du / (du + dv)
    theta_v = 1.0 - theta_u

    c_rep = st.cover[:, u] * (2.0 - theta_u) + st.cover[:, v] * (2.0 - theta_v)

    sizes = st.sizes
    maxsize = sizes.max()
    c_bal = st.lam * (maxsize - sizes) / (st.epsilon + maxsize - sizes.min())
    return c_rep + c_bal
