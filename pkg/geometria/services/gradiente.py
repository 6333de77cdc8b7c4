# geometria/services/gradiente.py
from __future__ import annotations

import numpy as np

from core.campos import como_array
from geometria.variedade import DiscreteManifold


def gradient(M: DiscreteManifold, f) -> np.ndarray:
    """
    Gradiente de aresta: |∇f|(x) = ( Σ_{y~x} w_xy |f(y) - f(x)|² / ℓ_xy² )^{1/2}.
    No caminho de peso unitário dá |∇f| = |diferença|.
    """
    v = como_array(f)
    n = M.vertex_count
    dif2 = np.abs(v[M.edge_v] - v[M.edge_u]) ** 2 * M.edge_w / M.edge_len ** 2
    soma = np.bincount(M.edge_u, dif2, n) + np.bincount(M.edge_v, dif2, n)
    return np.sqrt(soma)


def vizinho_max(M: DiscreteManifold, f) -> np.ndarray:
    """f*(x) = max_{y~x} |f(y)| (usado na regra do produto discreta)."""
    a = np.abs(como_array(f))
    out = np.zeros(M.vertex_count)
    np.maximum.at(out, M.edge_u, a[M.edge_v])
    np.maximum.at(out, M.edge_v, a[M.edge_u])
    return out
