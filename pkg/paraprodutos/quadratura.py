# paraprodutos/quadratura.py
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from django.conf import settings

from core.excecoes import ParametroInvalido


@dataclass(frozen=True)
class TQuadrature:
    """
    ∫ F(t) dt/t ≈ Σ_j w_j F(t_j): ponto médio em log t, nós nos centros
    geométricos das células e pesos = largura da célula em log t.
    """
    t_min: float
    t_max: float
    node_count: int
    nodes: np.ndarray = field(init=False, repr=False)
    weights: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if not (0 < self.t_min < self.t_max) or self.node_count < 1:
            raise ParametroInvalido(
                f"quadratura exige 0 < t_min < t_max e nós >= 1 (recebido {self.t_min}, {self.t_max}, {self.node_count})"
            )
        h = np.log(self.t_max / self.t_min) / self.node_count
        nos = self.t_min * np.exp((np.arange(self.node_count) + 0.5) * h)
        object.__setattr__(self, "nodes", nos)
        object.__setattr__(self, "weights", np.full(self.node_count, h))

    @classmethod
    def padrao(cls, node_count: int | None = None) -> "TQuadrature":
        cfg = settings.SOBOLEV_LAB
        return cls(cfg["QUAD_T_MIN"], cfg["QUAD_T_MAX"], int(node_count or cfg["QUAD_NOS"]))

    def integrar(self, F) -> float:
        return float(np.sum(self.weights * F(self.nodes)))
