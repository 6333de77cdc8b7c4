# espectral/services/riesz.py
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable

import numpy as np

from core.campos import como_array, norma_lp
from espectral.operador import SpectralOperator
from espectral.services.calculo import fractional_power
from geometria.services.gradiente import gradient
from geometria.variedade import DiscreteManifold


@dataclass
class ResultadoRiesz:
    valores: np.ndarray
    razoes: Dict[float, float] = field(default_factory=dict)  # p -> ‖Rf‖_p / ‖f‖_p


def riesz_transform(
    op: SpectralOperator,
    M: DiscreteManifold,
    f,
    p_grid: Iterable[float] = (2.0,),
) -> ResultadoRiesz:
    """|R f| = |∇ L^{-1/m} f| (f ortogonal às constantes)."""
    v = como_array(f)
    rf = gradient(M, fractional_power(op, -1.0 / op.m, v))
    razoes = {}
    for p in p_grid:
        den = norma_lp(v, op.measure, p)
        razoes[float(p)] = norma_lp(rf, op.measure, p) / den if den > 0 else float("nan")
    return ResultadoRiesz(valores=rf, razoes=razoes)


def reverse_riesz_ratio(op: SpectralOperator, M: DiscreteManifold, f, p: float = 2.0) -> float:
    """‖L^{1/m} f‖_p / ‖∇f‖_p (nan quando ∇f = 0)."""
    den = norma_lp(gradient(M, f), op.measure, p)
    if den == 0:
        return float("nan")
    return norma_lp(fractional_power(op, 1.0 / op.m, f), op.measure, p) / den
