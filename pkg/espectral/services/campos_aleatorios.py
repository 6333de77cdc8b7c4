# espectral/services/campos_aleatorios.py
"""
Conjunto de campos de teste: ruído espectralmente colorido
u = Σ λ_i^{-γ/2} g_i e_i (γ em {0, 1, 2}), indicadoras de bolas e suas
suavizações pelo calor. Desigualdades precisam de campos ásperos e suaves.

Cada ensaio i usa a semente derivada (mestre, i), então o conjunto é estável
por prefixo.
"""
from __future__ import annotations

from typing import List

import numpy as np

from core.campos import media_mu
from core.utils.sementes import gerador
from espectral.operador import SpectralOperator
from espectral.services.calculo import heat

TIPOS = ("ruido_g0", "ruido_g1", "ruido_g2", "indicadora", "indicadora_suave")


def ruido_colorido(op: SpectralOperator, gamma: float, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal(op.n)
    peso = np.ones(op.n)
    pos = op.eigenvalues > 0
    peso[pos] = op.eigenvalues[pos] ** (-gamma / 2.0)
    return op.sintetizar(peso * g)


def indicadora_bola(op: SpectralOperator, distancia: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    x = int(rng.integers(op.n))
    raios = np.unique(distancia[x])
    r = raios[int(rng.integers(1, raios.size))] if raios.size > 1 else 1.0
    return (distancia[x] < r).astype(float)


def campo_ensaio(op: SpectralOperator, distancia: np.ndarray, mestre: int, i: int) -> np.ndarray:
    """Campo do ensaio i, normalizado para ‖u‖_∞ = 1."""
    rng = gerador(mestre, i)
    tipo = TIPOS[i % len(TIPOS)]
    if tipo.startswith("ruido"):
        u = ruido_colorido(op, float(tipo[-1]), rng)
    else:
        u = indicadora_bola(op, distancia, rng)
        if tipo == "indicadora_suave":
            u = heat(op, 1.0, u)
    topo = float(np.abs(u).max())
    return u / topo if topo > 0 else u


def campo_medio_zero(op: SpectralOperator, u: np.ndarray) -> np.ndarray:
    return u - media_mu(u, op.measure)


def conjunto(op: SpectralOperator, distancia: np.ndarray, mestre: int, trials: int,
             medio_zero: bool = False) -> List[np.ndarray]:
    campos = [campo_ensaio(op, distancia, mestre, i) for i in range(trials)]
    if medio_zero:
        campos = [campo_medio_zero(op, u) for u in campos]
    return campos
