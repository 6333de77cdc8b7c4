# funcionais/services/strichartz.py
"""
Funcional quadrático de Strichartz

    S_α^ρ f(x) = ( ∫_0^∞ [ avg_{B(x,r)} |f(y) - f(x)|^ρ ]^{2/ρ} dr / r^{1+2α} )^{1/2}

avaliado sem quadratura em r. Entre dois pontos de quebra consecutivos
b_j < b_{j+1} a bola aberta B(x, r) não muda, então a integral radial é
fechada: (b_j^{-2α} - b_{j+1}^{-2α}) / (2α). Abaixo da primeira distância a
bola é {x} e o integrando é zero; depois da última a bola é M inteira e a
cauda vale b^{-2α}/(2α). A versão local corta a integral em r = 1.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

import numpy as np
from django.conf import settings

from core.campos import como_array
from espectral.operador import SpectralOperator
from funcionais.requisicao import SFuncRequest
from geometria.variedade import DiscreteManifold
from paraprodutos.quadratura import TQuadrature

logger = logging.getLogger(__name__)


def _integral_radial(lo: np.ndarray, hi: np.ndarray, alpha: float) -> np.ndarray:
    """∫_lo^hi r^{-2α-1} dr, com hi possivelmente infinito."""
    dois_a = 2.0 * alpha
    return (lo ** -dois_a - hi ** -dois_a) / dois_a


def _s_quadrado(M: DiscreteManifold, v: np.ndarray, mu: np.ndarray, x: int, req: SFuncRequest,
                extras: np.ndarray) -> float:
    ordem = M.ordem[x]
    ds = M.distancias_ordenadas[x]
    acum = np.cumsum(np.abs(v[ordem] - v[x]) ** req.rho * mu[ordem])
    vol = np.cumsum(mu[ordem])

    # distâncias repetidas geram segmentos de comprimento zero
    quebras = np.sort(np.concatenate([ds[1:], extras]))
    if quebras.size == 0:
        return 0.0
    k = np.searchsorted(ds, quebras, side="right")
    medias = acum[k - 1] / vol[k - 1]
    topo = np.append(quebras[1:], np.inf)
    if req.local:
        lo, hi = np.minimum(quebras, 1.0), np.minimum(topo, 1.0)
    else:
        lo, hi = quebras, topo
    return float(np.sum(medias ** (2.0 / req.rho) * _integral_radial(lo, hi, req.alpha)))


def strichartz_functional(M: DiscreteManifold, f, req: SFuncRequest,
                          extra_breakpoints: Optional[Sequence[float]] = None,
                          medida: Optional[np.ndarray] = None) -> np.ndarray:
    """
    S_α^ρ f em todos os vértices. `extra_breakpoints` insere raios de quebra
    adicionais (não altera o valor, só a partição da integral).
    `medida` substitui μ da variedade (operador normalizado).
    """
    v = como_array(f)
    mu = M.measure if medida is None else np.asarray(medida, dtype=float)
    extras = np.asarray([r for r in ([] if extra_breakpoints is None else extra_breakpoints) if r > 0], dtype=float)
    threads = max(1, int(settings.SOBOLEV_LAB["THREADS"]))
    with ThreadPoolExecutor(max_workers=threads) as ex:
        quadrados = list(ex.map(lambda x: _s_quadrado(M, v, mu, x, req, extras), range(M.vertex_count)))
    return np.sqrt(np.array(quadrados))


def littlewood_paley_functional(op: SpectralOperator, quad: TQuadrature, f, alpha: float) -> np.ndarray:
    """
    G f(x) = ( ∫_0^∞ |(tL)^{1-β} e^{-tL} L^β f(x)|² dt/t )^{1/2}, β = α/m,
    na quadratura em log t.
    """
    beta = alpha / op.m
    lam = op.eigenvalues
    X = np.outer(quad.nodes, lam)
    simbolo = np.where(lam > 0, X ** (1.0 - beta) * np.exp(-X) * np.where(lam > 0, lam, 0.0) ** beta, 0.0)
    V = (simbolo * op.coeficientes(f)) @ op.eigenvectors.T
    return np.sqrt(np.sum(quad.weights[:, None] * np.abs(V) ** 2, axis=0))
