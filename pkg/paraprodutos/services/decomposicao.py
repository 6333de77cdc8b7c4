# paraprodutos/services/decomposicao.py
"""
Decomposição do produto:

    fg = K · [Π(f⊥,g⊥) + Π_g⊥(f⊥) + Π_f⊥(g⊥)] + correção_núcleo + resíduo

com f = mean_μ(f)·1 + f⊥ e correção_núcleo = mean(f)·g + f·mean(g) - mean(f)mean(g).
K é medido pelo oráculo de dois pontos (ver `normalizacao_k`).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List

import numpy as np

from core.campos import como_array, media_mu
from espectral.operador import SpectralOperator
from paraprodutos.familia import SymbolFamily
from paraprodutos.quadratura import TQuadrature
from paraprodutos.services.paraprodutos import normalizacao_k, paraproduct

logger = logging.getLogger(__name__)


@dataclass
class DecomposicaoProduto:
    pi_hh: np.ndarray          # Π(f⊥, g⊥)
    pi_lh: np.ndarray          # Π_g(f)
    pi_hl: np.ndarray          # Π_f(g)
    kernel_correction: np.ndarray
    residual: np.ndarray
    residuo_relativo: float    # ‖r‖₂ / ‖fg‖₂ em L²(μ)
    K: float
    K_continuo: float
    avisos: List[str] = field(default_factory=list)


def _l2(v, mu) -> float:
    return float(np.sqrt(np.sum(np.abs(v) ** 2 * mu)))


def product_decomposition(op: SpectralOperator, family: SymbolFamily, quad: TQuadrature,
                          f, g) -> DecomposicaoProduto:
    f, g = como_array(f), como_array(g)
    mu = op.measure
    mf, mg = media_mu(f, mu), media_mu(g, mu)
    fp, gp = f - mf, g - mg

    hh = paraproduct(op, family, quad, fp, gp, "hh")
    lh = paraproduct(op, family, quad, fp, gp, "lh")
    hl = paraproduct(op, family, quad, fp, gp, "hl")
    K, K_cont = normalizacao_k(family, quad)

    kc = mf * g + f * mg - mf * mg
    fg = f * g
    r = fg - K * (hh.valores + lh.valores + hl.valores) - kc
    base = _l2(fg, mu)
    rel = _l2(r, mu) / base if base > 0 else 0.0
    logger.debug("decomposição: resíduo relativo %.3e (K=%.12g, ĉ³=%.12g)", rel, K, K_cont)
    return DecomposicaoProduto(
        pi_hh=hh.valores, pi_lh=lh.valores, pi_hl=hl.valores,
        kernel_correction=kc, residual=r, residuo_relativo=rel,
        K=K, K_continuo=K_cont, avisos=hh.avisos,
    )
