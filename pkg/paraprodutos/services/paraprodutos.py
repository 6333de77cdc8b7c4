# paraprodutos/services/paraprodutos.py
"""
Paraprodutos de semigrupo discretizados em t:

    HH  Π(f,g)   = ∫ ψ(tL) [φ(tL)f · φ(tL)g] dt/t
    LH  Π_g(f)   = ∫ φ(tL) [ψ(tL)f · φ(tL)g] dt/t
    HL  Π_f(g)   = ∫ φ(tL) [φ(tL)f · ψ(tL)g] dt/t

Cada aplicação de símbolo é exata (coordenadas espectrais); o único erro é
o da quadratura em t. Todos os nós são processados de uma vez em matrizes
(nós × vértices).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np

from core.campos import como_array
from core.excecoes import ParametroInvalido
from espectral.operador import SpectralOperator
from espectral.services.calculo import fractional_power
from paraprodutos.familia import SymbolFamily
from paraprodutos.quadratura import TQuadrature

logger = logging.getLogger(__name__)

TOL_TRUNCAMENTO = 1e-8

SABORES = {
    # sabor: (externo, interno de f, interno de g)
    "hh": ("psi", "phi", "phi"),
    "lh": ("phi", "psi", "phi"),
    "hl": ("phi", "phi", "psi"),
}


@dataclass
class ResultadoParaproduto:
    valores: np.ndarray
    avisos: List[str] = field(default_factory=list)


# =======================
# Núcleo vetorizado
# =======================
def _campos_nos(op: SpectralOperator, S: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Linhas = campo b(t_j L) aplicado, a partir dos coeficientes c."""
    return (S * c) @ op.eigenvectors.T


def _coef_nos(op: SpectralOperator, V: np.ndarray) -> np.ndarray:
    return (V * op.measure) @ op.eigenvectors


def _integrar_nos(quad: TQuadrature, C: np.ndarray) -> np.ndarray:
    return np.sum(quad.weights[:, None] * C, axis=0)


def _trilinear(op, quad, S_ext, S_f, S_g, cf, cg) -> np.ndarray:
    A = _campos_nos(op, S_f, cf)
    B = _campos_nos(op, S_g, cg)
    C = _coef_nos(op, A * B) * S_ext
    return op.sintetizar(_integrar_nos(quad, C))


def avisos_truncamento(op: SpectralOperator, family: SymbolFamily, quad: TQuadrature) -> List[str]:
    """
    Cauda desprezada de ∫ψ(tλ)dt/t nos extremos do espectro positivo:
    inferior = ĉ^{-1} + φ(t_min λ_max), superior = -φ(t_max λ_1).
    """
    avisos = []
    lam_max, lam_1 = op.lambda_max, op.lambda_min_pos
    if lam_1 <= 0:
        return avisos
    inv = 1.0 / family.c_hat
    cauda = abs(inv + float(family.phi(quad.t_min * lam_max))) + abs(float(family.phi(quad.t_max * lam_1)))
    if cauda / inv > TOL_TRUNCAMENTO:
        avisos.append(f"truncamento da quadratura: cauda relativa {cauda / inv:.3e} > {TOL_TRUNCAMENTO:g}")
    if quad.t_min > 1.0 / lam_max or quad.t_max < 10.0 / lam_1:
        avisos.append(f"faixa [{quad.t_min:g}, {quad.t_max:g}] não cobre [1/λ_max, 10/λ_1] = [{1 / lam_max:.3g}, {10 / lam_1:.3g}]")
    for a in avisos:
        logger.warning(a)
    return avisos


def paraproduct(op: SpectralOperator, family: SymbolFamily, quad: TQuadrature, f, g,
                flavor: str = "hh") -> ResultadoParaproduto:
    sabor = flavor.lower()
    if sabor not in SABORES:
        raise ParametroInvalido(f"sabor desconhecido '{flavor}' (hh | lh | hl)")
    ext, sf, sg = SABORES[sabor]
    X = np.outer(quad.nodes, op.eigenvalues)
    valores = _trilinear(op, quad, family.avaliar(ext, X), family.avaliar(sf, X), family.avaliar(sg, X),
                         op.coeficientes(f), op.coeficientes(g))
    return ResultadoParaproduto(valores=valores, avisos=avisos_truncamento(op, family, quad))


def derived_paraproduct(op: SpectralOperator, family: SymbolFamily, quad: TQuadrature, f, g,
                        beta: float) -> ResultadoParaproduto:
    """
    Π̃_g(L^β f) = ∫ φ̃(tL) [ψ̃(tL) L^β f · φ(tL) g] dt/t,  φ̃ = z^β φ, ψ̃ = z^{-β} ψ.
    Igual a L^β Π_g(f) nó a nó.
    """
    if not 0 <= beta < family.N:
        raise ParametroInvalido(f"β deve estar em [0, N) (recebido {beta}, N={family.N})")
    X = np.outer(quad.nodes, op.eigenvalues)
    lbf = fractional_power(op, beta, f)
    valores = _trilinear(op, quad, family.phi_tilde(X, beta), family.psi_tilde(X, beta), family.phi(X),
                         op.coeficientes(lbf), op.coeficientes(g))
    return ResultadoParaproduto(valores=valores, avisos=avisos_truncamento(op, family, quad))


def reconstrucao(op: SpectralOperator, family: SymbolFamily, quad: TQuadrature, f) -> np.ndarray:
    """ĉ ∫ ψ(tL) f dt/t (igual a f na parte ortogonal ao núcleo)."""
    X = np.outer(quad.nodes, op.eigenvalues)
    simbolo = quad.weights @ family.psi(X)
    return op.aplicar_valores(family.c_hat * simbolo, f)


@lru_cache(maxsize=64)
def _k_oraculo(N: int, t_min: float, t_max: float, nos: int) -> float:
    family = SymbolFamily(N)
    quad = TQuadrature(t_min, t_max, nos)
    # path(2), v = (1,-1), λ = 2: ΣΠ(v, v) = 2 φ(0) Σ_j w_j ψ(2t_j) φ(2t_j) · (1,1)
    soma = 2.0 * float(family.phi(0.0)) * float(np.sum(quad.weights * family.psi(2 * quad.nodes) * family.phi(2 * quad.nodes)))
    return 1.0 / soma


def normalizacao_k(family: SymbolFamily, quad: TQuadrature) -> Tuple[float, float]:
    """
    K medido no espaço de dois pontos com a mesma quadratura, e o valor
    contínuo ĉ³ para comparação.
    """
    return _k_oraculo(family.N, quad.t_min, quad.t_max, quad.node_count), family.c_hat ** 3


def three_scale_split(op: SpectralOperator, family: SymbolFamily, f, eps: float,
                      R: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    ĉ^{-1} f⊥ = (ĉ^{-1} + φ(εL)) f⊥ + ∫_ε^R ψ(tL) f dt/t + ζ(RL) f⊥,
    com a parte do meio em forma fechada: φ(RL) - φ(εL).
    """
    if not 0 < eps <= R:
        raise ParametroInvalido(f"exige 0 < ε <= R (recebido {eps}, {R})")
    lam = op.eigenvalues
    pos = lam > 0
    fp = op.remover_nucleo(f)
    baixo = np.where(pos, 1.0 / family.c_hat + family.phi(eps * lam), 0.0)
    meio = np.where(pos, family.phi(R * lam) - family.phi(eps * lam), 0.0)
    alto = np.where(pos, family.zeta(R * lam), 0.0)
    return op.aplicar_valores(baixo, fp), op.aplicar_valores(meio, fp), op.aplicar_valores(alto, fp)
