# normas/services/normas.py
"""
Normas e seminormas sobre (M, μ): L^p, Sobolev homogênea e não homogênea,
Bessel, BMO clássica, BMO_L (semigrupo) e a função maximal não centrada.

As normas aceitam qualquer objeto com `.measure` (variedade ou operador), de
modo que o operador normalizado usa a sua própria medida.
"""
from __future__ import annotations

import numpy as np

from core.campos import como_array, norma_lp
from core.excecoes import ParametroInvalido
from espectral.operador import SpectralOperator
from espectral.services.calculo import fractional_power, heat
from geometria.services.bolas import grade_raios, tamanhos_distintos
from geometria.variedade import DiscreteManifold
from normas.requisicao import NormRequest


def lebesgue_norm(espaco, f, p: float) -> float:
    return norma_lp(f, espaco.measure, p)


def sobolev_norm(op: SpectralOperator, f, alpha: float, p: float, homogeneous: bool = False) -> float:
    """‖L^{α/m} f‖_p (homogênea) ou ‖f‖_p + ‖L^{α/m} f‖_p."""
    req = NormRequest(p=p, alpha=alpha, homogeneous=homogeneous, op=op)
    semi = norma_lp(fractional_power(op, req.alpha / op.m, f), op.measure, p)
    if req.homogeneous:
        return semi
    return norma_lp(f, op.measure, p) + semi


def bessel_norm(op: SpectralOperator, f, alpha: float, p: float) -> float:
    """‖(1+L)^{α/m} f‖_p."""
    req = NormRequest(p=p, alpha=alpha, op=op)
    return norma_lp(fractional_power(op, req.alpha / op.m, f, bessel=True), op.measure, p)


# =======================
# BMO
# =======================
def _bmo_classica(M: DiscreteManifold, v: np.ndarray) -> float:
    mu = M.measure
    sup = 0.0
    for x in range(M.vertex_count):
        ordem = M.ordem[x]
        k, _ = tamanhos_distintos(M, x)
        vo, mo = v[ordem], mu[ordem]
        for ki in k:
            if ki < 2:
                continue
            peso = mo[:ki]
            vol = peso.sum()
            media = (vo[:ki] * peso).sum() / vol
            sup = max(sup, float((np.abs(vo[:ki] - media) * peso).sum() / vol))
    return sup


def _bmo_semigrupo(M: DiscreteManifold, op: SpectralOperator, v: np.ndarray, p: float) -> float:
    mu = op.measure
    sup = 0.0
    for r in grade_raios(M):
        g = np.abs(v - heat(op, r ** op.m, v)) ** p * mu
        # somas acumuladas ao longo da ordem de distância de cada centro
        acum = np.cumsum(g[M.ordem], axis=1)
        vol = np.cumsum(mu[M.ordem], axis=1)
        cont = np.array([np.searchsorted(M.distancias_ordenadas[x], r, side="left") for x in range(M.vertex_count)])
        linhas = np.arange(M.vertex_count)
        medias = acum[linhas, cont - 1] / vol[linhas, cont - 1]
        sup = max(sup, float(medias.max()) ** (1.0 / p))
    return sup


def bmo_norm(M: DiscreteManifold, f, flavor: str = "classical", op: SpectralOperator | None = None,
             p: float = 2.0) -> float:
    """
    classical: sup_B avg_B |f - f_B| sobre todas as bolas distintas.
    Com `op`, os dois sabores medem bolas e médias com a medida do operador.
    semigroup: sup_{x, t = r^m} (avg_{B(x,r)} |f - e^{-tL} f|^p)^{1/p}, r na grade de raios.
    """
    v = como_array(f)
    if op is not None:
        M = op.sobre(M)
    if flavor == "classical":
        return _bmo_classica(M, v)
    if flavor in ("semigroup", "bmol"):
        if op is None:
            raise ParametroInvalido("BMO_L exige o operador")
        if not 1 < p < np.inf:
            raise ParametroInvalido(f"BMO_L exige p em (1, inf) (recebido {p})")
        return _bmo_semigrupo(M, op, v, p)
    raise ParametroInvalido(f"sabor de BMO desconhecido '{flavor}' (classical | semigroup)")


# =======================
# Função maximal
# =======================
def maximal_function(M: DiscreteManifold, f, s: float = 1.0, op: SpectralOperator | None = None) -> np.ndarray:
    """
    M_s f(x) = sup_{B ∋ x} (avg_B |f|^s)^{1/s}, bolas = todos os centros × raios de quebra.
    Para o centro c, o vértice na posição j da ordem de c pertence às bolas com
    mais de j membros; um máximo de sufixo resolve todas de uma vez.
    Com `op`, as médias usam a medida do operador.
    """
    if not s >= 1:
        raise ParametroInvalido(f"s deve ser >= 1 (recebido {s})")
    if op is not None:
        M = op.sobre(M)
    g = np.abs(como_array(f)) ** s
    mu = M.measure
    n = M.vertex_count
    out = np.zeros(n)
    for c in range(n):
        ordem = M.ordem[c]
        medias = np.cumsum(g[ordem] * mu[ordem]) / M.volumes_acumulados[c]
        k, _ = tamanhos_distintos(M, c)
        validas = np.full(n, -np.inf)
        validas[k - 1] = medias[k - 1]
        sufixo = np.maximum.accumulate(validas[::-1])[::-1]
        out[ordem] = np.maximum(out[ordem], sufixo)
    return out ** (1.0 / s)
