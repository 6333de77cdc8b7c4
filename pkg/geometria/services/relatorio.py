# geometria/services/relatorio.py
"""
Relatório das hipóteses geométricas: dobramento (D), dimensão homogênea,
cota inferior de volume (MV_d) e constante de Poincaré (P_q).
"""
from __future__ import annotations

import logging
from typing import Iterable, List, Optional, Tuple

import numpy as np

from core.campos import como_array
from core.excecoes import ParametroInvalido
from core.relatorios import Relatorio
from core.utils.sementes import gerador
from geometria.services.bolas import bolas_distintas, grade_raios, tamanhos_distintos, volumes
from geometria.services.gradiente import gradient
from geometria.variedade import DiscreteManifold

logger = logging.getLogger(__name__)

ROTULO_POINCARE = "empirical lower bound"


def doubling_constant(M: DiscreteManifold) -> float:
    """C0 = max_{x, r} μ(B(x,2r)) / μ(B(x,r)) sobre a grade de raios."""
    raios = grade_raios(M)
    c0 = 1.0
    for x in range(M.vertex_count):
        razao = volumes(M, x, 2.0 * raios) / volumes(M, x, raios)
        c0 = max(c0, float(razao.max()))
    return c0


def mv_constant(M: DiscreteManifold, d: float) -> float:
    """
    inf_{x, 0<r<=1} μ(B(x,r)) / r^d. Em cada intervalo de constância do volume
    o ínfimo fica na ponta direita, então bastam as distâncias <= 1 e r = 1.
    """
    raios = np.unique(np.concatenate([M.sorted_radii[M.sorted_radii <= 1.0], [1.0]]))
    inf = np.inf
    for x in range(M.vertex_count):
        inf = min(inf, float(np.min(volumes(M, x, raios) / raios ** d)))
    return inf


def _campos_de_teste(M: DiscreteManifold, amostras: int, seed: int, extras: Iterable) -> np.ndarray:
    n = M.vertex_count
    linhas: List[np.ndarray] = [np.real(como_array(f)).astype(float) for f in extras]
    for i in range(amostras):
        linhas.append(gerador(seed, i).standard_normal(n))
    # indicadoras de bolas: piores casos para a oscilação
    centros = np.unique(np.linspace(0, n - 1, num=min(n, 4)).astype(int))
    for c in centros:
        k, _ = tamanhos_distintos(M, int(c))
        for ki in np.unique(k[np.linspace(0, k.size - 1, num=min(k.size, 16)).astype(int)]):
            if ki < n:
                ind = np.zeros(n)
                ind[M.ordem[c][:ki]] = 1.0
                linhas.append(ind)
    return np.vstack(linhas) if linhas else np.zeros((0, n))


def poincare_constant(
    M: DiscreteManifold,
    campos: np.ndarray,
    q: float = 1.0,
    local: bool = False,
) -> Tuple[float, float]:
    """
    Melhor constante empírica em (P_q):
        avg_B |f - f_B| <= C · r · (avg_B |∇f|^q)^{1/q}
    sobre todas as bolas distintas e os campos dados. Para uma mesma bola o
    quociente é maior no menor raio, logo r = ínfimo do intervalo de raios.

    Retorna (constante, maior lado esquerdo observado).
    """
    if q < 1:
        raise ParametroInvalido(f"q deve ser >= 1 (recebido {q})")
    F = np.atleast_2d(np.asarray(campos, dtype=float))
    G = np.vstack([gradient(M, f) for f in F]) if F.size else F
    mu = M.measure
    constante, lhs_max = 0.0, 0.0
    for x in range(M.vertex_count):
        for r, membros in bolas_distintas(M, x):
            if r <= 0 or (local and r >= 1.0):
                continue
            peso = mu[membros]
            vol = peso.sum()
            fb = F[:, membros] @ peso / vol
            osc = np.abs(F[:, membros] - fb[:, None]) @ peso / vol
            grad = ((G[:, membros] ** q) @ peso / vol) ** (1.0 / q)
            lhs_max = max(lhs_max, float(osc.max(initial=0.0)))
            ok = grad > 0
            if np.any(ok):
                constante = max(constante, float(np.max(osc[ok] / (r * grad[ok]))))
    return constante, lhs_max


def geometry_report(
    M: DiscreteManifold,
    d_exponent: float,
    q: float = 1.0,
    local: bool = False,
    campos: Optional[Iterable] = None,
    amostras: int = 8,
    seed: int = 0,
) -> Relatorio:
    if not d_exponent > 0:
        raise ParametroInvalido(f"expoente d deve ser positivo (recebido {d_exponent})")

    c0 = doubling_constant(M)
    mv = mv_constant(M, d_exponent)
    amostra = _campos_de_teste(M, amostras, seed, campos or [])
    cp, lhs = poincare_constant(M, amostra, q=q, local=local)

    rel = Relatorio(
        experiment="geom",
        params={"spec": M.generator.get("spec"), "n": M.vertex_count, "d": d_exponent, "q": q,
                "local": bool(local), "samples": amostras, "seed": seed},
        max_ratio=c0,
    )
    rel.extras.update({
        "doubling_constant": c0,
        "homogeneous_dimension": float(np.log2(c0)),
        "mv_constant": mv,
        "poincare_constant": cp,
        "poincare_label": ROTULO_POINCARE,
        "poincare_lhs_max": lhs,
        "total_measure": M.total_measure,
    })
    logger.debug("geom n=%d: C0=%.6g dim=%.6g MV=%.6g P=%.6g", M.vertex_count, c0, np.log2(c0), mv, cp)
    return rel
