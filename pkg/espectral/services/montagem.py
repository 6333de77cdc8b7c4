# espectral/services/montagem.py
"""
Montagem do gerador e autodecomposição densa (caminho de referência).

  combinatorial: (Lf)(x) = μ(x)^{-1} Σ_{y~x} w_xy (f(x) - f(y))
  normalized:    mesma fórmula com μ(x) = grau ponderado
  divergence:    w_xy substituído por a_e w_xy, a_e em [λ, Λ]

Simetrizamos A = M^{-1/2}(D - W)M^{-1/2}, resolvemos com eigh e voltamos
com e = M^{-1/2}U, que é ortonormal em <·,·>_μ.
"""
from __future__ import annotations

import logging
from typing import Optional, Tuple

import numpy as np
import scipy.linalg as sla
from django.conf import settings

from core.excecoes import ErroEspectral, ParametroInvalido
from espectral.operador import SpectralOperator
from geometria.variedade import DiscreteManifold

logger = logging.getLogger(__name__)

FORMAS = ("combinatorial", "normalized", "divergence")
TOL_ORTONORMAL = 1e-10


def pesos_efetivos(
    M: DiscreteManifold,
    form: str,
    coef: Optional[np.ndarray] = None,
    limites: Optional[Tuple[float, float]] = None,
) -> np.ndarray:
    if form not in FORMAS:
        raise ParametroInvalido(f"forma desconhecida '{form}' (use {' | '.join(FORMAS)})")
    if form != "divergence":
        return M.edge_w
    a = M.edge_coef if coef is None else np.asarray(coef, dtype=float)
    if a.shape != M.edge_w.shape:
        raise ParametroInvalido(f"coeficiente com {a.size} entradas para {M.edge_w.size} arestas")
    if limites is None:
        limites = (M.generator.get("lambda", float(a.min())), M.generator.get("Lambda", float(a.max())))
    lam, Lam = float(limites[0]), float(limites[1])
    if not 0 < lam <= Lam:
        raise ParametroInvalido(f"limites do coeficiente exigem 0 < λ <= Λ (recebido {lam}, {Lam})")
    fora = np.flatnonzero((a < lam) | (a > Lam))
    if fora.size:
        i = int(fora[0])
        raise ParametroInvalido(
            f"coeficiente fora de [{lam}, {Lam}] na aresta ({M.edge_u[i]}, {M.edge_v[i]}): a={a[i]}"
        )
    return a * M.edge_w


def matriz_rigidez(M: DiscreteManifold, pesos: np.ndarray) -> np.ndarray:
    """D - W (forma de Dirichlet)."""
    n = M.vertex_count
    W = np.zeros((n, n))
    np.add.at(W, (M.edge_u, M.edge_v), pesos)
    np.add.at(W, (M.edge_v, M.edge_u), pesos)
    return np.diag(W.sum(axis=1)) - W


def assemble_operator(
    M: DiscreteManifold,
    form: str = "combinatorial",
    coef: Optional[np.ndarray] = None,
    limites: Optional[Tuple[float, float]] = None,
    m: Optional[float] = None,
) -> SpectralOperator:
    pesos = pesos_efetivos(M, form, coef, limites)
    K = matriz_rigidez(M, pesos)
    if form == "normalized":
        mu = K.diagonal().copy()
    else:
        mu = M.measure.astype(float)

    raiz = 1.0 / np.sqrt(mu)
    A = raiz[:, None] * K * raiz[None, :]
    A = 0.5 * (A + A.T)
    try:
        lam, U = sla.eigh(A)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise ErroEspectral(f"falha do autossolver ({e})", condicionamento=float(np.linalg.cond(A))) from e

    escala = max(1.0, float(np.abs(lam).max()))
    lam = np.where(np.abs(lam) <= 1e-10 * escala, 0.0, lam)
    if np.any(lam < 0):
        raise ErroEspectral(f"autovalor negativo {lam.min():.3e}: operador não é positivo")
    E = raiz[:, None] * U

    kernel_dim = int(np.count_nonzero(lam == 0.0))
    if kernel_dim == 1:
        # núcleo = constantes (variedade conexa); fixa o vetor exato
        e0 = np.full(M.vertex_count, 1.0 / np.sqrt(mu.sum()))
        E[:, 0] = e0 if float(E[:, 0] @ (e0 * mu)) >= 0 else -e0

    gram = E.T @ (E * mu[:, None])
    erro = float(np.abs(gram - np.eye(M.vertex_count)).max())
    if erro > TOL_ORTONORMAL:
        raise ErroEspectral(f"autovetores não ortonormais em <·,·>_μ (desvio {erro:.3e})",
                            condicionamento=float(np.linalg.cond(A)))

    op = SpectralOperator(
        eigenvalues=lam,
        eigenvectors=E,
        measure=mu,
        m=float(settings.SOBOLEV_LAB["ORDEM_M"] if m is None else m),
        form=form,
        matrix=K / mu[:, None],
        kernel_dim=kernel_dim,
        info={"spec": M.generator.get("spec"), "gram_error": erro},
    )
    logger.debug("operador %s n=%d: λ_max=%.6g λ_1=%.6g núcleo=%d",
                 form, op.n, op.lambda_max, op.lambda_min_pos, kernel_dim)
    return op


def heat_oracle(op: SpectralOperator, t: float, f) -> np.ndarray:
    """e^{-tL} f pela exponencial densa (escalonamento e quadratura) da matriz montada."""
    if op.matrix is None:
        raise ErroEspectral("operador sem matriz montada para o oráculo")
    return sla.expm(-t * op.matrix) @ np.asarray(f)
