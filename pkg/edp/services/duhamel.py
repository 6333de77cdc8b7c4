# edp/services/duhamel.py
"""
Iteração de Picard para a fórmula de Duhamel.

Cada iterado u^{(k)} é guardado nos nós de Chebyshev-Lobatto de [0, |I|] e
avaliado em qualquer τ por interpolação baricêntrica. Os semigrupos são
aplicados de forma exata nas coordenadas espectrais; o único erro numérico
é o da quadratura de Gauss-Legendre em τ e o da interpolação em t.

A distância entre iterados é d_k = max_t ‖u^{(k+1)}(t) - u^{(k)}(t)‖_{W^{α,2}}
(forma de Bessel) sobre uma amostra uniforme de I.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from django.conf import settings
from scipy.interpolate import BarycentricInterpolator

from edp.problema import EvolutionProblem
from espectral.operador import SpectralOperator
from normas.services.normas import bessel_norm

logger = logging.getLogger(__name__)

SEM_CONTRACAO = "no-contraction"


@dataclass
class ResultadoDuhamel:
    tempos: np.ndarray            # nós de Chebyshev-Lobatto, crescentes, com 0 e |I|
    valores: np.ndarray           # u(t_k), uma linha por nó
    distancias: List[float]
    convergiu: bool
    flags: List[str] = field(default_factory=list)
    residuo: Optional[float] = None

    @property
    def final(self) -> np.ndarray:
        return self.valores[-1]

    @property
    def iteracoes(self) -> int:
        return len(self.distancias)

    @property
    def razoes(self) -> List[float]:
        d = self.distancias
        return [d[k + 1] / d[k] for k in range(len(d) - 1) if d[k] > 0]

    @property
    def fator_contracao(self) -> Optional[float]:
        """d_1/d_0: razão da primeira contração (0 quando o primeiro passo já é fixo)."""
        if not self.distancias:
            return None
        if self.distancias[0] == 0:
            return 0.0
        if len(self.distancias) < 2:
            return None
        return self.distancias[1] / self.distancias[0]

    def em(self, t) -> np.ndarray:
        return BarycentricInterpolator(self.tempos, self.valores)(t)


def nos_chebyshev(T: float, K: int) -> np.ndarray:
    return 0.5 * T * (1.0 - np.cos(np.pi * np.arange(K) / (K - 1)))


def _propagador(op: SpectralOperator, kind: str, s: np.ndarray) -> np.ndarray:
    X = np.outer(s, op.eigenvalues)
    return np.exp(-X) if kind == "heat" else np.exp(1j * X)


def fluxo_linear(op: SpectralOperator, problema: EvolutionProblem, tempos: np.ndarray) -> np.ndarray:
    """Linhas e^{-tL}u0 (ou e^{itL}u0) nos tempos dados."""
    P = _propagador(op, problema.kind, tempos)
    return (P * op.coeficientes(problema.u0)) @ op.eigenvectors.T


class _Varredura:
    """Aplica a aplicação de Duhamel Φ a um iterado representado nos nós de tempo."""

    def __init__(self, op: SpectralOperator, problema: EvolutionProblem, tempos: np.ndarray):
        self.op = op
        self.problema = problema
        self.tempos = tempos
        self.linear = fluxo_linear(op, problema, tempos)
        self.gl_x, self.gl_w = np.polynomial.legendre.leggauss(problema.time_nodes)
        self.threads = max(1, int(settings.SOBOLEV_LAB["THREADS"]))

    def _no(self, interp: BarycentricInterpolator, k: int) -> np.ndarray:
        t = self.tempos[k]
        if t == 0:
            return self.linear[k]
        tau = 0.5 * t * (self.gl_x + 1.0)
        w = 0.5 * t * self.gl_w
        FU = self.problema.F(interp(tau))
        C = (FU * self.op.measure) @ self.op.eigenvectors
        P = _propagador(self.op, self.problema.kind, t - tau)
        integral = self.op.sintetizar(np.sum(w[:, None] * P * C, axis=0))
        if self.problema.kind == "heat":
            return self.linear[k] - integral
        return self.linear[k] - 1j * integral

    def __call__(self, valores: np.ndarray) -> np.ndarray:
        interp = BarycentricInterpolator(self.tempos, valores)
        with ThreadPoolExecutor(max_workers=self.threads) as ex:
            linhas = list(ex.map(lambda k: self._no(interp, k), range(self.tempos.size)))
        return np.array(linhas)


def distancia_c0w(op: SpectralOperator, problema: EvolutionProblem, tempos: np.ndarray,
                  a: np.ndarray, b: np.ndarray) -> float:
    amostra = np.linspace(0.0, problema.interval_length, problema.amostras)
    diff = BarycentricInterpolator(tempos, a - b)(amostra)
    if not np.all(np.isfinite(diff)):
        return float("inf")
    return max(bessel_norm(op, linha, problema.alpha, 2) for linha in diff)


def duhamel_evolve(problema: EvolutionProblem, op: SpectralOperator) -> ResultadoDuhamel:
    tol = settings.SOBOLEV_LAB["TOL_PICARD"]
    tempos = nos_chebyshev(problema.interval_length, problema.nos_tempo)
    phi = _Varredura(op, problema, tempos)

    valores = phi.linear.copy()
    distancias: List[float] = []
    convergiu = False
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(problema.picard_iterations):
            novos = phi(valores)
            d = distancia_c0w(op, problema, tempos, novos, valores)
            distancias.append(d)
            valores = novos
            logger.debug("Picard %d: d = %.3e", k, d)
            if not np.isfinite(d):
                break
            if d < tol:
                convergiu = True
                break

    res = ResultadoDuhamel(tempos=tempos, valores=valores, distancias=distancias, convergiu=convergiu)
    if convergiu:
        res.residuo = distancia_c0w(op, problema, tempos, phi(valores), valores)
    else:
        res.flags.append(SEM_CONTRACAO)
        logger.warning("%s: Picard não contraiu em %d iterações (|I| = %g, último d = %.3e)",
                       problema.kind, len(distancias), problema.interval_length, distancias[-1])
    return res
