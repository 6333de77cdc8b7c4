# espectral/services/offdiag.py
"""
Sonda empírica do decaimento fora da diagonal L^{s-} -> L^∞:

    sup_B |e^{-tL} f| <= C Σ_k 2^{-δk} (avg_{2^k B} |f|^{s-})^{1/s-},   raio(B) = t^{1/m}

C(δ) é o maior quociente lado esquerdo / soma sobre amostra e bolas; δ* é o
maior δ da grade com C(δ) <= κ·C(0). δ* no topo da grade = saturação (o
semigrupo já chegou à média e a soma tem um único termo).
"""
from __future__ import annotations

import logging
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg as sla

from core.campos import como_array
from core.excecoes import ParametroInvalido
from core.relatorios import Relatorio
from core.utils.sementes import gerador
from espectral.operador import SpectralOperator
from espectral.services.calculo import heat
from espectral.services.campos_aleatorios import campo_ensaio
from geometria.variedade import DiscreteManifold

logger = logging.getLogger(__name__)

GRADE_DELTA = np.linspace(0.0, 8.0, 33)
TOL_CONSERVACAO = 1e-10


def _termos_aneis(M: DiscreteManifold, x: int, r: float, absf_s: np.ndarray, s: float) -> Tuple[np.ndarray, np.ndarray]:
    """A_k = (avg_{2^k B}|f|^s)^{1/s}, pulando anéis vazios; para quando 2^k B cobre tudo."""
    d = M.distance[x]
    mu = M.measure
    termos: List[np.ndarray] = []
    ks: List[int] = []
    anterior = -1
    k = 0
    while True:
        dentro = d < (2.0 ** k) * r
        cont = int(dentro.sum())
        if cont != anterior:
            peso = mu[dentro]
            termos.append((absf_s[:, dentro] @ peso / peso.sum()) ** (1.0 / s))
            ks.append(k)
            anterior = cont
        if cont == M.vertex_count:
            break
        k += 1
    return np.array(ks), np.vstack(termos)  # termos: (n_k, n_campos)


def offdiag_probe(
    op: SpectralOperator,
    M: DiscreteManifold,
    t_grid: Sequence[float],
    s_minus: float = 1.0,
    campos: Optional[Iterable] = None,
    amostras: int = 6,
    seed: int = 0,
    deltas: np.ndarray = GRADE_DELTA,
    kappa: float = 2.0,
    oraculo: bool = False,
) -> Relatorio:
    if s_minus < 1:
        raise ParametroInvalido(f"s_- deve ser >= 1 (recebido {s_minus})")
    t_grid = [float(t) for t in t_grid]
    if not t_grid or min(t_grid) <= 0:
        raise ParametroInvalido("t_grid deve ser não vazia e positiva")

    M = op.sobre(M)  # anéis medidos com μ do operador
    n = M.vertex_count
    amostra = [np.real(como_array(f)) for f in (campos or [])]
    amostra += [campo_ensaio(op, M.distance, seed, i) for i in range(amostras)]
    # deltas em vértices sorteados
    rng = gerador(seed, amostras)
    for x in rng.choice(n, size=min(n, 2), replace=False):
        e = np.zeros(n)
        e[x] = 1.0
        amostra.append(e)
    F = np.vstack(amostra)
    absf_s = np.abs(F) ** s_minus

    c_total = np.zeros(deltas.size)
    por_t = []
    erro_conservacao = 0.0
    erro_oraculo = 0.0
    for t in t_grid:
        H = np.vstack([heat(op, t, f) for f in F])
        erro_conservacao = max(erro_conservacao, float(np.abs(heat(op, t, np.ones(n)) - 1.0).max()))
        if oraculo:
            E = sla.expm(-t * op.matrix)
            erro_oraculo = max(erro_oraculo, float(np.abs(H - F @ E.T).max()))

        r = t ** (1.0 / op.m)
        c_t = np.zeros(deltas.size)
        for x in range(n):
            bola = M.distance[x] < r
            lhs = np.abs(H[:, bola]).max(axis=1)
            ks, A = _termos_aneis(M, x, r, absf_s, s_minus)
            pesos = 2.0 ** (-np.outer(deltas, ks))  # (n_delta, n_k)
            rhs = pesos @ A                           # (n_delta, n_campos)
            ok = rhs[0] > 0
            if np.any(ok):
                c_t = np.maximum(c_t, (lhs[ok][None, :] / rhs[:, ok]).max(axis=1))
        d_star, saturado = _delta_estrela(c_t, deltas, kappa)
        por_t.append({"t": t, "radius": r, "C0": float(c_t[0]), "delta_star": d_star, "saturated": saturado})
        c_total = np.maximum(c_total, c_t)

    d_star, saturado = _delta_estrela(c_total, deltas, kappa)
    rel = Relatorio(
        experiment="offdiag",
        params={"n": n, "t_grid": t_grid, "s_minus": s_minus, "samples": len(amostra), "seed": seed,
                "kappa": kappa, "m": op.m},
        per_trial=por_t,
        max_ratio=float(c_total[int(np.searchsorted(deltas, d_star))]) if d_star is not None else None,
    )
    rel.extras.update({
        "delta_star": d_star,
        "saturated": saturado,
        "C_of_delta": [{"delta": float(dl), "C": float(c)} for dl, c in zip(deltas, c_total)],
        "conservation_max_error": erro_conservacao,
        "conservation_ok": erro_conservacao <= TOL_CONSERVACAO,
    })
    if oraculo:
        rel.extras["oracle_max_error"] = erro_oraculo
    if erro_conservacao > TOL_CONSERVACAO:
        logger.warning("e^{-tL}1 != 1: erro %.3e", erro_conservacao)
    return rel


def _delta_estrela(c: np.ndarray, deltas: np.ndarray, kappa: float):
    if c[0] <= 0:
        return float(deltas[-1]), True
    ok = np.flatnonzero(c <= kappa * c[0] * (1 + 1e-12))
    i = int(ok.max())
    return float(deltas[i]), i == deltas.size - 1
