# funcionais/services/caracterizacao.py
"""
Caracterização de W^{α,p}_L pelo funcional S_α^ρ e ação de não linearidades.

characterization_report mede, por ensaio,
    homogênea:      ‖S_α^ρ f‖_p / ‖L^{α/m} f‖_p              (f⊥, média zero)
    não homogênea: (‖f‖_p + ‖S_α^{ρ,loc} f‖_p) / (‖f‖_p + ‖L^{α/m} f‖_p)
e reporta mínimo e máximo (c_1, c_2 empíricos), sem comparar com teoria.
"""
from __future__ import annotations

import logging
from typing import Iterable, List, Optional, Union

import numpy as np

from core.campos import como_array, norma_lp
from core.nao_linearidades import NaoLinearidade, certificar, obter
from core.relatorios import HIPOTESE_VIOLADA, Relatorio, agregar
from espectral.operador import SpectralOperator
from espectral.services.calculo import fractional_power
from espectral.services.campos_aleatorios import TIPOS, campo_ensaio, campo_medio_zero
from funcionais.requisicao import SFuncRequest
from funcionais.services.strichartz import littlewood_paley_functional, strichartz_functional
from funcionais.services.verificacoes import TOL_PONTUAL
from geometria.variedade import DiscreteManifold
from normas.services.mergulhos import dimensao_homogenea
from normas.services.normas import sobolev_norm
from paraprodutos.quadratura import TQuadrature

logger = logging.getLogger(__name__)

# expoente s_- da estimativa fora da diagonal (núcleo do calor)
S_MENOS = 1.0


def _amostra(op: SpectralOperator, M: DiscreteManifold, trials: int, seed: int, campos: Optional[Iterable]):
    itens = [("extra", como_array(f)) for f in (campos or [])]
    itens += [(TIPOS[i % len(TIPOS)], campo_ensaio(op, M.distance, seed, i)) for i in range(trials)]
    return itens


def characterization_report(
    op: SpectralOperator,
    M: DiscreteManifold,
    alpha: float,
    p: float,
    rho: float = 1.0,
    trials: int = 50,
    seed: int = 0,
    global_: bool = True,
    quad: Optional[TQuadrature] = None,
    campos: Optional[Iterable] = None,
    delta: Optional[float] = None,
) -> Relatorio:
    """
    `global_` escolhe a razão principal: homogênea (S não local) ou não
    homogênea (S local). As duas vão sempre no registro do ensaio.
    `delta` (se dado) é o decaimento ajustado por offdiag_probe; vai ao lado
    do limiar α + d/s_- sem bloquear nada.
    """
    req, req_loc = SFuncRequest(alpha, rho), SFuncRequest(alpha, rho, local=True)
    quad = quad or TQuadrature.padrao()
    beta = alpha / op.m
    mu = op.measure
    d = dimensao_homogenea(op.sobre(M))

    rel = Relatorio(experiment="characterize",
                    params={"n": M.vertex_count, "alpha": alpha, "p": p, "rho": rho, "global": global_,
                            "trials": trials, "seed": seed})
    if not max(rho, S_MENOS) < min(2.0, p):
        rel.sinalizar(HIPOTESE_VIOLADA, f"exige max(ρ, s_-) < min(2, p) (ρ={rho}, p={p})")

    for i, (tipo, f) in enumerate(_amostra(op, M, trials, seed, campos)):
        fp = campo_medio_zero(op, f)
        semi = norma_lp(fractional_power(op, beta, fp), mu, p)
        if semi == 0:
            logger.debug("ensaio %d excluído: seminorma nula", i)
            continue
        s = strichartz_functional(M, fp, req, medida=mu)
        s_loc = strichartz_functional(M, f, req_loc, medida=mu)
        lp = norma_lp(f, mu, p)
        homog = norma_lp(s, mu, p) / semi
        nao_homog = (lp + norma_lp(s_loc, mu, p)) / (lp + norma_lp(fractional_power(op, beta, f), mu, p))

        g = littlewood_paley_functional(op, quad, fp, alpha)
        pos = s > 0
        rel.per_trial.append({
            "trial": i, "kind": tipo,
            "ratio": homog if global_ else nao_homog,
            "ratio_homogeneous": homog,
            "ratio_local": nao_homog,
            "lp_over_s": float(np.max(g[pos] / s[pos])) if pos.any() else None,
        })

    rel.aggregates = agregar(t["ratio"] for t in rel.per_trial)
    rel.max_ratio = rel.aggregates["max"]
    rel.extras.update({
        "c1": rel.aggregates["min"],
        "c2": rel.aggregates["max"],
        "local_ratio": agregar(t["ratio_local"] for t in rel.per_trial),
        "max_lp_over_s": agregar(t["lp_over_s"] for t in rel.per_trial)["max"],
        "delta_threshold": alpha + d / S_MENOS,
        "delta_fitted": delta,
        "homogeneous_dimension": d,
    })
    return rel


def nonlinearity_report(
    op: SpectralOperator,
    M: DiscreteManifold,
    F: Union[str, NaoLinearidade],
    alpha: float,
    p: float,
    trials: int,
    seed: int,
    rho: float = 1.0,
    campos: Optional[Iterable] = None,
) -> Relatorio:
    """
    Mecanismo exato S(F∘f) <= Lip(F)·S f ponto a ponto e a constante empírica
    ‖F(f)‖_{W^{α,p}} / ‖f‖_{W^{α,p}} (forma não homogênea).
    """
    F = obter(F) if isinstance(F, str) else F
    req = SFuncRequest(alpha, rho)
    rel = Relatorio(experiment="nonlin",
                    params={"n": M.vertex_count, "F": F.nome, "alpha": alpha, "p": p, "rho": rho,
                            "trials": trials, "seed": seed})
    folgas: List[float] = []
    for i, (tipo, f) in enumerate(_amostra(op, M, trials, seed, campos)):
        base = sobolev_norm(op, f, alpha, p)
        if base == 0:
            continue
        Ff = F(f)
        lip = certificar(F, f)
        excesso = float(np.max(strichartz_functional(M, Ff, req, medida=op.measure)
                               - lip * strichartz_functional(M, f, req, medida=op.measure)))
        folgas.append(excesso)
        rel.per_trial.append({
            "trial": i, "kind": tipo, "lipschitz": lip,
            "ratio": sobolev_norm(op, Ff, alpha, p) / base,
            "s_domination_excess": excesso,
        })

    rel.aggregates = agregar(t["ratio"] for t in rel.per_trial)
    rel.max_ratio = rel.aggregates["max"]
    rel.extras.update({
        "K": rel.max_ratio,
        "s_domination_ok": all(e <= TOL_PONTUAL for e in folgas),
        "max_s_domination_excess": max(folgas) if folgas else None,
        "lipschitz_global": F.global_,
        "lipschitz_max": agregar(t["lipschitz"] for t in rel.per_trial)["max"],
    })
    if not rel.extras["s_domination_ok"]:
        rel.sinalizar("s-domination-failed", f"excesso {rel.extras['max_s_domination_excess']:.3e}")
    return rel
