# edp/services/estimativas.py
"""
Diagnósticos das evoluções: conservação das normas de Sobolev pelo grupo
unitário e_{itL}, decaimento pelo calor e a escala da contração de Picard
com o comprimento do intervalo.
"""
from __future__ import annotations

import dataclasses
import logging
from typing import Optional, Sequence

import numpy as np

from core.campos import como_array
from core.relatorios import HIPOTESE_VIOLADA, Relatorio
from edp.problema import EvolutionProblem
from edp.services.duhamel import SEM_CONTRACAO, duhamel_evolve
from espectral.operador import SpectralOperator
from espectral.services.calculo import heat, schrodinger
from normas.services.normas import bessel_norm, sobolev_norm

logger = logging.getLogger(__name__)

TOL_CONSERVACAO = 1e-10
TOL_MONOTONIA = 1e-12


def conservation_check(op: SpectralOperator, u0, alpha: float, t_grid: Sequence[float]) -> Relatorio:
    u0 = como_array(u0)
    base = bessel_norm(op, u0, alpha, 2)
    base_soma = sobolev_norm(op, u0, alpha, 2)
    escala = max(1.0, base)
    rel = Relatorio(experiment="conservation", params={"n": op.n, "alpha": alpha, "t_grid": list(t_grid)})

    for t in t_grid:
        s = schrodinger(op, t, u0)
        rel.per_trial.append({
            "t": float(t),
            "schrodinger_norm": bessel_norm(op, s, alpha, 2),
            "error": abs(bessel_norm(op, s, alpha, 2) - base),
            "error_sum_form": abs(sobolev_norm(op, s, alpha, 2) - base_soma),
            "heat_norm": bessel_norm(op, heat(op, t, u0), alpha, 2),
        })

    erro = max((max(r["error"], r["error_sum_form"]) for r in rel.per_trial), default=0.0)
    calor = [base] + [r["heat_norm"] for r in sorted(rel.per_trial, key=lambda r: r["t"])]
    monotono = all(b <= a + TOL_MONOTONIA * escala for a, b in zip(calor, calor[1:]))
    rel.max_ratio = erro / escala
    rel.extras.update({
        "initial_norm": base,
        "max_error": erro,
        "conservation_ok": erro <= TOL_CONSERVACAO * escala,
        "heat_monotone": monotono,
    })
    if not rel.extras["conservation_ok"]:
        logger.warning("conservação violada: erro %.3e", erro)
    return rel


def contraction_estimate(problema: EvolutionProblem, op: SpectralOperator, alpha: float,
                         interval_ladder: Sequence[float], d: Optional[float] = None) -> Relatorio:
    """
    Fator de contração medido por |I|, inclinação do ajuste log-log
    (≈ 1 quando o fator é linear em |I|) e o limiar empírico |I|*: maior |I|
    da escada abaixo do qual todos os Picard convergiram.
    """
    base = dataclasses.replace(problema, alpha=alpha)
    rel = Relatorio(experiment="pde",
                    params={"n": op.n, "kind": base.kind, "F": base.F.nome, "alpha": alpha,
                            "u0_sup": float(np.max(np.abs(base.u0))), "intervals": list(interval_ladder),
                            "tau_nodes": base.time_nodes, "picard_max": base.picard_iterations})
    if base.kind == "schrodinger" and d is not None:
        # L^∞ é automático num grafo finito; a hipótese só é registrada
        rel.extras["alpha_above_d_half"] = alpha > d / 2
        if alpha <= d / 2:
            rel.sinalizar(HIPOTESE_VIOLADA, f"α <= d/2 (α={alpha}, d={d:.4g})")

    for I in sorted(interval_ladder):
        res = duhamel_evolve(dataclasses.replace(base, interval_length=float(I)), op)
        rel.per_trial.append({
            "interval": float(I),
            "factor": res.fator_contracao,
            "converged": res.convergiu,
            "iterations": res.iteracoes,
            "distances": res.distancias,
            "residual": res.residuo,
        })

    validos = [(r["interval"], r["factor"]) for r in rel.per_trial
               if r["factor"] is not None and np.isfinite(r["factor"]) and r["factor"] > 0]
    inclinacao = None
    if len(validos) >= 2:
        x, y = np.log(np.array(validos)).T
        inclinacao = float(np.polyfit(x, y, 1)[0])

    limiar = None
    for r in rel.per_trial:
        if not r["converged"]:
            break
        limiar = r["interval"]

    fatores = [r["factor"] for r in rel.per_trial if r["factor"] is not None and np.isfinite(r["factor"])]
    rel.max_ratio = max(fatores) if fatores else None
    rel.extras.update({"slope": inclinacao, "threshold": limiar})
    if limiar is None or any(not r["converged"] for r in rel.per_trial):
        rel.flags.append(SEM_CONTRACAO)
    return rel
