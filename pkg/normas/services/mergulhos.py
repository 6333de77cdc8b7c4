# normas/services/mergulhos.py
"""
Relatórios empíricos das imersões de Sobolev:

- equivalence_report: ‖(1+L)^{α/m} f‖_p contra ‖f‖_p + ‖L^{α/m} f‖_p
- embedding_report:   ‖(1+L)^{-s/m} f‖_q / ‖f‖_p e ‖f‖_q / ‖f‖_{W^{s,p}}
- log_embedding_report: ‖f‖_∞ / (1 + ‖f‖_BMO (1 + log(2 + ‖f‖_{W^{s,p}})))

Razões são reportadas como máximos empíricos; nenhuma é comparada a uma
constante teórica. Regimes fora da hipótese geram a sinalização
"hypothesis-violated", nunca erro.
"""
from __future__ import annotations

import logging
from typing import Iterable, List, Optional

import numpy as np

from core.campos import como_array, norma_lp
from core.excecoes import ParametroInvalido
from core.relatorios import HIPOTESE_VIOLADA, Relatorio, agregar
from espectral.operador import SpectralOperator
from espectral.services.calculo import fractional_power
from espectral.services.campos_aleatorios import TIPOS, campo_ensaio
from geometria.services.relatorio import doubling_constant
from geometria.variedade import DiscreteManifold
from normas.services.normas import bessel_norm, bmo_norm, sobolev_norm

logger = logging.getLogger(__name__)

ESCALAS_LOG = (1.0, 10.0, 100.0, 1000.0)


def dimensao_homogenea(M: DiscreteManifold) -> float:
    return float(np.log2(doubling_constant(M)))


def _amostra(op: SpectralOperator, M: DiscreteManifold, trials: int, seed: int, campos: Optional[Iterable]):
    """(rótulo, campo) para os campos extras seguidos dos ensaios semeados."""
    itens = [("extra", como_array(f)) for f in (campos or [])]
    itens += [(TIPOS[i % len(TIPOS)], campo_ensaio(op, M.distance, seed, i)) for i in range(trials)]
    return itens


def equivalence_report(op: SpectralOperator, M: DiscreteManifold, alpha: float, p: float,
                       trials: int, seed: int, campos: Optional[Iterable] = None) -> Relatorio:
    beta = alpha / op.m
    registros: List[dict] = []
    for i, (tipo, f) in enumerate(_amostra(op, M, trials, seed, campos)):
        soma = sobolev_norm(op, f, alpha, p, homogeneous=False)
        if soma == 0:
            continue
        razao = bessel_norm(op, f, alpha, p) / soma
        registros.append({"trial": i, "kind": tipo, "ratio": razao})
    ag = agregar(r["ratio"] for r in registros)
    constante = None
    if ag["count"]:
        constante = max(ag["max"], 1.0 / ag["min"])
    rel = Relatorio(experiment="equivalence",
                    params={"n": M.vertex_count, "alpha": alpha, "beta": beta, "p": p, "trials": trials, "seed": seed},
                    per_trial=registros, max_ratio=ag["max"], aggregates=ag)
    rel.extras["C"] = constante
    return rel


def embedding_report(op: SpectralOperator, M: DiscreteManifold, s: float, p: float, q: float,
                     trials: int, seed: int, campos: Optional[Iterable] = None,
                     d: Optional[float] = None) -> Relatorio:
    if s < 0 or p < 1 or q < 1:
        raise ParametroInvalido(f"exige s >= 0, p >= 1, q >= 1 (recebido s={s}, p={p}, q={q})")
    d = dimensao_homogenea(op.sobre(M)) if d is None else d
    rel = Relatorio(experiment="embed",
                    params={"n": M.vertex_count, "s": s, "p": p, "q": q, "d": d, "trials": trials, "seed": seed})

    if np.isinf(q):
        valido = d == 0 or s > d / p
    else:
        valido = 1.0 / q > 1.0 / p - (s / d if d > 0 else np.inf)
    if not valido:
        rel.sinalizar(HIPOTESE_VIOLADA, f"regime fora de 1/q > 1/p - s/d (d={d:.4g})")

    for i, (tipo, f) in enumerate(_amostra(op, M, trials, seed, campos)):
        lp = norma_lp(f, op.measure, p)
        if lp == 0:
            continue
        suave = fractional_power(op, -s / op.m, f, bessel=True)
        rel.per_trial.append({
            "trial": i, "kind": tipo,
            "ratio": norma_lp(suave, op.measure, q) / lp,
            "ratio_sobolev": norma_lp(f, op.measure, q) / sobolev_norm(op, f, s, p),
        })
    rel.aggregates = agregar(r["ratio"] for r in rel.per_trial)
    rel.max_ratio = rel.aggregates["max"]
    rel.extras["max_ratio_sobolev"] = agregar(r["ratio_sobolev"] for r in rel.per_trial)["max"]
    return rel


def log_embedding_report(op: SpectralOperator, M: DiscreteManifold, s: float, p: float,
                         trials: int, seed: int, flavor: str = "BMO", p_bmo: float = 2.0,
                         campos: Optional[Iterable] = None, d: Optional[float] = None) -> Relatorio:
    sabor = {"bmo": "classical", "bmo_l": "semigroup", "bmol": "semigroup"}.get(flavor.lower())
    if sabor is None:
        raise ParametroInvalido(f"sabor desconhecido '{flavor}' (BMO | BMO_L)")
    d = dimensao_homogenea(op.sobre(M)) if d is None else d
    rel = Relatorio(experiment="log-embed",
                    params={"n": M.vertex_count, "s": s, "p": p, "flavor": flavor, "d": d,
                            "trials": trials, "seed": seed, "scales": list(ESCALAS_LOG)})
    if not s > d / p:
        rel.sinalizar(HIPOTESE_VIOLADA, f"exige s > d/p (s={s}, d/p={d / p:.4g})")

    # a constante aditiva "1+" não é invariante por escala: μ(M) vai junto no relatório
    rel.extras["total_measure"] = float(np.sum(op.measure))
    if not np.isclose(rel.extras["total_measure"], 1.0):
        rel.sinalizar("total-measure-dependent")

    for i, (tipo, u) in enumerate(_amostra(op, M, trials, seed, campos)):
        inf_u = norma_lp(u, op.measure, np.inf)
        bmo_u = bmo_norm(M, u, sabor, op=op, p=p_bmo)
        w_u = sobolev_norm(op, u, s, p)
        for c in ESCALAS_LOG:
            den = 1.0 + c * bmo_u * (1.0 + np.log(2.0 + c * w_u))
            rel.per_trial.append({"trial": i, "kind": tipo, "scale": c, "ratio": c * inf_u / den,
                                  "bmo": c * bmo_u, "sobolev": c * w_u})
    rel.aggregates = agregar(r["ratio"] for r in rel.per_trial)
    rel.max_ratio = rel.aggregates["max"]
    return rel
