# paraprodutos/services/leibniz.py
"""
Regra de Leibniz fracionária e limitação dos paraprodutos, em forma empírica:

    ‖L^{α/m}(fg)‖_r <= K (‖L^{α/m} f‖_{p1} ‖g‖_{q1} + ‖f‖_{p2} ‖L^{α/m} g‖_{q2})

- α em (0,1): razão por ensaio e qual paraproduto domina L^{α/m}(f⊥g⊥).
- α = 0: Hölder puro; a razão ‖fg‖_r / (‖f‖_{p1}‖g‖_{q1}) fica <= 1.
- α = 1: rota do gradiente (regra do produto discreta + Riesz e Riesz reverso).
"""
from __future__ import annotations

import logging
from typing import Optional, Sequence

import numpy as np

from core.campos import norma_lp
from core.excecoes import ParametroInvalido
from core.relatorios import Relatorio, agregar
from core.utils.sementes import derive_seed
from espectral.operador import SpectralOperator
from espectral.services.calculo import fractional_power
from espectral.services.campos_aleatorios import campo_ensaio, campo_medio_zero
from espectral.services.riesz import reverse_riesz_ratio, riesz_transform
from geometria.services.gradiente import gradient, vizinho_max
from geometria.variedade import DiscreteManifold
from paraprodutos.familia import SymbolFamily
from paraprodutos.quadratura import TQuadrature
from paraprodutos.services.decomposicao import product_decomposition
from paraprodutos.services.paraprodutos import derived_paraproduct

logger = logging.getLogger(__name__)

TOL_HOLDER = 1e-12
TERMOS = ("Pi(f,g)", "Pi_g(f)", "Pi_f(g)")


def _inv(p: float) -> float:
    return 0.0 if np.isinf(p) else 1.0 / p


def checar_holder(r: float, *pares: Sequence[float]) -> None:
    for p, q in pares:
        if min(r, p, q) < 1:
            raise ParametroInvalido(f"expoentes devem ser >= 1 (r={r}, p={p}, q={q})")
        if abs(_inv(r) - _inv(p) - _inv(q)) > TOL_HOLDER:
            raise ParametroInvalido(f"relação de Hölder violada: 1/{r} != 1/{p} + 1/{q}")


def _par_ensaio(op: SpectralOperator, M: DiscreteManifold, seed: int, i: int):
    f = campo_ensaio(op, M.distance, derive_seed(seed, 2 * i), i)
    g = campo_ensaio(op, M.distance, derive_seed(seed, 2 * i + 1), i + 1)
    return f, g


def leibniz_report(
    op: SpectralOperator,
    M: DiscreteManifold,
    family: SymbolFamily,
    quad: TQuadrature,
    alpha: float,
    r: float, p1: float, q1: float, p2: float, q2: float,
    trials: int,
    seed: int,
    pares: Optional[Sequence] = None,
) -> Relatorio:
    if not 0 <= alpha <= 1:
        raise ParametroInvalido(f"α deve estar em [0, 1] (recebido {alpha})")
    checar_holder(r, (p1, q1), (p2, q2))
    beta = alpha / op.m
    mu = op.measure

    amostra = [(np.asarray(f, float), np.asarray(g, float)) for f, g in (pares or [])]
    amostra += [_par_ensaio(op, M, seed, i) for i in range(trials)]

    rel = Relatorio(experiment="leibniz",
                    params={"n": M.vertex_count, "alpha": alpha, "r": r, "p1": p1, "q1": q1, "p2": p2, "q2": q2,
                            "N": family.N, "nodes": quad.node_count, "trials": trials, "seed": seed})
    for i, (f, g) in enumerate(amostra):
        lbf, lbg = fractional_power(op, beta, f), fractional_power(op, beta, g)
        esq = norma_lp(fractional_power(op, beta, f * g), mu, r)
        dir_ = norma_lp(lbf, mu, p1) * norma_lp(g, mu, q1) + norma_lp(f, mu, p2) * norma_lp(lbg, mu, q2)
        if dir_ == 0:
            continue
        registro = {"trial": i, "ratio": esq / dir_}

        if alpha == 0:
            den = norma_lp(f, mu, p1) * norma_lp(g, mu, q1)
            registro["holder_ratio"] = norma_lp(f * g, mu, r) / den if den > 0 else 0.0
        elif alpha == 1:
            registro.update(_rota_gradiente(op, M, f, g, r, p1, q1, p2, q2))
        else:
            dec = product_decomposition(op, family, quad, f, g)
            pesos = [norma_lp(fractional_power(op, beta, t), mu, r) for t in (dec.pi_hh, dec.pi_lh, dec.pi_hl)]
            registro["dominant_term"] = TERMOS[int(np.argmax(pesos))]
            registro["term_norms"] = pesos
        rel.per_trial.append(registro)

    rel.aggregates = agregar(t["ratio"] for t in rel.per_trial)
    rel.max_ratio = rel.aggregates["max"]
    if alpha == 0:
        rel.extras["max_holder_ratio"] = agregar(t["holder_ratio"] for t in rel.per_trial)["max"]
    elif 0 < alpha < 1:
        contagem = {nome: sum(1 for t in rel.per_trial if t["dominant_term"] == nome) for nome in TERMOS}
        rel.extras["dominant_counts"] = contagem
    else:
        rel.extras["product_rule_ok"] = all(t["product_rule_ok"] for t in rel.per_trial)
    return rel


def _rota_gradiente(op, M, f, g, r, p1, q1, p2, q2) -> dict:
    """
    |∇(fg)| <= |g|·|∇f| + f*·|∇g| ponto a ponto (f* = máximo nos vizinhos),
    depois Hölder e as razões de Riesz / Riesz reverso.
    """
    mu = op.measure
    grad_fg = gradient(M, f * g)
    limite = np.abs(g) * gradient(M, f) + vizinho_max(M, f) * gradient(M, g)
    folga = float(np.max(grad_fg - limite))
    fp, gp, fgp = (campo_medio_zero(op, v) for v in (f, g, f * g))
    riesz = [riesz_transform(op, M, fractional_power(op, 1.0 / op.m, v), p_grid=(p,)).razoes[float(p)]
             for v, p in ((fp, p1), (gp, q2))]
    return {
        "product_rule_ok": folga <= 1e-10,
        "product_rule_slack": folga,
        "gradient_ratio": norma_lp(grad_fg, mu, r) / max(
            norma_lp(gradient(M, f), mu, p1) * norma_lp(g, mu, q1)
            + norma_lp(vizinho_max(M, f), mu, p2) * norma_lp(gradient(M, g), mu, q2), np.finfo(float).tiny),
        "reverse_riesz_ratio": reverse_riesz_ratio(op, M, fgp, r),
        "riesz_ratio_f": riesz[0],
        "riesz_ratio_g": riesz[1],
    }


def paraproduct_bound_report(
    op: SpectralOperator,
    M: DiscreteManifold,
    family: SymbolFamily,
    quad: TQuadrature,
    beta: float,
    r: float, p: float, q: float,
    trials: int,
    seed: int,
) -> Relatorio:
    """‖L^β Π_g(f)‖_r / (‖L^β f‖_p ‖g‖_q), avaliado pela identidade do símbolo derivado."""
    checar_holder(r, (p, q))
    mu = op.measure
    rel = Relatorio(experiment="paraproduct",
                    params={"n": M.vertex_count, "beta": beta, "r": r, "p": p, "q": q, "N": family.N,
                            "nodes": quad.node_count, "trials": trials, "seed": seed})
    for i in range(trials):
        f, g = _par_ensaio(op, M, seed, i)
        f = campo_medio_zero(op, f)
        den = norma_lp(fractional_power(op, beta, f), mu, p) * norma_lp(g, mu, q)
        if den == 0:
            continue
        num = norma_lp(derived_paraproduct(op, family, quad, f, g, beta).valores, mu, r)
        rel.per_trial.append({"trial": i, "ratio": num / den})
    rel.aggregates = agregar(t["ratio"] for t in rel.per_trial)
    rel.max_ratio = rel.aggregates["max"]
    return rel
