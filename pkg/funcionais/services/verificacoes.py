# funcionais/services/verificacoes.py
"""
Desigualdades pontuais exatas de S_α^ρ (Minkowski, médias de potência e
Lipschitz). Cada verificação devolve o maior excesso lhs - rhs: negativo ou
zero quando vale, com tolerância de máquina.
`medida` substitui μ da variedade, como em `strichartz_functional`.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from core.campos import como_array
from core.excecoes import ParametroInvalido
from core.nao_linearidades import NaoLinearidade, certificar, obter
from funcionais.requisicao import SFuncRequest
from funcionais.services.strichartz import strichartz_functional
from geometria.variedade import DiscreteManifold

logger = logging.getLogger(__name__)

TOL_PONTUAL = 1e-10
TOL_MONOTONIA = 1e-12


@dataclass(frozen=True)
class Verificacao:
    ok: bool
    violacao_max: float

    @classmethod
    def de(cls, lhs: np.ndarray, rhs: np.ndarray, tol: float) -> "Verificacao":
        excesso = float(np.max(lhs - rhs)) if np.size(lhs) else 0.0
        if excesso > tol:
            logger.warning("desigualdade pontual violada: excesso %.3e > %.1e", excesso, tol)
        return cls(ok=excesso <= tol, violacao_max=excesso)


def rho_monotonicity_check(M: DiscreteManifold, f, alpha: float, rho1: float, rho2: float,
                           local: bool = False, medida: Optional[np.ndarray] = None) -> Verificacao:
    if not 1 <= rho1 <= rho2:
        raise ParametroInvalido(f"exige 1 <= ρ1 <= ρ2 (recebido {rho1}, {rho2})")
    s1 = strichartz_functional(M, f, SFuncRequest(alpha, rho1, local), medida=medida)
    s2 = strichartz_functional(M, f, SFuncRequest(alpha, rho2, local), medida=medida)
    return Verificacao.de(s1, s2, TOL_MONOTONIA)


def pointwise_subadditivity_check(M: DiscreteManifold, f, g, alpha: float, rho: float = 1.0,
                                  local: bool = False, medida: Optional[np.ndarray] = None) -> Verificacao:
    """S(fg) <= ‖g‖_∞ S f + ‖f‖_∞ S g."""
    f, g = como_array(f), como_array(g)
    req = SFuncRequest(alpha, rho, local)
    rhs = (np.max(np.abs(g)) * strichartz_functional(M, f, req, medida=medida)
           + np.max(np.abs(f)) * strichartz_functional(M, g, req, medida=medida))
    return Verificacao.de(strichartz_functional(M, f * g, req, medida=medida), rhs, TOL_PONTUAL)


def sum_subadditivity_check(M: DiscreteManifold, f, g, alpha: float, rho: float = 1.0,
                            local: bool = False, medida: Optional[np.ndarray] = None) -> Verificacao:
    f, g = como_array(f), como_array(g)
    req = SFuncRequest(alpha, rho, local)
    rhs = strichartz_functional(M, f, req, medida=medida) + strichartz_functional(M, g, req, medida=medida)
    return Verificacao.de(strichartz_functional(M, f + g, req, medida=medida), rhs, TOL_PONTUAL)


def lipschitz_domination_check(M: DiscreteManifold, f, F: Union[str, NaoLinearidade], alpha: float,
                               rho: float = 1.0, local: bool = False,
                               medida: Optional[np.ndarray] = None) -> Verificacao:
    """S(F∘f) <= Lip(F)·S f, com Lip certificado na faixa de f."""
    F = obter(F) if isinstance(F, str) else F
    v = como_array(f)
    req = SFuncRequest(alpha, rho, local)
    lip = certificar(F, v)
    return Verificacao.de(strichartz_functional(M, F(v), req, medida=medida),
                          lip * strichartz_functional(M, v, req, medida=medida), TOL_PONTUAL)
