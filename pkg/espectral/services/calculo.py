# espectral/services/calculo.py
"""
Cálculo funcional exato: b(L)f = Σ_i b(λ_i) <f, e_i>_μ e_i.
"""
from __future__ import annotations

import logging
from typing import Callable, Dict

import numpy as np
from django.conf import settings

from core.campos import como_array
from core.excecoes import NucleoNaoOrtogonal, ParametroInvalido, SimboloIndefinido
from espectral.operador import SpectralOperator

logger = logging.getLogger(__name__)

Simbolo = Callable[[np.ndarray], np.ndarray]


def avaliar_simbolo(op: SpectralOperator, b: Simbolo) -> np.ndarray:
    with np.errstate(all="ignore"):
        valores = np.asarray(b(op.eigenvalues))
    if valores.shape == ():
        valores = np.full(op.n, valores[()])
    ruins = np.flatnonzero(~np.isfinite(valores))
    if ruins.size:
        raise SimboloIndefinido(float(op.eigenvalues[ruins[0]]))
    return valores


def apply_symbol(op: SpectralOperator, b: Simbolo, f) -> np.ndarray:
    return op.aplicar_valores(avaliar_simbolo(op, b), f)


def heat(op: SpectralOperator, t: float, f) -> np.ndarray:
    return op.aplicar_valores(np.exp(-t * op.eigenvalues), f)


def schrodinger(op: SpectralOperator, t: float, f) -> np.ndarray:
    return op.aplicar_valores(np.exp(1j * t * op.eigenvalues), f)


def simbolo_potencia(op: SpectralOperator, beta: float, bessel: bool = False) -> np.ndarray:
    lam = op.eigenvalues
    if bessel:
        return (1.0 + lam) ** beta
    out = np.zeros_like(lam)
    pos = lam > 0
    out[pos] = lam[pos] ** beta
    return out


def componente_nucleo(op: SpectralOperator, f) -> float:
    """Norma relativa (L²(μ)) da componente de f no núcleo."""
    c = op.coeficientes(f)
    total = float(np.linalg.norm(c))
    if total == 0.0:
        return 0.0
    return float(np.linalg.norm(c[op.kernel_mask])) / total


def fractional_power(op: SpectralOperator, beta: float, f, bessel: bool = False) -> np.ndarray:
    """
    Homogêneo: símbolo λ^β com 0^β := 0 (projeção do núcleo removida).
    Bessel: (1+λ)^β, definido para todo β.
    """
    v = como_array(f)
    if beta == 0:
        return np.array(v, copy=True)
    if not bessel and beta < 0:
        comp = componente_nucleo(op, v)
        if comp > settings.SOBOLEV_LAB["TOL_NUCLEO"]:
            raise NucleoNaoOrtogonal(comp)
    return op.aplicar_valores(simbolo_potencia(op, beta, bessel), v)


# =======================
# Registro de símbolos "nome:parâmetros"
# =======================
def _param(params, i, nome):
    try:
        return float(params[i])
    except (IndexError, ValueError):
        raise ParametroInvalido(f"símbolo '{nome}' exige parâmetro numérico na posição {i + 1}") from None


def _homogeneo(beta: float) -> Simbolo:
    def b(lam):
        lam = np.asarray(lam, dtype=float)
        out = np.zeros_like(lam)
        out[lam > 0] = lam[lam > 0] ** beta
        return out
    return b


SIMBOLOS: Dict[str, Callable[[list], Simbolo]] = {
    "identity": lambda p: (lambda lam: np.ones_like(lam)),
    "lambda": lambda p: (lambda lam: np.asarray(lam, dtype=float)),
    "heat": lambda p: (lambda lam, t=_param(p, 0, "heat"): np.exp(-t * lam)),
    "schrodinger": lambda p: (lambda lam, t=_param(p, 0, "schrodinger"): np.exp(1j * t * lam)),
    "power": lambda p: _homogeneo(_param(p, 0, "power")),
    "bessel": lambda p: (lambda lam, b=_param(p, 0, "bessel"): (1.0 + lam) ** b),
    "resolvent": lambda p: (lambda lam, z=_param(p, 0, "resolvent"): 1.0 / (lam - z)),
}


def parse_symbol(txt: str) -> Simbolo:
    nome, *params = [s.strip() for s in (txt or "").split(":")]
    try:
        fabrica = SIMBOLOS[nome.lower()]
    except KeyError:
        raise ParametroInvalido(f"símbolo desconhecido '{nome}' (disponíveis: {', '.join(SIMBOLOS)})") from None
    return fabrica(params)
