# core/nao_linearidades.py
"""
Biblioteca de não linearidades F com certificado de Lipschitz.

Cada entrada tem `lipschitz(R)`: constante de Lipschitz de F restrita a
[-R, R] (ou ao disco |z| <= R no caso complexo). F sem certificado não entra.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict

import numpy as np

from core.excecoes import ParametroInvalido


@dataclass(frozen=True)
class NaoLinearidade:
    nome: str
    F: Callable[[np.ndarray], np.ndarray]
    lipschitz: Callable[[float], float]
    complexa: bool = False
    global_: bool = True  # Lipschitz global (não depende de R)

    def __call__(self, u: np.ndarray) -> np.ndarray:
        return self.F(u)


def _quadrado(u):
    return u * u


def _cubo(u):
    return u * u * u


def _cubica_complexa(u):
    return np.abs(u) ** 2 * u


# ==========
# Registro
# ==========
REGISTRO: Dict[str, NaoLinearidade] = {
    "identity": NaoLinearidade("identity", lambda u: np.array(u, copy=True), lambda R: 1.0),
    "zero": NaoLinearidade("zero", np.zeros_like, lambda R: 0.0),
    "abs": NaoLinearidade("abs", np.abs, lambda R: 1.0),
    "sin": NaoLinearidade("sin", np.sin, lambda R: 1.0),
    "tanh": NaoLinearidade("tanh", np.tanh, lambda R: 1.0),
    "u2": NaoLinearidade("u2", _quadrado, lambda R: 2.0 * R, global_=False),
    "u3": NaoLinearidade("u3", _cubo, lambda R: 3.0 * R * R, global_=False),
    # |u|^2 u em C = R^2: Lipschitz 3R^2 no disco de raio R
    "abs2u": NaoLinearidade("abs2u", _cubica_complexa, lambda R: 3.0 * R * R, complexa=True, global_=False),
}

APELIDOS = {"x2": "u2", "x^2": "u2", "u^2": "u2", "x3": "u3", "x^3": "u3", "u^3": "u3", "|u|^2u": "abs2u", "id": "identity"}


def obter(nome: str) -> NaoLinearidade:
    chave = APELIDOS.get(nome.strip(), nome.strip())
    try:
        return REGISTRO[chave]
    except KeyError:
        raise ParametroInvalido(
            f"não linearidade '{nome}' sem certificado de Lipschitz (disponíveis: {', '.join(sorted(REGISTRO))})"
        ) from None


def certificar(F: NaoLinearidade, valores: np.ndarray) -> float:
    """Constante de Lipschitz certificada sobre a faixa de valores observada."""
    if not isinstance(F, NaoLinearidade):
        raise ParametroInvalido("não linearidade sem certificado de Lipschitz")
    R = float(np.max(np.abs(valores))) if np.size(valores) else 0.0
    return float(F.lipschitz(R))
