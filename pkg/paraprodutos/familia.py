# paraprodutos/familia.py
"""
Família de Calderón:

    ψ(x) = x^N e^{-x} (1 - e^{-x})
    φ(x) = -∫_x^∞ ψ(y) dy/y = -Γ(N) [Q(N, x) - 2^{-N} Q(N, 2x)]
    ζ(x) = ∫_1^∞ ψ(ux) du/u = -φ(x) para x > 0, ζ(0) = 0

com Q a gama incompleta superior regularizada. Constantes:
    ĉ^{-1} = ∫ ψ(y) dy/y   = Γ(N)   (1 - 2^{-N})
    c^{-1} = ∫ ψ(y) dy/y²  = Γ(N-1) (1 - 2^{1-N})
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import integrate, special

from core.excecoes import ParametroInvalido

SIMBOLOS = ("psi", "phi", "zeta", "phi_tilde", "psi_tilde")


@dataclass(frozen=True)
class ConstantesCalderon:
    N: int
    c: float
    c_hat: float
    residuo_c: float       # |quadratura - forma fechada| / forma fechada
    residuo_c_hat: float


def calderon_constant(N: int, verificar: bool = True) -> ConstantesCalderon:
    if int(N) != N or N < 2:
        raise ParametroInvalido(f"N deve ser inteiro >= 2 (recebido {N}): integral divergente")
    N = int(N)
    inv_c_hat = special.gamma(N) * (1.0 - 2.0 ** (-N))
    inv_c = special.gamma(N - 1) * (1.0 - 2.0 ** (1 - N))
    res_c = res_c_hat = float("nan")
    if verificar:
        def integrando(y, k):
            return y ** (N - k) * np.exp(-y) * -np.expm1(-y)

        q_hat = sum(integrate.quad(integrando, a, b, args=(1,), epsabs=0, epsrel=1e-13, limit=200)[0]
                    for a, b in ((0, 1), (1, 40), (40, np.inf)))
        q = sum(integrate.quad(integrando, a, b, args=(2,), epsabs=0, epsrel=1e-13, limit=200)[0]
                for a, b in ((0, 1), (1, 40), (40, np.inf)))
        res_c_hat = abs(q_hat - inv_c_hat) / inv_c_hat
        res_c = abs(q - inv_c) / inv_c
    return ConstantesCalderon(N=N, c=1.0 / inv_c, c_hat=1.0 / inv_c_hat, residuo_c=res_c, residuo_c_hat=res_c_hat)


@dataclass(frozen=True)
class SymbolFamily:
    N: int = 5

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 2:
            raise ParametroInvalido(f"N deve ser inteiro >= 2 (recebido {self.N})")

    @property
    def constantes(self) -> ConstantesCalderon:
        return calderon_constant(self.N, verificar=False)

    @property
    def calderon_c(self) -> float:
        return self.constantes.c

    @property
    def c_hat(self) -> float:
        return self.constantes.c_hat

    def psi(self, x):
        x = np.asarray(x, dtype=float)
        return x ** self.N * np.exp(-x) * -np.expm1(-x)

    def phi(self, x):
        x = np.asarray(x, dtype=float)
        N = self.N
        return -special.gamma(N) * (special.gammaincc(N, x) - 2.0 ** (-N) * special.gammaincc(N, 2.0 * x))

    def zeta(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x > 0, -self.phi(x), 0.0)

    def phi_tilde(self, x, beta: float):
        """z^β φ(z)."""
        x = np.asarray(x, dtype=float)
        return x ** beta * self.phi(x) if beta != 0 else self.phi(x)

    def psi_tilde(self, x, beta: float):
        """z^{-β} ψ(z); exige β < N (zero de ordem N - β na origem)."""
        if beta >= self.N:
            raise ParametroInvalido(f"ψ̃ exige β < N (recebido β={beta}, N={self.N})")
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        pos = x > 0
        out[pos] = x[pos] ** (self.N - beta) * np.exp(-x[pos]) * -np.expm1(-x[pos])
        return out

    def avaliar(self, which: str, x, beta: Optional[float] = None):
        if which in ("psi", "phi", "zeta"):
            return getattr(self, which)(x)
        if which in ("phi_tilde", "psi_tilde"):
            if beta is None:
                raise ParametroInvalido(f"símbolo derivado '{which}' exige β")
            return getattr(self, which)(x, beta)
        raise ParametroInvalido(f"símbolo desconhecido '{which}' (use {', '.join(SIMBOLOS)})")


def symbol_eval(family: SymbolFamily, which: str, x, beta: Optional[float] = None):
    if np.any(np.asarray(x) < 0):
        raise ParametroInvalido("símbolos definidos só em x >= 0")
    return family.avaliar(which, x, beta)
