# edp/problema.py
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np
from django.conf import settings

from core.campos import como_array
from core.excecoes import ParametroInvalido
from core.nao_linearidades import NaoLinearidade, obter

TIPOS = ("heat", "schrodinger")


@dataclass(frozen=True, eq=False)
class EvolutionProblem:
    """
    heat:         u(t) = e^{-tL} u0 - ∫_0^t e^{-(t-τ)L} F(u(τ)) dτ
    schrodinger:  u(t) = e^{itL} u0 - i ∫_0^t e^{i(t-τ)L} F(u(τ)) dτ
    """
    kind: str
    F: Union[str, NaoLinearidade]
    u0: np.ndarray
    interval_length: float
    alpha: float = 0.5
    time_nodes: int = 32          # Gauss-Legendre em τ
    picard_iterations: int = 50
    amostras: int = 17            # amostra uniforme da norma C^0_I
    nos_tempo: int = 25           # Chebyshev-Lobatto em [0, |I|]

    def __post_init__(self):
        if self.kind not in TIPOS:
            raise ParametroInvalido(f"tipo de evolução desconhecido '{self.kind}' (heat | schrodinger)")
        F = obter(self.F) if isinstance(self.F, str) else self.F
        if not isinstance(F, NaoLinearidade):
            raise ParametroInvalido("não linearidade sem certificado de Lipschitz")
        object.__setattr__(self, "F", F)

        u0 = como_array(self.u0)
        if self.kind == "heat" and np.iscomplexobj(u0):
            raise ParametroInvalido("o dado inicial do calor deve ser real")
        if self.kind == "schrodinger":
            u0 = u0.astype(complex)
        object.__setattr__(self, "u0", u0)

        if not self.interval_length > 0:
            raise ParametroInvalido(f"|I| deve ser positivo (recebido {self.interval_length})")
        if self.time_nodes < 16:
            raise ParametroInvalido(f"quadratura em τ exige >= 16 nós (recebido {self.time_nodes})")
        if self.picard_iterations < 1 or self.amostras < 2 or self.nos_tempo < 2:
            raise ParametroInvalido("iterações de Picard >= 1 e amostras de tempo >= 2")
        if not self.alpha >= 0:
            raise ParametroInvalido(f"α deve ser >= 0 (recebido {self.alpha})")

    @classmethod
    def padrao(cls, kind: str, F, u0, interval_length: float, **kw) -> "EvolutionProblem":
        cfg = settings.SOBOLEV_LAB
        base = {
            "alpha": cfg["ALPHA"],
            "time_nodes": cfg["TAU_NOS"],
            "picard_iterations": cfg["PICARD_MAX"],
            "amostras": cfg["AMOSTRAS_TEMPO"],
            "nos_tempo": cfg["NOS_TEMPO"],
        }
        base.update(kw)
        return cls(kind, F, u0, interval_length, **base)
