# normas/requisicao.py
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from core.excecoes import ParametroInvalido
from espectral.operador import SpectralOperator


@dataclass(frozen=True)
class NormRequest:
    p: float
    alpha: float = 0.0
    homogeneous: bool = False
    op: Optional[SpectralOperator] = None

    def __post_init__(self):
        if not self.p >= 1:
            raise ParametroInvalido(f"p deve estar em [1, inf] (recebido {self.p})")
        if not self.alpha >= 0:
            raise ParametroInvalido(f"regularidade deve ser >= 0 (recebido {self.alpha})")
