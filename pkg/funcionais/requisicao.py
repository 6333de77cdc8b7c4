# funcionais/requisicao.py
from __future__ import annotations

from dataclasses import dataclass

from django.conf import settings

from core.excecoes import ParametroInvalido


@dataclass(frozen=True)
class SFuncRequest:
    """Parâmetros de S_α^ρ; `local` integra só r em (0, 1)."""
    alpha: float = 0.5
    rho: float = 1.0
    local: bool = False

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise ParametroInvalido(f"α deve estar em (0, 1) (recebido {self.alpha})")
        if not self.rho >= 1:
            raise ParametroInvalido(f"ρ deve ser >= 1 (recebido {self.rho})")

    @classmethod
    def padrao(cls, local: bool = False) -> "SFuncRequest":
        cfg = settings.SOBOLEV_LAB
        return cls(alpha=cfg["ALPHA"], rho=cfg["RHO"], local=local)
