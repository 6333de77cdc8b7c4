# espectral/operador.py
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np

from core.campos import como_array


@dataclass(frozen=True, eq=False)
class SpectralOperator:
    """
    Gerador L representado pelos autopares, com autovetores ortonormais em
    <f, g>_μ = Σ f(x) conj(g(x)) μ(x). As colunas de `eigenvectors` são os e_i.
    """
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    measure: np.ndarray
    m: float = 2.0
    form: str = "combinatorial"
    matrix: Optional[np.ndarray] = None  # L montado (denso), usado pelos oráculos
    kernel_dim: int = 1
    info: Dict[str, Any] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return int(self.eigenvalues.shape[0])

    @property
    def kernel_mask(self) -> np.ndarray:
        return self.eigenvalues == 0.0

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[-1])

    @property
    def lambda_min_pos(self) -> float:
        pos = self.eigenvalues[self.eigenvalues > 0]
        return float(pos[0]) if pos.size else 0.0

    def coeficientes(self, f) -> np.ndarray:
        """c_i = <f, e_i>_μ (autovetores reais)."""
        return self.eigenvectors.T @ (como_array(f) * self.measure)

    def sintetizar(self, c: np.ndarray) -> np.ndarray:
        return self.eigenvectors @ c

    def aplicar_valores(self, valores_simbolo: np.ndarray, f) -> np.ndarray:
        return self.sintetizar(valores_simbolo * self.coeficientes(f))

    def projetar_nucleo(self, f) -> np.ndarray:
        """Componente de f no núcleo de L."""
        c = self.coeficientes(f)
        return self.sintetizar(np.where(self.kernel_mask, c, 0.0))

    def sobre(self, M):
        """A variedade M com a medida do operador (o normalizado carrega o grau)."""
        if np.array_equal(M.measure, self.measure):
            return M
        return M.with_measure(self.measure)

    def remover_nucleo(self, f) -> np.ndarray:
        v = como_array(f)
        return v - self.projetar_nucleo(v)
