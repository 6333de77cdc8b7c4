# geometria/variedade.py
"""
Tipos de domínio da geometria: variedade discreta (grafo ponderado com
métrica de caminho mínimo e medida nos vértices) e bolas abertas.

A variedade é imutável depois de construída; as estruturas derivadas
(ordenação das distâncias, volumes acumulados, arrays de arestas) são
calculadas sob demanda e guardadas em cache.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Any, Dict, Optional, Tuple

import numpy as np

from core.excecoes import GeometriaInvalida


@dataclass(frozen=True)
class Aresta:
    u: int
    v: int
    w: float
    len: float
    coef: float = 1.0  # coeficiente a_e da forma divergente


@dataclass(frozen=True, eq=False)
class DiscreteManifold:
    vertex_count: int
    measure: np.ndarray
    edges: Tuple[Aresta, ...]
    distance: np.ndarray
    sorted_radii: np.ndarray
    coords: Optional[np.ndarray] = None
    generator: Dict[str, Any] = field(default_factory=dict)

    # ---------------------------
    # Arrays de arestas
    # ---------------------------
    @cached_property
    def _arestas(self) -> Tuple[np.ndarray, ...]:
        eu = np.array([a.u for a in self.edges], dtype=int)
        ev = np.array([a.v for a in self.edges], dtype=int)
        ew = np.array([a.w for a in self.edges], dtype=float)
        el = np.array([a.len for a in self.edges], dtype=float)
        ec = np.array([a.coef for a in self.edges], dtype=float)
        return eu, ev, ew, el, ec

    @property
    def edge_u(self) -> np.ndarray:
        return self._arestas[0]

    @property
    def edge_v(self) -> np.ndarray:
        return self._arestas[1]

    @property
    def edge_w(self) -> np.ndarray:
        return self._arestas[2]

    @property
    def edge_len(self) -> np.ndarray:
        return self._arestas[3]

    @property
    def edge_coef(self) -> np.ndarray:
        return self._arestas[4]

    @cached_property
    def degree(self) -> np.ndarray:
        """Grau ponderado Σ_y w_xy."""
        n = self.vertex_count
        return np.bincount(self.edge_u, self.edge_w, n) + np.bincount(self.edge_v, self.edge_w, n)

    @cached_property
    def combinatorial_degree(self) -> np.ndarray:
        n = self.vertex_count
        return np.bincount(self.edge_u, minlength=n) + np.bincount(self.edge_v, minlength=n)

    # ---------------------------
    # Distâncias ordenadas / volumes
    # ---------------------------
    @cached_property
    def ordem(self) -> np.ndarray:
        """ordem[x] = vértices em ordem crescente de d(x, ·) (desempate estável por índice)."""
        return np.argsort(self.distance, axis=1, kind="stable")

    @cached_property
    def distancias_ordenadas(self) -> np.ndarray:
        return np.take_along_axis(self.distance, self.ordem, axis=1)

    @cached_property
    def volumes_acumulados(self) -> np.ndarray:
        """volumes_acumulados[x, k-1] = μ dos k vértices mais próximos de x."""
        return np.cumsum(self.measure[self.ordem], axis=1)

    @property
    def total_measure(self) -> float:
        return float(np.sum(self.measure))

    @property
    def diameter(self) -> float:
        return float(self.sorted_radii[-1]) if self.sorted_radii.size else 0.0

    def with_measure(self, medida: np.ndarray) -> "DiscreteManifold":
        medida = np.asarray(medida, dtype=float)
        if medida.shape != (self.vertex_count,) or np.any(~np.isfinite(medida)) or np.any(medida <= 0):
            raise GeometriaInvalida("medida deve ser positiva e finita em todos os vértices")
        return replace(self, measure=medida, generator={**self.generator, "measure": "custom"})


@dataclass(frozen=True)
class Ball:
    center: int
    radius: float
    members: Tuple[int, ...]
    volume: float

    def __contains__(self, y: int) -> bool:
        return y in self.members
