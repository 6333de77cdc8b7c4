# geometria/services/bolas.py
"""
Bolas abertas B(x, r) = {y : d(x, y) < r} e a grade de raios.

A pertinência a uma bola é constante por partes em r, com quebras nas
distâncias a partir do centro; por isso toda varredura "sobre todos os raios"
é exata visitando só os pontos de quebra.
"""
from __future__ import annotations

from typing import Iterator, Tuple

import numpy as np

from core.excecoes import ParametroInvalido
from geometria.variedade import Ball, DiscreteManifold


def ball(M: DiscreteManifold, x: int, r: float) -> Ball:
    if not r > 0:
        raise ParametroInvalido(f"raio deve ser positivo (recebido {r})")
    membros = np.flatnonzero(M.distance[x] < r)
    return Ball(center=int(x), radius=float(r), members=tuple(int(y) for y in membros),
                volume=float(np.sum(M.measure[membros])))


def grade_raios(M: DiscreteManifold) -> np.ndarray:
    """
    {primeira distância / 2} ∪ distâncias distintas ∪ pontos médios ∪ {2·diâmetro}.
    Grade degenerada (uma só distância) fica só com as distâncias e os extremos.
    """
    r = M.sorted_radii
    if r.size == 0:
        return np.array([1.0])
    partes = [r[:1] / 2.0, r, 2.0 * r[-1:]]
    if r.size > 1:
        partes.append(0.5 * (r[:-1] + r[1:]))
    return np.unique(np.concatenate(partes))


def contagens(M: DiscreteManifold, x: int, raios: np.ndarray) -> np.ndarray:
    """Número de vértices em B(x, r) para cada r (bola aberta)."""
    return np.searchsorted(M.distancias_ordenadas[x], raios, side="left")


def volumes(M: DiscreteManifold, x: int, raios: np.ndarray) -> np.ndarray:
    k = contagens(M, x, np.asarray(raios, dtype=float))
    vol = np.zeros(k.shape)
    pos = k > 0
    vol[pos] = M.volumes_acumulados[x, k[pos] - 1]
    return vol


def tamanhos_distintos(M: DiscreteManifold, x: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Bolas distintas centradas em x: para cada distância distinta v_i a partir
    de x, a bola {y : d(x,y) <= v_i}. Devolve (k_i, v_i): número de membros e
    o ínfimo dos raios que produzem aquela bola.
    """
    ds = M.distancias_ordenadas[x]
    v = np.unique(ds)
    k = np.searchsorted(ds, v, side="right")
    return k, v


def bolas_distintas(M: DiscreteManifold, x: int) -> Iterator[Tuple[float, np.ndarray]]:
    """Itera (raio ínfimo, membros) das bolas distintas centradas em x."""
    k, v = tamanhos_distintos(M, x)
    ordem = M.ordem[x]
    for ki, vi in zip(k, v):
        yield float(vi), ordem[:ki]
