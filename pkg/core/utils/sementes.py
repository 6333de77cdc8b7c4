# core/utils/sementes.py
from __future__ import annotations

import numpy as np

MASCARA_64 = (1 << 64) - 1


def splitmix64(i: int) -> int:
    """Um passo do gerador splitmix64 aplicado ao índice `i` (aritmética mod 2^64)."""
    z = (int(i) + 0x9E3779B97F4A7C15) & MASCARA_64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASCARA_64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASCARA_64
    return z ^ (z >> 31)


def derive_seed(mestre: int, indice: int) -> int:
    """
    Semente do ensaio `indice`: mestre XOR splitmix64(indice).
    O conjunto de ensaios é estável por prefixo (aumentar `trials` não muda os anteriores).
    """
    return (int(mestre) & MASCARA_64) ^ splitmix64(indice)


def gerador(mestre: int, indice: int | None = None) -> np.random.Generator:
    semente = int(mestre) & MASCARA_64 if indice is None else derive_seed(mestre, indice)
    return np.random.default_rng(semente)
