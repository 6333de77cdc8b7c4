# espectral/utils.py
from __future__ import annotations

from pathlib import Path

import numpy as np
import pandas as pd

from core.excecoes import ErroRelatorio, ParametroInvalido
from geometria.variedade import DiscreteManifold


def ler_coeficientes(caminho: str | Path, M: DiscreteManifold) -> np.ndarray:
    """CSV `u,v,coef` -> vetor de coeficientes na ordem das arestas da variedade."""
    try:
        df = pd.read_csv(caminho)
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise ErroRelatorio(f"CSV de coeficientes ilegível: {caminho} ({e})") from e
    if not {"u", "v", "coef"} <= set(df.columns):
        raise ErroRelatorio(f"CSV de coeficientes precisa das colunas u,v,coef: {caminho}")
    mapa = {(min(u, v), max(u, v)): float(c) for u, v, c in df[["u", "v", "coef"]].itertuples(index=False)}
    try:
        return np.array([mapa[(min(a.u, a.v), max(a.u, a.v))] for a in M.edges])
    except KeyError as e:
        raise ParametroInvalido(f"aresta {e.args[0]} sem coeficiente em {caminho}") from None
