# core/campos.py
"""
Campo (função nos vértices) e leitura/gravação em CSV.

Formato CSV: `vertex_id,value_re[,value_im]`; a coluna imaginária só aparece
para campos complexos.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Literal

import numpy as np
import pandas as pd

from core.excecoes import ErroRelatorio, ParametroInvalido

TipoEscalar = Literal["real", "complex"]


@dataclass(frozen=True)
class Field:
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.ndim != 1:
            raise ParametroInvalido(f"campo deve ser vetor 1-D (recebido shape {v.shape})")
        if not np.all(np.isfinite(v)):
            raise ParametroInvalido("campo com entradas não finitas")
        if not np.iscomplexobj(v):
            v = v.astype(float)
        object.__setattr__(self, "values", v)

    @property
    def scalar_kind(self) -> TipoEscalar:
        return "complex" if np.iscomplexobj(self.values) else "real"

    def __len__(self) -> int:
        return int(self.values.shape[0])

    def checar_tamanho(self, n: int) -> "Field":
        if len(self) != n:
            raise ParametroInvalido(f"campo com {len(self)} entradas para variedade com {n} vértices")
        return self


def como_array(f) -> np.ndarray:
    """Aceita Field, lista ou ndarray e devolve o vetor de valores."""
    if isinstance(f, Field):
        return f.values
    v = np.asarray(f)
    return v if np.iscomplexobj(v) else v.astype(float)


def load_field(caminho: str | Path) -> Field:
    caminho = Path(caminho)
    try:
        df = pd.read_csv(caminho)
    except FileNotFoundError as e:
        raise ErroRelatorio(f"arquivo de campo não encontrado: {caminho}") from e
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise ErroRelatorio(f"CSV de campo ilegível: {caminho} ({e})") from e

    faltando = {"vertex_id", "value_re"} - set(df.columns)
    if faltando:
        raise ErroRelatorio(f"CSV de campo sem colunas {sorted(faltando)}: {caminho}")

    df = df.sort_values("vertex_id")
    ids = df["vertex_id"].to_numpy()
    if not np.array_equal(ids, np.arange(len(ids))):
        raise ErroRelatorio(f"vertex_id deve ser 0..n-1 sem lacunas: {caminho}")

    valores = df["value_re"].to_numpy(dtype=float)
    if "value_im" in df.columns:
        valores = valores + 1j * df["value_im"].to_numpy(dtype=float)
    return Field(valores)


def save_field(caminho: str | Path, f) -> Path:
    caminho = Path(caminho)
    v = como_array(f)
    dados = {"vertex_id": np.arange(v.shape[0]), "value_re": np.real(v)}
    if np.iscomplexobj(v):
        dados["value_im"] = np.imag(v)
    try:
        caminho.parent.mkdir(parents=True, exist_ok=True)
        pd.DataFrame(dados).to_csv(caminho, index=False, float_format="%.17g")
    except OSError as e:
        raise ErroRelatorio(f"não foi possível gravar {caminho}: {e}") from e
    return caminho


def norma_lp(valores, medida: np.ndarray, p: float) -> float:
    """(Σ |f(x)|^p μ(x))^{1/p}; p = inf é o máximo. Escala pelo máximo para não estourar."""
    if not p >= 1:
        raise ParametroInvalido(f"p deve estar em [1, inf] (recebido {p})")
    a = np.abs(como_array(valores))
    if a.size == 0:
        return 0.0
    topo = float(a.max())
    if np.isinf(p):
        return topo
    if topo == 0.0:
        return 0.0
    return topo * float(np.sum((a / topo) ** p * medida) ** (1.0 / p))


def media_mu(valores, medida: np.ndarray):
    v = como_array(valores)
    return np.sum(v * medida) / np.sum(medida)
