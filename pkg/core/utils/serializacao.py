# core/utils/serializacao.py
"""
Emissor JSON com floats em 17 dígitos significativos.

O `json` da stdlib usa repr() (menor representação que faz round-trip), o que
é correto mas não fixa a largura; aqui todo float sai como format(x, ".17g")
e números inteiros em ponto flutuante ganham ".0". Re-emitir um documento já
emitido produz exatamente os mesmos bytes.
"""
from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

import numpy as np

from core.excecoes import ErroRelatorio


def formatar_float(x: float) -> str:
    x = float(x)
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    txt = format(x, ".17g")
    if not any(c in txt for c in ".eEn"):
        txt += ".0"
    return txt


def _normalizar(obj: Any) -> Any:
    # numpy -> tipos nativos; tuplas viram listas
    if isinstance(obj, np.ndarray):
        return [_normalizar(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, dict):
        return {str(k): _normalizar(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_normalizar(v) for v in obj]
    if isinstance(obj, Path):
        return str(obj)
    return obj


def _emitir(obj: Any, nivel: int, indent: int | None) -> str:
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return formatar_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)

    if indent is None:
        sep, abre, fecha = ", ", "", ""
    else:
        pad = " " * (indent * (nivel + 1))
        sep, abre, fecha = ",\n" + pad, "\n" + pad, "\n" + " " * (indent * nivel)

    if isinstance(obj, dict):
        if not obj:
            return "{}"
        itens = [f"{json.dumps(k, ensure_ascii=False)}: {_emitir(v, nivel + 1, indent)}" for k, v in obj.items()]
        return "{" + abre + sep.join(itens) + fecha + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        itens = [_emitir(v, nivel + 1, indent) for v in obj]
        return "[" + abre + sep.join(itens) + fecha + "]"
    raise TypeError(f"tipo não serializável: {type(obj).__name__}")


def dumps17(obj: Any, indent: int | None = 2) -> str:
    return _emitir(_normalizar(obj), 0, indent)


def gravar_json(caminho: str | Path, obj: Any) -> Path:
    caminho = Path(caminho)
    try:
        caminho.parent.mkdir(parents=True, exist_ok=True)
        caminho.write_text(dumps17(obj) + "\n", encoding="utf-8")
    except OSError as e:
        raise ErroRelatorio(f"não foi possível gravar {caminho}: {e}") from e
    return caminho


def ler_json(caminho: str | Path) -> Any:
    caminho = Path(caminho)
    try:
        return json.loads(caminho.read_text(encoding="utf-8"))
    except FileNotFoundError as e:
        raise ErroRelatorio(f"arquivo não encontrado: {caminho}") from e
    except (OSError, json.JSONDecodeError) as e:
        raise ErroRelatorio(f"arquivo corrompido ou ilegível: {caminho} ({e})") from e
