# core/relatorios.py
"""
Relatório de ensaios compartilhado por todos os apps.

Esquema JSON: {"experiment", "params", "per_trial": [...], "max_ratio",
"ladder": [{"n", "max_ratio", ...}]} mais agregados, sinalizações e um bloco
`meta` (versão, tempos, hashes). O hash cobre só a carga numérica, então dois
runs com a mesma configuração têm o mesmo hash mesmo com tempos diferentes.
"""
from __future__ import annotations

import hashlib
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence

import numpy as np
from django.conf import settings

from core.utils.serializacao import dumps17

logger = logging.getLogger(__name__)

HIPOTESE_VIOLADA = "hypothesis-violated"


def agregar(razoes: Iterable[Optional[float]]) -> Dict[str, Optional[float]]:
    """max/min/mediana ignorando entradas None/NaN (ensaios excluídos)."""
    v = np.array([r for r in razoes if r is not None and np.isfinite(r)], dtype=float)
    if v.size == 0:
        return {"max": None, "min": None, "median": None, "count": 0}
    return {"max": float(v.max()), "min": float(v.min()), "median": float(np.median(v)), "count": int(v.size)}


@dataclass
class Relatorio:
    experiment: str
    params: Dict[str, Any] = field(default_factory=dict)
    per_trial: List[Dict[str, Any]] = field(default_factory=list)
    max_ratio: Optional[float] = None
    ladder: List[Dict[str, Any]] = field(default_factory=list)
    aggregates: Dict[str, Any] = field(default_factory=dict)
    flags: List[str] = field(default_factory=list)
    extras: Dict[str, Any] = field(default_factory=dict)
    timing: Dict[str, Any] = field(default_factory=dict)
    hashes: Dict[str, str] = field(default_factory=dict)

    def sinalizar(self, flag: str, motivo: str = "") -> None:
        if flag not in self.flags:
            self.flags.append(flag)
        if motivo:
            self.extras.setdefault("motivos", []).append(motivo)
            logger.warning("%s: %s (%s)", self.experiment, flag, motivo)

    @property
    def hypothesis_violated(self) -> bool:
        return HIPOTESE_VIOLADA in self.flags

    def payload(self) -> Dict[str, Any]:
        """Carga numérica reprodutível (sem tempos)."""
        return {
            "experiment": self.experiment,
            "params": self.params,
            "per_trial": self.per_trial,
            "max_ratio": self.max_ratio,
            "ladder": self.ladder,
            "aggregates": self.aggregates,
            "flags": self.flags,
            "extras": self.extras,
        }

    def hash_payload(self) -> str:
        return hashlib.sha256(dumps17(self.payload()).encode("utf-8")).hexdigest()

    def como_dict(self) -> Dict[str, Any]:
        d = self.payload()
        d["meta"] = {
            "version": settings.SOBOLEV_LAB["VERSAO"],
            "timing": self.timing,
            "hashes": {**self.hashes, "payload_sha256": self.hash_payload()},
        }
        return d


def executar_escada(tamanhos: Sequence[int], rodar: Callable[[int], Dict[str, Any]]) -> List[Dict[str, Any]]:
    """
    Executa `rodar(n)` para cada degrau da escada de tamanhos.
    `map` preserva a ordem, logo o resultado não depende do número de threads.
    Cada linha ganha o tempo de parede em `_wall_s` (removido da carga pelo chamador).
    """
    def _cronometrado(n: int) -> Dict[str, Any]:
        t0 = time.perf_counter()
        linha = rodar(n)
        linha["_wall_s"] = time.perf_counter() - t0
        logger.debug("degrau n=%s concluído em %.3fs", n, linha["_wall_s"])
        return linha

    threads = max(1, int(settings.SOBOLEV_LAB.get("THREADS", 1)))
    if threads == 1 or len(tamanhos) <= 1:
        return [_cronometrado(n) for n in tamanhos]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(_cronometrado, tamanhos))


def separar_tempos(linhas: List[Dict[str, Any]]) -> List[float]:
    return [float(linha.pop("_wall_s", 0.0)) for linha in linhas]
