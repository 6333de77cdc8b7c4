# core/utils/comandos.py
from __future__ import annotations

from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, List

from django.conf import settings
from django.core.management.base import CommandError

from core.excecoes import ErroSobolevLab, ParametroInvalido


@contextmanager
def erros_como_comando() -> Iterator[None]:
    """Converte erros do toolkit em CommandError com código de saída 2."""
    try:
        yield
    except ErroSobolevLab as e:
        raise CommandError(f"{type(e).__name__}: {e}", returncode=2) from e


def lista_int(txt: str | None) -> List[int]:
    if not txt:
        return []
    try:
        return [int(x) for x in txt.split(",") if x.strip()]
    except ValueError:
        raise ParametroInvalido(f"lista de inteiros inválida: {txt!r}") from None


def lista_float(txt: str | None) -> List[float]:
    if not txt:
        return []
    try:
        return [float(x) for x in txt.split(",") if x.strip()]
    except ValueError:
        raise ParametroInvalido(f"lista de números inválida: {txt!r}") from None


def expoente(txt: str | float) -> float:
    """Aceita 'inf' / 'oo' para p = infinito."""
    if isinstance(txt, (int, float)):
        return float(txt)
    t = str(txt).strip().lower()
    if t in {"inf", "infinity", "oo", "∞"}:
        return float("inf")
    try:
        return float(t)
    except ValueError:
        raise ParametroInvalido(f"expoente inválido: {txt!r}") from None


def caminho_saida(out: str | Path | None, padrao: str) -> Path:
    """Sem --out, grava em DADOS_DIR (SOBOLEV_LAB_SAIDA)."""
    return Path(out) if out else Path(settings.DADOS_DIR) / padrao
