# espectral/services/cache.py
"""
Cache de autopares em .npz com cabeçalho JSON (SHA-256 do arquivo da
variedade + forma do operador). Hash divergente => reconstrói e avisa.
"""
from __future__ import annotations

import hashlib
import json
import logging
from pathlib import Path
from typing import Optional, Tuple

import numpy as np
from django.conf import settings

from core.excecoes import ErroRelatorio
from espectral.operador import SpectralOperator
from espectral.services.montagem import assemble_operator
from geometria.services.construcao import load_manifold
from geometria.variedade import DiscreteManifold

logger = logging.getLogger(__name__)


def sha256_arquivo(caminho: str | Path) -> str:
    try:
        return hashlib.sha256(Path(caminho).read_bytes()).hexdigest()
    except OSError as e:
        raise ErroRelatorio(f"não foi possível ler {caminho}: {e}") from e


def _caminho_cache(manifold: Path, form: str, diretorio: Optional[Path]) -> Path:
    base = Path(diretorio) if diretorio else Path(settings.DADOS_DIR) / "cache"
    return base / f"{manifold.stem}.{form}.npz"


def salvar_cache(caminho: Path, op: SpectralOperator, cabecalho: dict) -> None:
    try:
        caminho.parent.mkdir(parents=True, exist_ok=True)
        np.savez(
            caminho,
            eigenvalues=op.eigenvalues,
            eigenvectors=op.eigenvectors,
            measure=op.measure,
            matrix=op.matrix,
            header=np.array(json.dumps(cabecalho)),
        )
    except OSError as e:
        raise ErroRelatorio(f"não foi possível gravar o cache {caminho}: {e}") from e


def load_or_assemble(
    manifold_path: str | Path,
    form: str = "combinatorial",
    coef: Optional[np.ndarray] = None,
    diretorio: Optional[Path] = None,
) -> Tuple[DiscreteManifold, SpectralOperator]:
    manifold_path = Path(manifold_path)
    M = load_manifold(manifold_path)
    cabecalho = {"manifold_sha256": sha256_arquivo(manifold_path), "form": form,
                 "coef_sha256": None if coef is None else hashlib.sha256(np.asarray(coef, float).tobytes()).hexdigest(),
                 "m": float(settings.SOBOLEV_LAB["ORDEM_M"])}
    caminho = _caminho_cache(manifold_path, form, diretorio)

    if caminho.exists():
        try:
            with np.load(caminho) as z:
                salvo = json.loads(str(z["header"]))
                if salvo == cabecalho:
                    lam = z["eigenvalues"]
                    op = SpectralOperator(
                        eigenvalues=lam,
                        eigenvectors=z["eigenvectors"],
                        measure=z["measure"],
                        m=cabecalho["m"],
                        form=form,
                        matrix=z["matrix"],
                        kernel_dim=int(np.count_nonzero(lam == 0.0)),
                        info={"spec": M.generator.get("spec"), "cache": str(caminho)},
                    )
                    logger.debug("cache de operador reaproveitado: %s", caminho)
                    return M, op
            logger.warning("cache %s invalidado (hash/forma divergente); reconstruindo", caminho)
        except (OSError, ValueError, KeyError) as e:
            logger.warning("cache %s ilegível (%s); reconstruindo", caminho, e)

    op = assemble_operator(M, form=form, coef=coef)
    salvar_cache(caminho, op, cabecalho)
    return M, op
