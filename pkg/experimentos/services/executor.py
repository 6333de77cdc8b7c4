# experimentos/services/executor.py
"""
Execução de experimentos sobre uma escada de tamanhos.

Cada degrau monta (M, L), roda o relatório do app correspondente e devolve
uma linha da tabela da escada. O relatório final junta os ensaios de todos
os degraus (com a coluna `n`), a tabela, os agregados e os hashes; os tempos
de parede ficam fora da carga hasheada.
"""
from __future__ import annotations

import hashlib
import logging
import time
from pathlib import Path
from typing import Callable, Dict, List, Tuple

import numpy as np
import pandas as pd

from core.campos import norma_lp
from core.excecoes import ErroRelatorio, ParametroInvalido
from core.relatorios import Relatorio, agregar, executar_escada, separar_tempos
from core.utils.serializacao import dumps17, gravar_json
from edp.problema import EvolutionProblem
from edp.services.estimativas import conservation_check, contraction_estimate
from espectral.operador import SpectralOperator
from espectral.services.cache import sha256_arquivo
from espectral.services.campos_aleatorios import campo_ensaio
from espectral.services.montagem import assemble_operator
from espectral.services.offdiag import offdiag_probe
from experimentos.configuracao import ExperimentConfig
from funcionais.services.caracterizacao import characterization_report, nonlinearity_report
from geometria.services.construcao import build_manifold, load_manifold
from geometria.services.relatorio import geometry_report
from geometria.variedade import DiscreteManifold
from normas.services.mergulhos import (
    dimensao_homogenea, embedding_report, equivalence_report, log_embedding_report,
)
from normas.services.normas import sobolev_norm
from paraprodutos.familia import SymbolFamily
from paraprodutos.quadratura import TQuadrature
from paraprodutos.services.leibniz import leibniz_report, paraproduct_bound_report
from paraprodutos.services.paraprodutos import three_scale_split

logger = logging.getLogger(__name__)

Degrau = Callable[[ExperimentConfig, DiscreteManifold, SpectralOperator], Relatorio]


def _montar(cfg: ExperimentConfig, n: int) -> Tuple[DiscreteManifold, SpectralOperator]:
    alvo = cfg.descritor(n)
    M = load_manifold(alvo) if alvo.endswith(".json") else build_manifold(alvo, seed=cfg.seed)
    return M, assemble_operator(M, form=cfg.form)


def _familia_e_quadratura(cfg: ExperimentConfig) -> Tuple[SymbolFamily, TQuadrature]:
    quad = TQuadrature(float(cfg.parametro("tmin", cfg.parametro("QUAD_T_MIN"))),
                       float(cfg.parametro("tmax", cfg.parametro("QUAD_T_MAX"))),
                       int(cfg.parametro("nodes", cfg.parametro("QUAD_NOS"))))
    return SymbolFamily(int(cfg.parametro("N"))), quad


# =======================
# Degraus por experimento
# =======================
def _equivalence(cfg, M, op):
    return equivalence_report(op, M, cfg.parametro("alpha"), cfg.parametro("p", 2.0), cfg.trials, cfg.seed)


def _embed(cfg, M, op):
    return embedding_report(op, M, cfg.parametro("s", 1.0), cfg.parametro("p", 2.0), cfg.parametro("q", 4.0),
                            cfg.trials, cfg.seed)


def _log_embed(cfg, M, op):
    s, p = cfg.parametro("s", 1.0), cfg.parametro("p", 2.0)
    rel = log_embedding_report(op, M, s, p, cfg.trials, cfg.seed, flavor=cfg.parametro("flavor", "BMO"))

    # três escalas: ε^{(s-d/p)/m} = R^{-d/(mp)} = min(1, ‖f‖_{W^{s,p}}^{-1})
    familia, _ = _familia_e_quadratura(cfg)
    d = dimensao_homogenea(op.sobre(M))
    pedacos = []
    for i in range(cfg.trials):
        f = campo_ensaio(op, M.distance, cfg.seed, i)
        alvo = min(1.0, 1.0 / max(sobolev_norm(op, f, s, p), np.finfo(float).tiny))
        if not (s > d / p and d > 0):
            continue
        eps = alvo ** (op.m / (s - d / p))
        R = alvo ** (-op.m * p / d)
        baixo, meio, alto = three_scale_split(op, familia, f, eps, R)
        pedacos.append({"trial": i, "eps": eps, "R": R, "low_sup": norma_lp(baixo, op.measure, np.inf),
                        "mid_sup": norma_lp(meio, op.measure, np.inf), "high_sup": norma_lp(alto, op.measure, np.inf)})
    rel.extras["three_scale"] = pedacos
    return rel


def _leibniz(cfg, M, op):
    familia, quad = _familia_e_quadratura(cfg)
    ex = {k: float(cfg.parametro(k, v)) for k, v in
          (("r", 2.0), ("p1", 2.0), ("q1", np.inf), ("p2", np.inf), ("q2", 2.0))}
    return leibniz_report(op, M, familia, quad, cfg.parametro("alpha"), trials=cfg.trials, seed=cfg.seed, **ex)


def _characterize(cfg, M, op):
    return characterization_report(op, M, cfg.parametro("alpha"), cfg.parametro("p", 2.0), cfg.parametro("rho"),
                                   cfg.trials, cfg.seed, global_=not cfg.parametro("local", False),
                                   delta=cfg.parametro("delta"))


def _nonlin(cfg, M, op):
    return nonlinearity_report(op, M, cfg.parametro("F", "tanh"), cfg.parametro("alpha"), cfg.parametro("p", 2.0),
                               cfg.trials, cfg.seed, rho=cfg.parametro("rho"))


def _pde(cfg, M, op):
    intervalos = cfg.parametro("intervals", [0.025, 0.05, 0.1])
    intervalos = intervalos if isinstance(intervalos, list) else [intervalos]
    u0 = float(cfg.parametro("u0_sup", 0.1)) * campo_ensaio(op, M.distance, cfg.seed, 0)
    problema = EvolutionProblem.padrao(cfg.parametro("kind", "heat"), cfg.parametro("F", "u2"), u0,
                                       float(max(intervalos)))
    alpha = cfg.parametro("alpha")
    d = dimensao_homogenea(op.sobre(M))
    rel = contraction_estimate(problema, op, alpha, [float(I) for I in intervalos], d=d)
    cons = conservation_check(op, problema.u0, alpha, [0.1, 1.0, 10.0])
    rel.extras["conservation"] = cons.extras
    return rel


def _geom(cfg, M, op):
    return geometry_report(M, cfg.parametro("d", 1.0), q=cfg.parametro("q", 1.0),
                           local=cfg.parametro("local", False), amostras=cfg.trials, seed=cfg.seed)


def _offdiag(cfg, M, op):
    t_grid = cfg.parametro("t_grid", [0.1, 1.0, 10.0])
    t_grid = t_grid if isinstance(t_grid, list) else [t_grid]
    return offdiag_probe(op, M, t_grid, s_minus=cfg.parametro("s_minus", 1.0), amostras=cfg.trials, seed=cfg.seed)


def _paraproduct(cfg, M, op):
    familia, quad = _familia_e_quadratura(cfg)
    return paraproduct_bound_report(op, M, familia, quad, cfg.parametro("beta", 0.25), cfg.parametro("r", 2.0),
                                    cfg.parametro("p", 2.0), cfg.parametro("q", np.inf), cfg.trials, cfg.seed)


EXPERIMENTOS: Dict[str, Degrau] = {
    "equivalence": _equivalence,
    "embed": _embed,
    "log-embed": _log_embed,
    "leibniz": _leibniz,
    "characterize": _characterize,
    "nonlin": _nonlin,
    "pde": _pde,
    "geom": _geom,
    "offdiag": _offdiag,
    "paraproduct": _paraproduct,
}


def _sha256_texto(txt: str) -> str:
    return hashlib.sha256(txt.encode("utf-8")).hexdigest()


def run_experiment(cfg: ExperimentConfig) -> Relatorio:
    degrau = EXPERIMENTOS.get(cfg.experiment)
    if degrau is None:
        raise ParametroInvalido(f"experimento desconhecido '{cfg.experiment}' (use {', '.join(EXPERIMENTOS)})")

    logger.info("experimento %s: escada %s, %d ensaios, semente %d", cfg.experiment, cfg.ladder, cfg.trials, cfg.seed)
    inicio = time.perf_counter()
    relatorios: Dict[int, Relatorio] = {}

    def rodar(n: int) -> dict:
        M, op = _montar(cfg, n)
        rel = degrau(cfg, M, op)
        relatorios[n] = rel
        ag = rel.aggregates
        return {"n": n, "vertices": M.vertex_count, "max_ratio": rel.max_ratio, "min_ratio": ag.get("min"),
                "median_ratio": ag.get("median"), "count": ag.get("count", len(rel.per_trial)),
                "flags": ";".join(rel.flags)}

    escada = executar_escada(cfg.ladder, rodar)
    tempos = separar_tempos(escada)

    final = Relatorio(experiment=cfg.experiment, params=cfg.eco(), ladder=escada)
    for n in cfg.ladder:
        rel = relatorios[n]
        final.per_trial.extend({"n": n, **t} for t in rel.per_trial)
        final.extras.setdefault("rungs", {})[str(n)] = rel.extras
        for flag in rel.flags:
            final.sinalizar(flag)

    final.aggregates = agregar(t.get("ratio") for t in final.per_trial)
    if not final.aggregates["count"]:
        final.aggregates = agregar(linha["max_ratio"] for linha in escada)
    final.max_ratio = final.aggregates["max"]

    final.timing = {"wall_s": {str(n): t for n, t in zip(cfg.ladder, tempos)},
                    "total_s": time.perf_counter() - inicio}
    final.hashes = {"config_sha256": _sha256_texto(dumps17(cfg.eco()))}
    for n in cfg.ladder:
        alvo = cfg.descritor(n)
        if alvo.endswith(".json"):
            final.hashes[f"manifold_{n}_sha256"] = sha256_arquivo(alvo)
    logger.info("experimento %s concluído em %.2fs (max ratio = %s)", cfg.experiment,
                final.timing["total_s"], final.max_ratio)
    return final


def emit_report(rel: Relatorio, formato: str, destino: str | Path) -> List[Path]:
    """
    json: relatório completo; csv: tabela da escada achatada (uma linha por degrau).
    """
    destino = Path(destino)
    if formato == "json":
        return [gravar_json(destino.with_suffix(".json"), rel.como_dict())]
    if formato == "csv":
        if not rel.ladder:
            raise ParametroInvalido("relatório sem tabela de escada")
        caminho = destino.with_suffix(".csv")
        try:
            caminho.parent.mkdir(parents=True, exist_ok=True)
            pd.DataFrame(rel.ladder).to_csv(caminho, index=False, float_format="%.17g")
        except OSError as e:
            raise ErroRelatorio(f"não foi possível gravar {caminho}: {e}") from e
        return [caminho]
    raise ParametroInvalido(f"formato desconhecido '{formato}' (json | csv)")
