# geometria/services/construcao.py
"""
Construção de variedades discretas a partir de descritores de gerador.

Descritores aceitos (com sufixo opcional `; measure=unit|degree`):
  path(n)                      caminho com n vértices
  cycle(n)                     ciclo com n >= 3
  torus_grid(n1,n2)            grade periódica n1 x n2 (n1, n2 >= 3)
  random_geometric(n,r[,seed]) pontos uniformes em [0,1]^2, arestas com |p-q| < r
  divergence_grid(n1,n2,coef)  grade n1 x n2 com coeficiente por vértice:
                               constant:a | checker:a:b | random:lam:Lam
"""
from __future__ import annotations

import logging
import re
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from core.excecoes import ErroRelatorio, GeometriaInvalida
from core.utils.sementes import MASCARA_64
from core.utils.serializacao import gravar_json, ler_json
from geometria.variedade import Aresta, DiscreteManifold

logger = logging.getLogger(__name__)

RE_DESCRITOR = re.compile(
    r"^\s*(?P<nome>[a-z_]+)\s*\((?P<args>[^)]*)\)\s*(?:;\s*measure\s*=\s*(?P<medida>\w+))?\s*$",
    re.IGNORECASE,
)
MEDIDAS = ("unit", "degree")


# =======================
# Montagem a partir de arestas
# =======================
def montar_variedade(
    n: int,
    arestas: Sequence[Aresta],
    medida: str | np.ndarray = "unit",
    coords: Optional[np.ndarray] = None,
    gerador: Optional[Dict[str, Any]] = None,
) -> DiscreteManifold:
    """
    Valida pesos/comprimentos, checa conexidade e calcula a métrica de
    caminho mínimo (Dijkstra) uma única vez.
    """
    if n < 2:
        raise GeometriaInvalida(f"variedade precisa de pelo menos 2 vértices (recebido {n})")
    for a in arestas:
        if not (0 <= a.u < n and 0 <= a.v < n) or a.u == a.v:
            raise GeometriaInvalida(f"aresta inválida ({a.u}, {a.v}) para n={n}")
        if not (a.w > 0 and np.isfinite(a.w)):
            raise GeometriaInvalida(f"peso não positivo na aresta ({a.u}, {a.v}): w={a.w}")
        if not (a.len > 0 and np.isfinite(a.len)):
            raise GeometriaInvalida(f"comprimento não positivo na aresta ({a.u}, {a.v}): len={a.len}")
        if not (a.coef > 0 and np.isfinite(a.coef)):
            raise GeometriaInvalida(f"coeficiente não positivo na aresta ({a.u}, {a.v}): a={a.coef}")

    eu = np.array([a.u for a in arestas], dtype=int)
    ev = np.array([a.v for a in arestas], dtype=int)
    el = np.array([a.len for a in arestas], dtype=float)
    grafo = csr_matrix((el, (eu, ev)), shape=(n, n))

    ncomp, _ = connected_components(grafo, directed=False)
    if ncomp != 1:
        raise GeometriaInvalida(f"grafo desconexo: {ncomp} componentes conexas (n={n}, {len(arestas)} arestas)")

    d = shortest_path(grafo, method="D", directed=False)
    d = np.minimum(d, d.T)
    np.fill_diagonal(d, 0.0)
    raios = np.unique(d[d > 0])

    gerador = dict(gerador or {})
    if isinstance(medida, str):
        if medida not in MEDIDAS:
            raise GeometriaInvalida(f"medida desconhecida '{medida}' (use unit|degree)")
        if medida == "unit":
            mu = np.ones(n)
        else:
            ew = np.array([a.w for a in arestas], dtype=float)
            mu = np.bincount(eu, ew, n) + np.bincount(ev, ew, n)
        gerador.setdefault("measure", medida)
    else:
        mu = np.asarray(medida, dtype=float)
        if mu.shape != (n,) or np.any(~np.isfinite(mu)) or np.any(mu <= 0):
            raise GeometriaInvalida("medida deve ser positiva e finita em todos os vértices")
        gerador.setdefault("measure", "custom")

    return DiscreteManifold(
        vertex_count=n,
        measure=mu,
        edges=tuple(arestas),
        distance=d,
        sorted_radii=raios,
        coords=None if coords is None else np.asarray(coords, dtype=float),
        generator=gerador,
    )


def _arestas_de_grafo(G: nx.Graph, comprimento=None, coef=None) -> Tuple[int, List[Aresta]]:
    G = nx.convert_node_labels_to_integers(G, ordering="sorted")
    arestas = []
    for u, v in sorted((min(a, b), max(a, b)) for a, b in G.edges()):
        ell = 1.0 if comprimento is None else float(comprimento(u, v))
        c = 1.0 if coef is None else float(coef(u, v))
        arestas.append(Aresta(u, v, 1.0, ell, c))
    return G.number_of_nodes(), arestas


# =======================
# Coeficiente da forma divergente
# =======================
def _coeficiente_vertices(txt: str, n1: int, n2: int, seed: int) -> Tuple[np.ndarray, float, float]:
    partes = [p.strip() for p in txt.split(":")]
    tipo, vals = partes[0].lower(), partes[1:]
    try:
        nums = [float(v) for v in vals]
    except ValueError:
        raise GeometriaInvalida(f"coeficiente inválido: {txt!r}") from None

    ii, jj = np.meshgrid(np.arange(n1), np.arange(n2), indexing="ij")
    if tipo == "constant" and len(nums) == 1:
        a = np.full(n1 * n2, nums[0])
        lam, Lam = nums[0], nums[0]
    elif tipo == "checker" and len(nums) == 2:
        a = np.where(((ii + jj) % 2 == 0).ravel(), nums[0], nums[1])
        lam, Lam = min(nums), max(nums)
    elif tipo == "random" and len(nums) == 2:
        lam, Lam = nums
        rng = np.random.default_rng(seed & MASCARA_64)
        a = rng.uniform(lam, Lam, size=n1 * n2)
    else:
        raise GeometriaInvalida(f"coeficiente inválido: {txt!r} (constant:a | checker:a:b | random:lam:Lam)")
    if not (0 < lam <= Lam):
        raise GeometriaInvalida(f"coeficiente exige 0 < lambda <= Lambda (recebido {lam}, {Lam})")
    return a, lam, Lam


# =======================
# Descritor -> variedade
# =======================
def _inteiro(txt: str, nome: str) -> int:
    try:
        return int(txt)
    except ValueError:
        raise GeometriaInvalida(f"{nome} deve ser inteiro (recebido {txt!r})") from None


def build_manifold(descritor: str, seed: int = 0, measure: Optional[str] = None) -> DiscreteManifold:
    m = RE_DESCRITOR.match(descritor or "")
    if not m:
        raise GeometriaInvalida(f"descritor de gerador inválido: {descritor!r}")
    nome = m.group("nome").lower()
    args = [a.strip() for a in m.group("args").split(",") if a.strip()]
    medida = (measure or m.group("medida") or "unit").lower()
    gerador: Dict[str, Any] = {"spec": descritor.strip(), "seed": int(seed)}
    coords = None

    if nome == "path" and len(args) == 1:
        n = _inteiro(args[0], "n")
        n, arestas = _arestas_de_grafo(nx.path_graph(max(n, 0)))
    elif nome == "cycle" and len(args) == 1:
        n = _inteiro(args[0], "n")
        if n < 3:
            raise GeometriaInvalida(f"cycle(n) exige n >= 3 (recebido {n})")
        n, arestas = _arestas_de_grafo(nx.cycle_graph(n))
    elif nome == "torus_grid" and len(args) == 2:
        n1, n2 = _inteiro(args[0], "n1"), _inteiro(args[1], "n2")
        if min(n1, n2) < 3:
            raise GeometriaInvalida(f"torus_grid exige n1, n2 >= 3 (recebido {n1}, {n2})")
        n, arestas = _arestas_de_grafo(nx.grid_2d_graph(n1, n2, periodic=True))
        ii, jj = np.meshgrid(np.arange(n1), np.arange(n2), indexing="ij")
        coords = np.column_stack([ii.ravel(), jj.ravel()]).astype(float)
    elif nome == "random_geometric" and len(args) in (2, 3):
        n = _inteiro(args[0], "n")
        raio = float(args[1])
        if len(args) == 3:
            seed = _inteiro(args[2], "seed")
            gerador["seed"] = seed
        if n < 2 or raio <= 0:
            raise GeometriaInvalida(f"random_geometric exige n >= 2 e raio > 0 (recebido {n}, {raio})")
        rng = np.random.default_rng(int(seed) & MASCARA_64)
        coords = rng.random((n, 2))
        G = nx.random_geometric_graph(n, raio, pos={i: tuple(coords[i]) for i in range(n)})
        n, arestas = _arestas_de_grafo(
            G, comprimento=lambda u, v: float(np.linalg.norm(coords[u] - coords[v]))
        )
    elif nome == "divergence_grid" and len(args) == 3:
        n1, n2 = _inteiro(args[0], "n1"), _inteiro(args[1], "n2")
        if n1 < 1 or n2 < 1 or n1 * n2 < 2:
            raise GeometriaInvalida(f"divergence_grid exige ao menos 2 vértices (recebido {n1}x{n2})")
        a, lam, Lam = _coeficiente_vertices(args[2], n1, n2, int(seed))
        n, arestas = _arestas_de_grafo(
            nx.grid_2d_graph(n1, n2), coef=lambda u, v: 0.5 * (a[u] + a[v])
        )
        ii, jj = np.meshgrid(np.arange(n1), np.arange(n2), indexing="ij")
        coords = np.column_stack([ii.ravel(), jj.ravel()]).astype(float)
        gerador.update({"lambda": lam, "Lambda": Lam, "coef": args[2]})
    else:
        raise GeometriaInvalida(f"descritor de gerador inválido: {descritor!r}")

    M = montar_variedade(n, arestas, medida, coords=coords, gerador=gerador)
    logger.debug("variedade %s: n=%d, %d arestas, diâmetro %.6g", descritor, n, len(arestas), M.diameter)
    return M


# =======================
# Arquivo de variedade (JSON)
# =======================
def save_manifold(caminho: str | Path, M: DiscreteManifold) -> Path:
    vertices = []
    for i in range(M.vertex_count):
        item: Dict[str, Any] = {"id": i, "mu": float(M.measure[i])}
        if M.coords is not None:
            item["coords"] = [float(c) for c in M.coords[i]]
        vertices.append(item)
    arestas = []
    for a in M.edges:
        item = {"u": a.u, "v": a.v, "w": float(a.w), "len": float(a.len)}
        if a.coef != 1.0:
            item["coef"] = float(a.coef)
        arestas.append(item)
    return gravar_json(caminho, {"vertices": vertices, "edges": arestas, "generator": M.generator})


def load_manifold(caminho: str | Path) -> DiscreteManifold:
    dados = ler_json(caminho)
    try:
        vertices = sorted(dados["vertices"], key=lambda v: int(v["id"]))
        n = len(vertices)
        if [int(v["id"]) for v in vertices] != list(range(n)):
            raise ErroRelatorio(f"ids de vértice devem ser 0..n-1: {caminho}")
        mu = np.array([float(v["mu"]) for v in vertices])
        coords = None
        if all("coords" in v for v in vertices) and n:
            coords = np.array([v["coords"] for v in vertices], dtype=float)
        arestas = [
            Aresta(int(e["u"]), int(e["v"]), float(e["w"]), float(e["len"]), float(e.get("coef", 1.0)))
            for e in dados["edges"]
        ]
        gerador = dict(dados.get("generator") or {})
    except (KeyError, TypeError, ValueError) as e:
        raise ErroRelatorio(f"arquivo de variedade corrompido: {caminho} ({e})") from e
    return montar_variedade(n, arestas, mu, coords=coords, gerador=gerador)
