# geometria/management/commands/gen_graph.py

from __future__ import annotations

from django.core.management.base import BaseCommand

from core.utils.comandos import caminho_saida, erros_como_comando
from geometria.services.construcao import build_manifold, save_manifold


class Command(BaseCommand):
    help = "Gera uma variedade discreta a partir de um descritor (path(n), cycle(n), torus_grid(a,b), ...) e grava em JSON."

    def add_arguments(self, parser):
        parser.add_argument("--spec", required=True, help="Descritor do gerador, ex.: 'cycle(64)' ou 'path(8); measure=degree'")
        parser.add_argument("--seed", type=int, default=0, help="Semente de 64 bits (random_geometric, coeficiente random)")
        parser.add_argument("--measure", choices=["unit", "degree"], default=None, help="Sobrescreve a medida dos vértices")
        parser.add_argument("--out", type=str, default=None, help="Arquivo de saída (padrão: DADOS_DIR/manifold.json)")

    def handle(self, *args, **opts):
        with erros_como_comando():
            M = build_manifold(opts["spec"], seed=opts["seed"], measure=opts["measure"])
            destino = save_manifold(caminho_saida(opts["out"], "manifold.json"), M)

        self.stdout.write(f"🕸  {opts['spec']}: {M.vertex_count} vértices, {len(M.edges)} arestas, diâmetro {M.diameter:g}")
        self.stdout.write(self.style.SUCCESS(f"✅ Variedade gravada em {destino}"))
