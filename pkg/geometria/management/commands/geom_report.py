# geometria/management/commands/geom_report.py

from __future__ import annotations

from django.core.management.base import BaseCommand

from core.utils.comandos import caminho_saida, erros_como_comando
from core.utils.serializacao import gravar_json
from geometria.services.construcao import load_manifold
from geometria.services.relatorio import geometry_report


class Command(BaseCommand):
    help = "Relatório geométrico: constante de dobramento, dimensão homogênea, MV_d e constante de Poincaré."

    def add_arguments(self, parser):
        parser.add_argument("--manifold", required=True, help="Arquivo JSON da variedade")
        parser.add_argument("--d", type=float, required=True, help="Expoente d de (MV_d)")
        parser.add_argument("--q", type=float, default=1.0, help="Expoente q de (P_q)")
        parser.add_argument("--local", action="store_true", help="Restringe Poincaré a bolas com r <= 1")
        parser.add_argument("--samples", type=int, default=8, help="Campos aleatórios na amostra de Poincaré")
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--out", type=str, default=None, help="JSON de saída (padrão: DADOS_DIR/geom_report.json)")

    def handle(self, *args, **opts):
        with erros_como_comando():
            M = load_manifold(opts["manifold"])
            rel = geometry_report(M, opts["d"], q=opts["q"], local=opts["local"],
                                  amostras=opts["samples"], seed=opts["seed"])
            destino = gravar_json(caminho_saida(opts["out"], "geom_report.json"), rel.como_dict())

        e = rel.extras
        self.stdout.write(f"C0 = {e['doubling_constant']:.6g} | dim = {e['homogeneous_dimension']:.6g} | MV_d = {e['mv_constant']:.6g}")
        self.stdout.write(self.style.NOTICE(f"Poincaré ({e['poincare_label']}): {e['poincare_constant']:.6g}"))
        self.stdout.write(self.style.SUCCESS(f"✅ Relatório gravado em {destino}"))
