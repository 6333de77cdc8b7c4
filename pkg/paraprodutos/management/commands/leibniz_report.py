# paraprodutos/management/commands/leibniz_report.py

from __future__ import annotations

from django.core.management.base import BaseCommand

from core.utils.comandos import caminho_saida, erros_como_comando, expoente
from core.utils.serializacao import gravar_json
from espectral.services.montagem import assemble_operator
from geometria.services.construcao import build_manifold
from paraprodutos.familia import SymbolFamily
from paraprodutos.management.commands.paraproduct import argumentos_quadratura
from paraprodutos.quadratura import TQuadrature
from paraprodutos.services.leibniz import leibniz_report


class Command(BaseCommand):
    help = "Relatório empírico da regra de Leibniz fracionária ‖L^{α/m}(fg)‖_r ≲ ..."

    def add_arguments(self, parser):
        parser.add_argument("--spec", default="cycle(16)")
        parser.add_argument("--alpha", type=float, default=0.5)
        for nome, padrao in (("r", "2"), ("p1", "2"), ("q1", "inf"), ("p2", "inf"), ("q2", "2")):
            parser.add_argument(f"--{nome}", type=str, default=padrao)
        parser.add_argument("--trials", type=int, default=20)
        parser.add_argument("--seed", type=int, default=0)
        argumentos_quadratura(parser)
        parser.add_argument("--out", type=str, default=None)

    def handle(self, *args, **opts):
        with erros_como_comando():
            M = build_manifold(opts["spec"], seed=opts["seed"])
            op = assemble_operator(M)
            ex = {k: expoente(opts[k]) for k in ("r", "p1", "q1", "p2", "q2")}
            rel = leibniz_report(op, M, SymbolFamily(opts["N"]),
                                 TQuadrature(opts["tmin"], opts["tmax"], opts["nodes"]),
                                 opts["alpha"], trials=opts["trials"], seed=opts["seed"], **ex)
            destino = gravar_json(caminho_saida(opts["out"], "leibniz_report.json"), rel.como_dict())

        self.stdout.write(f"K empírico = {rel.max_ratio:.6g} sobre {rel.aggregates['count']} ensaios")
        self.stdout.write(self.style.SUCCESS(f"✅ Relatório gravado em {destino}"))
