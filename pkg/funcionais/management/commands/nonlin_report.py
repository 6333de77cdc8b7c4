# funcionais/management/commands/nonlin_report.py

from __future__ import annotations

from django.core.management.base import BaseCommand

from core.nao_linearidades import REGISTRO
from core.utils.comandos import caminho_saida, erros_como_comando, expoente
from core.utils.serializacao import gravar_json
from espectral.services.montagem import assemble_operator
from funcionais.services.caracterizacao import nonlinearity_report
from geometria.services.construcao import build_manifold


class Command(BaseCommand):
    help = "Ação de uma não linearidade Lipschitz em W^{α,p}_L: dominação de S e constante empírica."

    def add_arguments(self, parser):
        parser.add_argument("--spec", default="cycle(32)")
        parser.add_argument("--F", dest="F", default="tanh", help=f"Uma de: {', '.join(sorted(REGISTRO))}")
        parser.add_argument("--alpha", type=float, default=0.5)
        parser.add_argument("--p", type=str, default="2")
        parser.add_argument("--rho", type=float, default=1.0)
        parser.add_argument("--trials", type=int, default=20)
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--out", type=str, default=None)

    def handle(self, *args, **opts):
        with erros_como_comando():
            M = build_manifold(opts["spec"], seed=opts["seed"])
            rel = nonlinearity_report(assemble_operator(M), M, opts["F"], opts["alpha"], expoente(opts["p"]),
                                      opts["trials"], opts["seed"], rho=opts["rho"])
            destino = gravar_json(caminho_saida(opts["out"], "nonlin_report.json"), rel.como_dict())

        if rel.extras["s_domination_ok"]:
            self.stdout.write(self.style.SUCCESS("S(F∘f) <= Lip(F)·S(f) em todos os vértices"))
        else:
            self.stdout.write(self.style.WARNING(f"⚠️  dominação violada: excesso {rel.extras['max_s_domination_excess']:.3e}"))
        self.stdout.write(f"K empírico = {rel.max_ratio:.6g}")
        self.stdout.write(self.style.SUCCESS(f"✅ Relatório gravado em {destino}"))
