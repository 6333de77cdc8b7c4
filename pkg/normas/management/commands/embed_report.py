# normas/management/commands/embed_report.py

from __future__ import annotations

from django.core.management.base import BaseCommand

from core.utils.comandos import caminho_saida, erros_como_comando, expoente
from core.utils.serializacao import gravar_json
from espectral.services.montagem import assemble_operator
from geometria.services.construcao import build_manifold
from normas.services.mergulhos import embedding_report


class Command(BaseCommand):
    help = "Relatório empírico da imersão de Sobolev ‖(1+L)^{-s/m} f‖_q ≲ ‖f‖_p sobre campos semeados."

    def add_arguments(self, parser):
        parser.add_argument("--spec", default="cycle(32)", help="Descritor da variedade")
        parser.add_argument("--s", type=float, default=1.0)
        parser.add_argument("--p", type=str, default="2")
        parser.add_argument("--q", type=str, default="4")
        parser.add_argument("--trials", type=int, default=50)
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--out", type=str, default=None)

    def handle(self, *args, **opts):
        with erros_como_comando():
            M = build_manifold(opts["spec"], seed=opts["seed"])
            op = assemble_operator(M)
            rel = embedding_report(op, M, opts["s"], expoente(opts["p"]), expoente(opts["q"]),
                                   opts["trials"], opts["seed"])
            destino = gravar_json(caminho_saida(opts["out"], "embed_report.json"), rel.como_dict())

        if rel.hypothesis_violated:
            self.stdout.write(self.style.WARNING("⚠️  hypothesis-violated: regime fora da imersão"))
        self.stdout.write(f"max ratio = {rel.max_ratio:.6g} | max ratio (W^{{s,p}}) = {rel.extras['max_ratio_sobolev']:.6g}")
        self.stdout.write(self.style.SUCCESS(f"✅ Relatório gravado em {destino}"))
