# normas/management/commands/log_embed_report.py

from __future__ import annotations

from django.core.management.base import BaseCommand

from core.utils.comandos import caminho_saida, erros_como_comando, expoente
from core.utils.serializacao import gravar_json
from espectral.services.montagem import assemble_operator
from geometria.services.construcao import build_manifold
from normas.services.mergulhos import log_embedding_report


class Command(BaseCommand):
    help = "Relatório da imersão logarítmica ‖f‖_∞ ≲ 1 + ‖f‖_BMO (1 + log(2 + ‖f‖_{W^{s,p}}))."

    def add_arguments(self, parser):
        parser.add_argument("--spec", default="cycle(64)")
        parser.add_argument("--s", type=float, default=1.0)
        parser.add_argument("--p", type=str, default="2")
        parser.add_argument("--flavor", choices=["BMO", "BMO_L"], default="BMO")
        parser.add_argument("--trials", type=int, default=200)
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--out", type=str, default=None)

    def handle(self, *args, **opts):
        with erros_como_comando():
            M = build_manifold(opts["spec"], seed=opts["seed"])
            op = assemble_operator(M)
            rel = log_embedding_report(op, M, opts["s"], expoente(opts["p"]), opts["trials"], opts["seed"],
                                       flavor=opts["flavor"])
            destino = gravar_json(caminho_saida(opts["out"], "log_embed_report.json"), rel.como_dict())

        if rel.hypothesis_violated:
            self.stdout.write(self.style.WARNING("⚠️  hypothesis-violated: s <= d/p"))
        self.stdout.write(f"max ratio = {rel.max_ratio:.6g} | μ(M) = {rel.extras['total_measure']:g}")
        self.stdout.write(self.style.SUCCESS(f"✅ Relatório gravado em {destino}"))
