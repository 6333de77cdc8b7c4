# funcionais/management/commands/characterize.py

from __future__ import annotations

from django.core.management.base import BaseCommand

from core.relatorios import executar_escada, separar_tempos
from core.utils.comandos import caminho_saida, erros_como_comando, expoente, lista_int
from core.utils.serializacao import gravar_json
from espectral.services.montagem import assemble_operator
from funcionais.services.caracterizacao import characterization_report
from geometria.services.construcao import build_manifold


class Command(BaseCommand):
    help = "Caracterização de W^{α,p}_L por S_α^ρ: razões ‖S f‖_p / ‖L^{α/m} f‖_p (c_1, c_2 empíricos)."

    def add_arguments(self, parser):
        parser.add_argument("--spec", default="cycle({n})", help="Descritor; {n} é trocado pelos tamanhos")
        parser.add_argument("--sizes", type=str, default="16,32,64,128")
        parser.add_argument("--alpha", type=float, default=0.5)
        parser.add_argument("--p", type=str, default="2")
        parser.add_argument("--rho", type=float, default=1.0)
        parser.add_argument("--local", action="store_true", help="Razão principal não homogênea (S local)")
        parser.add_argument("--trials", type=int, default=50)
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--out", type=str, default=None)

    def handle(self, *args, **opts):
        with erros_como_comando():
            p = expoente(opts["p"])
            relatorios = {}

            def rodar(n):
                M = build_manifold(opts["spec"].format(n=n), seed=opts["seed"])
                rel = characterization_report(assemble_operator(M), M, opts["alpha"], p, opts["rho"],
                                              opts["trials"], opts["seed"], global_=not opts["local"])
                relatorios[n] = rel
                return {"n": n, "max_ratio": rel.max_ratio, "min_ratio": rel.aggregates["min"]}

            tamanhos = lista_int(opts["sizes"]) or [32]
            escada = executar_escada(tamanhos, rodar)
            tempos = separar_tempos(escada)
            rel = relatorios[tamanhos[0]]
            rel.ladder = escada
            rel.timing["wall_s"] = tempos
            destino = gravar_json(caminho_saida(opts["out"], "characterize.json"), rel.como_dict())

        if rel.hypothesis_violated:
            self.stdout.write(self.style.WARNING("⚠️  hypothesis-violated: fora de max(ρ, s_-) < min(2, p)"))
        for linha in escada:
            self.stdout.write(f"n={linha['n']:>5}  c1={linha['min_ratio']:.6g}  c2={linha['max_ratio']:.6g}")
        self.stdout.write(self.style.SUCCESS(f"✅ Relatório gravado em {destino}"))
