# experimentos/management/commands/sobolev_lab.py

from __future__ import annotations

from django.core.management.base import BaseCommand

from core.excecoes import ParametroInvalido
from core.relatorios import HIPOTESE_VIOLADA
from core.utils.comandos import caminho_saida, erros_como_comando
from experimentos.configuracao import FORMATOS, ExperimentConfig
from experimentos.services.executor import EXPERIMENTOS, emit_report, run_experiment


def _pares(itens):
    saida = {}
    for item in itens or []:
        chave, sep, valor = item.partition("=")
        if not sep or not chave.strip():
            raise ParametroInvalido(f"parâmetro deve ser chave=valor (recebido {item!r})")
        saida[chave.strip()] = valor.strip()
    return saida


class Command(BaseCommand):
    help = "Roda um experimento sobre uma escada de tamanhos e grava o relatório (JSON ou CSV)."

    def add_arguments(self, parser):
        parser.add_argument("experiment", choices=sorted(EXPERIMENTOS))
        parser.add_argument("--config", type=str, default=None, help="Arquivo INI (uma seção por experimento)")
        parser.add_argument("--ladder", type=str, default=None, help="Tamanhos, ex.: 16,32,64")
        parser.add_argument("--manifold", type=str, default=None, help="Descritor com {n} ou arquivo JSON")
        parser.add_argument("--form", type=str, default=None)
        parser.add_argument("--trials", type=int, default=None)
        parser.add_argument("--seed", type=int, default=None)
        parser.add_argument("--param", action="append", default=[], help="chave=valor (repetível)")
        parser.add_argument("--format", choices=FORMATOS + ("both",), default=None)
        parser.add_argument("--out", type=str, default=None, help="Destino sem extensão (padrão: DADOS_DIR/<experimento>)")

    def handle(self, *args, **opts):
        with erros_como_comando():
            sobrescritas = {
                "ladder": opts["ladder"], "manifold": opts["manifold"], "form": opts["form"],
                "trials": opts["trials"], "seed": opts["seed"], **_pares(opts["param"]),
            }
            if opts["format"] in FORMATOS:
                sobrescritas["format"] = opts["format"]
            if opts["config"]:
                cfg = ExperimentConfig.de_ini(opts["config"], opts["experiment"], **sobrescritas)
            else:
                cfg = ExperimentConfig.de_dict(opts["experiment"], {}, **sobrescritas)

            rel = run_experiment(cfg)
            destino = caminho_saida(opts["out"] or cfg.output, cfg.experiment.replace("-", "_"))
            formatos = FORMATOS if opts["format"] == "both" else (cfg.format,)
            arquivos = [c for f in formatos for c in emit_report(rel, f, destino)]

        for linha in rel.ladder:
            maximo = "-" if linha["max_ratio"] is None else f"{linha['max_ratio']:.6g}"
            self.stdout.write(f"n={linha['n']:>5}  max ratio={maximo}  ensaios={linha['count']}")
        if HIPOTESE_VIOLADA in rel.flags:
            self.stdout.write(self.style.WARNING("⚠️  hypothesis-violated: regime fora das hipóteses (ver flags)"))
        elif rel.flags:
            self.stdout.write(self.style.NOTICE(f"Sinalizações: {', '.join(rel.flags)}"))
        for caminho in arquivos:
            self.stdout.write(self.style.SUCCESS(f"✅ Relatório gravado em {caminho}"))
