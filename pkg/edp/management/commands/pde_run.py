# edp/management/commands/pde_run.py

from __future__ import annotations

from django.core.management.base import BaseCommand

from core.campos import load_field, save_field
from core.nao_linearidades import REGISTRO
from core.utils.comandos import caminho_saida, erros_como_comando, lista_float
from core.utils.serializacao import gravar_json
from edp.problema import TIPOS, EvolutionProblem
from edp.services.duhamel import duhamel_evolve
from edp.services.estimativas import conservation_check
from espectral.services.cache import load_or_assemble


class Command(BaseCommand):
    help = "Evolução semilinear (calor ou Schrödinger) por iteração de Picard na fórmula de Duhamel."

    def add_arguments(self, parser):
        parser.add_argument("--manifold", required=True, help="Arquivo JSON da variedade")
        parser.add_argument("--kind", choices=TIPOS, default="heat")
        parser.add_argument("--F", dest="F", default="u2", help=f"Uma de: {', '.join(sorted(REGISTRO))}")
        parser.add_argument("--u0", required=True, help="CSV do dado inicial")
        parser.add_argument("--alpha", type=float, default=None)
        parser.add_argument("--interval", type=float, required=True, help="Comprimento |I|")
        parser.add_argument("--tau-nodes", dest="tau_nodes", type=int, default=None)
        parser.add_argument("--picard-max", dest="picard_max", type=int, default=None)
        parser.add_argument("--t-grid", dest="t_grid", type=str, default="0.1,1,10",
                            help="Tempos do relatório de conservação")
        parser.add_argument("--out", type=str, default=None, help="JSON do traço (padrão: DADOS_DIR/pde_run.json)")

    def handle(self, *args, **opts):
        with erros_como_comando():
            M, op = load_or_assemble(opts["manifold"])
            u0 = load_field(opts["u0"]).checar_tamanho(M.vertex_count).values
            extras = {k: v for k, v in (("alpha", opts["alpha"]), ("time_nodes", opts["tau_nodes"]),
                                        ("picard_iterations", opts["picard_max"])) if v is not None}
            problema = EvolutionProblem.padrao(opts["kind"], opts["F"], u0, opts["interval"], **extras)
            res = duhamel_evolve(problema, op)
            cons = conservation_check(op, problema.u0, problema.alpha, lista_float(opts["t_grid"]))

            destino = caminho_saida(opts["out"], "pde_run.json")
            campo = save_field(destino.with_name(destino.stem + "_fixed_point.csv"), res.final)
            gravar_json(destino, {
                "kind": problema.kind, "F": problema.F.nome, "alpha": problema.alpha,
                "interval": problema.interval_length, "converged": res.convergiu, "flags": res.flags,
                "distances": res.distancias, "contraction_factor": res.fator_contracao,
                "residual": res.residuo, "fixed_point_field": campo.name,
                "conservation": cons.como_dict(),
            })

        for k, d in enumerate(res.distancias):
            self.stdout.write(f"d_{k} = {d:.3e}")
        if res.convergiu:
            self.stdout.write(self.style.SUCCESS(f"✅ Ponto fixo em {res.iteracoes} iterações (resíduo {res.residuo:.2e})"))
        else:
            self.stdout.write(self.style.WARNING("⚠️  no-contraction: reduza |I| ou o dado inicial"))
        if not cons.extras["conservation_ok"]:
            self.stdout.write(self.style.WARNING(f"⚠️  conservação com erro {cons.extras['max_error']:.3e}"))
        self.stdout.write(self.style.NOTICE(f"Campo final: {campo} | traço: {destino}"))
