# paraprodutos/management/commands/paraproduct.py

from __future__ import annotations

from django.conf import settings
from django.core.management.base import BaseCommand

from core.campos import load_field, save_field
from core.utils.comandos import caminho_saida, erros_como_comando
from espectral.services.cache import load_or_assemble
from paraprodutos.familia import SymbolFamily
from paraprodutos.quadratura import TQuadrature
from paraprodutos.services.paraprodutos import paraproduct


def argumentos_quadratura(parser):
    cfg = settings.SOBOLEV_LAB
    parser.add_argument("--N", type=int, default=cfg["N"], help="Ordem N da família de Calderón")
    parser.add_argument("--tmin", type=float, default=cfg["QUAD_T_MIN"])
    parser.add_argument("--tmax", type=float, default=cfg["QUAD_T_MAX"])
    parser.add_argument("--nodes", type=int, default=cfg["QUAD_NOS"], help="Nós log-espaçados em t")


class Command(BaseCommand):
    help = "Calcula um paraproduto de semigrupo (hh | lh | hl) entre dois campos CSV."

    def add_arguments(self, parser):
        parser.add_argument("--manifold", required=True)
        parser.add_argument("--flavor", choices=["hh", "lh", "hl"], default="hh")
        parser.add_argument("--f", required=True, help="CSV do campo f")
        parser.add_argument("--g", required=True, help="CSV do campo g")
        argumentos_quadratura(parser)
        parser.add_argument("--out", type=str, default=None)

    def handle(self, *args, **opts):
        with erros_como_comando():
            M, op = load_or_assemble(opts["manifold"])
            f = load_field(opts["f"]).checar_tamanho(M.vertex_count)
            g = load_field(opts["g"]).checar_tamanho(M.vertex_count)
            res = paraproduct(op, SymbolFamily(opts["N"]), TQuadrature(opts["tmin"], opts["tmax"], opts["nodes"]),
                              f, g, opts["flavor"])
            destino = save_field(caminho_saida(opts["out"], f"paraproduct_{opts['flavor']}.csv"), res.valores)

        for aviso in res.avisos:
            self.stdout.write(self.style.WARNING(f"⚠️  {aviso}"))
        self.stdout.write(self.style.SUCCESS(f"✅ Paraproduto {opts['flavor']} gravado em {destino}"))
