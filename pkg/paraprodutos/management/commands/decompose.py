# paraprodutos/management/commands/decompose.py

from __future__ import annotations

from django.core.management.base import BaseCommand

from core.campos import load_field
from core.utils.comandos import caminho_saida, erros_como_comando
from core.utils.serializacao import gravar_json
from espectral.services.cache import load_or_assemble
from paraprodutos.familia import SymbolFamily
from paraprodutos.management.commands.paraproduct import argumentos_quadratura
from paraprodutos.quadratura import TQuadrature
from paraprodutos.services.decomposicao import product_decomposition


class Command(BaseCommand):
    help = "Decompõe fg em K·(Π + Π_g + Π_f) + correção do núcleo e reporta o resíduo relativo."

    def add_arguments(self, parser):
        parser.add_argument("--manifold", required=True)
        parser.add_argument("--f", required=True)
        parser.add_argument("--g", required=True)
        argumentos_quadratura(parser)
        parser.add_argument("--out", type=str, default=None)

    def handle(self, *args, **opts):
        with erros_como_comando():
            M, op = load_or_assemble(opts["manifold"])
            f = load_field(opts["f"]).checar_tamanho(M.vertex_count)
            g = load_field(opts["g"]).checar_tamanho(M.vertex_count)
            dec = product_decomposition(op, SymbolFamily(opts["N"]),
                                        TQuadrature(opts["tmin"], opts["tmax"], opts["nodes"]), f, g)
            destino = gravar_json(caminho_saida(opts["out"], "decompose.json"), {
                "K": dec.K, "K_continuum": dec.K_continuo, "relative_residual": dec.residuo_relativo,
                "pi": dec.pi_hh, "pi_g_f": dec.pi_lh, "pi_f_g": dec.pi_hl,
                "kernel_correction": dec.kernel_correction, "residual": dec.residual, "warnings": dec.avisos,
            })

        for aviso in dec.avisos:
            self.stdout.write(self.style.WARNING(f"⚠️  {aviso}"))
        self.stdout.write(f"K = {dec.K:.12g} (ĉ³ = {dec.K_continuo:.12g}) | resíduo relativo = {dec.residuo_relativo:.3e}")
        self.stdout.write(self.style.SUCCESS(f"✅ Decomposição gravada em {destino}"))
