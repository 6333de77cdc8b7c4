# espectral/management/commands/spectrum.py

from __future__ import annotations

from django.core.management.base import BaseCommand

from core.utils.comandos import caminho_saida, erros_como_comando
from core.utils.serializacao import gravar_json
from espectral.services.cache import load_or_assemble
from espectral.services.montagem import FORMAS
from espectral.utils import ler_coeficientes
from geometria.services.construcao import load_manifold


class Command(BaseCommand):
    help = "Monta o gerador L (autodecomposição densa), grava o cache de autopares e o espectro em JSON."

    def add_arguments(self, parser):
        parser.add_argument("--manifold", required=True, help="Arquivo JSON da variedade")
        parser.add_argument("--form", choices=FORMAS, default="combinatorial")
        parser.add_argument("--coeff", type=str, default=None, help="CSV u,v,coef (forma divergente)")
        parser.add_argument("--out", type=str, default=None, help="JSON do espectro (padrão: DADOS_DIR/spectrum.json)")

    def handle(self, *args, **opts):
        with erros_como_comando():
            coef = None
            if opts["coeff"]:
                coef = ler_coeficientes(opts["coeff"], load_manifold(opts["manifold"]))
            M, op = load_or_assemble(opts["manifold"], form=opts["form"], coef=coef)
            destino = gravar_json(caminho_saida(opts["out"], "spectrum.json"), {
                "form": op.form,
                "m": op.m,
                "kernel_dim": op.kernel_dim,
                "eigenvalues": op.eigenvalues,
            })

        self.stdout.write(f"λ_1 = {op.lambda_min_pos:.6g} | λ_max = {op.lambda_max:.6g} | núcleo: {op.kernel_dim}")
        if op.kernel_dim != 1:
            self.stdout.write(self.style.WARNING(f"⚠️  dimensão do núcleo = {op.kernel_dim} (esperado 1)"))
        self.stdout.write(self.style.SUCCESS(f"✅ Espectro gravado em {destino}"))
