# normas/management/commands/norm.py

from __future__ import annotations

from django.core.management.base import BaseCommand

from core.campos import load_field, save_field
from core.utils.comandos import caminho_saida, erros_como_comando, expoente
from espectral.services.cache import load_or_assemble
from espectral.services.montagem import FORMAS
from normas.services.normas import bessel_norm, bmo_norm, lebesgue_norm, maximal_function, sobolev_norm


class Command(BaseCommand):
    help = "Avalia uma norma de um campo: lp | sobolev | bessel | bmo | bmol | maximal."

    def add_arguments(self, parser):
        parser.add_argument("--kind", required=True, choices=["lp", "sobolev", "bessel", "bmo", "bmol", "maximal"])
        parser.add_argument("--manifold", required=True, help="Arquivo JSON da variedade")
        parser.add_argument("--field", required=True, help="CSV vertex_id,value_re[,value_im]")
        parser.add_argument("--form", choices=FORMAS, default="combinatorial")
        parser.add_argument("--p", type=str, default="2", help="Expoente p (aceita 'inf')")
        parser.add_argument("--alpha", type=float, default=0.0, help="Regularidade α (Sobolev/Bessel)")
        parser.add_argument("--homogeneous", action="store_true", help="Seminorma homogênea ‖L^{α/m} f‖_p")
        parser.add_argument("--s", type=float, default=1.0, help="Expoente s da função maximal")
        parser.add_argument("--out", type=str, default=None, help="CSV de saída da função maximal")

    def handle(self, *args, **opts):
        kind = opts["kind"]
        with erros_como_comando():
            M, op = load_or_assemble(opts["manifold"], form=opts["form"])
            f = load_field(opts["field"]).checar_tamanho(M.vertex_count)
            p = expoente(opts["p"])

            if kind == "maximal":
                destino = save_field(caminho_saida(opts["out"], "maximal.csv"),
                                     maximal_function(M, f, opts["s"], op=op))
                self.stdout.write(self.style.SUCCESS(f"✅ M_s f gravada em {destino}"))
                return
            if kind == "lp":
                valor = lebesgue_norm(op, f, p)
            elif kind == "sobolev":
                valor = sobolev_norm(op, f, opts["alpha"], p, homogeneous=opts["homogeneous"])
            elif kind == "bessel":
                valor = bessel_norm(op, f, opts["alpha"], p)
            elif kind == "bmo":
                valor = bmo_norm(M, f, "classical", op=op)
            else:
                valor = bmo_norm(M, f, "semigroup", op=op, p=p)

        self.stdout.write(self.style.SUCCESS(f"{kind} = {valor:.17g}"))
