# espectral/management/commands/apply.py

from __future__ import annotations

from django.core.management.base import BaseCommand

from core.campos import load_field, save_field
from core.utils.comandos import caminho_saida, erros_como_comando, expoente
from espectral.services.cache import load_or_assemble
from espectral.services.calculo import apply_symbol, fractional_power, parse_symbol
from espectral.services.montagem import FORMAS


class Command(BaseCommand):
    help = "Aplica um símbolo b(L) (heat:t, schrodinger:t, power:β, bessel:β, ...) a um campo CSV."

    def add_arguments(self, parser):
        parser.add_argument("--manifold", required=True, help="Arquivo JSON da variedade")
        parser.add_argument("--form", choices=FORMAS, default="combinatorial")
        parser.add_argument("--symbol", required=True, help="nome:parâmetros, ex.: heat:0.5")
        parser.add_argument("--field", required=True, help="CSV vertex_id,value_re[,value_im]")
        parser.add_argument("--out", type=str, default=None, help="CSV de saída (padrão: DADOS_DIR/applied.csv)")

    def handle(self, *args, **opts):
        with erros_como_comando():
            M, op = load_or_assemble(opts["manifold"], form=opts["form"])
            f = load_field(opts["field"]).checar_tamanho(M.vertex_count)
            nome, _, params = opts["symbol"].partition(":")
            if nome.strip().lower() in ("power", "bessel"):
                resultado = fractional_power(op, expoente(params), f, bessel=nome.strip().lower() == "bessel")
            else:
                resultado = apply_symbol(op, parse_symbol(opts["symbol"]), f)
            destino = save_field(caminho_saida(opts["out"], "applied.csv"), resultado)

        self.stdout.write(self.style.SUCCESS(f"✅ {opts['symbol']} aplicado; campo gravado em {destino}"))
