# funcionais/management/commands/sfunc.py

from __future__ import annotations

from django.core.management.base import BaseCommand

from core.campos import load_field, save_field
from core.utils.comandos import caminho_saida, erros_como_comando
from funcionais.requisicao import SFuncRequest
from funcionais.services.strichartz import strichartz_functional
from geometria.services.construcao import load_manifold


class Command(BaseCommand):
    help = "Avalia o funcional S_α^ρ f em todos os vértices (integração radial exata)."

    def add_arguments(self, parser):
        parser.add_argument("--manifold", required=True, help="Arquivo JSON da variedade")
        parser.add_argument("--field", required=True, help="CSV vertex_id,value_re[,value_im]")
        parser.add_argument("--alpha", type=float, default=None)
        parser.add_argument("--rho", type=float, default=None)
        parser.add_argument("--local", action="store_true", help="Integra só r em (0, 1)")
        parser.add_argument("--out", type=str, default=None, help="CSV de saída (padrão: DADOS_DIR/sfunc.csv)")

    def handle(self, *args, **opts):
        with erros_como_comando():
            M = load_manifold(opts["manifold"])
            f = load_field(opts["field"]).checar_tamanho(M.vertex_count)
            padrao = SFuncRequest.padrao(local=opts["local"])
            req = SFuncRequest(
                alpha=padrao.alpha if opts["alpha"] is None else opts["alpha"],
                rho=padrao.rho if opts["rho"] is None else opts["rho"],
                local=opts["local"],
            )
            s = strichartz_functional(M, f, req)
            destino = save_field(caminho_saida(opts["out"], "sfunc.csv"), s)

        rotulo = "S^loc" if req.local else "S"
        self.stdout.write(f"{rotulo}: máx = {s.max():.6g} | mín = {s.min():.6g}")
        self.stdout.write(self.style.SUCCESS(f"✅ Campo gravado em {destino}"))
