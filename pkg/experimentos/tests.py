import tempfile
from io import StringIO
from pathlib import Path

import pandas as pd
from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from core.excecoes import ErroRelatorio, ParametroInvalido
from core.utils.serializacao import dumps17, ler_json
from experimentos.configuracao import ExperimentConfig
from experimentos.services.executor import EXPERIMENTOS, emit_report, run_experiment

INI = """
[leibniz]
ladder = 16,32
manifold = cycle({n})
trials = 4
seed = 3
alpha = 0.5
N = 4
nodes = 200

[characterize]
ladder = 16
trials = 1
seed = 7
"""


class ConfiguracaoTests(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.ini = Path(self.tmp.name) / "exp.ini"
        self.ini.write_text(INI, encoding="utf-8")

    def test_ini(self):
        cfg = ExperimentConfig.de_ini(self.ini, "leibniz")
        self.assertEqual(cfg.ladder, [16, 32])
        self.assertEqual(cfg.trials, 4)
        self.assertEqual(cfg.parametro("N"), 4)
        self.assertEqual(cfg.parametro("nodes"), 200)
        self.assertEqual(cfg.parametro("rho"), settings.SOBOLEV_LAB["RHO"])

    def test_sobrescrita_da_linha_de_comando(self):
        cfg = ExperimentConfig.de_ini(self.ini, "leibniz", trials=9, ladder="64", alpha="0.25")
        self.assertEqual((cfg.trials, cfg.ladder, cfg.parametro("alpha")), (9, [64], 0.25))

    def test_invariantes(self):
        with self.assertRaises(ParametroInvalido):
            ExperimentConfig("geom", trials=0)
        with self.assertRaises(ParametroInvalido):
            ExperimentConfig("geom", ladder=[])
        with self.assertRaises(ErroRelatorio):
            ExperimentConfig("geom", manifold=str(Path(self.tmp.name) / "nao_existe_{n}.json"))
        with self.assertRaises(ParametroInvalido):
            ExperimentConfig.de_ini(self.ini, "pde")
        with self.assertRaises(ErroRelatorio):
            ExperimentConfig.de_ini(Path(self.tmp.name) / "faltando.ini")


class ExecucaoTests(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.dir = Path(self.tmp.name)

    def test_experimento_desconhecido(self):
        with self.assertRaises(ParametroInvalido):
            run_experiment(ExperimentConfig("bogus"))

    def test_menor_caracterizacao(self):
        cfg = ExperimentConfig("characterize", ladder=[16], trials=1, seed=7)
        a, b = run_experiment(cfg), run_experiment(cfg)
        self.assertEqual(len(a.per_trial), 1)
        self.assertEqual(len(a.ladder), 1)
        self.assertEqual(a.hash_payload(), b.hash_payload())
        self.assertEqual(dumps17(a.payload()), dumps17(b.payload()))

    def test_independe_de_threads(self):
        cfg = ExperimentConfig("equivalence", ladder=[16, 24, 32], trials=3, seed=1)
        um = run_experiment(cfg).hash_payload()
        with override_settings(SOBOLEV_LAB={**settings.SOBOLEV_LAB, "THREADS": 3}):
            tres = run_experiment(cfg).hash_payload()
        self.assertEqual(um, tres)

    def test_prefixo_dos_ensaios(self):
        curto = run_experiment(ExperimentConfig("equivalence", ladder=[16], trials=3, seed=5))
        longo = run_experiment(ExperimentConfig("equivalence", ladder=[16], trials=6, seed=5))
        self.assertEqual(curto.per_trial, longo.per_trial[:3])

    def test_leibniz_escada_csv(self):
        cfg = ExperimentConfig("leibniz", ladder=[16, 32, 64], trials=3, seed=2)
        rel = run_experiment(cfg)
        self.assertEqual([linha["n"] for linha in rel.ladder], [16, 32, 64])
        self.assertTrue(all(linha["max_ratio"] is not None for linha in rel.ladder))
        (csv,) = emit_report(rel, "csv", self.dir / "leibniz")
        df = pd.read_csv(csv)
        self.assertEqual(len(df), 3)
        self.assertEqual(csv.read_text(encoding="utf-8").count("\n"), 4)
        self.assertIn("max_ratio", df.columns)

    def test_json_idempotente(self):
        rel = run_experiment(ExperimentConfig("geom", ladder=[12], trials=2))
        (caminho,) = emit_report(rel, "json", self.dir / "geom")
        texto = caminho.read_text(encoding="utf-8")
        self.assertEqual(dumps17(ler_json(caminho)) + "\n", texto)
        self.assertEqual(ler_json(caminho)["meta"]["hashes"]["payload_sha256"], rel.hash_payload())

    def test_formato_invalido(self):
        rel = run_experiment(ExperimentConfig("geom", ladder=[12], trials=1))
        with self.assertRaises(ParametroInvalido):
            emit_report(rel, "xml", self.dir / "x")

    def test_todos_os_experimentos(self):
        for nome in EXPERIMENTOS:
            rel = run_experiment(ExperimentConfig(nome, ladder=[12], trials=2, seed=4))
            self.assertEqual(rel.experiment, nome)
            self.assertEqual(len(rel.ladder), 1, nome)

    def test_hipotese_violada_nao_e_erro(self):
        rel = run_experiment(ExperimentConfig("embed", ladder=[16], trials=2, params={"s": 0.1, "p": 2.0, "q": float("inf")}))
        self.assertIn("hypothesis-violated", rel.flags)


class ComandoTests(SimpleTestCase):
    def test_sobolev_lab(self):
        with tempfile.TemporaryDirectory() as tmp:
            out = StringIO()
            call_command("sobolev_lab", "characterize", "--ladder", "16", "--trials", "1", "--seed", "7",
                         "--format", "both", "--out", str(Path(tmp) / "c"), stdout=out)
            self.assertTrue((Path(tmp) / "c.json").exists())
            self.assertTrue((Path(tmp) / "c.csv").exists())
            self.assertIn("Relatório gravado", out.getvalue())

    def test_erro_vira_codigo_2(self):
        with self.assertRaises(CommandError) as ctx:
            call_command("sobolev_lab", "geom", "--trials", "0", stdout=StringIO())
        self.assertEqual(ctx.exception.returncode, 2)
        with self.assertRaises(CommandError):
            call_command("sobolev_lab", "geom", "--param", "semvalor", stdout=StringIO())

    def test_out_da_linha_de_comando_vence_o_ini(self):
        with tempfile.TemporaryDirectory() as tmp:
            ini = Path(tmp) / "exp.ini"
            ini.write_text(f"[characterize]\nladder = 16\ntrials = 1\nseed = 7\noutput = {Path(tmp) / 'ini'}\n",
                           encoding="utf-8")
            call_command("sobolev_lab", "characterize", "--config", str(ini), "--format", "json",
                         "--out", str(Path(tmp) / "cli"), stdout=StringIO())
            self.assertTrue((Path(tmp) / "cli.json").exists())
            self.assertFalse((Path(tmp) / "ini.json").exists())

            # sem --out vale o destino do arquivo
            call_command("sobolev_lab", "characterize", "--config", str(ini), "--format", "json", stdout=StringIO())
            self.assertTrue((Path(tmp) / "ini.json").exists())
