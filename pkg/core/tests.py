import json
import tempfile
from pathlib import Path

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from core.campos import Field, load_field, media_mu, norma_lp, save_field
from core.excecoes import ErroRelatorio, ErroSobolevLab, GeometriaInvalida, ParametroInvalido
from core.nao_linearidades import REGISTRO, certificar, obter
from core.relatorios import HIPOTESE_VIOLADA, Relatorio, agregar, executar_escada, separar_tempos
from core.utils.comandos import expoente, lista_float, lista_int
from core.utils.sementes import derive_seed, gerador, splitmix64
from core.utils.serializacao import dumps17, formatar_float, gravar_json, ler_json


class SementesTests(SimpleTestCase):
    def test_splitmix_referencia(self):
        self.assertEqual(splitmix64(0), 0xE220A8397B1DCDAF)

    def test_derivacao(self):
        self.assertEqual(derive_seed(7, 3), 7 ^ splitmix64(3))
        self.assertNotEqual(derive_seed(7, 3), derive_seed(7, 4))
        a = gerador(7, 3).standard_normal(4)
        np.testing.assert_array_equal(a, gerador(7, 3).standard_normal(4))


class SerializacaoTests(SimpleTestCase):
    def test_floats(self):
        self.assertEqual(formatar_float(1.0), "1.0")
        self.assertEqual(formatar_float(0.1), "0.10000000000000001")
        self.assertEqual(formatar_float(1e20), "1e+20")
        self.assertEqual(formatar_float(float("inf")), "Infinity")

    @settings(max_examples=60, deadline=None)
    @given(st.recursive(
        st.none() | st.booleans() | st.integers(-10**6, 10**6) | st.floats(allow_nan=False) | st.text(max_size=8),
        lambda filhos: st.lists(filhos, max_size=4) | st.dictionaries(st.text(max_size=5), filhos, max_size=4),
        max_leaves=12,
    ))
    def test_reemissao_identica(self, obj):
        txt = dumps17(obj)
        self.assertEqual(dumps17(json.loads(txt)), txt)

    def test_numpy_e_complexos(self):
        txt = dumps17({"a": np.float64(2.0), "b": np.arange(2), "c": 1 + 2j, "d": np.bool_(True)}, indent=None)
        self.assertEqual(txt, '{"a": 2.0, "b": [0, 1], "c": {"re": 1.0, "im": 2.0}, "d": true}')

    def test_gravar_e_ler(self):
        with tempfile.TemporaryDirectory() as tmp:
            caminho = gravar_json(Path(tmp) / "x" / "r.json", {"v": 0.5})
            self.assertEqual(ler_json(caminho), {"v": 0.5})
            (Path(tmp) / "ruim.json").write_text("{", encoding="utf-8")
            with self.assertRaises(ErroRelatorio):
                ler_json(Path(tmp) / "ruim.json")


class CampoTests(SimpleTestCase):
    def test_validacao(self):
        with self.assertRaises(ParametroInvalido):
            Field(np.zeros((2, 2)))
        with self.assertRaises(ParametroInvalido):
            Field(np.array([1.0, np.nan]))
        with self.assertRaises(ParametroInvalido):
            Field(np.ones(3)).checar_tamanho(4)
        self.assertEqual(Field(np.array([1 + 1j])).scalar_kind, "complex")

    def test_csv(self):
        with tempfile.TemporaryDirectory() as tmp:
            real = np.array([0.1, -2.5, 1e-300])
            cplx = np.array([1 + 2j, -0.5j])
            np.testing.assert_array_equal(load_field(save_field(Path(tmp) / "r.csv", real)).values, real)
            np.testing.assert_array_equal(load_field(save_field(Path(tmp) / "c.csv", cplx)).values, cplx)
            (Path(tmp) / "lacuna.csv").write_text("vertex_id,value_re\n0,1\n2,3\n", encoding="utf-8")
            with self.assertRaises(ErroRelatorio):
                load_field(Path(tmp) / "lacuna.csv")
            with self.assertRaises(ErroRelatorio):
                load_field(Path(tmp) / "nada.csv")

    def test_normas(self):
        mu = np.array([1.0, 2.0])
        self.assertAlmostEqual(norma_lp([3.0, 2.0], mu, 2), np.sqrt(17), places=14)
        self.assertEqual(norma_lp([3.0, -4.0], mu, np.inf), 4.0)
        self.assertAlmostEqual(norma_lp([1e200, 1e200], mu, 2) / 1e200, np.sqrt(3), places=14)
        self.assertAlmostEqual(media_mu([3.0, 0.0], mu), 1.0, places=15)
        with self.assertRaises(ParametroInvalido):
            norma_lp([1.0], np.ones(1), 0.5)


class NaoLinearidadeTests(SimpleTestCase):
    def test_apelidos(self):
        self.assertIs(obter("x^2"), REGISTRO["u2"])
        self.assertIs(obter(" |u|^2u "), REGISTRO["abs2u"])
        with self.assertRaises(ParametroInvalido):
            obter("exp")

    def test_certificados(self):
        v = np.linspace(-2, 1.5, 15)
        self.assertEqual(certificar(obter("u2"), v), 4.0)
        self.assertEqual(certificar(obter("u3"), v), 12.0)
        self.assertEqual(certificar(obter("tanh"), v), 1.0)
        with self.assertRaises(ParametroInvalido):
            certificar(np.sin, v)

    def test_lipschitz_vale_na_faixa(self):
        rng = np.random.default_rng(0)
        for nome, F in REGISTRO.items():
            a, b = rng.uniform(-1.5, 1.5, (2, 200))
            lip = F.lipschitz(1.5)
            self.assertTrue(np.all(np.abs(F(a) - F(b)) <= lip * np.abs(a - b) + 1e-12), nome)


class RelatorioTests(SimpleTestCase):
    def test_agregar(self):
        self.assertEqual(agregar([2.0, None, float("nan"), 1.0, 3.0]),
                         {"max": 3.0, "min": 1.0, "median": 2.0, "count": 3})
        self.assertEqual(agregar([])["count"], 0)

    def test_hash_ignora_tempos(self):
        a = Relatorio("x", params={"n": 1}, per_trial=[{"ratio": 0.5}])
        b = Relatorio("x", params={"n": 1}, per_trial=[{"ratio": 0.5}], timing={"wall_s": 9.0})
        self.assertEqual(a.hash_payload(), b.hash_payload())
        self.assertIn("version", a.como_dict()["meta"])

    def test_sinalizar(self):
        rel = Relatorio("x")
        with self.assertLogs("core.relatorios", level="WARNING"):
            rel.sinalizar(HIPOTESE_VIOLADA, "p fora da janela")
        rel.sinalizar(HIPOTESE_VIOLADA)
        self.assertEqual(rel.flags, [HIPOTESE_VIOLADA])
        self.assertTrue(rel.hypothesis_violated)

    def test_escada(self):
        linhas = executar_escada([3, 1, 2], lambda n: {"n": n, "dobro": 2 * n})
        tempos = separar_tempos(linhas)
        self.assertEqual(linhas, [{"n": 3, "dobro": 6}, {"n": 1, "dobro": 2}, {"n": 2, "dobro": 4}])
        self.assertEqual(len(tempos), 3)


class UtilitariosTests(SimpleTestCase):
    def test_listas_e_expoentes(self):
        self.assertEqual(lista_int("16, 32,64"), [16, 32, 64])
        self.assertEqual(lista_float("0.1,1"), [0.1, 1.0])
        self.assertEqual(expoente("inf"), float("inf"))
        self.assertEqual(expoente("∞"), float("inf"))
        with self.assertRaises(ParametroInvalido):
            expoente("dois")

    def test_hierarquia(self):
        self.assertTrue(issubclass(GeometriaInvalida, ErroSobolevLab))
        self.assertTrue(issubclass(GeometriaInvalida, ValueError))
        self.assertTrue(issubclass(ErroRelatorio, OSError))
