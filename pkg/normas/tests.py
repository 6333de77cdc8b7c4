import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from numpy.testing import assert_allclose

from core.excecoes import ParametroInvalido
from core.relatorios import HIPOTESE_VIOLADA
from espectral.services.calculo import heat
from espectral.services.montagem import assemble_operator
from geometria.services.construcao import build_manifold
from normas.requisicao import NormRequest
from normas.services.mergulhos import embedding_report, equivalence_report, log_embedding_report
from normas.services.normas import bessel_norm, bmo_norm, lebesgue_norm, maximal_function, sobolev_norm

P2 = build_manifold("path(2)")
OP2 = assemble_operator(P2)
C16 = build_manifold("cycle(16)")
OP16 = assemble_operator(C16)
T6 = build_manifold("torus_grid(6,6)")
OPT6 = assemble_operator(T6)

campos16 = arrays(np.float64, 16, elements=st.floats(-10, 10))


class LebesgueTests(SimpleTestCase):
    def test_exemplos(self):
        self.assertAlmostEqual(lebesgue_norm(P2, [1.0, 1.0], 2), np.sqrt(2), places=15)
        self.assertEqual(lebesgue_norm(P2, [1.0, 0.0], np.inf), 1.0)
        self.assertAlmostEqual(lebesgue_norm(P2, [3.0, 4.0], 2), 5.0, places=14)

    def test_p_invalido(self):
        with self.assertRaises(ParametroInvalido):
            lebesgue_norm(P2, [1.0, 0.0], 0.5)
        with self.assertRaises(ParametroInvalido):
            NormRequest(p=2, alpha=-1)

    @settings(max_examples=40, deadline=None)
    @given(campos16, campos16, st.floats(-5, 5), st.sampled_from([1.0, 1.5, 2.0, 3.0, np.inf]))
    def test_homogeneidade_e_triangular(self, f, g, c, p):
        nf = lebesgue_norm(C16, f, p)
        self.assertAlmostEqual(lebesgue_norm(C16, c * f, p), abs(c) * nf, delta=1e-12 * (1 + abs(c) * nf))
        self.assertLessEqual(lebesgue_norm(C16, f + g, p), nf + lebesgue_norm(C16, g, p) + 1e-9)


class SobolevTests(SimpleTestCase):
    def test_constantes(self):
        self.assertLess(sobolev_norm(OP16, np.full(16, 4.0), 0.7, 2, homogeneous=True), 1e-12)

    def test_path2(self):
        self.assertAlmostEqual(sobolev_norm(OP2, [1.0, 0.0], 1.0, 2, homogeneous=True), 1.0, places=12)
        self.assertAlmostEqual(sobolev_norm(OP2, [1.0, 0.0], 1.0, 2), 2.0, places=12)

    def test_alpha_zero(self):
        f = np.random.default_rng(0).standard_normal(16)
        self.assertEqual(sobolev_norm(OP16, f, 0.0, 3, homogeneous=True), lebesgue_norm(OP16, f, 3))

    def test_bessel_constante(self):
        self.assertAlmostEqual(bessel_norm(OP2, [1.0, 1.0], 0.8, 2), np.sqrt(2), places=13)


class BMOTests(SimpleTestCase):
    def test_constantes(self):
        c = np.full(16, -3.0)
        self.assertLess(bmo_norm(C16, c), 1e-14)
        self.assertLess(bmo_norm(C16, c, "semigroup", op=OP16), 1e-12)

    def test_path2(self):
        self.assertAlmostEqual(bmo_norm(P2, [1.0, 0.0]), 0.5, places=15)

    def test_escala_e_constantes(self):
        f = np.random.default_rng(1).standard_normal(36)
        for sabor in ("classical", "semigroup"):
            b = bmo_norm(T6, f, sabor, op=OPT6)
            self.assertAlmostEqual(bmo_norm(T6, 2 * f, sabor, op=OPT6), 2 * b, delta=1e-12 * b)
            self.assertAlmostEqual(bmo_norm(T6, f + 7.5, sabor, op=OPT6), b, delta=1e-12 * (1 + b))

    def test_semigrupo_p_invalido(self):
        with self.assertRaises(ParametroInvalido):
            bmo_norm(C16, np.zeros(16), "semigroup", op=OP16, p=1.0)

    def test_semigrupo_limitado_por_oscilacao(self):
        # |f - e^{-tL} f| <= 2‖f‖_∞
        f = np.random.default_rng(2).standard_normal(16)
        self.assertLessEqual(bmo_norm(C16, f, "semigroup", op=OP16), 2 * np.abs(f).max())
        self.assertGreater(np.abs(f - heat(OP16, 1.0, f)).max(), 0)


class MaximalTests(SimpleTestCase):
    def test_constante(self):
        assert_allclose(maximal_function(C16, np.full(16, -2.0)), 2.0, atol=1e-14)

    def test_path2(self):
        assert_allclose(maximal_function(P2, [1.0, 0.0], 1.0), [1.0, 0.5], atol=1e-15)

    @settings(max_examples=30, deadline=None)
    @given(campos16)
    def test_propriedades(self, f):
        m1 = maximal_function(C16, f, 1.0)
        m2 = maximal_function(C16, f, 2.0)
        self.assertTrue(np.all(m1 >= np.abs(f)))
        self.assertTrue(np.all(m1 <= m2 + 1e-12))
        self.assertTrue(np.all(m2 <= np.abs(f).max() + 1e-12))


class MedidaDoOperadorTests(SimpleTestCase):
    """Forma normalizada numa variedade de medida unitária = medida do grau."""

    def setUp(self):
        self.M = build_manifold("path(5)")
        self.op = assemble_operator(self.M, form="normalized")
        self.G = build_manifold("path(5); measure=degree")
        self.delta = np.array([1.0, 0.0, 0.0, 0.0, 0.0])

    def test_medida_do_grau(self):
        assert_allclose(self.op.measure, [1, 2, 2, 2, 1], atol=0)
        assert_allclose(self.G.measure, self.op.measure, atol=0)
        self.assertIs(self.op.sobre(self.G), self.G)
        assert_allclose(self.op.sobre(self.M).measure, self.op.measure, atol=0)

    def test_bmo_classica(self):
        # bola {0,1}: média 1/3, oscilação 4/9
        b = bmo_norm(self.M, self.delta, op=self.op)
        self.assertAlmostEqual(b, 4 / 9, places=14)
        self.assertAlmostEqual(b, bmo_norm(self.G, self.delta), places=14)
        self.assertAlmostEqual(bmo_norm(self.M, self.delta), 0.5, places=14)

    def test_maximal(self):
        m = maximal_function(self.M, self.delta, op=self.op)
        assert_allclose(m, maximal_function(self.G, self.delta), atol=1e-15)
        self.assertAlmostEqual(m[1], 1 / 3, places=14)

    def test_log_embedding_usa_medida_do_operador(self):
        rel = log_embedding_report(self.op, self.M, 1.0, 2.0, trials=0, seed=0, campos=[self.delta])
        t0 = [r for r in rel.per_trial if r["trial"] == 0]
        for r in t0:
            self.assertAlmostEqual(r["bmo"], r["scale"] * bmo_norm(self.G, self.delta),
                                   delta=1e-13 * r["scale"])


class RelatoriosTests(SimpleTestCase):
    def test_equivalencia(self):
        rel = equivalence_report(OP16, C16, 0.5, 2.0, trials=10, seed=3)
        self.assertGreaterEqual(rel.extras["C"], 1.0)
        self.assertEqual(rel.aggregates["count"], 10)
        self.assertTrue(all(r["ratio"] <= 1.0 + 1e-12 for r in rel.per_trial))

    def test_equivalencia_estavel(self):
        escada = []
        for n in (16, 32, 64, 128):
            M = build_manifold(f"cycle({n})")
            escada.append((M, assemble_operator(M)))
        for alpha in (0.3, 0.5, 0.8):
            for p in (1.5, 2.0, 3.0):
                with self.subTest(alpha=alpha, p=p):
                    cs = []
                    for M, op in escada:
                        rel = equivalence_report(op, M, alpha, p, trials=10, seed=5)
                        C = rel.extras["C"]
                        self.assertTrue(all((1 - 1e-12) / C <= r["ratio"] <= C * (1 + 1e-12) for r in rel.per_trial))
                        cs.append(C)
                    self.assertLess(max(cs) / min(cs), 10)

    def test_imersao_constante(self):
        rel = embedding_report(OP2, P2, 1.0, 2.0, np.inf, trials=0, seed=0, campos=[[1.0, 1.0], [0.0, 0.0]])
        self.assertEqual(len(rel.per_trial), 1)
        self.assertAlmostEqual(rel.max_ratio, 1 / np.sqrt(2), places=13)
        self.assertAlmostEqual(rel.extras["max_ratio_sobolev"], 1 / np.sqrt(2), places=13)

    def test_imersao_hipotese_violada(self):
        rel = embedding_report(OP16, C16, 0.1, 2.0, np.inf, trials=3, seed=0)
        self.assertIn(HIPOTESE_VIOLADA, rel.flags)
        rel = embedding_report(OP16, C16, 1.0, 2.0, 4.0, trials=3, seed=0)
        self.assertNotIn(HIPOTESE_VIOLADA, rel.flags)

    def test_imersao_escada(self):
        razoes = []
        for n in (32, 64):
            M = build_manifold(f"cycle({n})")
            razoes.append(embedding_report(assemble_operator(M), M, 1.0, 2.0, 4.0, trials=20, seed=1).max_ratio)
        self.assertLess(max(razoes) / min(razoes), 4)

    def test_log_zero(self):
        rel = log_embedding_report(OP16, C16, 1.0, 2.0, trials=0, seed=0, campos=[np.zeros(16)])
        self.assertEqual(rel.max_ratio, 0.0)
        self.assertIn("total-measure-dependent", rel.flags)

    def test_log_escalas(self):
        rel = log_embedding_report(OP16, C16, 1.0, 2.0, trials=2, seed=0, flavor="BMO_L")
        self.assertEqual(len(rel.per_trial), 8)
        t0 = [r for r in rel.per_trial if r["trial"] == 0]
        self.assertAlmostEqual(t0[1]["bmo"], 10 * t0[0]["bmo"], delta=1e-12 * t0[1]["bmo"])

    def test_sabor_invalido(self):
        with self.assertRaises(ParametroInvalido):
            log_embedding_report(OP16, C16, 1.0, 2.0, trials=1, seed=0, flavor="H1")
