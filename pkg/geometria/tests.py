from pathlib import Path
import tempfile

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from numpy.testing import assert_allclose

from core.excecoes import GeometriaInvalida
from geometria.services.bolas import ball, grade_raios, volumes
from geometria.services.construcao import build_manifold, load_manifold, montar_variedade, save_manifold
from geometria.services.gradiente import gradient, vizinho_max
from geometria.services.relatorio import doubling_constant, geometry_report, poincare_constant
from geometria.variedade import Aresta

CICLO8 = build_manifold("cycle(8)")
TORO8 = build_manifold("torus_grid(8,8)")


class ConstrucaoTests(SimpleTestCase):
    def test_path2(self):
        M = build_manifold("path(2)")
        self.assertEqual(M.vertex_count, 2)
        self.assertEqual(len(M.edges), 1)
        self.assertEqual((M.edges[0].w, M.edges[0].len), (1.0, 1.0))
        self.assertEqual(M.distance[0, 1], 1.0)
        assert_allclose(M.measure, [1.0, 1.0])

    def test_cycle8_distancias(self):
        self.assertEqual(CICLO8.distance[0, 4], 4.0)
        self.assertEqual(CICLO8.distance[0, 5], 3.0)

    def test_torus_regular(self):
        M = build_manifold("torus_grid(4,4)")
        self.assertEqual(M.vertex_count, 16)
        self.assertTrue(np.all(M.combinatorial_degree == 4))

    def test_medida_degree(self):
        M = build_manifold("path(3); measure=degree")
        assert_allclose(M.measure, [1.0, 2.0, 1.0])

    def test_desconexo_rejeitado(self):
        with self.assertRaises(GeometriaInvalida):
            build_manifold("random_geometric(40, 0.01)", seed=3)

    def test_peso_nao_positivo_rejeitado(self):
        with self.assertRaises(GeometriaInvalida):
            montar_variedade(2, [Aresta(0, 1, 0.0, 1.0)])
        with self.assertRaises(GeometriaInvalida):
            montar_variedade(2, [Aresta(0, 1, 1.0, -2.0)])

    def test_descritor_invalido(self):
        with self.assertRaises(GeometriaInvalida):
            build_manifold("esfera(3)")

    def test_random_geometric_deterministico(self):
        a = build_manifold("random_geometric(30, 0.45)", seed=11)
        b = build_manifold("random_geometric(30, 0.45)", seed=11)
        assert_allclose(a.coords, b.coords)
        np.testing.assert_array_equal(a.distance, b.distance)

    def test_metrica(self):
        M = build_manifold("random_geometric(25, 0.5)", seed=5)
        d = M.distance
        assert_allclose(d, d.T)
        self.assertTrue(np.all(d[~np.eye(25, dtype=bool)] > 0))
        # desigualdade triangular em todas as triplas
        self.assertTrue(np.all(d[:, None, :] <= d[:, :, None] + d[None, :, :] + 1e-12))

    def test_divergence_grid(self):
        M = build_manifold("divergence_grid(3,4,checker:1:4)")
        self.assertEqual(M.vertex_count, 12)
        self.assertTrue(np.all(M.edge_coef == 2.5))
        self.assertEqual((M.generator["lambda"], M.generator["Lambda"]), (1.0, 4.0))
        with self.assertRaises(GeometriaInvalida):
            build_manifold("divergence_grid(3,3,random:0:2)")

    def test_arquivo_variedade(self):
        M = build_manifold("random_geometric(20, 0.6)", seed=2)
        with tempfile.TemporaryDirectory() as tmp:
            caminho = save_manifold(Path(tmp) / "m.json", M)
            N = load_manifold(caminho)
        np.testing.assert_array_equal(N.distance, M.distance)
        assert_allclose(N.coords, M.coords)
        self.assertEqual(N.generator["spec"], M.generator["spec"])


class BolaTests(SimpleTestCase):
    def test_path2(self):
        M = build_manifold("path(2)")
        b = ball(M, 0, 0.5)
        self.assertEqual((b.members, b.volume), ((0,), 1.0))
        b = ball(M, 0, 1.5)
        self.assertEqual((b.members, b.volume), ((0, 1), 2.0))

    def test_cycle8(self):
        b = ball(CICLO8, 0, 1.5)
        self.assertEqual(set(b.members), {7, 0, 1})
        self.assertEqual(b.volume, 3.0)

    def test_bola_aberta(self):
        # raio exatamente igual à distância não inclui o vizinho
        self.assertEqual(ball(CICLO8, 0, 1.0).members, (0,))

    def test_monotonia(self):
        raios = grade_raios(TORO8)
        for x in range(0, 64, 7):
            anterior = set()
            for r in raios:
                atual = set(ball(TORO8, x, r).members)
                self.assertTrue(anterior <= atual)
                self.assertIn(x, atual)
                anterior = atual
            self.assertEqual(len(anterior), 64)


class RelatorioGeometriaTests(SimpleTestCase):
    def test_dobramento_ciclo64(self):
        self.assertEqual(doubling_constant(build_manifold("cycle(64)")), 3.0)

    def test_lema_d_com_constante_reportada(self):
        c0 = doubling_constant(TORO8)
        dim = np.log2(c0)
        raios = grade_raios(TORO8)
        for x in range(64):
            base = volumes(TORO8, x, raios)
            for theta in (1.0, 1.5, 2.0, 3.0, 4.0, 7.5):
                self.assertTrue(np.all(volumes(TORO8, x, theta * raios) <= c0 * theta ** dim * base * (1 + 1e-12)))

    def test_mv_toro(self):
        rel = geometry_report(TORO8, 2.0)
        self.assertGreaterEqual(rel.extras["mv_constant"], 1.0)
        self.assertEqual(rel.extras["poincare_label"], "empirical lower bound")

    def test_poincare_constante(self):
        M = build_manifold("path(2)")
        c, lhs = poincare_constant(M, [np.full(2, 3.0)])
        self.assertEqual(lhs, 0.0)
        self.assertEqual(c, 0.0)

    def test_poincare_local_nao_maior(self):
        M = build_manifold("cycle(12)")
        rel = geometry_report(M, 1.0)
        rel_loc = geometry_report(M, 1.0, local=True)
        self.assertLessEqual(rel_loc.extras["poincare_constant"], rel.extras["poincare_constant"])

    def test_deterministico(self):
        a = geometry_report(CICLO8, 1.0, seed=4)
        b = geometry_report(CICLO8, 1.0, seed=4)
        self.assertEqual(a.hash_payload(), b.hash_payload())


class GradienteTests(SimpleTestCase):
    def test_constantes(self):
        assert_allclose(gradient(TORO8, np.ones(64)), 0.0)

    def test_path2(self):
        assert_allclose(gradient(build_manifold("path(2)"), [1.0, 0.0]), [1.0, 1.0])

    def test_cycle4_indicadora(self):
        g = gradient(build_manifold("cycle(4)"), [1.0, 0.0, 0.0, 0.0])
        self.assertAlmostEqual(g[0], np.sqrt(2.0), places=14)
        self.assertAlmostEqual(g[1], 1.0, places=14)

    def test_comprimento_normaliza(self):
        M = montar_variedade(2, [Aresta(0, 1, 1.0, 2.0)])
        assert_allclose(gradient(M, [1.0, 0.0]), [0.5, 0.5])

    def test_vizinho_max(self):
        assert_allclose(vizinho_max(CICLO8, np.arange(8.0)), [7, 2, 3, 4, 5, 6, 7, 6])

    @settings(max_examples=40, deadline=None)
    @given(
        arrays(np.float64, 64, elements=st.floats(-100, 100)),
        arrays(np.float64, 64, elements=st.floats(-100, 100)),
    )
    def test_subaditividade(self, f, g):
        self.assertTrue(np.all(gradient(TORO8, f + g) <= gradient(TORO8, f) + gradient(TORO8, g) + 1e-9))
