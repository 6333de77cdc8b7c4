import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from numpy.testing import assert_allclose
from scipy import special

from core.campos import norma_lp
from core.excecoes import ParametroInvalido
from core.nao_linearidades import REGISTRO
from core.relatorios import HIPOTESE_VIOLADA
from espectral.services.calculo import fractional_power
from espectral.services.campos_aleatorios import campo_ensaio
from espectral.services.montagem import assemble_operator
from funcionais.requisicao import SFuncRequest
from funcionais.services.caracterizacao import characterization_report, nonlinearity_report
from funcionais.services.strichartz import littlewood_paley_functional, strichartz_functional
from funcionais.services.verificacoes import (
    lipschitz_domination_check, pointwise_subadditivity_check, rho_monotonicity_check, sum_subadditivity_check,
)
from geometria.services.construcao import build_manifold
from paraprodutos.quadratura import TQuadrature

P2 = build_manifold("path(2)")
OP2 = assemble_operator(P2)
C32 = build_manifold("cycle(32)")
OP32 = assemble_operator(C32)
T8 = build_manifold("torus_grid(8,8)")
OPT8 = assemble_operator(T8)
REQ = SFuncRequest(0.5, 1.0)

campos32 = arrays(np.float64, 32, elements=st.floats(-5, 5))


def ensaio(op, M, seed, i):
    return campo_ensaio(op, M.distance, seed, i)


class RequisicaoTests(SimpleTestCase):
    def test_validacao(self):
        for alpha, rho in ((0.0, 1.0), (1.0, 1.0), (0.5, 0.9)):
            with self.assertRaises(ParametroInvalido):
                SFuncRequest(alpha, rho)
        self.assertEqual(SFuncRequest.padrao(local=True), SFuncRequest(0.5, 1.0, True))


class StrichartzTests(SimpleTestCase):
    def test_constante(self):
        assert_allclose(strichartz_functional(C32, np.full(32, 3.0), REQ), 0.0, atol=0)

    def test_path2_exemplo(self):
        s = strichartz_functional(P2, [1.0, 0.0], REQ)
        assert_allclose(s, [0.5, 0.5], rtol=1e-15)

    def test_path2_local_nulo(self):
        assert_allclose(strichartz_functional(P2, [1.0, 0.0], SFuncRequest(0.5, 1.0, local=True)), 0.0, atol=0)

    def test_local_menor(self):
        f = ensaio(OPT8, T8, 3, 0)
        for rho in (1.0, 1.5):
            s = strichartz_functional(T8, f, SFuncRequest(0.4, rho))
            s_loc = strichartz_functional(T8, f, SFuncRequest(0.4, rho, local=True))
            self.assertTrue(np.all(s_loc <= s + 1e-14))

    def test_quebras_extras_nao_mudam(self):
        rng = np.random.default_rng(11)
        f = ensaio(OP32, C32, 1, 0)
        extras = rng.uniform(0, 2 * C32.diameter, 40)
        for req in (REQ, SFuncRequest(0.3, 2.0, local=True)):
            base = strichartz_functional(C32, f, req)
            assert_allclose(strichartz_functional(C32, f, req, extra_breakpoints=extras), base, atol=1e-12)

    @settings(max_examples=25, deadline=None)
    @given(campos32, st.floats(-4, 4))
    def test_homogeneidade(self, f, c):
        assert_allclose(strichartz_functional(C32, c * f, REQ), abs(c) * strichartz_functional(C32, f, REQ),
                        rtol=1e-12, atol=1e-12)

    def test_medida_propria(self):
        M = build_manifold("cycle(12)", measure="degree")
        self.assertTrue(np.allclose(M.measure, 2.0))
        f = ensaio(assemble_operator(M), M, 0, 0)
        # μ constante se cancela nas médias
        assert_allclose(strichartz_functional(M, f, REQ), strichartz_functional(M, f, REQ, medida=np.ones(12)),
                        rtol=1e-13)


class LittlewoodPaleyTests(SimpleTestCase):
    def test_identidade_l2(self):
        quad = TQuadrature(1e-6, 1e6, 400)
        for alpha in (0.3, 0.5, 0.8):
            beta = alpha / OP32.m
            f = ensaio(OP32, C32, 5, 1)
            g = littlewood_paley_functional(OP32, quad, f, alpha)
            alvo = special.gamma(2 - 2 * beta) * 2.0 ** (2 * beta - 2) * norma_lp(fractional_power(OP32, beta, f), OP32.measure, 2) ** 2
            self.assertAlmostEqual(norma_lp(g, OP32.measure, 2) ** 2 / alvo, 1.0, delta=1e-8)

    def test_constante(self):
        g = littlewood_paley_functional(OP32, TQuadrature.padrao(), np.ones(32), 0.5)
        assert_allclose(g, 0.0, atol=1e-12)


class VerificacoesTests(SimpleTestCase):
    def test_monotonia_rho(self):
        f = ensaio(OPT8, T8, 7, 0)
        igual = rho_monotonicity_check(T8, f, 0.5, 1.3, 1.3)
        self.assertTrue(igual.ok)
        self.assertEqual(igual.violacao_max, 0.0)
        for r1, r2 in ((1.0, 1.5), (1.0, 2.0)):
            self.assertTrue(rho_monotonicity_check(T8, f, 0.5, r1, r2).ok)
        with self.assertRaises(ParametroInvalido):
            rho_monotonicity_check(T8, f, 0.5, 2.0, 1.0)

    def test_subaditividade_produto(self):
        for M, op in ((C32, OP32), (T8, OPT8)):
            for i in range(5):
                f, g = ensaio(op, M, 13, 2 * i), ensaio(op, M, 13, 2 * i + 1)
                self.assertTrue(pointwise_subadditivity_check(M, f, g, 0.5).ok)
                self.assertTrue(pointwise_subadditivity_check(M, f, f, 0.5, rho=1.5).ok)
                self.assertTrue(pointwise_subadditivity_check(M, f, np.ones(M.vertex_count), 0.5).ok)

    def test_subaditividade_soma(self):
        for M, op in ((C32, OP32), (T8, OPT8)):
            for i in range(5):
                f, g = ensaio(op, M, 17, 2 * i), ensaio(op, M, 17, 2 * i + 1)
                self.assertTrue(sum_subadditivity_check(M, f, g, 0.5, rho=1.0).ok)
                self.assertTrue(sum_subadditivity_check(M, f, g, 0.3, rho=2.0, local=True).ok)

    def test_dominacao_lipschitz(self):
        f = 1.7 * ensaio(OP32, C32, 19, 0)
        for nome in REGISTRO:
            self.assertTrue(lipschitz_domination_check(C32, f, nome, 0.5).ok, nome)
            self.assertTrue(lipschitz_domination_check(T8, ensaio(OPT8, T8, 19, 1), nome, 0.5).ok, nome)

    def test_sem_certificado(self):
        with self.assertRaises(ParametroInvalido):
            lipschitz_domination_check(C32, np.zeros(32), "exp", 0.5)


class CaracterizacaoTests(SimpleTestCase):
    def test_path2_manual(self):
        rel = characterization_report(OP2, P2, 0.5, 2, 1.0, trials=0, seed=0, campos=[[1.0, 0.0]])
        self.assertEqual(rel.aggregates["count"], 1)
        self.assertAlmostEqual(rel.max_ratio, 2 ** -0.25, places=13)

    def test_constante_excluida(self):
        rel = characterization_report(OP2, P2, 0.5, 3, trials=0, seed=0, campos=[[2.0, 2.0]])
        self.assertEqual(rel.aggregates["count"], 0)

    def test_hipotese(self):
        self.assertFalse(characterization_report(OP32, C32, 0.5, 2, trials=2, seed=1).hypothesis_violated)
        rel = characterization_report(OP32, C32, 0.5, 1.5, rho=1.5, trials=2, seed=1)
        self.assertIn(HIPOTESE_VIOLADA, rel.flags)
        self.assertIsNotNone(rel.max_ratio)

    def test_escada_estavel(self):
        c1, c2 = [], []
        for n in (16, 32, 64, 128):
            M = build_manifold(f"cycle({n})")
            rel = characterization_report(assemble_operator(M), M, 0.5, 2, 1.0, trials=50, seed=7)
            c1.append(rel.extras["c1"])
            c2.append(rel.extras["c2"])
            self.assertGreater(rel.extras["max_lp_over_s"], 0)
        self.assertLess(max(c2) / min(c2), 10)
        self.assertLess(max(c1) / min(c1), 10)

    def test_deterministico(self):
        a = characterization_report(OP32, C32, 0.5, 2, trials=3, seed=9)
        b = characterization_report(OP32, C32, 0.5, 2, trials=3, seed=9)
        self.assertEqual(a.hash_payload(), b.hash_payload())


class NaoLinearidadeTests(SimpleTestCase):
    def test_identidade(self):
        rel = nonlinearity_report(OP32, C32, "identity", 0.5, 2, trials=5, seed=2)
        assert_allclose([t["ratio"] for t in rel.per_trial], 1.0, rtol=1e-14)
        self.assertTrue(rel.extras["s_domination_ok"])

    def test_zero(self):
        rel = nonlinearity_report(OP32, C32, "zero", 0.5, 2, trials=5, seed=2)
        self.assertEqual(rel.max_ratio, 0.0)

    def test_tanh(self):
        rel = nonlinearity_report(OP32, C32, "tanh", 0.5, 2, trials=10, seed=3)
        self.assertTrue(rel.extras["s_domination_ok"])
        self.assertEqual(rel.extras["lipschitz_max"], 1.0)
        self.assertLessEqual(rel.max_ratio, rel.extras["K"])

    def test_local_lipschitz(self):
        rel = nonlinearity_report(OP32, C32, "u3", 0.5, 2, trials=5, seed=4, campos=[2.0 * np.ones(32) - np.arange(32) / 16])
        self.assertTrue(rel.extras["s_domination_ok"])
        self.assertFalse(rel.extras["lipschitz_global"])
        self.assertAlmostEqual(rel.per_trial[0]["lipschitz"], 12.0, places=12)

    def test_sem_certificado(self):
        with self.assertRaises(ParametroInvalido):
            nonlinearity_report(OP32, C32, "exp", 0.5, 2, trials=1, seed=0)


class MedidaDoOperadorTests(SimpleTestCase):
    def test_verificacoes_com_medida(self):
        M = build_manifold("path(5)")
        G = build_manifold("path(5); measure=degree")
        mu = assemble_operator(M, form="normalized").measure
        f, g = np.array([1.0, 0.0, -0.5, 0.25, 2.0]), np.array([0.3, -1.0, 1.0, 0.0, 0.5])
        pares = (
            (sum_subadditivity_check(M, f, g, 0.5, medida=mu), sum_subadditivity_check(G, f, g, 0.5)),
            (pointwise_subadditivity_check(M, f, g, 0.5, medida=mu), pointwise_subadditivity_check(G, f, g, 0.5)),
            (lipschitz_domination_check(M, f, "tanh", 0.5, medida=mu), lipschitz_domination_check(G, f, "tanh", 0.5)),
            (rho_monotonicity_check(M, f, 0.5, 1.0, 2.0, medida=mu), rho_monotonicity_check(G, f, 0.5, 1.0, 2.0)),
        )
        for com_medida, grau in pares:
            self.assertTrue(com_medida.ok)
            self.assertAlmostEqual(com_medida.violacao_max, grau.violacao_max, places=13)
