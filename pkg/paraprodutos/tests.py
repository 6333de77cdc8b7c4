import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose
from scipy import integrate

from core.campos import norma_lp
from core.excecoes import ParametroInvalido
from espectral.services.calculo import fractional_power
from espectral.services.campos_aleatorios import campo_ensaio, campo_medio_zero
from espectral.services.montagem import assemble_operator
from geometria.services.construcao import build_manifold
from paraprodutos.familia import SymbolFamily, calderon_constant, symbol_eval
from paraprodutos.quadratura import TQuadrature
from paraprodutos.services.decomposicao import product_decomposition
from paraprodutos.services.leibniz import leibniz_report, paraproduct_bound_report
from paraprodutos.services.paraprodutos import (
    derived_paraproduct, normalizacao_k, paraproduct, reconstrucao, three_scale_split,
)

FAM = SymbolFamily(5)
QUAD = TQuadrature(1e-6, 1e6, 400)
C16 = build_manifold("cycle(16)")
OP16 = assemble_operator(C16)


def par_medio_zero(i, seed=21):
    f = campo_medio_zero(OP16, campo_ensaio(OP16, C16.distance, seed, 2 * i))
    g = campo_medio_zero(OP16, campo_ensaio(OP16, C16.distance, seed, 2 * i + 1))
    return f, g


class FamiliaTests(SimpleTestCase):
    def test_psi(self):
        fam = SymbolFamily(2)
        self.assertAlmostEqual(float(fam.psi(1.0)), np.exp(-1) * (1 - np.exp(-1)), places=15)
        self.assertAlmostEqual(float(fam.psi(1.0)), 0.232544, places=6)
        self.assertEqual(float(fam.psi(0.0)), 0.0)
        self.assertLess(abs(float(fam.phi(800.0))), 1e-300)

    def test_phi_na_origem(self):
        for N in (2, 3, 5):
            fam = SymbolFamily(N)
            self.assertAlmostEqual(float(fam.phi(0.0)), -1.0 / fam.c_hat, places=13)
        self.assertAlmostEqual(float(SymbolFamily(2).phi(0.0)), -0.75, places=14)

    def test_derivada_de_phi(self):
        h = 1e-6
        for x in (0.05, 0.3, 1.0, 2.5, 7.0, 15.0):
            dif = (FAM.phi(x + h) - FAM.phi(x - h)) / (2 * h)
            self.assertAlmostEqual(float(dif), float(FAM.psi(x) / x), delta=1e-7 * (1 + abs(float(dif))))

    def test_zeta(self):
        for x in (0.2, 1.0, 4.0):
            q, _ = integrate.quad(lambda u: float(FAM.psi(u * x)) / u, 1, np.inf, epsrel=1e-12)
            self.assertAlmostEqual(float(FAM.zeta(x)), q, delta=1e-10)
        self.assertEqual(float(FAM.zeta(0.0)), 0.0)

    def test_derivados(self):
        x = np.array([0.0, 0.5, 3.0])
        assert_allclose(symbol_eval(FAM, "phi_tilde", x, 0.25), x ** 0.25 * FAM.phi(x))
        self.assertEqual(float(symbol_eval(FAM, "psi_tilde", 0.0, 0.25)), 0.0)
        with self.assertRaises(ParametroInvalido):
            symbol_eval(FAM, "psi_tilde", x, 5.0)
        with self.assertRaises(ParametroInvalido):
            symbol_eval(FAM, "psi", -1.0)


class CalderonTests(SimpleTestCase):
    def test_exemplos(self):
        k2 = calderon_constant(2)
        self.assertAlmostEqual(k2.c_hat, 4 / 3, places=14)
        self.assertAlmostEqual(k2.c, 2.0, places=14)
        self.assertAlmostEqual(1 / calderon_constant(4).c_hat, 5.625, places=13)

    def test_quadratura_confere(self):
        for N in (2, 3, 5):
            k = calderon_constant(N)
            self.assertLessEqual(k.residuo_c_hat, 1e-8)
            self.assertLessEqual(k.residuo_c, 1e-8)

    def test_n_invalido(self):
        with self.assertRaises(ParametroInvalido):
            calderon_constant(1)
        with self.assertRaises(ParametroInvalido):
            SymbolFamily(2.5)


class QuadraturaTests(SimpleTestCase):
    def test_pesos(self):
        q = TQuadrature(1e-3, 1e2, 50)
        self.assertAlmostEqual(q.weights.sum(), np.log(1e5), places=12)
        self.assertTrue(np.all(np.diff(q.nodes) > 0))
        self.assertAlmostEqual(q.integrar(np.ones_like), np.log(1e5), places=12)

    def test_reconstrucao_por_autovalor(self):
        alvo = 1.0 / FAM.c_hat
        for lam in (0.1, 1.0, 4.0, 10.0):
            valor = QUAD.integrar(lambda t: FAM.psi(t * lam))
            self.assertAlmostEqual(valor, alvo, delta=1e-8)

    def test_reconstrucao_ciclo32(self):
        M = build_manifold("cycle(32)")
        op = assemble_operator(M)
        f = campo_medio_zero(op, np.random.default_rng(8).standard_normal(32))
        erros = []
        for nos in (100, 200, 400):
            g = reconstrucao(op, FAM, TQuadrature(1e-6, 1e6, nos), f)
            erros.append(norma_lp(g - f, op.measure, 2) / norma_lp(f, op.measure, 2))
        self.assertLessEqual(erros[-1], 1e-6)
        self.assertLessEqual(erros[1], 2 * erros[0] + 1e-13)
        self.assertLessEqual(erros[2], 2 * erros[1] + 1e-13)


class ParaprodutoTests(SimpleTestCase):
    def test_g_zero(self):
        f = np.random.default_rng(0).standard_normal(16)
        for sabor in ("hh", "lh", "hl"):
            assert_allclose(paraproduct(OP16, FAM, QUAD, f, np.zeros(16), sabor).valores, 0.0, atol=0)

    def test_constante_morre(self):
        g = np.random.default_rng(1).standard_normal(16)
        assert_allclose(paraproduct(OP16, FAM, QUAD, np.full(16, 2.0), g, "lh").valores, 0.0, atol=1e-11)
        assert_allclose(OP16.aplicar_valores(FAM.psi(0.7 * OP16.eigenvalues), np.ones(16)), 0.0, atol=1e-12)

    def test_path2_hh_zero(self):
        M = build_manifold("path(2)")
        op = assemble_operator(M)
        v = np.array([1.0, -1.0])
        assert_allclose(paraproduct(op, SymbolFamily(3), QUAD, v, v, "hh").valores, 0.0, atol=1e-12)

    def test_simetrias(self):
        f, g = par_medio_zero(0)
        np.testing.assert_array_equal(paraproduct(OP16, FAM, QUAD, f, g, "hh").valores,
                                      paraproduct(OP16, FAM, QUAD, g, f, "hh").valores)
        np.testing.assert_array_equal(paraproduct(OP16, FAM, QUAD, f, g, "hl").valores,
                                      paraproduct(OP16, FAM, QUAD, g, f, "lh").valores)

    @settings(max_examples=10, deadline=None)
    @given(st.floats(-3, 3), st.floats(-3, 3), st.sampled_from(["hh", "lh", "hl"]))
    def test_bilinearidade(self, a, b, sabor):
        f1, g = par_medio_zero(1)
        f2, _ = par_medio_zero(2)
        esq = paraproduct(OP16, FAM, QUAD, a * f1 + b * f2, g, sabor).valores
        dir_ = (a * paraproduct(OP16, FAM, QUAD, f1, g, sabor).valores
                + b * paraproduct(OP16, FAM, QUAD, f2, g, sabor).valores)
        assert_allclose(esq, dir_, atol=1e-10 * (1 + abs(a) + abs(b)))

    def test_aviso_de_truncamento(self):
        res = paraproduct(OP16, FAM, TQuadrature(1e-1, 1e1, 40), np.ones(16), np.ones(16))
        self.assertTrue(res.avisos)
        self.assertFalse(paraproduct(OP16, FAM, QUAD, np.ones(16), np.ones(16)).avisos)

    def test_simbolo_derivado(self):
        f, g = par_medio_zero(3)
        g = g + 0.4
        for beta in (0.1, 0.25, 0.5):
            direto = fractional_power(OP16, beta, paraproduct(OP16, FAM, QUAD, f, g, "lh").valores)
            assert_allclose(derived_paraproduct(OP16, FAM, QUAD, f, g, beta).valores, direto, rtol=1e-10, atol=1e-10)

    def test_tres_escalas(self):
        f = np.random.default_rng(4).standard_normal(16)
        baixo, meio, alto = three_scale_split(OP16, FAM, f, 0.01, 50.0)
        assert_allclose(baixo + meio + alto, OP16.remover_nucleo(f) / FAM.c_hat, atol=1e-11)


class DecomposicaoTests(SimpleTestCase):
    def test_k_oraculo(self):
        K, K_cont = normalizacao_k(FAM, QUAD)
        self.assertAlmostEqual(K / K_cont, 1.0, delta=1e-8)

    def test_zeros(self):
        dec = product_decomposition(OP16, FAM, QUAD, np.zeros(16), np.zeros(16))
        for v in (dec.pi_hh, dec.pi_lh, dec.pi_hl, dec.residual):
            assert_allclose(v, 0.0, atol=0)
        self.assertEqual(dec.residuo_relativo, 0.0)

    def test_f_constante(self):
        g = np.random.default_rng(5).standard_normal(16)
        self.assertLess(product_decomposition(OP16, FAM, QUAD, np.ones(16), g).residuo_relativo, 1e-6)

    def test_residuo_pares_medio_zero(self):
        for i in range(20):
            f, g = par_medio_zero(i)
            self.assertLessEqual(product_decomposition(OP16, FAM, QUAD, f, g).residuo_relativo, 1e-4)

    def test_refinamento(self):
        f, g = par_medio_zero(7)
        r = [product_decomposition(OP16, FAM, TQuadrature(1e-6, 1e6, k), f, g).residuo_relativo
             for k in (100, 200, 400)]
        self.assertLessEqual(r[2], 2 * r[1] + 1e-12)
        self.assertLessEqual(r[1], 2 * r[0] + 1e-12)


class LeibnizTests(SimpleTestCase):
    def test_holder_exigido(self):
        with self.assertRaises(ParametroInvalido):
            leibniz_report(OP16, C16, FAM, QUAD, 0.5, 2, 2, 2, np.inf, 2, trials=1, seed=0)

    def test_alpha_zero_holder(self):
        rel = leibniz_report(OP16, C16, FAM, QUAD, 0.0, 2, 2, np.inf, np.inf, 2, trials=8, seed=2)
        self.assertLessEqual(rel.max_ratio, 1 + 1e-12)
        self.assertLessEqual(rel.extras["max_holder_ratio"], 1 + 1e-12)

    def test_alpha_meio(self):
        rel = leibniz_report(OP16, C16, FAM, QUAD, 0.5, 2, 2, np.inf, np.inf, 2, trials=4, seed=3,
                             pares=[(np.arange(16.0), np.ones(16))])
        self.assertEqual(rel.aggregates["count"], 5)
        self.assertTrue(np.isfinite(rel.max_ratio))
        self.assertEqual(sum(rel.extras["dominant_counts"].values()), 5)

    def test_alpha_meio_estavel_na_escada(self):
        ks = []
        for n in (16, 32, 64, 128):
            M = build_manifold(f"cycle({n})")
            op = assemble_operator(M)
            rel = leibniz_report(op, M, FAM, QUAD, 0.5, 2, 2, np.inf, np.inf, 2, trials=10, seed=11)
            self.assertEqual(rel.aggregates["count"], 10)
            ks.append(rel.max_ratio)
            holder = leibniz_report(op, M, FAM, QUAD, 0.0, 2, 2, np.inf, np.inf, 2, trials=5, seed=11)
            self.assertLessEqual(holder.max_ratio, 1 + 1e-12)
        self.assertGreater(min(ks), 0)
        self.assertLess(max(ks) / min(ks), 10)

    def test_alpha_um_rota_gradiente(self):
        rel = leibniz_report(OP16, C16, FAM, QUAD, 1.0, 2, 2, np.inf, np.inf, 2, trials=5, seed=4)
        self.assertTrue(rel.extras["product_rule_ok"])
        self.assertTrue(all(t["riesz_ratio_f"] > 0 for t in rel.per_trial))

    def test_limitacao_paraproduto(self):
        rel = paraproduct_bound_report(OP16, C16, FAM, QUAD, 0.25, 2, 2, np.inf, trials=5, seed=6)
        self.assertEqual(rel.aggregates["count"], 5)
        self.assertTrue(np.isfinite(rel.max_ratio))
