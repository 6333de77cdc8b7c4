from pathlib import Path
import tempfile

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose
from scipy.linalg import expm

from core.campos import norma_lp
from core.excecoes import NucleoNaoOrtogonal, ParametroInvalido, SimboloIndefinido
from espectral.services.cache import load_or_assemble
from espectral.services.calculo import apply_symbol, fractional_power, heat, parse_symbol, schrodinger
from espectral.services.campos_aleatorios import campo_medio_zero, conjunto
from espectral.services.montagem import assemble_operator, heat_oracle
from espectral.services.offdiag import offdiag_probe
from espectral.services.riesz import reverse_riesz_ratio, riesz_transform
from geometria.services.construcao import build_manifold, save_manifold
from geometria.services.gradiente import gradient

P2 = build_manifold("path(2)")
OP2 = assemble_operator(P2)
C8 = build_manifold("cycle(8)")
OP8 = assemble_operator(C8)


class MontagemTests(SimpleTestCase):
    def test_path2(self):
        assert_allclose(OP2.eigenvalues, [0.0, 2.0], atol=1e-14)
        e = OP2.eigenvectors
        assert_allclose(np.abs(e[:, 0]), [1 / np.sqrt(2)] * 2, atol=1e-14)
        assert_allclose(np.abs(e[:, 1]), [1 / np.sqrt(2)] * 2, atol=1e-14)
        self.assertAlmostEqual(e[0, 1] * e[1, 1], -0.5, places=14)

    def test_nucleo_constante(self):
        for spec in ("cycle(9)", "torus_grid(4,5)", "random_geometric(30, 0.6)"):
            op = assemble_operator(build_manifold(spec, seed=1))
            self.assertEqual(op.eigenvalues[0], 0.0)
            self.assertEqual(op.kernel_dim, 1)
            assert_allclose(op.eigenvectors[:, 0], op.eigenvectors[0, 0])

    def test_ortonormal_mu(self):
        M = build_manifold("random_geometric(25, 0.6); measure=degree", seed=4)
        for form in ("combinatorial", "normalized"):
            op = assemble_operator(M, form)
            E = op.eigenvectors
            assert_allclose(E.T @ (E * op.measure[:, None]), np.eye(25), atol=1e-10)
            A = (op.matrix * op.measure[:, None])
            assert_allclose(A, A.T, atol=1e-12)

    def test_normalizada_usa_grau(self):
        M = build_manifold("path(3)")
        op = assemble_operator(M, "normalized")
        assert_allclose(op.measure, [1.0, 2.0, 1.0])

    def test_divergencia_coeficiente_unitario(self):
        M = build_manifold("divergence_grid(4,4,constant:1)")
        assert_allclose(assemble_operator(M, "divergence").eigenvalues,
                        assemble_operator(M, "combinatorial").eigenvalues, atol=1e-12)

    def test_divergencia_fora_dos_limites(self):
        M = build_manifold("divergence_grid(3,3,constant:1)")
        with self.assertRaises(ParametroInvalido):
            assemble_operator(M, "divergence", limites=(2.0, 3.0))

    def test_forma_desconhecida(self):
        with self.assertRaises(ParametroInvalido):
            assemble_operator(P2, "hermitiana")


class CalculoTests(SimpleTestCase):
    def test_identidade(self):
        f = np.array([0.3, -2.0])
        assert_allclose(apply_symbol(OP2, lambda lam: np.ones_like(lam), f), f, atol=1e-15)

    def test_calor_path2(self):
        assert_allclose(apply_symbol(OP2, lambda lam: np.exp(-np.log(2) / 2 * lam), [1.0, 0.0]),
                        [0.75, 0.25], atol=1e-10)

    def test_lambda_mata_constantes(self):
        assert_allclose(apply_symbol(OP8, lambda lam: lam, np.full(8, 3.0)), 0.0, atol=1e-13)

    def test_simbolo_indefinido(self):
        with self.assertRaises(SimboloIndefinido) as ctx:
            apply_symbol(OP8, parse_symbol("resolvent:0"), np.ones(8))
        self.assertEqual(ctx.exception.autovalor, 0.0)

    def test_exatidao_contra_expm(self):
        for n in (8, 32, 64):
            op = assemble_operator(build_manifold(f"cycle({n})"))
            f = np.random.default_rng(n).standard_normal(n)
            for t in (0.01, 0.1, 1.0, 10.0):
                oraculo = expm(-t * op.matrix) @ f
                erro = norma_lp(heat(op, t, f) - oraculo, op.measure, 2) / norma_lp(oraculo, op.measure, 2)
                self.assertLessEqual(erro, 1e-10)
                assert_allclose(heat_oracle(op, t, f), oraculo)

    def test_mapeamento_espectral(self):
        f = np.random.default_rng(1).standard_normal(8)
        b1, b2 = (lambda lam: np.cos(lam)), (lambda lam: 1.0 / (1.0 + lam))
        assert_allclose(apply_symbol(OP8, b1, apply_symbol(OP8, b2, f)),
                        apply_symbol(OP8, lambda lam: b1(lam) * b2(lam), f), atol=1e-12)

    def test_lei_de_semigrupo(self):
        f = np.random.default_rng(2).standard_normal(8)
        assert_allclose(heat(OP8, 0.3, heat(OP8, 0.9, f)), heat(OP8, 1.2, f), atol=1e-12)

    def test_contracao_do_calor(self):
        f = np.random.default_rng(3).standard_normal(8)
        normas = [norma_lp(heat(OP8, t, f), OP8.measure, 2) for t in (0.0, 0.1, 0.5, 1.0, 5.0)]
        self.assertTrue(all(a >= b - 1e-14 for a, b in zip(normas, normas[1:])))

    def test_schrodinger_unitario(self):
        f = np.random.default_rng(4).standard_normal(8)
        self.assertAlmostEqual(norma_lp(schrodinger(OP8, 3.3, f), OP8.measure, 2),
                               norma_lp(f, OP8.measure, 2), places=12)


class PotenciaTests(SimpleTestCase):
    def test_raiz_path2(self):
        g = fractional_power(OP2, 0.5, [1.0, 0.0])
        assert_allclose(g, [np.sqrt(2) / 2, -np.sqrt(2) / 2], atol=1e-12)
        self.assertAlmostEqual(norma_lp(g, OP2.measure, 2), 1.0, places=12)

    def test_beta_zero(self):
        f = np.array([1.0, 5.0, -2.0, 0.0, 1.0, 1.0, 3.0, 2.0])
        assert_allclose(fractional_power(OP8, 0.0, f), f)
        assert_allclose(fractional_power(OP8, 0.0, f, bessel=True), f)

    def test_bessel_constante(self):
        assert_allclose(fractional_power(OP8, -1.7, np.full(8, 2.5), bessel=True), 2.5, atol=1e-13)

    def test_negativa_com_nucleo(self):
        with self.assertRaises(NucleoNaoOrtogonal):
            fractional_power(OP8, -0.5, np.ones(8))

    @settings(max_examples=30, deadline=None)
    @given(st.floats(-1.5, 1.5), st.floats(-1.5, 1.5), st.integers(0, 2 ** 32))
    def test_aditividade(self, b1, b2, semente):
        f = campo_medio_zero(OP8, np.random.default_rng(semente).standard_normal(8))
        assert_allclose(fractional_power(OP8, b1, fractional_power(OP8, b2, f)),
                        fractional_power(OP8, b1 + b2, f), atol=1e-10 * (1 + np.abs(f).max()) * 20)


class RieszTests(SimpleTestCase):
    def test_composicao(self):
        g = campo_medio_zero(OP8, np.random.default_rng(5).standard_normal(8))
        f = fractional_power(OP8, 0.5, g)
        assert_allclose(riesz_transform(OP8, C8, f).valores, gradient(C8, g), atol=1e-12)

    def test_path2(self):
        res = riesz_transform(OP2, P2, [1.0, -1.0], p_grid=(2.0,))
        assert_allclose(res.valores, [np.sqrt(2), np.sqrt(2)], atol=1e-12)
        self.assertAlmostEqual(res.razoes[2.0], np.sqrt(2), places=12)

    def test_zero(self):
        assert_allclose(riesz_transform(OP8, C8, np.zeros(8)).valores, 0.0)

    def test_nucleo_rejeitado(self):
        with self.assertRaises(NucleoNaoOrtogonal):
            riesz_transform(OP8, C8, np.arange(8.0))

    def test_reverso(self):
        self.assertAlmostEqual(reverse_riesz_ratio(OP2, P2, [1.0, -1.0]), 1 / np.sqrt(2), places=12)


class OffDiagTests(SimpleTestCase):
    def test_conservacao(self):
        rel = offdiag_probe(OP8, C8, [0.1, 1.0], campos=[np.ones(8)], amostras=2)
        self.assertTrue(rel.extras["conservation_ok"])
        self.assertLessEqual(rel.extras["conservation_max_error"], 1e-10)

    def test_saturacao_t_grande(self):
        rel = offdiag_probe(OP8, C8, [1e4], amostras=3)
        self.assertTrue(rel.extras["saturated"])

    def test_oraculo_ciclo32(self):
        M = build_manifold("cycle(32)")
        op = assemble_operator(M)
        delta = np.zeros(32)
        delta[16] = 1.0
        rel = offdiag_probe(op, M, [1.0], campos=[delta], amostras=0, oraculo=True)
        self.assertLessEqual(rel.extras["oracle_max_error"], 1e-12)
        self.assertGreater(rel.per_trial[0]["C0"], 0.0)
        self.assertIsNotNone(rel.extras["delta_star"])

    def test_s_minus_invalido(self):
        with self.assertRaises(ParametroInvalido):
            offdiag_probe(OP8, C8, [1.0], s_minus=0.5)

    def test_aneis_com_medida_do_operador(self):
        M = build_manifold("path(5)")
        G = build_manifold("path(5); measure=degree")
        delta = np.array([1.0, 0.0, 0.0, 0.0, 0.0])
        a = offdiag_probe(assemble_operator(M, form="normalized"), M, [0.5, 2.0], campos=[delta], amostras=2)
        b = offdiag_probe(assemble_operator(G, form="normalized"), G, [0.5, 2.0], campos=[delta], amostras=2)
        assert_allclose([c["C"] for c in a.extras["C_of_delta"]], [c["C"] for c in b.extras["C_of_delta"]],
                        rtol=1e-12)
        self.assertEqual(a.extras["delta_star"], b.extras["delta_star"])


class ConjuntoCache(SimpleTestCase):
    def test_conjunto_estavel_por_prefixo(self):
        a = conjunto(OP8, C8.distance, 99, 4)
        b = conjunto(OP8, C8.distance, 99, 7)
        for u, v in zip(a, b):
            np.testing.assert_array_equal(u, v)
        self.assertTrue(all(abs(np.abs(u).max() - 1.0) < 1e-15 for u in b))

    def test_cache(self):
        with tempfile.TemporaryDirectory() as tmp:
            caminho = save_manifold(Path(tmp) / "c.json", C8)
            _, op1 = load_or_assemble(caminho, diretorio=Path(tmp))
            _, op2 = load_or_assemble(caminho, diretorio=Path(tmp))
            self.assertIn("cache", op2.info)
            assert_allclose(op1.eigenvalues, op2.eigenvalues)
            save_manifold(caminho, build_manifold("cycle(9)"))
            with self.assertLogs("espectral.services.cache", level="WARNING"):
                _, op3 = load_or_assemble(caminho, diretorio=Path(tmp))
            self.assertEqual(op3.n, 9)
