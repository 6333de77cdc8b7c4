import dataclasses

import numpy as np
from django.test import SimpleTestCase
from numpy.testing import assert_allclose
from scipy.integrate import solve_ivp

from core.campos import norma_lp
from core.excecoes import ParametroInvalido
from core.relatorios import HIPOTESE_VIOLADA
from edp.problema import EvolutionProblem
from edp.services.duhamel import SEM_CONTRACAO, duhamel_evolve, nos_chebyshev
from edp.services.estimativas import conservation_check, contraction_estimate
from espectral.services.calculo import heat
from espectral.services.campos_aleatorios import campo_ensaio
from espectral.services.montagem import assemble_operator
from geometria.services.construcao import build_manifold

C16 = build_manifold("cycle(16)")
OP16 = assemble_operator(C16)
P2 = build_manifold("path(2)")
OP2 = assemble_operator(P2)


def dado(R, i=0, seed=5):
    return R * campo_ensaio(OP16, C16.distance, seed, i)


class ProblemaTests(SimpleTestCase):
    def test_validacao(self):
        with self.assertRaises(ParametroInvalido):
            EvolutionProblem.padrao("wave", "u2", dado(0.1), 0.1)
        with self.assertRaises(ParametroInvalido):
            EvolutionProblem.padrao("heat", "u2", dado(0.1), 0.0)
        with self.assertRaises(ParametroInvalido):
            EvolutionProblem.padrao("heat", "u2", dado(0.1) * 1j, 0.1)
        with self.assertRaises(ParametroInvalido):
            EvolutionProblem.padrao("heat", "exp", dado(0.1), 0.1)
        with self.assertRaises(ParametroInvalido):
            EvolutionProblem.padrao("heat", "u2", dado(0.1), 0.1, time_nodes=8)

    def test_schrodinger_complexo(self):
        p = EvolutionProblem.padrao("schrodinger", "|u|^2u", dado(0.1), 0.1)
        self.assertTrue(np.iscomplexobj(p.u0))
        self.assertEqual(p.F.nome, "abs2u")

    def test_nos(self):
        t = nos_chebyshev(0.3, 9)
        self.assertEqual(t[0], 0.0)
        self.assertAlmostEqual(t[-1], 0.3, places=15)
        self.assertTrue(np.all(np.diff(t) > 0))


class DuhamelTests(SimpleTestCase):
    def test_fluxo_linear_calor(self):
        u0 = dado(1.0)
        res = duhamel_evolve(EvolutionProblem.padrao("heat", "zero", u0, 0.5), OP16)
        self.assertTrue(res.convergiu)
        self.assertEqual(res.iteracoes, 1)
        assert_allclose(res.final, heat(OP16, 0.5, u0), atol=1e-13)

    def test_fluxo_linear_schrodinger_unitario(self):
        u0 = dado(1.0, i=1)
        res = duhamel_evolve(EvolutionProblem.padrao("schrodinger", "zero", u0, 2.0), OP16)
        alvo = norma_lp(u0, OP16.measure, 2)
        for linha in res.valores:
            self.assertAlmostEqual(norma_lp(linha, OP16.measure, 2), alvo, delta=1e-12)

    def test_contracao_calor_u2(self):
        res = duhamel_evolve(EvolutionProblem.padrao("heat", "u2", dado(0.1), 0.1), OP16)
        self.assertTrue(res.convergiu)
        self.assertTrue(res.razoes)
        self.assertTrue(all(r < 0.5 for r in res.razoes))
        self.assertLess(res.residuo, 1e-8)

    def test_oraculo_edo(self):
        u0 = dado(0.1, i=2)
        res = duhamel_evolve(EvolutionProblem.padrao("heat", "u2", u0, 0.1), OP16)
        L = OP16.matrix
        sol = solve_ivp(lambda t, u: -L @ u - u * u, (0.0, 0.1), u0, method="DOP853", rtol=1e-12, atol=1e-15)
        assert_allclose(res.final, sol.y[:, -1], atol=1e-9)

    def test_fator_linear_em_I(self):
        base = EvolutionProblem.padrao("heat", "u2", dado(0.1), 0.1)
        f1 = duhamel_evolve(base, OP16).fator_contracao
        f2 = duhamel_evolve(dataclasses.replace(base, interval_length=0.05), OP16).fator_contracao
        self.assertGreater(f1 / f2, 2 / 1.5)
        self.assertLess(f1 / f2, 2 * 1.5)

    def test_refinamento_tau(self):
        base = EvolutionProblem.padrao("heat", "u2", dado(0.1, i=3), 0.1)
        a = duhamel_evolve(base, OP16).final
        b = duhamel_evolve(dataclasses.replace(base, time_nodes=2 * base.time_nodes), OP16).final
        self.assertLess(norma_lp(a - b, OP16.measure, 2) / norma_lp(b, OP16.measure, 2), 1e-6)

    def test_schrodinger_cubico(self):
        res = duhamel_evolve(EvolutionProblem.padrao("schrodinger", "abs2u", dado(0.2, i=4), 0.1), OP16)
        self.assertTrue(res.convergiu)
        self.assertTrue(np.iscomplexobj(res.final))

    def test_sem_contracao(self):
        p = EvolutionProblem.padrao("heat", "u3", dado(2.0), 2.0, picard_iterations=6)
        res = duhamel_evolve(p, OP16)
        self.assertFalse(res.convergiu)
        self.assertIn(SEM_CONTRACAO, res.flags)
        self.assertIsNone(res.residuo)


class ConservacaoTests(SimpleTestCase):
    def test_path2(self):
        rel = conservation_check(OP2, [1.0, 0.0], 1.0, [0.0, 0.7])
        self.assertLess(rel.extras["max_error"], 1e-12)
        self.assertLess(rel.per_trial[0]["error"], 1e-15)

    def test_grade(self):
        for alpha in (0.0, 0.5, 1.0):
            rel = conservation_check(OP16, dado(1.0, i=5), alpha, [0.1, 1.0, 10.0])
            self.assertTrue(rel.extras["conservation_ok"])
            self.assertTrue(rel.extras["heat_monotone"])

    def test_calor_decresce(self):
        rel = conservation_check(OP2, [1.0, 0.0], 1.0, [0.5, 1.0])
        normas = {r["t"]: r["heat_norm"] for r in rel.per_trial}
        self.assertLessEqual(normas[1.0], normas[0.5])


class ContracaoTests(SimpleTestCase):
    def test_inclinacao(self):
        p = EvolutionProblem.padrao("heat", "u2", dado(0.1), 0.1)
        rel = contraction_estimate(p, OP16, 0.5, [0.0125, 0.025, 0.05, 0.1])
        self.assertTrue(all(r["converged"] for r in rel.per_trial))
        self.assertGreater(rel.extras["slope"], 0.7)
        self.assertLess(rel.extras["slope"], 1.3)
        self.assertEqual(rel.extras["threshold"], 0.1)
        fatores = [r["factor"] for r in rel.per_trial]
        self.assertLess(fatores[0], fatores[-1])

    def test_limiar_depende_do_dado(self):
        escada = [0.01, 0.05, 0.2, 0.5, 1.0, 2.0]
        grande = contraction_estimate(EvolutionProblem.padrao("heat", "u3", dado(2.0), 0.1), OP16, 0.5, escada)
        pequeno = contraction_estimate(EvolutionProblem.padrao("heat", "u3", dado(0.2), 0.1), OP16, 0.5, escada)
        self.assertIsNotNone(grande.extras["threshold"])
        self.assertLess(grande.extras["threshold"], pequeno.extras["threshold"])
        self.assertIn(SEM_CONTRACAO, grande.flags)

    def test_hipotese_schrodinger_registrada(self):
        p = EvolutionProblem.padrao("schrodinger", "abs2u", dado(0.1), 0.05)
        rel = contraction_estimate(p, OP16, 0.3, [0.05], d=1.0)
        self.assertIn(HIPOTESE_VIOLADA, rel.flags)
        self.assertFalse(rel.extras["alpha_above_d_half"])
