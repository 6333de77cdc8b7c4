# core/excecoes.py
"""
Hierarquia de erros do sobolevlab.

Os comandos de gerenciamento convertem qualquer ErroSobolevLab em
CommandError(returncode=2). Violações de hipótese de teorema NÃO são erros:
viram sinalizações ("hypothesis-violated") nos relatórios.
"""


class ErroSobolevLab(Exception):
    """Raiz de todos os erros do toolkit."""


class GeometriaInvalida(ErroSobolevLab, ValueError):
    """Grafo desconexo, peso/comprimento/medida não positivos, descritor inválido."""


class ErroEspectral(ErroSobolevLab, ArithmeticError):
    """Falha do autossolver ou base não ortonormal em <.,.>_mu."""

    def __init__(self, mensagem: str, condicionamento: float | None = None):
        if condicionamento is not None:
            mensagem = f"{mensagem} (condicionamento ~ {condicionamento:.3e})"
        super().__init__(mensagem)
        self.condicionamento = condicionamento


class SimboloIndefinido(ErroSobolevLab, ValueError):
    """Símbolo b(lambda) com NaN/inf em algum autovalor."""

    def __init__(self, autovalor: float):
        super().__init__(f"símbolo indefinido (NaN/inf) no autovalor {autovalor!r}")
        self.autovalor = autovalor


class NucleoNaoOrtogonal(ErroSobolevLab, ValueError):
    """Potência negativa aplicada a campo com componente no núcleo."""

    def __init__(self, componente: float):
        super().__init__(
            f"L não é invertível sobre as constantes (componente no núcleo = {componente:.3e})"
        )
        self.componente = componente


class ParametroInvalido(ErroSobolevLab, ValueError):
    """Pré-condição violada (expoentes, N, beta, Hölder, nome desconhecido...)."""


class ErroRelatorio(ErroSobolevLab, OSError):
    """Caminho de saída não gravável ou arquivo corrompido."""
