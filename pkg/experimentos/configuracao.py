# experimentos/configuracao.py
"""
Configuração de um experimento: arquivo INI com uma seção por experimento,

    [leibniz]
    ladder = 16,32,64
    manifold = cycle({n})
    trials = 50
    seed = 7
    alpha = 0.5

sobrescrito pelas opções da linha de comando; o que faltar vem de
settings.SOBOLEV_LAB. Chaves fora do conjunto fixo viram parâmetros do
experimento (números quando possível).
"""
from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

from django.conf import settings

from core.excecoes import ErroRelatorio, ParametroInvalido
from core.utils.comandos import expoente, lista_int

CHAVES_FIXAS = {"ladder", "manifold", "form", "trials", "seed", "output", "format"}
FORMATOS = ("json", "csv")


def _valor(txt: str) -> Any:
    t = txt.strip()
    if t.lower() in {"true", "yes", "on"}:
        return True
    if t.lower() in {"false", "no", "off"}:
        return False
    if "," in t:
        return [_valor(x) for x in t.split(",") if x.strip()]
    try:
        return int(t)
    except ValueError:
        pass
    try:
        return expoente(t)
    except ParametroInvalido:
        return t


@dataclass
class ExperimentConfig:
    experiment: str
    ladder: List[int] = field(default_factory=lambda: [16])
    manifold: str = "cycle({n})"
    form: str = "combinatorial"
    params: Dict[str, Any] = field(default_factory=dict)
    trials: int = 20
    seed: int = 0
    output: Optional[Path] = None
    format: str = "json"

    def __post_init__(self):
        self.experiment = self.experiment.strip().lower()
        if self.trials < 1:
            raise ParametroInvalido(f"trials deve ser >= 1 (recebido {self.trials})")
        if not self.ladder:
            raise ParametroInvalido("escada de tamanhos vazia")
        if self.format not in FORMATOS:
            raise ParametroInvalido(f"formato desconhecido '{self.format}' (json | csv)")
        for n in self.ladder:
            alvo = self.descritor(n)
            if alvo.endswith(".json") and not Path(alvo).exists():
                raise ErroRelatorio(f"arquivo de variedade não encontrado: {alvo}")

    def descritor(self, n: int) -> str:
        """Descritor de gerador (ou caminho de arquivo) do degrau n."""
        return self.manifold.format(n=n)

    def parametro(self, nome: str, padrao: Any = None) -> Any:
        for chave in (nome, nome.lower()):
            if chave in self.params:
                return self.params[chave]
        return settings.SOBOLEV_LAB.get(nome.upper(), padrao)

    def eco(self) -> Dict[str, Any]:
        return {"experiment": self.experiment, "ladder": list(self.ladder), "manifold": self.manifold,
                "form": self.form, "params": dict(sorted(self.params.items())), "trials": self.trials,
                "seed": self.seed}

    @classmethod
    def de_ini(cls, caminho: str | Path, experimento: Optional[str] = None, **sobrescritas) -> "ExperimentConfig":
        caminho = Path(caminho)
        leitor = configparser.ConfigParser()
        try:
            with caminho.open(encoding="utf-8") as fh:
                leitor.read_file(fh)
        except FileNotFoundError as e:
            raise ErroRelatorio(f"arquivo de configuração não encontrado: {caminho}") from e
        except configparser.Error as e:
            raise ErroRelatorio(f"configuração ilegível: {caminho} ({e})") from e

        secoes = leitor.sections()
        nome = experimento or (secoes[0] if secoes else None)
        if nome is None or not leitor.has_section(nome):
            raise ParametroInvalido(f"seção '{nome}' ausente em {caminho}")
        return cls.de_dict(nome, dict(leitor.items(nome)), **sobrescritas)

    @classmethod
    def de_dict(cls, experimento: str, valores: Dict[str, str], **sobrescritas) -> "ExperimentConfig":
        dados = {k: v for k, v in valores.items()}
        dados.update({k: v for k, v in sobrescritas.items() if v is not None})
        params = {k: (_valor(v) if isinstance(v, str) else v) for k, v in dados.items() if k not in CHAVES_FIXAS}
        kw: Dict[str, Any] = {"params": params}
        if "ladder" in dados:
            escada = dados["ladder"]
            kw["ladder"] = lista_int(escada) if isinstance(escada, str) else [int(n) for n in escada]
        for chave in ("manifold", "form", "format"):
            if chave in dados:
                kw[chave] = str(dados[chave]).strip()
        for chave in ("trials", "seed"):
            if chave in dados:
                kw[chave] = int(dados[chave])
        if "output" in dados:
            kw["output"] = Path(dados["output"])
        return cls(experiment=experimento, **kw)
