from pathlib import Path
import os

# === Caminhos base ===
BASE_DIR = Path(__file__).resolve().parents[2]  # .../sobolevlab (raiz do repo)
DADOS_DIR = Path(os.getenv("SOBOLEV_LAB_SAIDA", BASE_DIR.parent / "data"))
DADOS_DIR.mkdir(parents=True, exist_ok=True)

# === Chave / idioma / timezone ===
SECRET_KEY = os.getenv("DJANGO_SECRET_KEY", "dev_inseguro")
LANGUAGE_CODE = "pt-br"
TIME_ZONE = "America/Sao_Paulo"
USE_I18N = True
USE_TZ = True

# === Apps ===
INSTALLED_APPS = [
    "core",
    "geometria",
    "espectral",
    "normas",
    "paraprodutos",
    "funcionais",
    "edp",
    "experimentos",
]

# Sem banco: relatórios, variedades e campos vivem em arquivos planos
DATABASES = {}

# === Logging ===
NIVEL_LOG = os.getenv("SOBOLEV_LAB_LOG", "INFO").upper()

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "padrao": {"format": "%(asctime)s %(levelname)s %(name)s: %(message)s"},
    },
    "handlers": {
        "console": {"class": "logging.StreamHandler", "formatter": "padrao"},
    },
    "root": {"handlers": ["console"], "level": NIVEL_LOG},
}

# === Parâmetros numéricos (padrões dos experimentos) ===
SOBOLEV_LAB = {
    "VERSAO": "0.4.0",
    "ORDEM_M": 2.0,
    "N": 5,                       # ordem da família de Calderón
    "QUAD_NOS": 400,              # nós da quadratura em log t
    "QUAD_T_MIN": 1e-6,
    "QUAD_T_MAX": 1e6,
    "ALPHA": 0.5,
    "RHO": 1.0,
    "TAU_NOS": 32,                # Gauss-Legendre no integral de Duhamel
    "AMOSTRAS_TEMPO": 17,         # amostra uniforme para a norma C^0_I
    "NOS_TEMPO": 25,              # nós de Chebyshev-Lobatto que representam u(t)
    "PICARD_MAX": 50,
    "TOL_PICARD": 1e-10,
    "TOL_NUCLEO": 1e-10,
    "THREADS": max(int(os.getenv("SOBOLEV_LAB_THREADS", "1") or 1), 1),
}
