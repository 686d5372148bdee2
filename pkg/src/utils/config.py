from environs import Env
from pathlib import Path

env = Env()
env.read_env()

BASE_DIR = Path(__file__).parent.parent.parent

# Result cache (serialized groups, sigma-set digests)
CACHE_DIR = Path(env.str("BFORGE_CACHE", ".bforge"))
USE_CACHE = env.bool("BFORGE_USE_CACHE", True)

# Logging settings
LOG_SETTINGS = {
    "LEVEL": env.str("BFORGE_LOG_LEVEL", "INFO"),
    "TO_FILE": env.bool("BFORGE_LOG_TO_FILE", True),
    "LOGS_DIR": Path(env.str("BFORGE_LOGS_DIR", str(BASE_DIR / "logs"))),
}

# Group arithmetic settings
GROUP_SETTINGS = {
    "MAX_ORDER": env.int("BFORGE_MAX_ORDER", 10**6),
    "TABLE_THRESHOLD": env.int("BFORGE_TABLE_THRESHOLD", 4096),
    "MUL_MEMO": env.int("BFORGE_MUL_MEMO", 1 << 16),
    "SAMPLE_TRIPLES": env.int("BFORGE_SAMPLE_TRIPLES", 10**5),
}

# Nilpotent quotient settings
NQ_SETTINGS = {
    "CLASS_BOUND": env.int("BFORGE_NQ_CLASS_BOUND", 4),
    "MAX_CLASS": env.int("BFORGE_NQ_MAX_CLASS", 5),
    "MAX_ORDER": env.int("BFORGE_NQ_MAX_ORDER", 10**6),
}

# Beauville search settings
SEARCH_SETTINGS = {
    "PROVE_NONE_CAP": env.int("BFORGE_PROVE_NONE_CAP", 2000),
    "FULL_SIGMA_CAP": env.int("BFORGE_FULL_SIGMA_CAP", 10**4),
    "JOBS": env.int("BFORGE_JOBS", 1),
}

TOOL_VERSION = "0.3.0"
