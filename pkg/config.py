import logging
import os
from dotenv import load_dotenv

load_dotenv()

_max_order = os.getenv("MAGMA_MAX_ORDER")
# unset: each lemma runs at its own default order
MAX_ORDER = int(_max_order) if _max_order else None
NODE_BUDGET = int(os.getenv("MAGMA_NODE_BUDGET", "5000000"))
PARALLEL = int(os.getenv("MAGMA_PARALLEL", "1"))
LOG_LEVEL = os.getenv("MAGMA_LOG_LEVEL", "WARNING").upper()


def configure_logging(level: str = LOG_LEVEL):
    # diagnostics only; machine output never goes through logging
    logging.basicConfig(format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger().setLevel(getattr(logging, level, logging.WARNING))
