# path: src/main.py
# description: System Entry Point v1.0.
#
# ARCHITECTURAL ROLE (Hexagonal/DDD):
# Bootstrapper. Configures the root logger once from TILING_LOG_LEVEL,
# writing to stderr so stdout stays machine-readable, and hands argv to the
# primary driving adapter (the argparse CLI).
#
# Usage: python -m src.main <command> ...

import logging
import sys

from src.infrastructure.cli import main as cli_main
from src.infrastructure.settings import load_settings


def main() -> int:
    settings = load_settings()
    logging.basicConfig(
        level=getattr(logging, settings.log_level, logging.WARNING),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s %(message)s",
    )
    logging.getLogger(__name__).info("SYSTEM_BOOT: tiling toolkit v1.0 log_level=%s", settings.log_level)
    return cli_main(settings=settings)


if __name__ == "__main__":
    sys.exit(main())
