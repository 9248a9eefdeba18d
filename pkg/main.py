import sys
from typing import Optional, Sequence

from cli.factories import create_registry
from config import Config
from utils.logger import logger

PROG = "weakpath"
DESCRIPTION = "Weak values and quad-cell spectra of nested interferometers"


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point.

    Returns:
        Exit status: 0 on success, 1 on a reported error, 2 on an unexpected failure
    """
    try:
        config = Config.from_env()
    except ValueError as e:
        logger.error(f"Configuration: {e}")
        return 1

    return create_registry(config).main(argv, prog=PROG, description=DESCRIPTION)


if __name__ == "__main__":
    sys.exit(main())
