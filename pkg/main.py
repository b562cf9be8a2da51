import logging
import sys

from dotenv import load_dotenv

from finite_localization.cli import main, setup_logging


if __name__ == "__main__":
    setup_logging()
    load_dotenv()
    logging.getLogger(__name__).info("Environment variables loaded")
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("\nStopped by user")
        sys.exit(130)
