"""Entry point for the fedsdwc command."""

import sys

from fedsdwc_sim.app import run


def main() -> None:
    """Run the CLI and exit with its status."""
    sys.exit(run())


if __name__ == "__main__":
    main()
