"""Entry point for `python -m pfaffian_atlas`."""

import sys

from pfaffian_atlas.cli import main

if __name__ == "__main__":
    sys.exit(main())
