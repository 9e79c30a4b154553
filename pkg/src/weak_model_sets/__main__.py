"""Entry point for python -m weak_model_sets"""

import sys

from weak_model_sets.cli import main

if __name__ == "__main__":
    sys.exit(main())
