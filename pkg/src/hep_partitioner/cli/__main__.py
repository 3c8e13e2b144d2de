"""
Allow running hepctl as a module: python -m hep_partitioner.cli
"""

import sys

from .hepctl import main

if __name__ == "__main__":
    sys.exit(main())
