"""
Entry point for running orthozeros as a module.

Usage: python -m orthozeros
"""

import sys

from orthozeros.cli.main import main

if __name__ == "__main__":
    sys.exit(main())
