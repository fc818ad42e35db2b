"""
orthozeros - expected real zeros of random orthogonal polynomials.

This package computes the expected number of real zeros of random linear
combinations of orthonormal polynomials and checks the asymptotic laws
against quadrature, Monte Carlo simulation and equilibrium measures:
- Kac-Rice integrals for general, orthonormal and monomial bases
- Three-term recurrences (closed form and discretized Stieltjes)
- Christoffel-Darboux kernels and universality diagnostics
- Equilibrium measures and logarithmic capacity
- Reproducible Monte Carlo zero counting
"""

__version__ = "0.1.0"
__license__ = "MIT"

ORTHOZEROS_VERSION = __version__
ORTHOZEROS_LICENSE = __license__


def main() -> int:
    """Entry point for the orthozeros command line."""
    from orthozeros.cli.main import main as cli_main
    return cli_main()
