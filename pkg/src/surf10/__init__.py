"""Construction and certification of degree 10 surfaces in P^4 over a prime field."""

__version__ = "0.1.0"
