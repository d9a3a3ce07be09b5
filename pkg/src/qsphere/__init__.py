"""Exact symbolic geometry of the standard Podles sphere inside C_q[SL2]."""

__version__ = "0.1.0"
