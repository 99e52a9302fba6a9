"""Periodic machines, the NTM reduction, trichoice relations and a brute-force oracle."""

__version__ = "0.1.0"
