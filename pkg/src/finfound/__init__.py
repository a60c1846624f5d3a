"""Executable finite-scale foundations: codecs, orders, Boolean algebras,
propositional logic, set algebras, interval measure and finite games."""

__version__ = "0.1.0"
