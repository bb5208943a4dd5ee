"""Association schemes, spin models, ladder operators and Temperley-Lieb algebras."""

__version__ = "0.1.0"
