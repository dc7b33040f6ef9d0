"""glassbox: train small classifiers, explain them four ways, profile data,
and measure how much the explanation methods agree."""

__version__ = "0.1.0"
