"""Flag graphs of 2-transitive groups and the imprimitive blocks behind them."""

__version__ = "0.1.0"
