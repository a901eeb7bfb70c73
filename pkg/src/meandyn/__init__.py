"""meandyn: exact averages, densities, invariant-measure limits and
sensitivity relations for amenable actions on compactified integer
orbits."""

__version__ = "0.1.0"
