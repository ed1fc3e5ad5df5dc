"""Exact-arithmetic laboratory for incidence geometry of circle tangencies,
anchored unit circles, their 3-space dualities, and polynomial partitioning."""

__version__ = "0.1.0"
