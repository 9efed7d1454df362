"""Spectral upper bounds on the k-independence number of a graph."""
