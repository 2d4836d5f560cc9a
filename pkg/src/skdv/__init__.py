"""Pseudospectral simulation of the damped stochastic KdV equation on the torus."""
