"""Discrete Hamilton-Pontryagin integrator: problem definitions, the forward
flow, the discrete action and momentum diagnostics.
"""
