"""Continuous-time reference solutions used to cross-check the discrete scheme"""
