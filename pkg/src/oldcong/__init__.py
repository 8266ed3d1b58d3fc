"""Congruence primes between an elliptic-curve newform and the old space."""
