"""Approximation of periodic functions in L_p and Hölder (quasi-)norms."""
