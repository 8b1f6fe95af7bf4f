import numpy as np

from shadowosc.algebra import Mat2C


def to_numpy(m) -> np.ndarray:
    """Mat2C or TransitionMatrix as a numpy array (independent oracle side)."""
    if isinstance(m, Mat2C):
        return np.array([[m.e11, m.e12], [m.e21, m.e22]], dtype=complex)
    return np.array([[m.r1, m.r2], [m.r3, m.r4]], dtype=float)


def quadratic_roots(tr: complex, det: complex) -> tuple[complex, complex]:
    """Roots of x**2 - tr*x + det by the plain quadratic formula."""
    import cmath

    disc = cmath.sqrt(tr * tr - 4.0 * det)
    return (tr + disc) / 2.0, (tr - disc) / 2.0
