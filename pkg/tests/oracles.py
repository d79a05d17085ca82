"""Independent reference computations the tests check the library against.

Nothing here shares code with the production paths: the Mathieu
characteristic value comes from a continued fraction, the knee locations
from a brute-force grid with discrete differences, and the lobe tip from a
golden-section search.
"""

import decimal

import numpy as np


def mathieu_a0(q: float, terms: int = 80) -> float:
    """Characteristic value a_0(q) of the even pi-periodic Mathieu function.

    Uses the standard three-term recurrence for the cosine coefficients,
    folded into a continued fraction, and bisects its root.  Valid for
    moderate q > 0 (well past the q = 1 needed here).
    """

    def f(a: float) -> float:
        g = 0.0
        for r in range(terms, 1, -1):
            g = q / (a - 4.0 * r * r - q * g)
        # the r = 1 relation carries a factor 2 on the A_0 coupling
        return a - 2.0 * q * q / (a - 4.0 - q * g)

    lo, hi = -2.0 * q * q - 1.0, 0.5
    flo = f(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm < 0.0) == (flo < 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def dense_scan_knees(gamma: float, phi0: float, beta: float, y_hi: float, n: int = 1_000_000):
    """Fold intensities from a brute-force response-curve scan.

    Builds I(y) on an n-point grid and looks for sign changes of the
    *discrete* forward difference, so it shares no derivative formula with
    the production knee solver.  Returns (I_low, I_high).
    """
    ys = np.linspace(0.0, y_hi, n)
    drive = ys * (1.0 + gamma * np.sin(phi0 + beta * ys) ** 2)
    diff = np.diff(drive)
    sign = np.sign(diff)
    flips = np.where(sign[:-1] * sign[1:] < 0.0)[0]
    if flips.size < 2:
        raise AssertionError("dense scan found no fold pair; widen y_hi or refine")
    knees = drive[flips[:2] + 1]
    return float(knees.min()), float(knees.max())


def lobe_tip_numeric(n: int, digits: int = 50):
    """Golden-section maximization of the mean-field lobe boundary.

    Runs in ``digits``-place decimal arithmetic: the boundary is flat at its
    maximum, so double-precision comparisons would pin the argmax only to
    ~sqrt(eps).  Returns (mu*, x*) as floats.
    """
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        n_d = decimal.Decimal(n)
        one = decimal.Decimal(1)

        def f(mu):
            return one / ((n_d + 1) / (n_d - mu) + n_d / (mu - (n_d - 1)))

        inv_phi = (decimal.Decimal(5).sqrt() - 1) / 2
        a = n_d - 1 + decimal.Decimal("1e-9")
        b = n_d - decimal.Decimal("1e-9")
        c = b - inv_phi * (b - a)
        d = a + inv_phi * (b - a)
        fc, fd = f(c), f(d)
        while b - a > decimal.Decimal("1e-30"):
            if fc > fd:
                b, d, fd = d, c, fc
                c = b - inv_phi * (b - a)
                fc = f(c)
            else:
                a, c, fc = c, d, fd
                d = a + inv_phi * (b - a)
                fd = f(d)
        mu = (a + b) / 2
        return float(mu), float(f(mu))
