"""Real root isolation for integer polynomials at extended precision."""

import mpmath


def poly_eval(coeffs, x):
    """Horner evaluation; ``coeffs`` are highest degree first."""
    acc = 0
    for c in coeffs:
        acc = acc * x + c
    return acc


def _derivative(coeffs):
    deg = len(coeffs) - 1
    return [c * (deg - i) for i, c in enumerate(coeffs[:-1])]


def refine_root(coeffs, lo, hi, prec=128):
    """Root of ``coeffs`` in the bracket ``[lo, hi]``.

    The bracket must contain a sign change. Bisection narrows it, then Newton
    polishes to the working precision while staying inside the bracket.
    """
    dcoeffs = _derivative(coeffs)
    with mpmath.workprec(prec + 20):
        lo, hi = mpmath.mpf(lo), mpmath.mpf(hi)
        flo, fhi = poly_eval(coeffs, lo), poly_eval(coeffs, hi)
        if flo == 0:
            return +lo
        if fhi == 0:
            return +hi
        if flo * fhi > 0:
            raise ValueError("bracket [%s, %s] has no sign change" % (lo, hi))
        for _ in range(60):
            mid = (lo + hi) / 2
            fm = poly_eval(coeffs, mid)
            if fm == 0:
                return mid
            if (fm < 0) == (flo < 0):
                lo, flo = mid, fm
            else:
                hi = mid
        x = (lo + hi) / 2
        tol = mpmath.mpf(2) ** (-prec)
        for _ in range(200):
            step = poly_eval(coeffs, x) / poly_eval(dcoeffs, x)
            x -= step
            if abs(step) < tol:
                break
        return x


def real_roots(coeffs, lo=-10, hi=10, grid=4000, prec=128):
    """All simple real roots of an integer polynomial inside ``[lo, hi]``.

    Roots are isolated by sign changes on a uniform grid; ordered by value.
    """
    roots = []
    with mpmath.workprec(prec + 20):
        step = (mpmath.mpf(hi) - lo) / grid
        prev_x = mpmath.mpf(lo)
        prev_f = poly_eval(coeffs, prev_x)
        for i in range(1, grid + 1):
            x = lo + i * step
            f = poly_eval(coeffs, x)
            if prev_f == 0:
                roots.append(prev_x)
            elif prev_f * f < 0:
                roots.append(refine_root(coeffs, prev_x, x, prec))
            prev_x, prev_f = x, f
        if prev_f == 0:
            roots.append(prev_x)
    return roots


def dominant_root(coeffs, prec=128):
    """Largest real root of ``coeffs`` (assumed to exceed 1)."""
    bound = 1 + max(abs(c) for c in coeffs[1:]) / abs(coeffs[0])
    lo, hi = mpmath.mpf(1), mpmath.mpf(bound) + 1
    with mpmath.workprec(prec + 20):
        # scan down from the Cauchy bound for the last sign change
        n = 2000
        step = (hi - lo) / n
        f_hi = poly_eval(coeffs, hi)
        for i in range(n, 0, -1):
            x = lo + (i - 1) * step
            f = poly_eval(coeffs, x)
            if f == 0:
                return x
            if f * f_hi < 0:
                return refine_root(coeffs, x, x + step, prec)
            f_hi = f
    raise ValueError("no real root above 1")
