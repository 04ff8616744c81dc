"""Pure-Python reference versions of the integer hot kernels."""


def pair_products(xs, ys, num_shifts, den_shifts):
    """Return (N, D) = (prod (x-y+a), prod (x-y+b)) over x in xs, y in ys.

    All inputs are Python ints (already scaled to a common denominator).
    Raises ZeroDivisionError when a denominator factor vanishes.
    """
    num = 1
    den = 1
    for x in xs:
        for y in ys:
            d = x - y
            for a in num_shifts:
                num *= d + a
            for b in den_shifts:
                t = d + b
                if t == 0:
                    raise ZeroDivisionError("vanishing factor")
                den *= t
    return num, den


def bareiss_det(rows):
    """Fraction-free determinant of a square integer matrix."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            a = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pk - a * rk[j]) // prev
        prev = pk
    return sign * m[n - 1][n - 1]
