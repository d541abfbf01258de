"""Independent high-precision transcriptions of the Gaussian rate formulas.

Written straight from the printed expressions (fraction forms, explicit
quadratic-root formula) in mpmath at 50 digits, without sharing code with
the package. Rates are returned before the positivity clamp.
"""
import mpmath as mp

mp.mp.dps = 50


def hl(x):
    return mp.log(x, 2) / 2


def wiretap(P, N1, N2):
    P, N1, N2 = map(mp.mpf, (P, N1, N2))
    return max(mp.mpf(0), hl(1 + P / N1) - hl(1 + P / N2))


def limit(P, N1, N2):
    P, N1, N2 = map(mp.mpf, (P, N1, N2))
    return hl(1 + P * (1 / N1 + 1 / N2)) - hl(1 + P / N1)


def sato_by_search(P, N1, N2):
    """Minimise the Sato objective over the estimator coefficient numerically."""
    P, N1, N2 = map(mp.mpf, (P, N1, N2))
    f = lambda al: hl(((1 - al) ** 2 * P + al**2 * N1 + N2) / N2)  # noqa: E731
    lo, hi = mp.mpf(0), mp.mpf(1)
    r = (mp.sqrt(5) - 1) / 2
    for _ in range(300):  # golden-section search; the objective is convex
        m1, m2 = hi - r * (hi - lo), lo + r * (hi - lo)
        if f(m1) < f(m2):
            hi = m2
        else:
            lo = m1
    return f((lo + hi) / 2)


def prop1(alpha, nc, P, a, N1, N2):
    al, nc, P, a, N1, N2 = map(mp.mpf, (alpha, nc, P, a, N1, N2))
    ab = 1 - al
    re1 = hl(1 + al * P / (ab * P + N1)) - hl(1 + al * P / N2)
    re2 = hl(1 + ab * P * (1 / (al * P + N2) + 1 / (N1 + nc))) - hl(1 + ab * P / N1)
    nc_min = (N2 * (ab * P + N1) + P * (al * ab * P + N1)) / (a * P)
    return re1, re2, nc_min


def prop3(alpha, beta, nc, P, a, N1, N2):
    al, be, nc, P, a, N1, N2 = map(mp.mpf, (alpha, beta, nc, P, a, N1, N2))
    ab, bb = 1 - al, 1 - be
    re1 = hl(1 + al * P / (ab * P + N1)) - hl(1 + al * P / (a * bb * P + N2))
    re2 = hl(1 + ab * P * (1 / (N1 + nc) + 1 / (al * P + N2 + a * bb * P))) - hl(1 + ab * P / N1)
    nc_min = (ab * P * (al * P + N2 + a * bb * P) + N1 * (P + N2 + a * bb * P)) / (a * be * P)
    return re1, re2, nc_min


def _root(theta, eta, omega):
    disc = eta**2 + 4 * theta * omega
    if disc < 0:
        return mp.mpf(0)
    return max(mp.mpf(0), (-eta + mp.sqrt(disc)) / (2 * theta))


def prop4(alpha, beta, gamma, nc, P, a, N1, N2):
    """DPC with jamming; ``beta = 1`` gives the DPC scheme without jamming.

    The omega factor uses ``P + a*bbar*P + N2`` (power term restored).
    """
    al, be, ga, nc, P, a, N1, N2 = map(mp.mpf, (alpha, beta, gamma, nc, P, a, N1, N2))
    ab, bb = 1 - al, 1 - be
    J = a * bb * P
    s = al + ga**2 * ab
    re1 = (
        hl(1 + (ab * ga + al) ** 2 * P / (s * N1 + (ga - 1) ** 2 * al * ab * P))
        - hl(1 + al * P / (J + N2))
        - hl(1 + ga**2 * ab / al)
    )
    re2 = (
        hl(1 + (ab * P * (N1 + nc) + ab * (1 - ga) ** 2 * P * (al * P + J + N2)) / ((al * P + J + N2) * (N1 + nc)))
        - hl(1 + al * ab * (ga - 1) ** 2 * P / (s * N1))
        - hl(1 + ga**2 * ab / al)
    )
    theta = a * be * s * P
    eta = s * P * (a * be * N1 + (1 - ga) ** 2 * ab * P * (a * be + ab)) - (P + J + N2) * (
        N1 * s + al * ab * (ga - 1) ** 2 * P
    )
    omega = ((P + J + N2) * ((1 - ga) ** 2 * ab * P + N1) - (1 - ga) ** 2 * ab**2 * P**2) * (
        N1 * s + P * al * ab * (ga - 1) ** 2
    )
    return re1, re2, _root(theta, eta, omega)


def prop2(alpha, gamma, nc, P, a, N1, N2):
    return prop4(alpha, 1, gamma, nc, P, a, N1, N2)


def prop5(alpha, beta1, beta2, nc1, nc2, P, a1, a2, N1, N2):
    """Two-sided cooperation, transcribed exactly as printed."""
    al, b1, b2, n1, n2, P, a1, a2, N1, N2 = map(mp.mpf, (alpha, beta1, beta2, nc1, nc2, P, a1, a2, N1, N2))
    ab, bb1, bb2 = 1 - al, 1 - b1, 1 - b2
    D2 = a2 * bb2 * P
    D1 = a1 * bb1 * P
    re1 = hl(1 + al * P * (N1 + D2 + N2 + n2) / (ab * P * (N1 + D2 + N2 + n2) + (N1 + D2) * (N2 + n2))) - hl(
        1 + al * P * (1 / (D1 + N2) + 1 / (N1 + n1))
    )
    re2 = hl(1 + ab * P * (N2 + D1 + N2 + n1) / (al * P * (N2 + D1 + N1 + n1) + (N2 + D1) * (N1 + n1))) - hl(
        1 + al * P * (1 / (D2 + N1) + 1 / (N2 + n2))
    )
    a11 = a1 * b1 * P
    b11 = P * (P + a1 * b1 * (P + N1)) - (P + N1 + D2) * (P + N2 + D1)
    c11 = (P + N1 + D2) * (P * N1 + (P + N1) * (N2 + D1))
    a22 = a2 * b2 * P
    b22 = P * (P + a2 * b2 * (P + N2)) - (P + N1 + D2) * (P + N2 + D1)
    c22 = (P + N2 + D1) * (P * N2 + (P + N2) * (N1 + D2))
    return re1, re2, _root(a11, b11, c11), _root(a22, b22, c22)
