"""Reference values for the basis tests, computed with mpmath.

Independent of the C++ engine: the polynomials P_n are rebuilt from exact
rational q-series here, and b_n(u) = sin(pi u) int_0^inf g_n(1+it) e^{-pi u t} dt
(valid for u > n) is integrated with mpmath.quad, with theta values from
mpmath.jtheta and the modular transformation for small t.
"""
from fractions import Fraction
import mpmath as mp

mp.mp.dps = 40
ORDER = 24


def mul(a, b):
    out = [Fraction(0)] * ORDER
    for i, x in enumerate(a):
        if x:
            for j in range(ORDER - i):
                out[i + j] += x * b[j]
    return out


def inv(a):
    out = [Fraction(0)] * ORDER
    out[0] = 1 / a[0]
    for k in range(1, ORDER):
        out[k] = -sum(a[j] * out[k - j] for j in range(1, k + 1)) / a[0]
    return out


def series():
    th = [Fraction(0)] * ORDER
    S = [Fraction(0)] * ORDER
    for k in range(-10, 11):
        if k * k < ORDER:
            th[k * k] += 1
    for k in range(0, 10):
        if k * k + k < ORDER:
            S[k * k + k] += 1
    th4 = mul(mul(th, th), mul(th, th))
    S4 = mul(mul(S, S), mul(S, S))
    lam = [Fraction(0)] + [16 * c for c in mul(S4, inv(th4))[: ORDER - 1]]
    one_minus = [(1 if i == 0 else 0) - lam[i] for i in range(ORDER)]
    # 1/J = q^{-1} th^4 / (S^4 (1 - lam)); stored shifted by one power
    w = mul(th4, inv(mul(S4, one_minus)))
    th3 = mul(mul(th, th), th)
    return th3, lam, w


def polys(N, sign):
    th3, lam, w = series()
    base = th3 if sign > 0 else mul(th3, [(1 if i == 0 else 0) - 2 * lam[i] for i in range(ORDER)])
    # U_k = base * w^k has lead q^{-k}; keep coefficients from q^{-k}
    U = [base]
    for k in range(1, N + 1):
        U.append(mul(U[-1], w))

    def coeff(series_k, k, power):
        return series_k[power + k] if 0 <= power + k < ORDER else Fraction(0)

    out = {}
    for n in range(N + 1):
        if sign < 0 and n == 0:
            out[n] = [Fraction(0)]
            continue
        P = [Fraction(0)] * (n + 1)
        P[n] = Fraction(1)
        jmin = 0 if sign > 0 else 1
        for j in range(n - 1, jmin - 1, -1):
            c = sum(P[k] * coeff(U[k], k, -j) for k in range(j + 1, n + 1))
            P[j] = -c
        out[n] = P
    return out


def line(t):
    """theta^3, lambda, 1/J at 1 + i t."""
    t = mp.mpf(t)
    if t >= 1:
        q = mp.exp(-mp.pi * t)
        t2, t4 = mp.jtheta(2, 0, q), mp.jtheta(4, 0, q)
        th = t4
        lam = -(t2 / t4) ** 4
    else:
        s = 1 / t
        q = mp.exp(-mp.pi * s)
        t2, t4 = mp.jtheta(2, 0, q), mp.jtheta(4, 0, q)
        th = mp.sqrt(s) * t2
        lam = -(t4 / t2) ** 4
    J = lam * (1 - lam) / 16
    return th ** 3, lam, 1 / J


def g(n, sign, P, t):
    th3, lam, iJ = line(t)
    val = sum(mp.mpf(P[k].numerator) / P[k].denominator * iJ ** k for k in range(len(P)))
    if sign < 0:
        val *= 1 - 2 * lam
    return th3 * val


def b(n, sign, u, P):
    u = mp.mpf(u)
    f = lambda t: g(n, sign, P, t) * mp.exp(-mp.pi * u * t)
    I = mp.quad(f, [0, mp.mpf(1) / 8, mp.mpf(1) / 2, 1, 2, 4, 8, mp.inf])
    return mp.sin(mp.pi * u) * I


if __name__ == "__main__":
    Pp, Pm = polys(4, +1), polys(4, -1)
    print("P+", {n: [str(c) for c in Pp[n]] for n in Pp})
    print("P-", {n: [str(c) for c in Pm[n]] for n in Pm})
    for n in range(3):
        print("b%d+(3.24) =" % n, mp.nstr(b(n, +1, "3.24", Pp[n]), 18))
    for n in (1, 2):
        print("b%d-(3.24) =" % n, mp.nstr(b(n, -1, "3.24", Pm[n]), 18))
    # rvperturb entries: u = 4 + 0.01 * 5^{-5/4}
    u = mp.mpf(4) + mp.mpf("0.01") * mp.mpf(5) ** (-mp.mpf(5) / 4)
    bp, bm = b(2, +1, u, Pp[2]), b(2, -1, u, Pm[2])
    print("u4 =", mp.nstr(u, 25))
    print("a_2(sqrt u4) =", mp.nstr((bp + bm) / 2, 18), " ahat_2 =", mp.nstr((bp - bm) / 2, 18))
    bp, bm = b(1, +1, "6.5", Pp[1]), b(1, -1, "6.5", Pm[1])
    print("a_1(sqrt 6.5) =", mp.nstr((bp + bm) / 2, 18), " ahat_1 =", mp.nstr((bp - bm) / 2, 18))
    bp, bm = b(3, +1, "5.3", Pp[3]), b(3, -1, "5.3", Pm[3])
    print("a_3(sqrt 5.3) =", mp.nstr((bp + bm) / 2, 18), " ahat_3 =", mp.nstr((bp - bm) / 2, 18))
