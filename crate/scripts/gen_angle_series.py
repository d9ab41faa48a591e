"""Generate power-series coefficients for the cyclic-quadrilateral angle density.

The closed form cancels catastrophically near x = 0, pi/2 and pi. This script
expands it with truncated power-series arithmetic at 80 digits and prints
Rust constant arrays consumed by crates/core/src/quadrilateral/angle.rs.

    python3 scripts/gen_angle_series.py > /tmp/series.rs
"""
import mpmath as mp

mp.mp.dps = 80
N = 80  # working truncation order


def mul(a, b):
    out = [mp.mpf(0)] * N
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j in range(N - i):
            out[i + j] += ai * b[j]
    return out


def add(*ss):
    return [sum(t) for t in zip(*ss)]


def scale(a, k):
    return [k * v for v in a]


def inv(a):
    out = [mp.mpf(0)] * N
    out[0] = 1 / a[0]
    for n in range(1, N):
        out[n] = -sum(a[k] * out[n - k] for k in range(1, n + 1)) / a[0]
    return out


def div(a, b):
    return mul(a, inv(b))


def log1(a):
    # log of a series with a[0] == 1: integrate a'/a
    assert abs(a[0] - 1) < mp.mpf(10) ** -70
    d = [(k + 1) * a[k + 1] for k in range(N - 1)] + [mp.mpf(0)]
    q = div(d, a)
    return [mp.mpf(0)] + [q[k - 1] / k for k in range(1, N)]


def compose(f, g):
    # f(g(x)) where g[0] == 0
    out = [mp.mpf(0)] * N
    p = [mp.mpf(1)] + [mp.mpf(0)] * (N - 1)
    for k in range(N):
        if k:
            p = mul(p, g)
        out = add(out, scale(p, f[k]))
    return out


def cos_k(k):
    return [(-1) ** (n // 2) * mp.mpf(k) ** n / mp.factorial(n) if n % 2 == 0 else mp.mpf(0) for n in range(N)]


def sin_k(k):
    return [(-1) ** (n // 2) * mp.mpf(k) ** n / mp.factorial(n) if n % 2 == 1 else mp.mpf(0) for n in range(N)]


def shift(a, s):
    # multiply by x^s (s may be negative when the low terms vanish)
    if s >= 0:
        return [mp.mpf(0)] * s + a[: N - s]
    return a[-s:] + [mp.mpf(0)] * (-s)


def at_zero():
    c = {k: cos_k(k) for k in range(1, 8)}
    one = [mp.mpf(1)] + [mp.mpf(0)] * (N - 1)
    psi1 = add(scale(c[1], -25), scale(c[3], 7), scale(c[5], 17), c[7])
    psi2 = add(scale(c[1], 42), scale(c[3], 19), scale(c[5], 3))
    psi3 = add(scale(one, 378), scale(c[2], 489), scale(c[4], 150), scale(c[6], 7))
    sinc = shift(sin_k(1), -1)
    half_sinc = shift(sin_k(mp.mpf(1) / 2), -1)
    half_sinc = scale(half_sinc, 2)  # sin(x/2)/(x/2)
    tanc_half = div(half_sinc, cos_k(mp.mpf(1) / 2))
    num_p = add(psi1, scale(mul(psi2, log1(sinc)), -16), mul(psi3, log1(tanc_half)))
    num_q = add(psi3, scale(psi2, -16))
    cos3 = mul(mul(c[1], c[1]), c[1])
    sinc5 = mul(mul(mul(mul(sinc, sinc), sinc), sinc), sinc)
    den = scale(mul(cos3, sinc5), 16)
    p = div(num_p, den)  # times x^-5
    q = div(num_q, den)
    return p, q


def at_half_pi():
    # x = pi/2 + d
    one = [mp.mpf(1)] + [mp.mpf(0)] * (N - 1)

    def cos_shifted(k):
        # cos(k pi/2 + k d)
        r = k % 4
        return {0: cos_k(k), 1: scale(sin_k(k), -1), 2: scale(cos_k(k), -1), 3: sin_k(k)}[r]

    c = {k: cos_shifted(k) for k in range(1, 8)}
    psi1 = add(scale(c[1], -25), scale(c[3], 7), scale(c[5], 17), c[7])
    psi2 = add(scale(c[1], 42), scale(c[3], 19), scale(c[5], 3))
    psi3 = add(scale(one, 378), scale(c[2], 489), scale(c[4], 150), scale(c[6], 7))
    cosd = cos_k(1)
    log_sin_half = add(log1(cosd), scale(one, -mp.log(2)))
    t = div(sin_k(mp.mpf(1) / 2), cos_k(mp.mpf(1) / 2))
    atanh = [mp.mpf(0)] * N
    for k in range(1, N, 2):
        atanh[k] = mp.mpf(1) / k
    log_tan = scale(compose(atanh, t), 2)
    num = add(psi1, scale(mul(psi2, log_sin_half), -16), mul(psi3, log_tan))
    # denominator 16 cos(x)^3 sin(x)^5 = -16 d^3 sinc(d)^3 cos(d)^5
    sinc = shift(sin_k(1), -1)
    den = scale(mul(mul(mul(sinc, sinc), sinc), mul(mul(mul(mul(cosd, cosd), cosd), cosd), cosd)), -16)
    for k in range(3):
        assert abs(num[k]) < mp.mpf(10) ** -60, (k, num[k])
    return div(shift(num, -3), den)


def emit(name, coeffs, count):
    print(f"const {name}: [f64; {count}] = [")
    for v in coeffs[:count]:
        print(f"    {mp.nstr(v, 20, strip_zeros=False, min_fixed=-1, max_fixed=-1)},")
    print("];")


if __name__ == "__main__":
    p, q = at_zero()
    for k in range(5):
        assert abs(p[k]) < mp.mpf(10) ** -60, ("p", k, p[k])
        assert abs(q[k]) < mp.mpf(10) ** -60, ("q", k, q[k])
    h = at_half_pi()
    emit("NEAR_ZERO_POLY", p[5:], 70)
    emit("NEAR_ZERO_LOG", q[5:], 70)
    emit("NEAR_HALF_PI", h, 72)
