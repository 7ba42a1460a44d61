#!/usr/bin/env python3
"""Generate the golden-value files under data/golden/.

Every value is produced with mpmath at high working precision from an
integral representation *different* from the closed forms the library
implements, so agreement checks both the formulas and the quadrature.
Each output file records its provenance and the per-entry accuracy goal.

Run from the repository root:  python3 tools/golden_oracle.py
"""

import json
import os
import time

from mpmath import mp, mpf, sqrt, log, exp, sin, cos, pi, quad, quadosc, inf, acosh

OUT_DIR = os.path.join(os.path.dirname(__file__), "..", "data", "golden")
PROVENANCE_BASE = "mpmath 1.3.0, tools/golden_oracle.py"


def nstr17(x):
    """17 significant digits, round-trip safe for f64."""
    return float(mp.nstr(x, 17, strip_zeros=False))


def write_file(name, provenance, entries):
    path = os.path.join(OUT_DIR, name + ".json")
    payload = {"name": name, "provenance": provenance, "entries": entries}
    with open(path, "w") as f:
        json.dump(payload, f, indent=2)
        f.write("\n")
    print(f"wrote {path} ({len(entries)} entries)")


# ----------------------------------------------------------------------
# polarization kernel C(k), via the x-integral form
# ----------------------------------------------------------------------

def c_integral(k):
    k = mpf(k)
    if k == 0:
        return mpf(0)

    def f(x):
        u = 1 - x * x
        return u * mp.log1p(k * k * u / 4)

    return k * k / 2 * quad(f, [0, 1])


def kernel_values():
    mp.dps = 50
    ks = ["0.001", "0.01", "0.1", "0.3", "0.499", "0.501", "1.0", "2.0",
          "3.7", "10.0", "100.0", "1000.0", "10000.0", "100000.0"]
    entries = []
    for ks_ in ks:
        k = mpf(ks_)
        v = c_integral(k)
        entries.append({"x": nstr17(k), "value": nstr17(v), "tol": 1e-11})
    write_file(
        "kernel_c",
        PROVENANCE_BASE + ", mp.dps=50, Gauss-Legendre quad of the "
        "x-integral form (k^2/2) * int_0^1 (1-x^2) log1p(k^2 (1-x^2)/4) dx",
        entries,
    )


# ----------------------------------------------------------------------
# point-nucleus vacuum potential U(r), Z = 1
#   route A: s-integral with s = cosh(u) substitution (smooth, fast decay)
#   route B: inverse sine transform of U_hat(k) = 4 (2pi)^{-3/2} C(k)/k^4
# ----------------------------------------------------------------------

def u_point(r, z=1):
    # s = cosh(u) removes the sqrt endpoint singularity; the interval is
    # capped where the integrand underflows the precision budget, and split
    # at the 1/sqrt(r) boundary-layer width so large r stays resolved
    r = mpf(r)
    budget = mpf(10) * mp.dps / 4 + 30
    arg = budget / r
    umax = (acosh(arg) if arg > 1 else mpf(0)) + 1
    w = 1 / sqrt(r)
    splits = sorted(set([mpf(0), min(w, umax), min(3 * w, umax), umax]))

    def f(u):
        ch = mp.cosh(u)
        sh = mp.sinh(u)
        return exp(-2 * r * ch) * (1 + 1 / (2 * ch * ch)) * sh * sh / (ch * ch)

    return 2 * z / (3 * pi * r) * quad(f, splits)


def u_point_via_transform(r):
    # sqrt(2/pi)/r * int_0^inf k sin(kr) U_hat(k) dk,
    # U_hat(k) = 4 (2pi)^{-3/2} C(k) / k^4
    r = mpf(r)
    pref = 4 / (2 * pi) ** mpf("1.5")

    def g(k):
        return sin(k * r) * pref * c_integral(k) / k ** 3

    val = quadosc(g, [0, inf], zeros=lambda n: n * pi / r)
    return sqrt(2 / pi) / r * val


def uehling_point_values():
    mp.dps = 40
    rs = ["0.0001", "0.001", "0.01", "0.1", "0.5", "1.0", "2.0", "5.0",
          "10.0", "20.0"]
    entries = []
    for rs_ in rs:
        v = u_point(mpf(rs_))
        entries.append({"x": nstr17(mpf(rs_)), "value": nstr17(v), "tol": 1e-10})
    # dual-route consistency at r = 1 documented in the provenance
    mp.dps = 20
    a = u_point(1)
    b = u_point_via_transform(1)
    agree = abs(a - b) / abs(a)
    write_file(
        "uehling_point",
        PROVENANCE_BASE + ", mp.dps=40, s-integral with s=cosh(u) "
        "substitution; cross-checked at r=1 against the inverse sine "
        f"transform of 4(2pi)^-1.5 C(k)/k^4 to {mp.nstr(agree, 3)} relative",
        entries,
    )


# ----------------------------------------------------------------------
# F0(xi): reduced 1-D integrand, validated against the raw 2-D form on a
# truncated range (the truncation error cancels in the comparison)
# ----------------------------------------------------------------------

def f0_reduced_integrand(p, xi):
    a = p * xi
    sinc = sin(a) / a
    bracket = sinc - (2 * p * p / (a * a)) * (cos(a) - sinc)
    return p * p * (1 + p * p) ** mpf("-2.5") * bracket


def f0_reduced(xi, pmax=None):
    xi = mpf(xi)
    if pmax is None:
        return -1 / (4 * pi * pi) * quadosc(
            lambda p: f0_reduced_integrand(p, xi), [0, inf],
            zeros=lambda n: n * pi / xi)
    return -1 / (4 * pi * pi) * quad(
        lambda p: f0_reduced_integrand(p, xi), [0, pmax])


def f0_reduced_small_xi(xi):
    # below the oscillation scale 1/xi the integrand is smooth but spans
    # decades; split it there, then sum the oscillatory tail
    xi = mpf(xi)
    cut = 1 / xi
    splits = [s for s in [0, 1, 10, 100, 1000] if s < cut] + [cut]
    smooth = quad(lambda p: f0_reduced_integrand(p, xi), splits)
    tail = quadosc(lambda p: f0_reduced_integrand(p, xi), [cut, inf],
                   zeros=lambda n: n * pi / xi)
    return -1 / (4 * pi * pi) * (smooth + tail)


def f0_raw_2d(xi, pmax):
    xi = mpf(xi)

    def inner(p):
        def g(mu):
            return (1 - p * p * mu * mu / (1 + p * p)) * cos(p * xi * mu)
        return p * p * (1 + p * p) ** mpf("-1.5") * quad(g, [-1, 1])

    return -1 / (8 * pi * pi) * quad(inner, [0, pmax])


def f0_values():
    mp.dps = 30
    # reduction check: identical truncation, so agreement tests only the
    # analytic angular integral
    red = f0_reduced(2, pmax=20)
    raw = f0_raw_2d(2, pmax=20)
    agree = abs(red - raw) / abs(raw)
    assert agree < mpf("1e-25"), f"angular reduction mismatch: {agree}"

    mp.dps = 35
    entries = []
    for xi in ["0.5", "1.0", "2.0", "4.0"]:
        v = f0_reduced(mpf(xi))
        entries.append({"x": nstr17(mpf(xi)), "value": nstr17(v), "tol": 1e-9})

    # log-slope at small xi: F0(xi) = c log xi + d + o(1)
    mp.dps = 25
    xs = [mpf("0.002"), mpf("0.00632455532"), mpf("0.02")]
    fs = [f0_reduced_small_xi(x) for x in xs]
    # least squares on (log xi, F0)
    lx = [log(x) for x in xs]
    n = len(xs)
    sx = sum(lx); sy = sum(fs)
    sxx = sum(x * x for x in lx); sxy = sum(x * y for x, y in zip(lx, fs))
    c_fit = (n * sxy - sx * sy) / (n * sxx - sx * sx)
    c_analytic = 1 / (6 * pi * pi)
    entries.append({"x": 0.0, "value": nstr17(c_fit), "tol": 1e-3,
                    "note": "log-slope d F0 / d log xi fitted on xi in [2e-3, 2e-2]"})
    write_file(
        "f0",
        PROVENANCE_BASE + ", mp.dps=35, quadosc on the angularly reduced "
        "integrand; reduction validated against the raw radial x angle "
        "double integral on a shared truncated range to 1e-25; fitted "
        f"log-slope {mp.nstr(c_fit, 10)} vs analytic 1/(6 pi^2) = "
        f"{mp.nstr(c_analytic, 10)}",
        entries,
    )


# ----------------------------------------------------------------------
# diagonal divergence study: I(Lambda) for gaussian Z=1 a=1 at k=1,
# plus the affine slope in log Lambda
# ----------------------------------------------------------------------

def divergence_integrand(p, mu, k):
    pm = p * p - p * k * mu + k * k / 4
    pp = p * p + p * k * mu + k * k / 4
    em = sqrt(1 + pm)
    ep = sqrt(1 + pp)
    num = -k * k * (1 + p * p * (1 - mu * mu))
    den = (em * ep + p * p + 1 - k * k / 4) * em * ep * (em + ep)
    return num / den


def divergence_value(lam, k=1):
    k = mpf(k)
    phi_hat = 4 * pi * (2 * pi) ** mpf("-1.5") * exp(-k * k / 2) / (k * k)

    def outer(p):
        return p * p * quad(lambda mu: divergence_integrand(p, mu, k), [-1, 1])

    splits = [x for x in [0, 1, 10, 100, 1000, 10000] if x < lam] + [lam]
    return phi_hat / (2 * pi * pi) * quad(outer, splits)


def divergence_values():
    mp.dps = 25
    k = mpf(1)
    lams = [mpf(100), mpf("316.22776601683793"), mpf(1000),
            mpf("3162.2776601683795"), mpf(10000)]
    entries = []
    vals = []
    for lam in lams:
        v = divergence_value(lam, k)
        vals.append(v)
        entries.append({"x": nstr17(lam), "value": nstr17(v), "tol": 1e-8})
    # affine fit in log Lambda
    lx = [log(x) for x in lams]
    n = len(lams)
    sx = sum(lx); sy = sum(vals)
    sxx = sum(x * x for x in lx); sxy = sum(x * y for x, y in zip(lx, vals))
    slope = (n * sxy - sx * sy) / (n * sxx - sx * sx)
    phi_hat = 4 * pi * (2 * pi) ** mpf("-1.5") * exp(-k * k / 2) / (k * k)
    analytic = -k * k * phi_hat / (6 * pi * pi)
    entries.append({"x": 0.0, "value": nstr17(slope), "tol": 1e-3,
                    "note": "fitted d I / d log Lambda over [1e2, 1e4]"})
    write_file(
        "divergence_study",
        PROVENANCE_BASE + ", mp.dps=25, nested Gauss-Legendre over mu and p "
        "with decade splits, gaussian Z=1 a=1 at k=1; fitted slope "
        f"{mp.nstr(slope, 10)} vs analytic -k^2 phi_hat/(6 pi^2) = "
        f"{mp.nstr(analytic, 10)}",
        entries,
    )


# ----------------------------------------------------------------------
# extended-nucleus (gaussian) vacuum potential via the inverse transform
# ----------------------------------------------------------------------

def u_gaussian(r, a=1, z=1):
    r = mpf(r)
    a = mpf(a)

    def uhat(k):
        nhat = (2 * pi) ** mpf("-1.5") * z * exp(-(a * k) ** 2 / 2)
        return 4 * nhat * c_integral(k) / k ** 4

    val = quadosc(lambda k: k * sin(k * r) * uhat(k), [0, inf],
                  zeros=lambda n: n * pi / r)
    return sqrt(2 / pi) / r * val


def uehling_gaussian_values():
    mp.dps = 20
    entries = []
    for r in ["0.5", "1.0", "2.0", "5.0"]:
        v = u_gaussian(mpf(r))
        entries.append({"x": nstr17(mpf(r)), "value": nstr17(v), "tol": 1e-8})
    write_file(
        "uehling_gaussian",
        PROVENANCE_BASE + ", mp.dps=20, quadosc inverse sine transform of "
        "U_hat(k) = 4 n_hat(k) C(k)/k^4 for the unit gaussian (Z=1, a=1), "
        "C from the x-integral form",
        entries,
    )


# ----------------------------------------------------------------------
# first-order level shifts for a point nucleus, m = 1 and the muonic
# reduced mass; radial hydrogenic states with c = Z alpha m
# ----------------------------------------------------------------------

ALPHA = mpf("7.2973525693e-3")


def r_nl(n, l, c, r):
    # R_10, R_20, R_21 as needed
    x = c * r
    if (n, l) == (1, 0):
        return 2 * c ** mpf("1.5") * exp(-x)
    if (n, l) == (2, 0):
        return c ** mpf("1.5") / sqrt(2) * (1 - x / 2) * exp(-x / 2)
    if (n, l) == (2, 1):
        return c ** mpf("1.5") / (2 * sqrt(6)) * x * exp(-x / 2)
    raise ValueError((n, l))


def shift_point(n, l, m_eff=1, z=1):
    c = z * ALPHA * m_eff

    def f(r):
        return u_point(r, z) * r_nl(n, l, c, r) ** 2 * r * r

    # U decays like e^{-2r}; the wavefunction scale is 1/c
    splits = [0, mpf("0.001"), mpf("0.1"), 1, 5, 20, 40]
    return -ALPHA ** 2 * quad(f, splits)


def shift_values():
    mp.dps = 25
    entries = []
    for (n, l) in [(1, 0), (2, 0), (2, 1)]:
        v = shift_point(n, l, m_eff=1)
        entries.append({"x": float(10 * n + l), "value": nstr17(v), "tol": 1e-7,
                        "note": f"electron (n,l)=({n},{l}), Z=1, m=1"})
    m_mu = mpf("185.8407967171")
    for (n, l) in [(1, 0), (2, 0), (2, 1)]:
        v = shift_point(n, l, m_eff=m_mu)
        entries.append({"x": float(-(10 * n + l)), "value": nstr17(v), "tol": 1e-7,
                        "note": f"muonic reduced mass (n,l)=({n},{l}), Z=1, m={mp.nstr(m_mu, 13)}"})
    # leading point-limit closed form for (2,0), m = 1
    closed = -4 * ALPHA ** 5 / (15 * pi * 8)
    entries.append({"x": 0.0, "value": nstr17(closed), "tol": 1e-12,
                    "note": "closed form -4 Z^4 alpha^5 m^3/(15 pi n^3) at n=2, m=1"})
    write_file(
        "shifts_point",
        PROVENANCE_BASE + ", mp.dps=25, -alpha^2 int U(r) R_nl(r)^2 r^2 dr "
        "with U from the s-integral route, hydrogenic R_nl at c = Z alpha "
        "m_eff; alpha = 7.2973525693e-3",
        entries,
    )


def main():
    os.makedirs(OUT_DIR, exist_ok=True)
    t0 = time.time()
    kernel_values()
    uehling_point_values()
    f0_values()
    divergence_values()
    uehling_gaussian_values()
    shift_values()
    print(f"total {time.time() - t0:.1f}s")


if __name__ == "__main__":
    main()
