# cython: language_level=3, boundscheck=False, cdivision=True
"""Compiled twin of gfkernel._corepy: same functions, same algorithms.

Built with -ffp-contract=off; the double-double primitives rely on exact
IEEE multiply/add rounding and break under fused contraction.
"""

from libc.math cimport (atan, cos, cosh, exp, fabs, floor, lgamma, log, log1p,
                        pow as cpow, sin, sinh, sqrt, tan)

from .errors import (
    ConvergenceError,
    DegenerateParameterError,
    DomainError,
    PoleError,
    RangeOverflowError,
)

cdef double PI = 3.141592653589793238462643383279502884
cdef double SQRT_2PI = sqrt(2.0 * PI)
cdef double SQRT_HALF_PI3 = sqrt(0.5 * PI * PI * PI)
cdef double SPLITTER = 134217729.0
cdef double LOG_MAX = 709.0
cdef double INF = float("inf")


# ---------------------------------------------------------------------------
# gamma-family helpers
# ---------------------------------------------------------------------------


cpdef bint is_nonpositive_integer(double x, double tol=1e-12):
    if x > 0.5:
        return False
    cdef double r = floor(x + 0.5)
    return r <= 0.0 and fabs(x - r) <= tol


cpdef double gamma_sign(double x) except? -2.0:
    if x > 0.0:
        return 1.0
    if x == floor(x):
        raise PoleError(f"gamma pole at x={x!r}")
    return 1.0 if (<long long>floor(-x)) % 2 == 1 else -1.0


def log_abs_gamma(double x):
    if x <= 0.0 and x == floor(x):
        raise PoleError(f"gamma pole at x={x!r}")
    return lgamma(x), gamma_sign(x)


cpdef double gammafn(double x) except? -1e308:
    cdef double s = gamma_sign(x)
    cdef double ln = lgamma(x)
    if ln > LOG_MAX:
        return s * INF
    return s * exp(ln)


cpdef double rgamma(double x):
    if is_nonpositive_integer(x, 1e-12):
        return 0.0
    cdef double s = gamma_sign(x)
    cdef double ln = lgamma(x)
    if ln < -LOG_MAX:
        return 0.0
    return s * exp(-ln)


cpdef double sinpi(double x):
    cdef double r = floor(x + 0.5)
    cdef double s = sin(PI * (x - r))
    return s if (<long long>r) % 2 == 0 else -s


cpdef double digamma(double x) except? -1e308:
    cdef double acc = 0.0, inv2, tail
    if x <= 0.0:
        if x == floor(x):
            raise PoleError(f"digamma pole at x={x!r}")
        return digamma(1.0 - x) - PI / tan(PI * x)
    while x < 10.0:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    tail = inv2 * (1.0 / 12.0
                   - inv2 * (1.0 / 120.0
                             - inv2 * (1.0 / 252.0
                                       - inv2 * (1.0 / 240.0
                                                 - inv2 * (1.0 / 132.0
                                                           - inv2 * (691.0 / 32760.0
                                                                     - inv2 / 12.0))))))
    return acc + log(x) - 0.5 / x - tail


# ---------------------------------------------------------------------------
# double-double primitives
# ---------------------------------------------------------------------------

cdef struct dd:
    double hi
    double lo


cdef inline dd dd_two_sum(double a, double b) noexcept:
    cdef dd r
    cdef double s = a + b
    cdef double bb = s - a
    r.hi = s
    r.lo = (a - (s - bb)) + (b - bb)
    return r


cdef inline dd dd_fast_two_sum(double a, double b) noexcept:
    cdef dd r
    cdef double s = a + b
    r.hi = s
    r.lo = b - (s - a)
    return r


cdef inline dd dd_two_prod(double a, double b) noexcept:
    cdef dd r
    cdef double p = a * b
    cdef double t = SPLITTER * a
    cdef double ah = t - (t - a)
    cdef double al = a - ah
    cdef double bh, bl
    t = SPLITTER * b
    bh = t - (t - b)
    bl = b - bh
    r.hi = p
    r.lo = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return r


cdef inline dd dd_add(dd x, dd y) noexcept:
    cdef dd s = dd_two_sum(x.hi, y.hi)
    return dd_fast_two_sum(s.hi, s.lo + x.lo + y.lo)


cdef inline dd dd_mul(dd x, dd y) noexcept:
    cdef dd p = dd_two_prod(x.hi, y.hi)
    return dd_fast_two_sum(p.hi, p.lo + x.hi * y.lo + x.lo * y.hi)


cdef inline dd dd_div(dd x, dd y) noexcept:
    cdef double q1 = x.hi / y.hi
    cdef dd t = dd_two_prod(q1, y.hi)
    cdef dd r
    t.lo += q1 * y.lo
    r.hi = -t.hi
    r.lo = -t.lo
    r = dd_add(x, r)
    return dd_fast_two_sum(q1, (r.hi + r.lo) / y.hi)


# ---------------------------------------------------------------------------
# Bessel J and its normalized variant
# ---------------------------------------------------------------------------


cpdef double bessel_crossover(double nu):
    cdef double c = 2.0 * nu * nu
    return c if c > 25.0 else 25.0


cpdef double normalized_bessel_series(double nu, double x) except? -1e308:
    cdef double half = 0.5 * x
    cdef dd q = dd_two_prod(half, half)
    cdef dd term, s, den, an
    cdef double fn
    cdef int n = 1
    q.hi = -q.hi
    q.lo = -q.lo
    term.hi = 1.0
    term.lo = 0.0
    s.hi = 1.0
    s.lo = 0.0
    while n <= 600:
        fn = <double>n
        an = dd_two_sum(nu, fn)
        den = dd_two_prod(an.hi, fn)
        den.lo += an.lo * fn
        term = dd_mul(term, q)
        term = dd_div(term, den)
        s = dd_add(s, term)
        if fabs(term.hi) <= 1e-35 * fabs(s.hi) + 1e-305:
            return s.hi + s.lo
        n += 1
    raise ConvergenceError(
        f"normalized Bessel series did not converge (nu={nu!r}, x={x!r})")


cpdef double bessel_j_asymptotic(double nu, double x):
    cdef double mu4 = 4.0 * nu * nu
    cdef double p = 1.0, q = 0.0, ak = 1.0
    cdef double prev = INF, f, a, sign, omega
    cdef int k = 1
    while k <= 64:
        f = 2.0 * k - 1.0
        ak *= (mu4 - f * f) / (8.0 * k * x)
        if ak == 0.0:
            break
        a = fabs(ak)
        if a >= prev:
            break
        sign = -1.0 if (k >> 1) & 1 else 1.0
        if k & 1:
            q += sign * ak
        else:
            p += sign * ak
        if a < 1e-17 * (fabs(p) + fabs(q)):
            break
        prev = a
        k += 1
    omega = x - (0.5 * nu + 0.25) * PI
    return sqrt(2.0 / (PI * x)) * (cos(omega) * p - sin(omega) * q)


cpdef double bessel_j(double nu, double x) except? -1e308:
    cdef double pref
    if x == 0.0:
        if nu == 0.0:
            return 1.0
        return 0.0 if nu > 0.0 else INF
    if x <= bessel_crossover(nu):
        pref = cpow(0.5 * x, nu) * exp(-lgamma(nu + 1.0))
        return pref * normalized_bessel_series(nu, x)
    return bessel_j_asymptotic(nu, x)


cpdef double normalized_bessel_j(double nu, double x) except? -1e308:
    cdef double pref
    if x == 0.0:
        return 1.0
    if x <= bessel_crossover(nu):
        return normalized_bessel_series(nu, x)
    pref = exp(lgamma(nu + 1.0) - nu * log(0.5 * x))
    return pref * bessel_j_asymptotic(nu, x)


# ---------------------------------------------------------------------------
# Gauss hypergeometric 2F1 on [0, 1)
# ---------------------------------------------------------------------------


def gauss_series(double a, double b, double c, double z, int nmax=4000):
    cdef double term = 1.0, s = 1.0, comp = 0.0, abssum = 1.0
    cdef double r, y, t, rho, tail
    cdef int n = 0
    while n < nmax:
        r = (a + n) * (b + n) / ((c + n) * (1.0 + n)) * z
        term *= r
        if term == 0.0:
            return s + comp, 1e-16 * abssum
        y = term - comp
        t = s + y
        comp = (t - s) - y
        s = t
        abssum += fabs(term)
        n += 1
        if fabs(term) <= 1e-17 * fabs(s) and n > 4:
            rho = fabs((a + n) * (b + n) / ((c + n) * (1.0 + n)) * z)
            tail = fabs(term) * rho / (1.0 - rho) if rho < 1.0 else fabs(term) * 10.0
            return s, tail + 1e-16 * abssum
    raise ConvergenceError(
        f"2F1 series did not converge (a={a!r}, b={b!r}, c={c!r}, z={z!r})")


cdef (double, double) _terminating_series(double a, double b, double c, double z,
                                          int nterms):
    cdef double term = 1.0, s = 1.0, comp = 0.0, abssum = 1.0
    cdef double y, t
    cdef int n
    for n in range(nterms):
        term *= (a + n) * (b + n) / ((c + n) * (1.0 + n)) * z
        y = term - comp
        t = s + y
        comp = (t - s) - y
        s = t
        abssum += fabs(term)
    return s, 1e-16 * abssum


cdef double _gamma_ratio2(double n1, double n2, double d1, double d2) except? -1e308:
    """Gamma(n1) Gamma(n2) / (Gamma(d1) Gamma(d2)); 0 on denominator poles."""
    cdef double ln = 0.0, sign = 1.0
    if is_nonpositive_integer(n1, 1e-12) or is_nonpositive_integer(n2, 1e-12):
        raise PoleError("gamma pole in coefficient numerator")
    ln += lgamma(n1)
    sign *= gamma_sign(n1)
    ln += lgamma(n2)
    sign *= gamma_sign(n2)
    if is_nonpositive_integer(d1, 1e-12) or is_nonpositive_integer(d2, 1e-12):
        return 0.0
    ln -= lgamma(d1)
    sign *= gamma_sign(d1)
    ln -= lgamma(d2)
    sign *= gamma_sign(d2)
    if ln > LOG_MAX:
        raise RangeOverflowError("gamma ratio overflow in 2F1 connection formula")
    return sign * exp(ln)


def hyp2f1(double a, double b, double c, double z, zc=None):
    cdef double w, d, f1, e1, f2, e2, c1, c2, val, err, rp
    cdef double zcv
    if is_nonpositive_integer(c, 1e-12):
        raise PoleError(f"2F1 parameter c={c!r} is a nonpositive integer")
    if z == 0.0:
        return 1.0, 0.0
    if z < 0.0:
        if z > -1e-12:
            return 1.0, 1e-12
        raise DomainError(f"2F1 argument z={z!r} outside [0, 1)")
    zcv = -1.0 if zc is None else <double>zc
    if z >= 1.0 and not (zc is not None and zcv > 0.0):
        raise DomainError(f"2F1 argument z={z!r} outside [0, 1)")
    rp = floor(a + 0.5)
    if rp <= 0.0 and fabs(a - rp) <= 1e-12:
        return _terminating_series(a, b, c, z, <int>(-rp))
    rp = floor(b + 0.5)
    if rp <= 0.0 and fabs(b - rp) <= 1e-12:
        return _terminating_series(a, b, c, z, <int>(-rp))
    if z <= 0.5:
        return gauss_series(a, b, c, z)
    w = (1.0 - z) if zc is None else zcv
    d = c - a - b
    if fabs(d - floor(d + 0.5)) < 1e-8:
        raise DegenerateParameterError(
            f"2F1 connection formula degenerate: c-a-b={d!r} is (near) an integer")
    f1, e1 = gauss_series(a, b, a + b - c + 1.0, w)
    f2, e2 = gauss_series(c - a, c - b, d + 1.0, w)
    c1 = _gamma_ratio2(c, d, c - a, c - b)
    c2 = _gamma_ratio2(c, -d, a, b) * cpow(w, d)
    val = c1 * f1 + c2 * f2
    err = fabs(c1) * e1 + fabs(c2) * e2 + 2e-16 * (fabs(c1 * f1) + fabs(c2 * f2))
    return val, err


# ---------------------------------------------------------------------------
# Legendre functions
# ---------------------------------------------------------------------------


cdef double _legendre_poly(int n, double t) noexcept:
    cdef double pm1 = 1.0, p = t, nxt
    cdef int j
    if n == 0:
        return 1.0
    for j in range(1, n):
        nxt = ((2.0 * j + 1.0) * t * p - j * pm1) / (j + 1.0)
        pm1 = p
        p = nxt
    return p


cdef double _legendre_p0_log(double nu, double zf, double w) except? -1e308:
    cdef double a = nu + 1.0
    cdef double b = -nu
    cdef double la = lgamma(a)
    cdef double lb = lgamma(b)
    cdef double g = gamma_sign(a) * gamma_sign(b) * exp(-(la + lb))
    cdef double lnw = log(w)
    cdef double psi_n1 = digamma(1.0)
    cdef double psi_an = digamma(a)
    cdef double psi_bn = digamma(b)
    cdef double coef = 1.0, s = 0.0, wn = 1.0, term
    cdef int n
    for n in range(0, 400):
        if n > 0:
            coef *= (a + n - 1.0) * (b + n - 1.0) / (<double>n * n)
            wn *= w
            psi_n1 += 1.0 / n
            psi_an += 1.0 / (a + n - 1.0)
            psi_bn += 1.0 / (b + n - 1.0)
        term = coef * wn * (2.0 * psi_n1 - psi_an - psi_bn - lnw)
        s += term
        if n > 3 and fabs(term) <= 1e-17 * fabs(s):
            return g * s
    raise ConvergenceError(f"Legendre log-series did not converge (nu={nu!r})")


def legendre_p(double mu, double nu, double t):
    cdef double zf, w, f, lg, sg, ln_pref, r
    if not -1.0 < t <= 1.0:
        raise DomainError(f"legendre_p argument t={t!r} outside (-1, 1]")
    if is_nonpositive_integer(1.0 - mu, 1e-12):
        raise PoleError(f"legendre_p order mu={mu!r} makes 1-mu a nonpositive integer")
    if nu < -0.5:
        nu = -1.0 - nu
    if t == 1.0:
        if mu == 0.0:
            return 1.0
        if mu < 0.0:
            return 0.0
        raise RangeOverflowError(
            f"legendre_p prefactor ((1+t)/(1-t))^(mu/2) diverges at t=1 for mu={mu!r}>0")
    zf = 0.5 * (1.0 - t)
    w = 0.5 * (1.0 + t)
    if fabs(mu) < 1e-13:
        r = floor(nu + 0.5)
        if fabs(nu - r) < 1e-12 and r >= 0.0:
            return _legendre_poly(<int>r, t)
        if zf <= 0.5:
            return hyp2f1(nu + 1.0, -nu, 1.0, zf)[0]
        return _legendre_p0_log(nu, zf, w)
    f = hyp2f1(nu + 1.0, -nu, 1.0 - mu, zf, w)[0]
    lg = lgamma(1.0 - mu)
    sg = gamma_sign(1.0 - mu)
    ln_pref = 0.5 * mu * (log(w) - log(zf)) - lg
    if ln_pref > LOG_MAX:
        raise RangeOverflowError(
            f"legendre_p prefactor overflow: mu={mu!r}, t={t!r} too close to 1")
    return sg * exp(ln_pref) * f


def legendre_q_phase_free(double mu, double nu, double t):
    cdef double tm1, tp1, z, zc, f, l1, s1, l2, s2, ln
    if t <= 1.0:
        raise DomainError(f"legendre_q argument t={t!r} must exceed 1")
    if is_nonpositive_integer(nu + 1.5, 1e-12):
        raise PoleError(f"legendre_q degree nu={nu!r} makes nu+3/2 a nonpositive integer")
    if is_nonpositive_integer(mu + nu + 1.0, 1e-12):
        raise PoleError(f"legendre_q parameters: mu+nu+1={mu + nu + 1.0!r} at a gamma pole")
    tm1 = t - 1.0
    tp1 = t + 1.0
    z = 1.0 / (t * t)
    zc = tm1 * tp1 * z
    f = hyp2f1(0.5 * (mu + nu) + 1.0, 0.5 * (mu + nu + 1.0), nu + 1.5, z, zc)[0]
    l1 = lgamma(mu + nu + 1.0)
    s1 = gamma_sign(mu + nu + 1.0)
    l2 = lgamma(nu + 1.5)
    s2 = gamma_sign(nu + 1.5)
    ln = (0.5 * log(PI) + l1 - l2
          + 0.5 * mu * (log(tm1) + log(tp1))
          - (nu + 1.0) * log(2.0)
          - (mu + nu + 1.0) * log(t))
    if ln > LOG_MAX:
        raise RangeOverflowError(f"legendre_q prefactor overflow at mu={mu!r}, t={t!r}")
    return s1 * s2 * exp(ln) * f


cpdef double gegenbauer(int n, double mu, double t):
    cdef double cm1 = 1.0, c, nxt
    cdef int j
    if n == 0:
        return 1.0
    c = 2.0 * mu * t
    for j in range(2, n + 1):
        nxt = (2.0 * t * (j + mu - 1.0) * c - (j + 2.0 * mu - 2.0) * cm1) / j
        cm1 = c
        c = nxt
    return c


# ---------------------------------------------------------------------------
# Triple-Bessel (Macdonald) kernel branch values, fused forms
# ---------------------------------------------------------------------------


def r_band_core(double mu, double nu, double xa, double ya, double za,
                double omt, double opt):
    cdef double f = hyp2f1(nu + 0.5, 0.5 - nu, mu + 0.5, 0.5 * omt, 0.5 * opt)[0]
    return (cpow(xa * ya, mu - 1.0) * cpow(omt, mu - 0.5) * f
            / (SQRT_2PI * cpow(za, mu) * exp(lgamma(mu + 0.5))))


def r_outer_core(double mu, double nu, double xa, double ya, double za,
                 double u, double um1):
    # sign fixed against the defining triple-Bessel integral; see _corepy
    cdef double delta = nu - mu
    cdef double sd, ln_u, z, zc, f, lgd, sgd, coef
    if fabs(delta - floor(delta + 0.5)) <= 1e-12:
        return 0.0
    sd = sinpi(mu - nu)
    ln_u = (delta + 1.0) * log(u)
    if ln_u > LOG_MAX:
        return 0.0
    z = 1.0 / (u * u)
    zc = um1 * (u + 1.0) * z
    f = hyp2f1(0.5 * delta + 1.0, 0.5 * (delta + 1.0), nu + 1.0, z, zc)[0]
    lgd = lgamma(delta + 1.0)
    sgd = gamma_sign(delta + 1.0)
    coef = sgd * exp(lgd - lgamma(nu + 1.0) - ln_u - (nu + 0.5) * log(2.0))
    return (sd * cpow(xa * ya, mu - 1.0) * sqrt(PI) * coef * f
            / (SQRT_HALF_PI3 * cpow(za, mu)))


def r_band(double mu, double nu, double xa, double ya, double za):
    cdef double twoxy = 2.0 * xa * ya
    cdef double d = xa - ya
    cdef double omt = (za - d) * (za + d) / twoxy
    cdef double s = xa + ya
    cdef double opt = (s - za) * (s + za) / twoxy
    return r_band_core(mu, nu, xa, ya, za, omt, opt)


def r_outer(double mu, double nu, double xa, double ya, double za):
    cdef double twoxy = 2.0 * xa * ya
    cdef double s = xa + ya
    cdef double um1 = (za - s) * (za + s) / twoxy
    return r_outer_core(mu, nu, xa, ya, za, 1.0 + um1, um1)


def r_gegenbauer_band(double mu, int n, double xa, double ya, double za):
    cdef double twoxy = 2.0 * xa * ya
    cdef double d = xa - ya
    cdef double omt = (za - d) * (za + d) / twoxy
    cdef double s = xa + ya
    cdef double opt = (s - za) * (s + za) / twoxy
    cdef double ct = 1.0 - omt
    cdef double ln_coef
    if ct < -1.0:
        ct = -1.0
    elif ct > 1.0:
        ct = 1.0
    ln_coef = ((0.5 - mu) * log(2.0) + lgamma(2.0 * mu) + lgamma(n + 1.0)
               - lgamma(n + 2.0 * mu) - lgamma(mu + 0.5))
    return (exp(ln_coef) * cpow(xa * ya, mu - 1.0)
            * cpow(omt * opt, mu - 0.5) * gegenbauer(n, mu, ct)
            / (SQRT_2PI * cpow(za, mu)))
