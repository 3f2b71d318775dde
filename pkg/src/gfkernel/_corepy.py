"""Pure-Python scalar kernels: the reference implementation of the hot path.

Everything here is a plain function of floats returning floats (or a
(value, err) pair), with no shared state, so the compiled twin in
``_core.pyx`` can mirror it one-to-one.  Public argument validation lives in
the wrapper modules; this layer only guards against the failure modes that
appear mid-computation (poles, nonconvergence, degenerate connection
formulas).

Numerical notes
---------------
* The normalized-Bessel power series is accumulated in double-double
  arithmetic: the series alternates and loses up to ~11 digits to
  cancellation near the series/asymptotic crossover, which plain (even
  Kahan-compensated) double summation cannot recover.
* Band and outer values of the triple-Bessel kernel are evaluated in fused
  form: the algebraic prefactors of the Legendre functions cancel against
  the sin/sinh powers analytically, so no (1-t^2) or (u^2-1) power is ever
  formed near a region edge.  Callers supply the two endpoint complements
  (1 -+ cos(theta), u - 1) which they can compute stably.
"""

import math

from .errors import (
    ConvergenceError,
    DegenerateParameterError,
    DomainError,
    PoleError,
    RangeOverflowError,
)

_SQRT_2PI = math.sqrt(2.0 * math.pi)
# (pi^3 / 2)^(1/2), the outer-branch normalization
_SQRT_HALF_PI3 = math.sqrt(0.5 * math.pi ** 3)
_SPLITTER = 134217729.0  # 2^27 + 1, Dekker split constant
_LOG_MAX = 709.0

# ---------------------------------------------------------------------------
# gamma-family helpers
# ---------------------------------------------------------------------------


def is_nonpositive_integer(x, tol=1e-12):
    """True when x is within tol of an integer <= 0."""
    if x > 0.5:
        return False
    r = round(x)
    return r <= 0 and abs(x - r) <= tol


def gamma_sign(x):
    """Sign of Gamma(x); raises on poles."""
    if x > 0.0:
        return 1.0
    if x == math.floor(x):
        raise PoleError(f"gamma pole at x={x!r}")
    # Gamma alternates sign between consecutive negative integers.
    return 1.0 if (math.floor(-x) % 2 == 1) else -1.0


def log_abs_gamma(x):
    """(log|Gamma(x)|, sign); pole error at nonpositive integers."""
    if x <= 0.0 and x == math.floor(x):
        raise PoleError(f"gamma pole at x={x!r}")
    return math.lgamma(x), gamma_sign(x)


def gammafn(x):
    """Gamma(x) with sign, via lgamma (overflow saturates to +-inf)."""
    ln, s = log_abs_gamma(x)
    if ln > _LOG_MAX:
        return s * math.inf
    return s * math.exp(ln)


def rgamma(x):
    """1/Gamma(x); exactly 0.0 at (near-)nonpositive-integer arguments."""
    if is_nonpositive_integer(x):
        return 0.0
    ln, s = log_abs_gamma(x)
    if ln < -_LOG_MAX:
        return 0.0
    return s * math.exp(-ln)


def sinpi(x):
    """sin(pi*x), exact at integers."""
    r = round(x)
    s = math.sin(math.pi * (x - r))
    return s if (r % 2 == 0) else -s


def digamma(x):
    """psi(x) by reflection + recurrence + asymptotic tail."""
    if x <= 0.0:
        if x == math.floor(x):
            raise PoleError(f"digamma pole at x={x!r}")
        # psi(x) = psi(1-x) - pi*cot(pi*x)
        return digamma(1.0 - x) - math.pi / math.tan(math.pi * x)
    acc = 0.0
    while x < 10.0:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    # Bernoulli tail B_2k/(2k x^2k), k = 1..7
    tail = inv2 * (1.0 / 12.0
                   - inv2 * (1.0 / 120.0
                             - inv2 * (1.0 / 252.0
                                       - inv2 * (1.0 / 240.0
                                                 - inv2 * (1.0 / 132.0
                                                           - inv2 * (691.0 / 32760.0
                                                                     - inv2 / 12.0))))))
    return acc + math.log(x) - 0.5 / x - tail


# ---------------------------------------------------------------------------
# double-double primitives (error-free transformations)
# ---------------------------------------------------------------------------


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _fast_two_sum(a, b):
    # requires |a| >= |b|
    s = a + b
    return s, b - (s - a)


def _two_prod(a, b):
    p = a * b
    t = _SPLITTER * a
    ah = t - (t - a)
    al = a - ah
    t = _SPLITTER * b
    bh = t - (t - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _dd_add(xh, xl, yh, yl):
    sh, sl = _two_sum(xh, yh)
    sl += xl + yl
    return _fast_two_sum(sh, sl)


def _dd_mul(xh, xl, yh, yl):
    ph, pl = _two_prod(xh, yh)
    pl += xh * yl + xl * yh
    return _fast_two_sum(ph, pl)


def _dd_div(xh, xl, yh, yl):
    q1 = xh / yh
    th, tl = _two_prod(q1, yh)
    tl += q1 * yl
    rh, rl = _dd_add(xh, xl, -th, -tl)
    q2 = (rh + rl) / yh
    return _fast_two_sum(q1, q2)


# ---------------------------------------------------------------------------
# Bessel J and its normalized variant
# ---------------------------------------------------------------------------


def bessel_crossover(nu):
    """Series/asymptotic switch point max(25, 2 nu^2)."""
    return max(25.0, 2.0 * nu * nu)


def normalized_bessel_series(nu, x):
    """sum_n (-1)^n (x/2)^(2n) / (n! (nu+1)_n) in double-double arithmetic.

    Valid for any nu > -1; intended for x below the asymptotic crossover.
    """
    half = 0.5 * x
    qh, ql = _two_prod(half, half)
    qh, ql = -qh, -ql  # builds the alternation into the term recurrence
    th, tl = 1.0, 0.0
    sh, sl = 1.0, 0.0
    n = 1
    while n <= 600:
        fn = float(n)
        # denominator n*(nu+n), exactly represented as a double-double
        ah, al = _two_sum(nu, fn)
        dh, dl = _two_prod(ah, fn)
        dl += al * fn
        th, tl = _dd_mul(th, tl, qh, ql)
        th, tl = _dd_div(th, tl, dh, dl)
        sh, sl = _dd_add(sh, sl, th, tl)
        if abs(th) <= 1e-35 * abs(sh) + 1e-305:
            return sh + sl
        n += 1
    raise ConvergenceError(
        f"normalized Bessel series did not converge (nu={nu!r}, x={x!r})")


def bessel_j_asymptotic(nu, x):
    """Hankel large-argument expansion, summed to its smallest term."""
    mu4 = 4.0 * nu * nu
    p = 1.0
    q = 0.0
    ak = 1.0
    prev = math.inf
    k = 1
    while k <= 64:
        f = 2.0 * k - 1.0
        ak *= (mu4 - f * f) / (8.0 * k * x)
        if ak == 0.0:
            break  # half-integer order: expansion terminates exactly
        a = abs(ak)
        if a >= prev:
            break  # past the smallest term: stop before divergence
        sign = -1.0 if (k >> 1) & 1 else 1.0
        if k & 1:
            q += sign * ak
        else:
            p += sign * ak
        if a < 1e-17 * (abs(p) + abs(q)):
            break
        prev = a
        k += 1
    omega = x - (0.5 * nu + 0.25) * math.pi
    return math.sqrt(2.0 / (math.pi * x)) * (math.cos(omega) * p - math.sin(omega) * q)


def bessel_j(nu, x):
    """J_nu(x) for nu > -1, x >= 0."""
    if x == 0.0:
        if nu == 0.0:
            return 1.0
        return 0.0 if nu > 0.0 else math.inf
    if x <= bessel_crossover(nu):
        # (x/2)^nu / Gamma(nu+1) times the normalized series; Gamma(nu+1) > 0
        pref = math.pow(0.5 * x, nu) * math.exp(-math.lgamma(nu + 1.0))
        return pref * normalized_bessel_series(nu, x)
    return bessel_j_asymptotic(nu, x)


def normalized_bessel_j(nu, x):
    """Gamma(nu+1) (x/2)^(-nu) J_nu(x); equals 1 at x = 0."""
    if x == 0.0:
        return 1.0
    if x <= bessel_crossover(nu):
        return normalized_bessel_series(nu, x)
    pref = math.exp(math.lgamma(nu + 1.0) - nu * math.log(0.5 * x))
    return pref * bessel_j_asymptotic(nu, x)


# ---------------------------------------------------------------------------
# Gauss hypergeometric 2F1 on [0, 1)
# ---------------------------------------------------------------------------


def gauss_series(a, b, c, z, nmax=4000):
    """Plain Gauss series with Kahan compensation; returns (value, err)."""
    term = 1.0
    s = 1.0
    comp = 0.0
    abssum = 1.0
    n = 0
    while n < nmax:
        r = (a + n) * (b + n) / ((c + n) * (1.0 + n)) * z
        term *= r
        if term == 0.0:
            return s + comp, 1e-16 * abssum
        y = term - comp
        t = s + y
        comp = (t - s) - y
        s = t
        abssum += abs(term)
        n += 1
        if abs(term) <= 1e-17 * abs(s) and n > 4:
            rho = abs((a + n) * (b + n) / ((c + n) * (1.0 + n)) * z)
            tail = abs(term) * rho / (1.0 - rho) if rho < 1.0 else abs(term) * 10.0
            return s, tail + 1e-16 * abssum
    raise ConvergenceError(
        f"2F1 series did not converge (a={a!r}, b={b!r}, c={c!r}, z={z!r})")


def _terminating_series(a, b, c, z, nterms):
    term = 1.0
    s = 1.0
    comp = 0.0
    abssum = 1.0
    for n in range(nterms):
        term *= (a + n) * (b + n) / ((c + n) * (1.0 + n)) * z
        y = term - comp
        t = s + y
        comp = (t - s) - y
        s = t
        abssum += abs(term)
    return s, 1e-16 * abssum


def _gamma_ratio(num, den):
    """prod Gamma(num_i) / prod Gamma(den_j), 0.0 when a denominator poles."""
    ln = 0.0
    sign = 1.0
    for v in num:
        if is_nonpositive_integer(v):
            raise PoleError(f"gamma pole at {v!r} in coefficient")
        l, s = log_abs_gamma(v)
        ln += l
        sign *= s
    for v in den:
        if is_nonpositive_integer(v):
            return 0.0
        l, s = log_abs_gamma(v)
        ln -= l
        sign *= s
    if ln > _LOG_MAX:
        raise RangeOverflowError("gamma ratio overflow in 2F1 connection formula")
    return sign * math.exp(ln)


def hyp2f1(a, b, c, z, zc=None):
    """2F1(a, b; c; z) for z in [0, 1); returns (value, est_error).

    ``zc`` may supply an accurately computed 1-z; callers sitting close to
    z = 1 (quadrature near a region edge) need this because forming 1-z by
    subtraction would lose every significant digit there.

    Terminating series (a or b a nonpositive integer) are summed directly
    for any z.  Otherwise the Gauss series handles z <= 1/2, and the linear
    connection formula handles z > 1/2; when c-a-b is within 1e-8 of an
    integer that path is degenerate and an explicit error is raised.
    """
    if is_nonpositive_integer(c):
        raise PoleError(f"2F1 parameter c={c!r} is a nonpositive integer")
    if z == 0.0:
        return 1.0, 0.0
    if z < 0.0:
        # tolerate roundoff from complement arithmetic at region edges
        if z > -1e-12:
            return 1.0, 1e-12
        raise DomainError(f"2F1 argument z={z!r} outside [0, 1)")
    if z >= 1.0 and not (zc is not None and zc > 0.0):
        raise DomainError(f"2F1 argument z={z!r} outside [0, 1)")
    for par in (a, b):
        r = round(par)
        if r <= 0 and abs(par - r) <= 1e-12:
            return _terminating_series(a, b, c, z, int(-r))
    if z <= 0.5:
        return gauss_series(a, b, c, z)
    w = zc if zc is not None else 1.0 - z
    d = c - a - b
    if abs(d - round(d)) < 1e-8:
        raise DegenerateParameterError(
            f"2F1 connection formula degenerate: c-a-b={d!r} is (near) an integer")
    f1, e1 = gauss_series(a, b, a + b - c + 1.0, w)
    f2, e2 = gauss_series(c - a, c - b, d + 1.0, w)
    c1 = _gamma_ratio((c, d), (c - a, c - b))
    c2 = _gamma_ratio((c, -d), (a, b)) * math.pow(w, d)
    val = c1 * f1 + c2 * f2
    err = abs(c1) * e1 + abs(c2) * e2 + 2e-16 * (abs(c1 * f1) + abs(c2 * f2))
    return val, err


# ---------------------------------------------------------------------------
# Legendre functions
# ---------------------------------------------------------------------------


def _legendre_poly(n, t):
    """P_n(t) by the three-term recurrence."""
    if n == 0:
        return 1.0
    pm1 = 1.0
    p = t
    for j in range(1, n):
        pm1, p = p, ((2.0 * j + 1.0) * t * p - j * pm1) / (j + 1.0)
    return p


def _legendre_p0_log(nu, zf, w):
    """Ordinary Legendre P_nu(t) for zf = (1-t)/2 > 1/2, non-integer degree.

    Degenerate (c = a+b) connection series with digamma terms; w = (1+t)/2
    is the accurately-known complement.
    """
    a = nu + 1.0
    b = -nu
    # 1/(Gamma(a) Gamma(b)) with sign
    la, sa = log_abs_gamma(a)
    lb, sb = log_abs_gamma(b)
    g = sa * sb * math.exp(-(la + lb))
    lnw = math.log(w)
    psi_n1 = digamma(1.0)
    psi_an = digamma(a)
    psi_bn = digamma(b)
    coef = 1.0
    s = 0.0
    wn = 1.0
    for n in range(0, 400):
        if n > 0:
            coef *= (a + n - 1.0) * (b + n - 1.0) / (n * n)
            wn *= w
            psi_n1 += 1.0 / n
            psi_an += 1.0 / (a + n - 1.0)
            psi_bn += 1.0 / (b + n - 1.0)
        term = coef * wn * (2.0 * psi_n1 - psi_an - psi_bn - lnw)
        s += term
        if n > 3 and abs(term) <= 1e-17 * abs(s):
            return g * s
    raise ConvergenceError(f"Legendre log-series did not converge (nu={nu!r})")


def legendre_p(mu, nu, t):
    """Associated Legendre P^mu_nu(t) on the cut, t in (-1, 1]."""
    if not -1.0 < t <= 1.0:
        raise DomainError(f"legendre_p argument t={t!r} outside (-1, 1]")
    if is_nonpositive_integer(1.0 - mu):
        raise PoleError(f"legendre_p order mu={mu!r} makes 1-mu a nonpositive integer")
    if nu < -0.5:
        nu = -1.0 - nu  # degree reflection P^mu_nu = P^mu_{-1-nu}
    if t == 1.0:
        if mu == 0.0:
            return 1.0
        if mu < 0.0:
            return 0.0
        raise RangeOverflowError(
            f"legendre_p prefactor ((1+t)/(1-t))^(mu/2) diverges at t=1 for mu={mu!r}>0")
    zf = 0.5 * (1.0 - t)
    w = 0.5 * (1.0 + t)
    if abs(mu) < 1e-13:
        r = round(nu)
        if abs(nu - r) < 1e-12 and r >= 0:
            return _legendre_poly(int(r), t)
        if zf <= 0.5:
            val, _ = hyp2f1(nu + 1.0, -nu, 1.0, zf)
            return val
        return _legendre_p0_log(nu, zf, w)
    f, _ = hyp2f1(nu + 1.0, -nu, 1.0 - mu, zf, zc=w)
    lg, sg = log_abs_gamma(1.0 - mu)
    # ((1+t)/(1-t))^(mu/2) = ((1+t)/2)^(mu/2) * ((1-t)/2)^(-mu/2)
    ln_pref = 0.5 * mu * (math.log(w) - math.log(zf)) - lg
    if ln_pref > _LOG_MAX:
        raise RangeOverflowError(
            f"legendre_p prefactor overflow: mu={mu!r}, t={t!r} too close to 1")
    return sg * math.exp(ln_pref) * f


def legendre_q_phase_free(mu, nu, t):
    """e^(-mu pi i) Q^mu_nu(t) for t > 1: the real, phase-stripped value."""
    if t <= 1.0:
        raise DomainError(f"legendre_q argument t={t!r} must exceed 1")
    if is_nonpositive_integer(nu + 1.5):
        raise PoleError(f"legendre_q degree nu={nu!r} makes nu+3/2 a nonpositive integer")
    if is_nonpositive_integer(mu + nu + 1.0):
        raise PoleError(f"legendre_q parameters: mu+nu+1={mu + nu + 1.0!r} at a gamma pole")
    tm1 = t - 1.0
    tp1 = t + 1.0
    z = 1.0 / (t * t)
    zc = tm1 * tp1 * z
    f, _ = hyp2f1(0.5 * (mu + nu) + 1.0, 0.5 * (mu + nu + 1.0), nu + 1.5, z, zc=zc)
    l1, s1 = log_abs_gamma(mu + nu + 1.0)
    l2, s2 = log_abs_gamma(nu + 1.5)
    ln = (0.5 * math.log(math.pi) + l1 - l2
          + 0.5 * mu * (math.log(tm1) + math.log(tp1))
          - (nu + 1.0) * math.log(2.0)
          - (mu + nu + 1.0) * math.log(t))
    if ln > _LOG_MAX:
        raise RangeOverflowError(f"legendre_q prefactor overflow at mu={mu!r}, t={t!r}")
    return s1 * s2 * math.exp(ln) * f


def gegenbauer(n, mu, t):
    """Gegenbauer polynomial C_n^mu(t) by the three-term recurrence."""
    if n == 0:
        return 1.0
    cm1 = 1.0
    c = 2.0 * mu * t
    for j in range(2, n + 1):
        cm1, c = c, (2.0 * t * (j + mu - 1.0) * c - (j + 2.0 * mu - 2.0) * cm1) / j
    return c


# ---------------------------------------------------------------------------
# Triple-Bessel (Macdonald) kernel branch values, fused forms
# ---------------------------------------------------------------------------
#
# Band:   R = (xy)^(mu-1) (1-t)^(mu-1/2)
#             * 2F1(nu+1/2, 1/2-nu; mu+1/2; (1-t)/2) / (sqrt(2 pi) z^mu G(mu+1/2))
# Outer:  R = sin((nu-mu) pi) (xy)^(mu-1) sqrt(pi) G(nu-mu+1)
#             * 2F1((nu-mu)/2+1, (nu-mu+1)/2; nu+1; 1/u^2)
#             / ( sqrt(pi^3/2) z^mu 2^(nu+1/2) G(nu+1) u^(nu-mu+1) )
#
# Both follow from inserting the hypergeometric representations of P and Q
# and cancelling the sin/sinh powers against the Legendre prefactors; the
# cancellation is exact, which is also what makes the outer value real.


def r_band_core(mu, nu, xa, ya, za, omt, opt):
    """Band value of R_{mu,nu}(xa, ya, za) given omt = 1-cos(theta), opt = 1+cos(theta)."""
    f, _ = hyp2f1(nu + 0.5, 0.5 - nu, mu + 0.5, 0.5 * omt, zc=0.5 * opt)
    return (math.pow(xa * ya, mu - 1.0) * math.pow(omt, mu - 0.5) * f
            / (_SQRT_2PI * math.pow(za, mu) * math.exp(math.lgamma(mu + 0.5))))


def r_outer_core(mu, nu, xa, ya, za, u, um1):
    """Outer value of R_{mu,nu}(xa, ya, za) given u = cosh(theta) and um1 = u-1.

    The sign factor is sin((mu-nu) pi): fixed against direct evaluation of
    the defining triple-Bessel integral (the printed closed form carries the
    opposite sign, which fails that comparison and breaks the mass
    normalization of the product density).
    """
    delta = nu - mu
    if abs(delta - round(delta)) <= 1e-12:
        return 0.0
    sd = sinpi(mu - nu)
    ln_u = (delta + 1.0) * math.log(u)
    if ln_u > _LOG_MAX:
        return 0.0  # value underflows: u^-(nu-mu+1) below double range
    z = 1.0 / (u * u)
    zc = um1 * (u + 1.0) * z
    f, _ = hyp2f1(0.5 * delta + 1.0, 0.5 * (delta + 1.0), nu + 1.0, z, zc=zc)
    lgd, sgd = log_abs_gamma(delta + 1.0)
    coef = sgd * math.exp(lgd - math.lgamma(nu + 1.0) - ln_u - (nu + 0.5) * math.log(2.0))
    return (sd * math.pow(xa * ya, mu - 1.0) * math.sqrt(math.pi) * coef * f
            / (_SQRT_HALF_PI3 * math.pow(za, mu)))


def r_band(mu, nu, xa, ya, za):
    """Band value from a raw triple (|xa-ya| < za < xa+ya)."""
    twoxy = 2.0 * xa * ya
    d = xa - ya
    omt = (za - d) * (za + d) / twoxy
    s = xa + ya
    opt = (s - za) * (s + za) / twoxy
    return r_band_core(mu, nu, xa, ya, za, omt, opt)


def r_outer(mu, nu, xa, ya, za):
    """Outer value from a raw triple (za > xa+ya)."""
    twoxy = 2.0 * xa * ya
    s = xa + ya
    um1 = (za - s) * (za + s) / twoxy
    return r_outer_core(mu, nu, xa, ya, za, 1.0 + um1, um1)


def r_gegenbauer_band(mu, n, xa, ya, za):
    """Band value in the integer-offset case nu = mu + n, via C_n^mu."""
    twoxy = 2.0 * xa * ya
    d = xa - ya
    omt = (za - d) * (za + d) / twoxy
    s = xa + ya
    opt = (s - za) * (s + za) / twoxy
    ct = 1.0 - omt
    if ct < -1.0:
        ct = -1.0
    elif ct > 1.0:
        ct = 1.0
    ln_coef = ((0.5 - mu) * math.log(2.0) + math.lgamma(2.0 * mu) + math.lgamma(n + 1.0)
               - math.lgamma(n + 2.0 * mu) - math.lgamma(mu + 0.5))
    return (math.exp(ln_coef) * math.pow(xa * ya, mu - 1.0)
            * math.pow(omt * opt, mu - 0.5) * gegenbauer(n, mu, ct)
            / (_SQRT_2PI * math.pow(za, mu)))
