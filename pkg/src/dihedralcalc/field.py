"""Exact scalar arithmetic for rank-2 Schubert and stability computations.

Two ground fields are supported.

* Cyclotomic mode: Q(theta) with theta = 2*cos(2*pi/N).  For the dihedral
  group I2(n) the working field uses N = 4n, i.e. theta = 2*cos(pi/(2*n)).
  That one field houses t + 1/t = 2*cos(pi/n) = theta**2 - 2 (with
  t = exp(i*pi/n)), q + 1/q = theta (with q = t**(1/2)), and the cosine of
  every integer multiple of pi/(2*n).
* Hyperbolic mode: t is a positive rational, every scalar is rational, and
  theta denotes t + 1/t.

Elements are coefficient vectors over the power basis 1, theta, ...,
theta**(degree-1) with Fraction entries, reduced modulo the minimal
polynomial of theta.  Signs are decided exactly: zero by coefficient
comparison, nonzero by a float estimate confirmed through interval
arithmetic at increasing precision.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

import mpmath

from .errors import InvalidParameterError, UnsupportedModeError, VerificationError

Rational = Union[int, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


# ---------------------------------------------------------------------------
# integer polynomial helpers (coefficient lists, low degree first)
# ---------------------------------------------------------------------------

def _poly_mul_int(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _poly_div_exact_int(num: Sequence[int], den: Sequence[int]) -> list[int]:
    # den must be monic and divide num exactly
    num = list(num)
    dd = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quot[i - dd] = c
            for j, dj in enumerate(den):
                num[i - dd + j] -= c * dj
    if any(num):
        raise ValueError("division not exact")
    return quot


_CYCLO_CACHE: dict[int, tuple[int, ...]] = {1: (-1, 1)}


def cyclotomic_polynomial(N: int) -> tuple[int, ...]:
    """Integer coefficients of the N-th cyclotomic polynomial, low degree first."""
    if N < 1:
        raise InvalidParameterError("N must be positive")
    cached = _CYCLO_CACHE.get(N)
    if cached is not None:
        return cached
    # x^N - 1 divided by the product of Phi_d over proper divisors d of N
    num = [0] * (N + 1)
    num[0], num[N] = -1, 1
    for d in range(1, N):
        if N % d == 0:
            num = _poly_div_exact_int(num, cyclotomic_polynomial(d))
    result = tuple(num)
    _CYCLO_CACHE[N] = result
    return result


def _dickson(k: int) -> list[int]:
    # D_k with D_k(x + 1/x) = x^k + x^(-k): D_0 = 2, D_1 = y, D_{k+1} = y*D_k - D_{k-1}
    prev, cur = [2], [0, 1]
    if k == 0:
        return prev
    for _ in range(k - 1):
        nxt = [0] + cur
        for i, p in enumerate(prev):
            nxt[i] -= p
        prev, cur = cur, nxt
    return cur


def real_subfield_min_poly(N: int) -> tuple[int, ...]:
    """Minimal polynomial of 2*cos(2*pi/N) over Q, monic, low degree first.

    Obtained from the N-th cyclotomic polynomial Phi_N, which is palindromic
    of even degree 2d for N >= 3, by substituting x^k + x^(-k) = D_k(y).
    """
    if N < 3:
        raise InvalidParameterError("need N >= 3")
    phi = cyclotomic_polynomial(N)
    deg = len(phi) - 1
    if deg % 2 != 0:
        raise InvalidParameterError("cyclotomic degree not even")
    d = deg // 2
    out = [0] * (d + 1)
    out[0] = phi[d]
    for k in range(1, d + 1):
        if phi[d + k] != phi[d - k]:
            raise ValueError("cyclotomic polynomial not palindromic")
        for i, c in enumerate(_dickson(k)):
            out[i] += phi[d + k] * c
    if out[-1] != 1:
        raise ValueError("expected monic result")
    return tuple(out)


# ---------------------------------------------------------------------------
# descriptors
# ---------------------------------------------------------------------------

class FieldDescriptor:
    """Immutable description of the ground field plus derived caches.

    Create through field_init (dihedral working field) or real_cyclotomic
    (plain real cyclotomic field, used for low-degree angle computations).
    """

    def __init__(self, mode: str, *, n: int | None = None, N: int | None = None,
                 t: Fraction | None = None, _token: object = None):
        if _token is not _DESCR_TOKEN:
            raise InvalidParameterError(
                "use field_init or real_cyclotomic to build descriptors")
        self.mode = mode
        self.n = n
        self.N = N
        self.t = t
        if mode == "cyclotomic":
            assert N is not None and N >= 3
            self.min_poly: tuple[Fraction, ...] = tuple(
                Fraction(c) for c in real_subfield_min_poly(N))
            self.degree = len(self.min_poly) - 1
            self._verify_root_interval()
        elif mode == "hyperbolic":
            assert t is not None and t > 0
            theta = t + 1 / t
            self.min_poly = (-theta, _ONE)
            self.degree = 1
        else:
            raise InvalidParameterError(f"unknown mode {mode!r}")
        # n_t: order of t**2 in C^*; None encodes infinity
        self.n_t: int | None = n if mode == "cyclotomic" else None
        self._pow_rows = self._reduction_rows()
        self.zero = FieldElement(self, (_ZERO,) * self.degree)
        self.one = FieldElement(self, (_ONE,) + (_ZERO,) * (self.degree - 1))
        if self.degree > 1:
            coeffs = [_ZERO] * self.degree
            coeffs[1] = _ONE
            self.theta = FieldElement(self, tuple(coeffs))
        else:
            self.theta = FieldElement(self, (-self.min_poly[0],))
        self._theta_float = self._compute_theta_float()
        self._two_cos_cache: dict[int, FieldElement] = {}
        self._t_numbers: list[FieldElement] = []
        self._q_numbers: list[FieldElement] = []
        self._binom_cache: dict[tuple[int, int], FieldElement] = {}

    # -- construction checks ------------------------------------------------

    def _verify_root_interval(self) -> None:
        # the intended root 2*cos(2*pi/N) must lie in a 1e-9 window
        with mpmath.workdps(40):
            target = 2 * mpmath.cos(2 * mpmath.pi / self.N)
            lo = self._eval_min_poly(target - mpmath.mpf("1e-9"))
            hi = self._eval_min_poly(target + mpmath.mpf("1e-9"))
        if not (lo * hi < 0):
            raise VerificationError(
                f"minimal polynomial has no sign change around 2cos(2pi/{self.N})")

    def _eval_min_poly(self, x):
        acc = 0
        for c in reversed(self.min_poly):
            acc = acc * x + mpmath.mpf(c.numerator) / c.denominator
        return acc

    def _reduction_rows(self) -> list[tuple[Fraction, ...]]:
        # rows[e - degree] = coefficients of theta**e reduced, for e in [degree, 2*degree-2]
        d = self.degree
        rows: list[tuple[Fraction, ...]] = []
        if d == 1:
            return rows
        cur = [-c for c in self.min_poly[:d]]
        rows.append(tuple(cur))
        for _ in range(d - 2):
            shifted = [_ZERO] + cur[:-1]
            top = cur[-1]
            if top:
                for i in range(d):
                    shifted[i] -= top * self.min_poly[i]
            cur = shifted
            rows.append(tuple(cur))
        return rows

    def _compute_theta_float(self) -> float:
        if self.mode == "hyperbolic":
            return float(self.t + 1 / self.t)
        with mpmath.workdps(30):
            return float(2 * mpmath.cos(2 * mpmath.pi / self.N))

    # -- element constructors -------------------------------------------------

    def element(self, coeffs: Iterable[Rational]) -> FieldElement:
        vec = tuple(Fraction(c) for c in coeffs)
        if len(vec) != self.degree:
            raise InvalidParameterError(
                f"expected {self.degree} coefficients, got {len(vec)}")
        return FieldElement(self, vec)

    def from_rational(self, value: Rational) -> FieldElement:
        return FieldElement(
            self, (Fraction(value),) + (_ZERO,) * (self.degree - 1))

    def two_cos(self, k: int) -> FieldElement:
        """The element 2*cos(2*pi*k/N) (cyclotomic mode only)."""
        if self.mode != "cyclotomic":
            raise UnsupportedModeError("angles exist only in cyclotomic mode")
        k = k % self.N
        k = min(k, self.N - k)
        cached = self._two_cos_cache.get(k)
        if cached is None:
            # D_k(theta) with D defined by D_k(x + 1/x) = x^k + x^(-k)
            if k == 0:
                cached = self.from_rational(2)
            elif k == 1:
                cached = self.theta
            else:
                prev, cur = self.from_rational(2), self.theta
                for _ in range(k - 1):
                    prev, cur = cur, self.theta * cur - prev
                cached = cur
            self._two_cos_cache[k] = cached
        return cached

    # -- serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        if self.mode == "hyperbolic":
            return {"mode": "hyperbolic", "t": str(self.t)}
        doc = {"mode": "cyclotomic",
               "min_poly": [int(c) for c in self.min_poly]}
        if self.n is not None:
            doc["n"] = self.n
        else:
            doc["N"] = self.N
        return doc

    def __repr__(self) -> str:
        if self.mode == "hyperbolic":
            return f"FieldDescriptor(hyperbolic, t={self.t})"
        if self.n is not None:
            return f"FieldDescriptor(cyclotomic, n={self.n})"
        return f"FieldDescriptor(cyclotomic, N={self.N})"


_DESCR_TOKEN = object()
_DESCRIPTORS: dict[tuple, FieldDescriptor] = {}


def field_init(n: int | None = None, *, t: Rational | None = None) -> FieldDescriptor:
    """Build the working field for I2(n) (cyclotomic) or for rational t > 0.

    Exactly one of n and t must be given.  Cyclotomic mode requires n >= 2
    and uses theta = 2*cos(pi/(2*n)) of degree phi(4n)/2 over Q.  Hyperbolic
    mode accepts any positive rational t (t = 1 included; the group is then
    infinite dihedral) and works with plain rationals.
    """
    if (n is None) == (t is None):
        raise InvalidParameterError("give exactly one of n, t")
    if n is not None:
        if not isinstance(n, int) or n < 2:
            raise InvalidParameterError("n must be an integer >= 2")
        key = ("dihedral", n)
        if key not in _DESCRIPTORS:
            _DESCRIPTORS[key] = FieldDescriptor(
                "cyclotomic", n=n, N=4 * n, _token=_DESCR_TOKEN)
        return _DESCRIPTORS[key]
    tq = Fraction(t)
    if tq <= 0:
        raise InvalidParameterError("t must be a positive rational")
    key = ("hyperbolic", tq)
    if key not in _DESCRIPTORS:
        _DESCRIPTORS[key] = FieldDescriptor(
            "hyperbolic", t=tq, _token=_DESCR_TOKEN)
    return _DESCRIPTORS[key]


def real_cyclotomic(N: int) -> FieldDescriptor:
    """The field Q(2*cos(2*pi/N)), N >= 3.  Carries angles but no t-structure."""
    if not isinstance(N, int) or N < 3:
        raise InvalidParameterError("N must be an integer >= 3")
    key = ("real", N)
    if key not in _DESCRIPTORS:
        _DESCRIPTORS[key] = FieldDescriptor(
            "cyclotomic", N=N, _token=_DESCR_TOKEN)
    return _DESCRIPTORS[key]


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------

class FieldElement:
    __slots__ = ("descr", "coeffs", "_sign")

    def __init__(self, descr: FieldDescriptor, coeffs: tuple[Fraction, ...]):
        self.descr = descr
        self.coeffs = coeffs
        self._sign: int | None = None

    # -- ring operations ----------------------------------------------------

    def _coerce(self, other) -> "FieldElement | None":
        if isinstance(other, FieldElement):
            if other.descr is not self.descr:
                raise InvalidParameterError("mixed field descriptors")
            return other
        if isinstance(other, (int, Fraction)):
            return self.descr.from_rational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.descr, tuple(
            a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.descr, tuple(
            a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return FieldElement(self.descr, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self.descr.zero
            f = Fraction(other)
            return FieldElement(self.descr, tuple(a * f for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.descr.degree
        if d == 1:
            return FieldElement(self.descr, (self.coeffs[0] * o.coeffs[0],))
        prod = [_ZERO] * (2 * d - 1)
        for i, ai in enumerate(self.coeffs):
            if ai:
                for j, bj in enumerate(o.coeffs):
                    if bj:
                        prod[i + j] += ai * bj
        out = prod[:d]
        rows = self.descr._pow_rows
        for e in range(d, 2 * d - 1):
            ce = prod[e]
            if ce:
                row = rows[e - d]
                for i, ri in enumerate(row):
                    if ri:
                        out[i] += ce * ri
        return FieldElement(self.descr, tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            if f == 0:
                raise ZeroDivisionError("division by zero")
            return FieldElement(self.descr, tuple(a / f for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = self.descr.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        d = self.descr.degree
        if d == 1:
            return FieldElement(self.descr, (1 / self.coeffs[0],))
        # extended Euclid: u*self + v*min_poly = gcd (a nonzero constant)
        a = list(self.coeffs)
        b = list(self.descr.min_poly)
        ua: list[Fraction] = [_ONE]
        ub: list[Fraction] = [_ZERO]
        while True:
            while a and a[-1] == 0:
                a.pop()
            if len(a) == 1:
                inv_coeffs = [c / a[0] for c in ua[:d]]
                inv_coeffs += [_ZERO] * (d - len(inv_coeffs))
                return FieldElement(self.descr, tuple(inv_coeffs))
            if not a:
                raise ZeroDivisionError("inverse of zero")
            # b = q*a + r; replace (a, b) by (r, a), tracking u-coefficients
            q = [_ZERO] * (len(b) - len(a) + 1)
            r = list(b)
            for i in range(len(r) - 1, len(a) - 2, -1):
                if r[i]:
                    c = r[i] / a[-1]
                    q[i - len(a) + 1] = c
                    for j, aj in enumerate(a):
                        r[i - len(a) + 1 + j] -= c * aj
            while r and r[-1] == 0:
                r.pop()
            # new u = ub - q*ua (mod nothing; degrees stay < 2d)
            qa = [_ZERO] * (len(q) + len(ua) - 1)
            for i, qi in enumerate(q):
                if qi:
                    for j, uj in enumerate(ua):
                        if uj:
                            qa[i + j] += qi * uj
            new_u = [_ZERO] * max(len(ub), len(qa))
            for i, c in enumerate(ub):
                new_u[i] += c
            for i, c in enumerate(qa):
                new_u[i] -= c
            a, b = r, a
            ua, ub = new_u, ua

    # -- predicates and conversions -------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise UnsupportedModeError("element is irrational")
        return self.coeffs[0]

    def sign(self) -> int:
        if self._sign is None:
            self._sign = self._compute_sign()
        return self._sign

    def _compute_sign(self) -> int:
        if self.is_zero():
            return 0
        if self.descr.degree == 1:
            return 1 if self.coeffs[0] > 0 else -1
        # float fast path with a crude magnitude-based error margin
        try:
            th = self.descr._theta_float
            val, mag, p = 0.0, 0.0, 1.0
            for c in self.coeffs:
                cf = float(c)
                val += cf * p
                mag += abs(cf) * abs(p)
                p *= th
            if abs(val) > 1e-9 * (mag + 1.0):
                return 1 if val > 0 else -1
        except OverflowError:
            pass
        prec = 64
        while prec <= 4096:
            iv = mpmath.iv
            old = iv.prec
            try:
                iv.prec = prec
                theta = 2 * iv.cos(2 * iv.pi / self.descr.N)
                acc = iv.mpf(0)
                for c in reversed(self.coeffs):
                    acc = acc * theta + iv.mpf(c.numerator) / iv.mpf(c.denominator)
                if acc > 0:
                    return 1
                if acc < 0:
                    return -1
            finally:
                iv.prec = old
            prec *= 2
        raise ArithmeticError("sign undecided at maximum precision")

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __float__(self) -> float:
        th = self.descr._theta_float
        val, p = 0.0, 1.0
        for c in self.coeffs:
            val += float(c) * p
            p *= th
        return val

    # -- comparisons ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.descr.from_rational(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.descr is other.descr and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((id(self.descr), self.coeffs))

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            raise TypeError("cannot compare")
        return (self - o).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __repr__(self) -> str:
        if self.is_rational():
            return f"FieldElement({self.coeffs[0]})"
        return f"FieldElement{self.coeffs}"

    # -- serialization -----------------------------------------------------------

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]


def element_from_json(descr: FieldDescriptor, doc: Sequence[str]) -> FieldElement:
    return descr.element(Fraction(s) for s in doc)


def sign_of(e: FieldElement) -> int:
    """Exact sign (-1, 0, +1) of a field element under its real embedding."""
    return e.sign()


# ---------------------------------------------------------------------------
# t-numbers, q-numbers, binomials
# ---------------------------------------------------------------------------

def t_plus_t_inv(descr: FieldDescriptor) -> FieldElement:
    """t + 1/t: equals theta**2 - 2 in cyclotomic mode, theta in hyperbolic."""
    if descr.mode == "hyperbolic":
        return descr.theta
    if descr.n is None:
        raise UnsupportedModeError("descriptor has no t-structure")
    return descr.theta * descr.theta - 2


def t_power_sum(descr: FieldDescriptor, j: int) -> FieldElement:
    # t**j + t**(-j)
    if j == 0:
        return descr.from_rational(2)
    if descr.mode == "hyperbolic":
        tj = descr.t ** j
        return descr.from_rational(tj + 1 / tj)
    if descr.n is None:
        raise UnsupportedModeError("descriptor has no t-structure")
    # t = exp(i*pi/n), so t**j + t**(-j) = 2*cos(j*pi/n) = 2*cos(2*pi*(2j)/(4n))
    return descr.two_cos(2 * j)


def t_number(descr: FieldDescriptor, k: int) -> FieldElement:
    """The t-integer [k]_t = (t^k - t^-k)/(t - 1/t)."""
    if k < 0:
        raise InvalidParameterError("k must be nonnegative")
    cache = descr._t_numbers
    if not cache:
        cache.extend([descr.zero, descr.one])
    if k >= len(cache):
        mult = t_plus_t_inv(descr)
        while k >= len(cache):
            cache.append(mult * cache[-1] - cache[-2])
    return cache[k]


def t_factorial(descr: FieldDescriptor, k: int) -> FieldElement:
    if k < 0:
        raise InvalidParameterError("k must be nonnegative")
    out = descr.one
    for j in range(1, k + 1):
        out = out * t_number(descr, j)
    return out


_LAURENT_BINOM: dict[tuple[int, int], dict[int, int]] = {}


def _laurent_binomial(m: int, k: int) -> dict[int, int]:
    # Pascal recursion carried out in Z[t, 1/t]; exponent -> coefficient
    if k < 0 or k > m:
        return {}
    if k == 0 or k == m:
        return {0: 1}
    cached = _LAURENT_BINOM.get((m, k))
    if cached is None:
        cached = {}
        for e, c in _laurent_binomial(m - 1, k).items():
            cached[e + k] = cached.get(e + k, 0) + c
        for e, c in _laurent_binomial(m - 1, k - 1).items():
            cached[e + k - m] = cached.get(e + k - m, 0) + c
        cached = {e: c for e, c in cached.items() if c}
        _LAURENT_BINOM[(m, k)] = cached
    return cached


def t_binomial(descr: FieldDescriptor, m: int, k: int) -> FieldElement:
    """The t-binomial [m choose k]_t via the Pascal recursion, never division.

    The recursion runs in Z[t, 1/t]; the result is palindromic, so it
    collapses into the field through t**j + t**(-j).  This keeps the
    root-of-unity degenerations exact, e.g. [n choose k]_t = 0 for
    0 < k < n in cyclotomic mode.
    """
    if m < 0 or k < 0:
        raise InvalidParameterError("arguments must be nonnegative")
    key = (m, k)
    cached = descr._binom_cache.get(key)
    if cached is None:
        poly = _laurent_binomial(m, k)
        acc = descr.zero
        for e, c in poly.items():
            if poly.get(-e) != c:
                raise ArithmeticError("binomial not palindromic")
            if e > 0:
                acc = acc + t_power_sum(descr, e) * c
            elif e == 0:
                acc = acc + c
        cached = acc
        descr._binom_cache[key] = cached
    return cached


def q_number(descr: FieldDescriptor, k: int) -> FieldElement:
    """The q-integer [k]_q with q = t**(1/2).

    Cyclotomic mode: q + 1/q = theta, so the usual recurrence applies.
    Hyperbolic mode: only odd k lies in Q(t); even k needs sqrt(t) and
    raises UnsupportedModeError.
    """
    if k < 0:
        raise InvalidParameterError("k must be nonnegative")
    if descr.mode == "hyperbolic":
        if k % 2 == 0 and k != 0:
            raise UnsupportedModeError(
                "[k]_q with even k is irrational for rational t")
        # [2m+1]_q = sum of t**j for j in [-m, m]
        mhalf = (k - 1) // 2 if k else 0
        if k == 0:
            return descr.zero
        val = Fraction(1)
        for j in range(1, mhalf + 1):
            tj = descr.t ** j
            val += tj + 1 / tj
        return descr.from_rational(val)
    if descr.n is None:
        raise UnsupportedModeError("descriptor has no t-structure")
    cache = descr._q_numbers
    if not cache:
        cache.extend([descr.zero, descr.one])
    if k >= len(cache):
        while k >= len(cache):
            cache.append(descr.theta * cache[-1] - cache[-2])
    return cache[k]


def q_number_squared(descr: FieldDescriptor, k: int) -> FieldElement:
    """([k]_q)**2, exact in both modes.

    Hyperbolic mode uses ([k]_q)^2 = (t^k - 2 + t^-k)/(t - 2 + 1/t), which is
    rational for every k even though [k]_q itself may not be.
    """
    if k < 0:
        raise InvalidParameterError("k must be nonnegative")
    if descr.mode == "hyperbolic":
        if descr.t == 1:
            return descr.from_rational(k * k)
        tk = descr.t ** k
        num = tk - 2 + 1 / tk
        den = descr.t - 2 + 1 / descr.t
        return descr.from_rational(num / den)
    q = q_number(descr, k)
    return q * q
