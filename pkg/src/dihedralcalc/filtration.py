"""Concave length weightings on the Schubert basis and the products they
induce: the associated graded algebra, a one-parameter deformation family,
and the coefficient-collapsing limit that lands in the homology pre-rings.

The weighting assigns phi(w) = -G(len(w)) on the full basis, where
G(x) = ([x]_q)^2, or phi_i(w) = -F(len(w)) on a one-sided subalgebra,
where F(x) is the sum of the first x quantum integers.  Both are concave
against the structure constants: phi(u) + phi(v) >= phi(w) whenever
sigma_w appears in sigma_u sigma_v, with equality exactly for unit factors
or complementary top-degree pairs.

Products:

- gr_mul keeps the equality-level terms only (the tau -> 0 degeneration);
- deform_mul tags each term with the formal exponent
  phi(u) + phi(v) - phi(w) of the deformation parameter;
- limit_table sends tau -> infinity, collapsing coefficients to
  {0, 1, inf}; the result matches the flag pre-ring under w -> pd(w) and,
  on a one-sided subalgebra, the one-type pre-ring under
  w -> n - 1 - ell_side(w, other side).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import AlgebraContext, Element, _label
from .errors import (
    InvalidParameterError,
    UnsupportedModeError,
    VerificationError,
)
from .field import (
    FieldDescriptor,
    FieldElement,
    q_number_squared,
    sign_of,
    t_number,
)
from .prering import FlagPreRing, GrassPreRing, Z2
from .weyl import WeylElement


def side_weight(descr: FieldDescriptor, x: int) -> FieldElement:
    """F(x): sum of the first x quantum integers, the one-sided weight."""
    if x < 0:
        raise InvalidParameterError("weight argument must be nonnegative")
    acc = descr.from_rational(0)
    for k in range(1, x + 1):
        acc = acc + t_number(descr, k)
    return acc


def full_weight(descr: FieldDescriptor, x: int) -> FieldElement:
    """G(x) = ([x]_q)^2, the two-sided weight."""
    if x < 0:
        raise InvalidParameterError("weight argument must be nonnegative")
    return q_number_squared(descr, x)


@dataclass
class ConcaveWeighting:
    alg: AlgebraContext
    target: str  # "full" or "side"
    side: int | None
    values: dict  # WeylElement -> FieldElement, the (negated) weights

    @classmethod
    def full(cls, alg: AlgebraContext) -> "ConcaveWeighting":
        vals = {w: -full_weight(alg.descr, w.length) for w in alg.basis()}
        return cls(alg, "full", None, vals)

    @classmethod
    def one_sided(cls, alg: AlgebraContext, i: int) -> "ConcaveWeighting":
        vals = {w: -side_weight(alg.descr, w.length)
                for w in alg.grassmannian_basis(i)}
        return cls(alg, "side", i, vals)

    def phi(self, w: WeylElement) -> FieldElement:
        return self.values[w]

    def basis(self) -> list[WeylElement]:
        if self.target == "side":
            return self.alg.grassmannian_basis(self.side)
        return self.alg.basis()

    def top_length(self) -> int | None:
        n = self.alg.n_t
        if n is None:
            return None
        return n if self.target == "full" else n - 1

    def expected_equality(self, u: WeylElement, v: WeylElement,
                          w: WeylElement) -> bool:
        if u.length == 0 or v.length == 0:
            return True
        top = self.top_length()
        return top is not None and \
            u.length + v.length == w.length == top


@dataclass
class ConcavityReport:
    ok: bool
    pairs_checked: int
    equalities: list
    violations: list = field(default_factory=list)
    misclassified: list = field(default_factory=list)


def _deformation_exponent(weighting: ConcaveWeighting, u, v, w) -> FieldElement:
    return weighting.phi(u) + weighting.phi(v) - weighting.phi(w)


def concavity_audit(weighting: ConcaveWeighting) -> ConcavityReport:
    """Checks phi(u) + phi(v) >= phi(w) over every structure constant and
    that equality happens exactly for unit factors or full top degree."""
    alg = weighting.alg
    basis = weighting.basis()
    cap = None if alg.n_t is not None else alg.cap
    equalities = []
    violations = []
    misclassified = []
    pairs = 0
    for u in basis:
        for v in basis:
            if cap is not None and u.length + v.length > cap:
                continue
            pairs += 1
            for w, c in alg.mul_basis(u, v).items():
                s = sign_of(_deformation_exponent(weighting, u, v, w))
                if s < 0:
                    violations.append((u, v, w))
                    continue
                if s == 0:
                    equalities.append((u, v, w))
                if (s == 0) != weighting.expected_equality(u, v, w):
                    misclassified.append((u, v, w))
    ok = not violations and not misclassified
    return ConcavityReport(ok, pairs, equalities, violations, misclassified)


def gr_mul(weighting: ConcaveWeighting, u: WeylElement,
           v: WeylElement) -> Element:
    """Associated graded product: equality-level terms survive unchanged."""
    out = {}
    for w, c in weighting.alg.mul_basis(u, v).items():
        if sign_of(_deformation_exponent(weighting, u, v, w)) == 0:
            out[w] = c
    return out


def gr_product(weighting: ConcaveWeighting, a: Element, b: Element) -> Element:
    alg = weighting.alg
    out: Element = {}
    for u, ca in a.items():
        for v, cb in b.items():
            scale = ca * cb
            if scale.is_zero():
                continue
            for w, c in gr_mul(weighting, u, v).items():
                acc = out.get(w)
                new = c * scale if acc is None else acc + c * scale
                if new.is_zero():
                    out.pop(w, None)
                else:
                    out[w] = new
    return out


def deform_mul(weighting: ConcaveWeighting, u: WeylElement,
               v: WeylElement) -> dict:
    """Product in the deformation family, kept formal: each surviving term
    is w -> (exponent, coefficient) standing for tau^exponent * coefficient.
    Exponents are field elements and nonnegative by concavity."""
    out = {}
    for w, c in weighting.alg.mul_basis(u, v).items():
        out[w] = (_deformation_exponent(weighting, u, v, w), c)
    return out


def _rational_power(base: Fraction, exp: Fraction) -> Fraction | None:
    if exp < 0:
        base, exp = 1 / base, -exp
    if exp.denominator == 1:
        return base ** exp.numerator
    num = _integer_root(base.numerator, exp.denominator)
    den = _integer_root(base.denominator, exp.denominator)
    if num < 0 or den < 0:
        return None
    return Fraction(num, den) ** exp.numerator


def _integer_root(m: int, k: int) -> int:
    r = round(m ** (1.0 / k))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** k == m:
            return cand
    return -1


def evaluate_deform(weighting: ConcaveWeighting, formal: dict,
                    tau: Fraction) -> Element:
    """Numeric specialization of a formal deformed product.  Only exponents
    that are rational with an exact rational tau-power are accepted."""
    tau = Fraction(tau)
    if tau <= 0:
        raise InvalidParameterError("tau must be positive")
    descr = weighting.alg.descr
    out: Element = {}
    for w, (exp, c) in formal.items():
        if tau == 1:
            if not c.is_zero():
                out[w] = c
            continue
        if not exp.is_rational():
            raise UnsupportedModeError(
                "deformation exponent is irrational; keep the product formal")
        power = _rational_power(tau, exp.as_fraction())
        if power is None:
            raise UnsupportedModeError(
                f"tau = {tau} has no exact rational power {exp.as_fraction()}")
        value = c * descr.from_rational(power)
        if not value.is_zero():
            out[w] = value
    return out


@dataclass
class LimitReport:
    ok: bool
    pairs_checked: int
    mismatch: tuple | None = None


def limit_mul(weighting: ConcaveWeighting, u: WeylElement,
              v: WeylElement) -> dict:
    """tau -> infinity collapse of the deformed product: terms with a
    strictly positive exponent blow up to inf, equality-level terms keep
    their (unit) coefficient."""
    out = {}
    for w, c in weighting.alg.mul_basis(u, v).items():
        if sign_of(_deformation_exponent(weighting, u, v, w)) == 0:
            if c != weighting.alg.descr.one:
                raise VerificationError(
                    "equality-level structure constant is not 1")
            out[w] = Z2.one
        else:
            out[w] = Z2.inf
    return out


def grass_degree(alg: AlgebraContext, side: int, w: WeylElement) -> int:
    """Degree of the one-type class matching sigma_w on the side subalgebra:
    n - 1 - (coset length of w relative to the other type)."""
    return alg.n_t - 1 - alg.group.ell_side(w, 3 - side)


def limit_table(weighting: ConcaveWeighting) -> LimitReport:
    """Builds the full tau -> infinity table and checks it is carried onto
    the matching pre-ring table by the degree-preserving relabeling."""
    alg = weighting.alg
    if alg.n_t is None:
        raise UnsupportedModeError("limit tables require the finite case")
    n = alg.n_t
    basis = weighting.basis()
    if weighting.target == "full":
        ring = FlagPreRing(n)
        relabel = alg.group.pd
    else:
        ring = GrassPreRing(n)

        def relabel(w, _alg=alg, _side=weighting.side):
            return grass_degree(_alg, _side, w)

    pairs = 0
    for u in basis:
        for v in basis:
            pairs += 1
            got = {relabel(w): c for w, c in limit_mul(weighting, u, v).items()}
            want = ring.mul_basis(relabel(u), relabel(v))
            if got != want:
                return LimitReport(False, pairs, (u, v, got, want))
    return LimitReport(True, pairs)


def _mul_table_json(alg: AlgebraContext, basis, mul) -> dict:
    names = {w: _label(w) for w in basis}
    table = {}
    for u in basis:
        for v in basis:
            table[f"{names[u]}*{names[v]}"] = [
                {"w": names[w], "coeff": c.to_json()}
                for w, c in sorted(mul(u, v).items())]
    return {"n": alg.group.n, "basis": [names[w] for w in basis],
            "field": alg.descr.to_json(), "table": table}


def gr_table_json(weighting: ConcaveWeighting) -> dict:
    if weighting.alg.n_t is None:
        raise UnsupportedModeError("full table requires the finite case")
    return _mul_table_json(weighting.alg, weighting.basis(),
                           lambda u, v: gr_mul(weighting, u, v))


def limit_table_json(weighting: ConcaveWeighting) -> dict:
    if weighting.alg.n_t is None:
        raise UnsupportedModeError("full table requires the finite case")
    return _mul_table_json(weighting.alg, weighting.basis(),
                           lambda u, v: limit_mul(weighting, u, v))


def subalgebra_table_json(alg: AlgebraContext, side: int) -> dict:
    """Plain product table restricted to a one-sided subalgebra basis."""
    return _mul_table_json(alg, alg.grassmannian_basis(side), alg.mul_basis)
