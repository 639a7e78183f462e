"""Stability inequality systems and their cone comparisons.

Weights live in the dominant cone of the rank-2 reflection group: a weight
is a nonnegative rational pair (a, b) against the two fundamental rays.
Scalar inequalities pair tuples of weights with vertices of the 2n-gon
(vertex k sits at angle k*pi/n), so each inequality is stored as one vertex
index per slot and read as

    sum_s <lambda_s, v_{key[s]}>  <=  0.

Minus signs are absorbed by the antipode k -> k+n.  All covectors are unit
vertex vectors, so two inequalities are positive multiples of each other
exactly when their keys agree; deduplication is therefore key equality.

Pairings are evaluated in the small real cyclotomic field containing
cos(pi/n); exports embed witnesses into the ambient coefficient field.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .algebra import AlgebraContext, Element, _label
from .errors import (DomainError, InvalidParameterError, VerificationError)
from .field import FieldDescriptor, FieldElement, field_init, real_cyclotomic
from .filtration import ConcaveWeighting, gr_product
from .lp import lp_solve
from .prering import enumerate_sigma
from .weyl import IDENTITY, DihedralGroup, WeylElement


# -- vertex bookkeeping -------------------------------------------------------

@lru_cache(maxsize=None)
def _group(n: int) -> DihedralGroup:
    return DihedralGroup(n)


def small_field(n: int) -> FieldDescriptor:
    """Field generated by 2cos(pi/n); large enough for every pairing."""
    return real_cyclotomic(2 * n)


def antipode(n: int, k: int) -> int:
    return (k + n) % (2 * n)


def w0_index(n: int, k: int) -> int:
    """Index of the longest element applied to vertex k."""
    return antipode(n, _group(n).star_index(k))


@lru_cache(maxsize=None)
def pairing_columns(n: int) -> tuple[tuple, tuple]:
    """(col_a, col_b): <a*z1 + b*z2, v_k> = a*col_a[k] + b*col_b[k]."""
    k = small_field(n)
    half = Fraction(1, 2)
    col_a = tuple(k.two_cos(j) * half for j in range(2 * n))
    col_b = tuple(k.two_cos(j - 1) * half for j in range(2 * n))
    return col_a, col_b


@lru_cache(maxsize=None)
def chebyshev_ratio(n: int, j: int):
    """sin(j*pi/n) / sin(pi/n) as an element of the small field."""
    if j < 0:
        return -chebyshev_ratio(n, -j)
    k = small_field(n)
    if j == 0:
        return k.zero
    if j == 1:
        return k.one
    theta = k.two_cos(1)
    return theta * chebyshev_ratio(n, j - 1) - chebyshev_ratio(n, j - 2)


def vertex_ray(n: int, k: int):
    """Ray coordinates of vertex k: v_k = r(1-k)*z1 + r(k)*z2."""
    k = k % (2 * n)
    return chebyshev_ratio(n, 1 - k), chebyshev_ratio(n, k)


def vertex_cartesian(descr: FieldDescriptor, k: int):
    """Unit vector of vertex k in the ambient cyclotomic field."""
    n = descr.n
    half = Fraction(1, 2)
    return descr.two_cos(2 * k) * half, descr.two_cos(n - 2 * k) * half


# -- weights ------------------------------------------------------------------

@dataclass(frozen=True)
class DominantWeight:
    """Nonnegative rational coordinates against the fundamental rays."""
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    def is_dominant(self) -> bool:
        return self.a >= 0 and self.b >= 0

    def star(self, n: int) -> "DominantWeight":
        # -w0 fixes the chamber pointwise when n is even, swaps rays when odd
        if n % 2 == 0:
            return self
        return DominantWeight(self.b, self.a)

    def cartesian(self, descr: FieldDescriptor):
        n = descr.n
        half = Fraction(1, 2)
        x = descr.from_rational(self.a) + descr.two_cos(2) * (self.b * half)
        y = descr.two_cos(n - 2) * (self.b * half)
        return x, y

    def to_json(self) -> list[str]:
        return [str(self.a), str(self.b)]


def theta_weights(weights: Sequence[DominantWeight], n: int) -> list[DominantWeight]:
    """Star the first len-1 slots, keep the last; an involution."""
    if not weights:
        return []
    out = [w.star(n) for w in weights[:-1]]
    out.append(weights[-1])
    return out


# -- inequalities -------------------------------------------------------------

@dataclass(frozen=True)
class InequalityTag:
    system: str  # WTI | STI | KM | BK
    l: int
    words: tuple[WeylElement, ...]
    slots: tuple[int, int] | None = None

    def to_json(self) -> dict:
        return {
            "system": self.system,
            "l": self.l,
            "words": [_label(w) for w in self.words],
            "slots": list(self.slots) if self.slots is not None else None,
        }


@dataclass(frozen=True)
class LinearInequality:
    key: tuple[int, ...]
    tag: InequalityTag

    def covectors(self, descr: FieldDescriptor):
        return [vertex_cartesian(descr, k) for k in self.key]

    def to_json(self, descr: FieldDescriptor) -> dict:
        return {
            "tag": self.tag.to_json(),
            "key": list(self.key),
            "covectors": [[c[0].to_json(), c[1].to_json()]
                          for c in self.covectors(descr)],
        }


def inequality_row(n: int, key: tuple[int, ...]) -> tuple:
    """Flattened (a_1, b_1, ..., a_s, b_s) covector over the small field."""
    col_a, col_b = pairing_columns(n)
    row = []
    for k in key:
        row.append(col_a[k])
        row.append(col_b[k])
    return tuple(row)


@dataclass
class InequalitySystem:
    n: int
    slots: int
    inequalities: list[LinearInequality]
    meta: dict = dc_field(default_factory=dict)
    _rows: dict = dc_field(default_factory=dict, repr=False)

    @property
    def key_set(self) -> frozenset:
        return frozenset(q.key for q in self.inequalities)

    @property
    def fingerprint(self) -> str:
        blob = json.dumps([self.n, self.slots, sorted(self.key_set)])
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def row(self, key: tuple[int, ...]) -> tuple:
        cached = self._rows.get(key)
        if cached is None:
            cached = inequality_row(self.n, key)
            self._rows[key] = cached
        return cached

    def rows(self) -> list[tuple]:
        return [self.row(q.key) for q in self.inequalities]

    def find(self, key: tuple[int, ...]) -> LinearInequality | None:
        for q in self.inequalities:
            if q.key == key:
                return q
        return None


def _dedup_system(n: int, slots: int, tagged: Iterable[tuple[tuple, InequalityTag]],
                  meta: dict) -> InequalitySystem:
    seen: dict[tuple, InequalityTag] = {}
    merged = 0
    for key, tag in tagged:
        if key in seen:
            merged += 1
        else:
            seen[key] = tag
    ineqs = [LinearInequality(k, t) for k, t in seen.items()]
    meta = dict(meta)
    meta["merged"] = merged
    meta["count"] = len(ineqs)
    return InequalitySystem(n, slots, ineqs, meta)


# -- system generators --------------------------------------------------------

def gen_wti(n: int, m: int) -> InequalitySystem:
    """Weak triangle inequalities on m dominant weights.

    For every vertex type l, every unordered slot pair {i, j}, and every
    vertex v of type l: slot i pairs with v, slot j with w0(v), the rest
    with w0(z_l).  Generated both from group elements and from raw vertex
    indices; the two scalar sets must agree.
    """
    if m < 2:
        raise InvalidParameterError("need at least two weight slots")
    g = _group(n)
    base = {1: 0, 2: 1}
    tagged = []
    for l in (1, 2):
        rest = w0_index(n, base[l])
        for i, j in itertools.combinations(range(m), 2):
            for u in g.elements():
                k = g.vertex_index(u, l)
                key = [rest] * m
                key[i] = k
                key[j] = w0_index(n, k)
                words = [g.longest] * m
                words[i] = u
                words[j] = g.compose(g.longest, u)
                tagged.append((tuple(key),
                               InequalityTag("WTI", l, tuple(words), (i, j))))
    sys = _dedup_system(n, m, tagged, {
        "system": "WTI",
        "count_nominal": 2 * n * comb(m, 2),
        "symmetric_slots": tuple(range(m)),
    })

    # independent generation straight from vertex indices
    check = set()
    for l in (1, 2):
        rest = w0_index(n, base[l])
        for i, j in itertools.combinations(range(m), 2):
            for k in range(base[l], 2 * n, 2):
                key = [rest] * m
                key[i] = k
                key[j] = w0_index(n, k)
                check.add(tuple(key))
    if check != set(sys.key_set):
        raise VerificationError("vertex-index form disagrees with group form")
    return sys


def gen_sti(n: int, m: int, budget: int = 64) -> InequalitySystem:
    """Stability inequalities: one pair of scalars per nonzero point-multiple
    tuple of Schubert classes in the flag pre-ring."""
    g = _group(n)
    tuples = enumerate_sigma(n, m, budget)
    tagged = []
    for tup in tuples:
        for l in (1, 2):
            key = tuple(g.vertex_index(u, l) for u in tup)
            tagged.append((key, InequalityTag("STI", l, tup)))
    return _dedup_system(n, m, tagged, {
        "system": "STI",
        "sigma_count": len(tuples),
        "symmetric_slots": tuple(range(m)),
    })


def _chain_products(elems: list[Element], mul, sigma, m: int) -> dict:
    """Products of all sorted m-multisets of basis elements, memoized."""
    memo: dict[tuple[int, ...], Element] = {}

    def prod(combo: tuple[int, ...]) -> Element:
        got = memo.get(combo)
        if got is None:
            if len(combo) == 1:
                got = sigma(combo[0])
            else:
                got = mul(prod(combo[:-1]), sigma(combo[-1]))
            memo[combo] = got
        return got

    out = {}
    for combo in itertools.combinations_with_replacement(range(len(elems)), m):
        out[combo] = prod(combo)
    return out


_KM_KINDS = ("at", "gr-at", "b1", "b2", "b", "gr-b1", "gr-b2", "gr-b")


def gen_km(n: int, m: int, kind: str = "at") -> InequalitySystem:
    """Inequality system carried by nonzero m-fold structure constants.

    For a tuple (x_1..x_m; y) with nonzero constant, the scalar inequality
    says <mu, y(z_l)> <= sum_i <lambda_i, x_i(z_l)>; lambda slots store the
    antipodal vertex so everything reads as a <= 0 sum.  The slot layout is
    (lambda_1..lambda_m, mu), so these systems have m+1 slots.

    Kinds: the full algebra ("at"), its associated graded ("gr-at"), the
    one-sided subalgebras ("b1", "b2") and their union ("b"), and graded
    one-sided variants ("gr-b1", "gr-b2", "gr-b").  Graded one-sided systems
    pair only against the vertex type their Grassmannian carries and are
    tagged "BK"; everything else pairs against both types and is tagged
    "KM".  Dominance of each slot is an ambient assumption, not an
    inequality row.
    """
    if kind not in _KM_KINDS:
        raise InvalidParameterError(f"unknown kind {kind!r}")
    if m < 1:
        raise InvalidParameterError("need at least one factor")
    if kind == "b":
        return _merge_km(n, m, ("b1", "b2"), "KM:b")
    if kind == "gr-b":
        return _merge_km(n, m, ("gr-b1", "gr-b2"), "BK:gr-b")

    descr = field_init(n)
    ctx = AlgebraContext(descr)
    g = ctx.group
    tag_system = "KM"
    if kind == "at":
        basis = ctx.basis()
        mul = ctx.mul
        targets = None
    elif kind == "gr-at":
        basis = ctx.basis()
        weighting = ConcaveWeighting.full(ctx)
        mul = lambda a, b: gr_product(weighting, a, b)
        targets = None
    else:
        side = int(kind[-1])
        basis = ctx.grassmannian_basis(side)
        targets = set(basis)
        if kind.startswith("gr-"):
            weighting = ConcaveWeighting.one_sided(ctx, side)
            mul = lambda a, b: gr_product(weighting, a, b)
            tag_system = "BK"
        else:
            mul = ctx.mul
    if tag_system == "BK":
        ls = (3 - side,)
    else:
        ls = (1, 2)

    products = _chain_products(basis, mul, lambda i: ctx.sigma(basis[i]), m)
    tagged = []
    for combo, element in products.items():
        support = [(y, c) for y, c in element.items()
                   if c and (targets is None or y in targets)]
        if not support:
            continue
        for perm in sorted(set(itertools.permutations(combo))):
            for y, _ in support:
                words = tuple(basis[p] for p in perm) + (y,)
                for l in ls:
                    key = tuple(antipode(n, g.vertex_index(x, l))
                                for x in words[:-1])
                    key += (g.vertex_index(y, l),)
                    tagged.append((key, InequalityTag(tag_system, l, words)))
    return _dedup_system(n, m + 1, tagged, {
        "system": f"{tag_system}:{kind}",
        "m": m,
        "kind": kind,
        "symmetric_slots": tuple(range(m)),
        "dominance": "all slots assumed dominant; not inequality rows",
    })


def _merge_km(n: int, m: int, kinds: tuple[str, ...], label: str) -> InequalitySystem:
    parts = [gen_km(n, m, k) for k in kinds]
    tagged = []
    for part in parts:
        tagged.extend((q.key, q.tag) for q in part.inequalities)
    return _dedup_system(n, m + 1, tagged, {
        "system": label,
        "m": m,
        "kind": label.split(":")[1],
        "symmetric_slots": tuple(range(m)),
        "dominance": parts[0].meta["dominance"],
    })


def theta_system(system: InequalitySystem) -> InequalitySystem:
    """Push a (lambda_1..lambda_m, mu) system through the star of the first
    m slots; involutive on key sets."""
    g = _group(system.n)
    tagged = []
    for q in system.inequalities:
        key = tuple(g.star_index(k) for k in q.key[:-1]) + (q.key[-1],)
        tagged.append((key, q.tag))
    meta = dict(system.meta)
    meta["theta"] = not meta.get("theta", False)
    meta.pop("merged", None)
    meta.pop("count", None)
    return _dedup_system(system.n, system.slots, tagged, meta)


def star_system(system: InequalitySystem) -> InequalitySystem:
    """Apply the chamber involution to every slot simultaneously."""
    g = _group(system.n)
    tagged = [(tuple(g.star_index(k) for k in q.key), q.tag)
              for q in system.inequalities]
    meta = dict(system.meta)
    meta.pop("merged", None)
    meta.pop("count", None)
    return _dedup_system(system.n, system.slots, tagged, meta)


def permute_system(system: InequalitySystem, perm: Sequence[int]) -> InequalitySystem:
    if sorted(perm) != list(range(system.slots)):
        raise InvalidParameterError("perm must shuffle all slots")
    tagged = [(tuple(q.key[p] for p in perm), q.tag)
              for q in system.inequalities]
    meta = dict(system.meta)
    meta.pop("merged", None)
    meta.pop("count", None)
    return _dedup_system(system.n, system.slots, tagged, meta)


def a1_product_system(m: int = 3) -> InequalitySystem:
    """Direct n = 2 oracle: two independent one-variable triangle systems.

    For each slot i and each coordinate, the weight at i may not exceed the
    sum of the others: key 0/2 pattern for the first ray, 1/3 for the second.
    """
    if m < 2:
        raise InvalidParameterError("need at least two weight slots")
    tagged = []
    for i in range(m):
        for base in (0, 1):
            key = [base + 2] * m
            key[i] = base
            words = tuple(IDENTITY for _ in range(m))
            tagged.append((tuple(key), InequalityTag("WTI", base + 1, words,
                                                     (i, (i + 1) % m))))
    return _dedup_system(2, m, tagged, {
        "system": "A1xA1",
        "symmetric_slots": tuple(range(m)),
    })


# -- membership ---------------------------------------------------------------

@dataclass
class MembershipResult:
    member: bool
    violated: LinearInequality | None = None
    value: FieldElement | None = None


def _weight_pairs(n: int, weights: Sequence[DominantWeight]):
    k = small_field(n)
    return [(k.from_rational(w.a), k.from_rational(w.b)) for w in weights]


def _eval_row(row: tuple, pairs: list) -> FieldElement:
    total = None
    for s, (a, b) in enumerate(pairs):
        term = a * row[2 * s] + b * row[2 * s + 1]
        total = term if total is None else total + term
    return total


def row_values(system: InequalitySystem,
               weights: Sequence[DominantWeight]) -> list[FieldElement]:
    """Evaluate every row at a weight tuple, in generation order.

    A positive value means the row is violated; all values strictly
    negative means the point lies in the cone's interior.
    """
    if len(weights) != system.slots:
        raise InvalidParameterError(
            f"expected {system.slots} weights, got {len(weights)}")
    pairs = _weight_pairs(system.n, weights)
    return [_eval_row(system.row(q.key), pairs) for q in system.inequalities]


def is_member(system: InequalitySystem, weights: Sequence[DominantWeight]) -> MembershipResult:
    """First-violation membership test; weights must be dominant."""
    if len(weights) != system.slots:
        raise InvalidParameterError(
            f"expected {system.slots} weights, got {len(weights)}")
    for s, w in enumerate(weights):
        if not w.is_dominant():
            raise DomainError(f"weight at slot {s} is not dominant")
    pairs = _weight_pairs(system.n, weights)
    return evaluate_point(system, pairs)


def evaluate_point(system: InequalitySystem, pairs: list) -> MembershipResult:
    """Membership for small-field coordinate pairs (internal form)."""
    zero = small_field(system.n).zero
    for q in system.inequalities:
        val = _eval_row(system.row(q.key), pairs)
        if val > zero:
            return MembershipResult(False, q, val)
    return MembershipResult(True)


# -- exact cone LP ------------------------------------------------------------

@dataclass
class ConeLPResult:
    status: str  # "optimal" | "unbounded" | "infeasible"
    optimum: FieldElement | None = None
    witness: list | None = None  # (a, b) small-field pair per slot
    iterations: int = 0


def _as_row(system: InequalitySystem, objective) -> tuple:
    if isinstance(objective, LinearInequality):
        return system.row(objective.key)
    objective = tuple(objective)
    if len(objective) == system.slots and all(isinstance(k, int) for k in objective):
        return system.row(objective)
    if len(objective) == 2 * system.slots:
        return objective
    raise InvalidParameterError("objective must be a key or a covector row")


def lp_optimize(system: InequalitySystem, objective, *,
                normalize: bool = True) -> ConeLPResult:
    """Maximize a linear functional over the solution cone of the system.

    The cone lives in dominant coordinates (all 2*slots variables >= 0).
    With normalize=True the coordinate sum is pinned to 1, which bounds the
    cone section, so the answer is "optimal" or "infeasible"; without it the
    homogeneous answer is 0 or "unbounded".  Solved through the dual so the
    tableau height stays at 2*slots; the returned vertex is re-checked
    exactly against every constraint.
    """
    fld = small_field(system.n)
    zero, one = fld.zero, fld.one
    obj = [c + zero for c in _as_row(system, objective)]
    rows = system.rows()
    d = 2 * system.slots
    r = len(rows)

    cols = r + 2 if normalize else r
    g = []
    for c in range(d):
        line = [-rows[i][c] for i in range(r)]
        if normalize:
            line.append(-one)
            line.append(one)
        g.append(line)
    rhs = [-c for c in obj]
    cost = [zero] * r + ([-one, one] if normalize else [])

    res = lp_solve(g, rhs, cost, zero=zero)
    if res.status == "unbounded":
        return ConeLPResult("infeasible", iterations=res.iterations)
    if res.status == "infeasible":
        if not normalize:
            # nothing dominates the functional: it grows along some ray
            return ConeLPResult("unbounded", iterations=res.iterations)
        probe = lp_solve(g, [zero] * d, cost, zero=zero)
        status = "unbounded" if probe.status == "optimal" else "infeasible"
        return ConeLPResult(status, iterations=res.iterations + probe.iterations)

    if not normalize:
        witness = [(zero, zero) for _ in range(system.slots)]
        return ConeLPResult("optimal", zero, witness, res.iterations)

    optimum = -res.optimum
    z = res.dual
    witness = [(z[2 * s], z[2 * s + 1]) for s in range(system.slots)]
    _verify_vertex(system, obj, optimum, z, zero, one)
    return ConeLPResult("optimal", optimum, witness, res.iterations)


def _verify_vertex(system, obj, optimum, z, zero, one) -> None:
    if any(v < zero for v in z):
        raise VerificationError("vertex has a negative coordinate")
    total = zero
    for v in z:
        total = total + v
    if total != one:
        raise VerificationError("vertex normalization is off")
    for row in system.rows():
        val = zero
        for c, v in zip(row, z):
            if v:
                val = val + c * v
        if val > zero:
            raise VerificationError("vertex violates a cone constraint")
    val = zero
    for c, v in zip(obj, z):
        if v:
            val = val + c * v
    if val != optimum:
        raise VerificationError("vertex does not attain the LP optimum")


# -- redundancy audit ---------------------------------------------------------

@dataclass
class AuditEntry:
    inequality: LinearInequality
    status: str  # "facet" | "redundant"
    optimum: FieldElement | None
    witness: list | None


@dataclass
class AuditReport:
    system_meta: dict
    entries: list[AuditEntry]

    @property
    def facets(self) -> int:
        return sum(1 for e in self.entries if e.status == "facet")

    @property
    def redundant(self) -> int:
        return sum(1 for e in self.entries if e.status == "redundant")

    @property
    def all_facets(self) -> bool:
        return self.redundant == 0


def redundancy_audit(system: InequalitySystem) -> AuditReport:
    """Classify every inequality as facet-defining or implied by the rest."""
    zero = small_field(system.n).zero
    entries = []
    for idx, q in enumerate(system.inequalities):
        rest = InequalitySystem(
            system.n, system.slots,
            system.inequalities[:idx] + system.inequalities[idx + 1:],
            system.meta, system._rows)
        res = lp_optimize(rest, system.row(q.key))
        if res.status != "optimal":
            entries.append(AuditEntry(q, "redundant", None, None))
            continue
        status = "facet" if res.optimum > zero else "redundant"
        entries.append(AuditEntry(q, status, res.optimum, res.witness))
    return AuditReport(dict(system.meta), entries)


# -- cone comparison ----------------------------------------------------------

@dataclass
class ImplicationEntry:
    inequality: LinearInequality
    status: str  # "implied" | "separates"
    method: str  # "duplicate" | "dominated" | "lp" | "orbit"
    optimum: FieldElement | None = None
    witness: list | None = None
    via: tuple | None = None


@dataclass
class ConeEqualityCertificate:
    equal: bool
    forward: list[ImplicationEntry]
    backward: list[ImplicationEntry]
    counterexample: ImplicationEntry | None = None


def _canon_key(key: tuple, sym: tuple) -> tuple:
    if not sym:
        return key
    vals = sorted(key[s] for s in sym)
    out = list(key)
    for v, s in zip(vals, sym):
        out[s] = v
    return tuple(out)


def _dominated_by(row, other, zero) -> bool:
    return all(a <= b for a, b in zip(row, other))


def _implied_over(target: InequalitySystem, key: tuple,
                  cache: dict | None) -> tuple[str, object, object]:
    """Is  row(key) <= 0  forced by the target system on dominant points?"""
    token = (target.fingerprint, key)
    if cache is not None and token in cache:
        return cache[token]
    zero = small_field(target.n).zero
    result = None
    if key in target.key_set:
        result = ("implied", "duplicate", None)
    else:
        row = inequality_row(target.n, key)
        for q in target.inequalities:
            if _dominated_by(row, target.row(q.key), zero):
                result = ("implied", "dominated", None)
                break
    if result is None:
        res = lp_optimize(target, inequality_row(target.n, key))
        if res.status == "optimal" and res.optimum > zero:
            result = ("separates", "lp", res)
        else:
            result = ("implied", "lp", res)
    if cache is not None:
        cache[token] = result
    return result


def _direction(source: InequalitySystem, target: InequalitySystem,
               cache: dict | None) -> tuple[list[ImplicationEntry], ImplicationEntry | None]:
    sym = tuple(target.meta.get("symmetric_slots") or ())
    reps: dict[tuple, tuple] = {}
    entries = []
    for q in source.inequalities:
        rep = _canon_key(q.key, sym)
        if rep in reps:
            entries.append(ImplicationEntry(q, reps[rep][0], "orbit",
                                            via=rep))
            continue
        status, method, res = _implied_over(target, rep, cache)
        reps[rep] = (status, method)
        entry = ImplicationEntry(q, status, method, via=rep if rep != q.key else None)
        if res is not None:
            entry.optimum = res.optimum
            entry.witness = res.witness
        entries.append(entry)
        if status == "separates":
            return entries, entry
    return entries, None


def cone_equal(sys_a: InequalitySystem, sys_b: InequalitySystem,
               cache: dict | None = None) -> ConeEqualityCertificate:
    """Mutual implication of two systems over the dominant region.

    Symmetric-slot metadata of the target side reduces each direction to
    orbit representatives; every representative is settled by duplicate
    lookup, entrywise domination, or an exact LP.
    """
    if sys_a.n != sys_b.n or sys_a.slots != sys_b.slots:
        raise InvalidParameterError("systems are not comparable")
    forward, bad = _direction(sys_a, sys_b, cache)
    if bad is not None:
        return ConeEqualityCertificate(False, forward, [], bad)
    backward, bad = _direction(sys_b, sys_a, cache)
    if bad is not None:
        return ConeEqualityCertificate(False, forward, backward, bad)
    return ConeEqualityCertificate(True, forward, backward)


# -- constructive facet witnesses ----------------------------------------------

@dataclass
class FacetWitness:
    inequality: LinearInequality
    weights: list  # (a, b) small-field pair per slot
    scale: int


def facet_witness(system: InequalitySystem, ineq: LinearInequality,
                  max_doublings: int = 40) -> FacetWitness:
    """Point of the solution cone where exactly this inequality is tight.

    Construction: all slots get the regular weight (1,1); the partner slot
    j is pushed deep into the chamber at (R,R); slot i is placed on the
    boundary side whose outer normal is the tagged vertex, using the 2n-gon
    hull of the remaining orbit sum.  Validated exactly; R doubles until
    every other inequality is strict.
    """
    if ineq.tag.slots is None:
        raise InvalidParameterError("witness needs a tagged slot pair")
    n, m = system.n, system.slots
    if m < 3:
        raise InvalidParameterError("need at least three slots")
    fld = small_field(n)
    zero, one = fld.zero, fld.one
    i, j = ineq.tag.slots
    k = ineq.key[i]
    # c' = (m-2) * (1 + cos(pi/n)): half the squared norm scaling of the
    # regular orbit hull side with outer normal v_k
    cprime = (one + fld.two_cos(1) * Fraction(1, 2)) * (m - 2)
    da = cprime * chebyshev_ratio(n, 1 - k)
    db = cprime * chebyshev_ratio(n, k)

    scale = 4 * n * m
    for _ in range(max_doublings):
        r = fld.from_rational(scale)
        pairs = [(one, one) for _ in range(m)]
        pairs[j] = (r, r)
        pairs[i] = (r + da, r + db)
        if pairs[i][0] < zero or pairs[i][1] < zero:
            scale *= 2
            continue
        ok = True
        for q in system.inequalities:
            val = _eval_row(system.row(q.key), pairs)
            if q.key == ineq.key:
                if val != zero:
                    ok = False
                    break
            elif not val < zero:
                ok = False
                break
        if ok:
            return FacetWitness(ineq, pairs, scale)
        scale *= 2
    raise VerificationError(
        f"no tight point found for {ineq.tag.to_json()} after doubling")


# -- exports ------------------------------------------------------------------

def embed_small(descr: FieldDescriptor, value: FieldElement) -> FieldElement:
    """Horner-evaluate a small-field element at the ambient image of its
    generator 2cos(pi/n)."""
    if value.descr is descr:
        return value
    image = descr.two_cos(2)
    out = descr.zero
    for c in reversed(value.coeffs):
        out = out * image + descr.from_rational(c)
    return out


def witness_to_json(descr: FieldDescriptor, witness: list) -> list:
    return [[embed_small(descr, a).to_json(), embed_small(descr, b).to_json()]
            for a, b in witness]


def system_to_json(system: InequalitySystem) -> dict:
    descr = field_init(system.n)
    return {
        "n": system.n,
        "m": system.slots,
        "field": descr.to_json(),
        "meta": {k: (list(v) if isinstance(v, tuple) else v)
                 for k, v in system.meta.items()},
        "inequalities": [q.to_json(descr) for q in system.inequalities],
    }


def audit_to_json(system: InequalitySystem, report: AuditReport) -> dict:
    descr = field_init(system.n)
    entries = []
    for e in report.entries:
        doc = {"inequality_tag": e.inequality.tag.to_json(),
               "key": list(e.inequality.key),
               "status": e.status}
        if e.witness is not None:
            doc["witness"] = witness_to_json(descr, e.witness)
        entries.append(doc)
    return {
        "n": system.n, "m": system.slots,
        "facets": report.facets, "redundant": report.redundant,
        "entries": entries,
    }


def equality_to_json(sys_a: InequalitySystem, sys_b: InequalitySystem,
                     cert: ConeEqualityCertificate) -> dict:
    descr = field_init(sys_a.n)

    def entry_doc(e: ImplicationEntry) -> dict:
        doc = {"inequality_tag": e.inequality.tag.to_json(),
               "key": list(e.inequality.key),
               "status": "implied" if e.status == "implied" else "separates",
               "method": e.method}
        if e.via is not None:
            doc["via"] = list(e.via)
        if e.witness is not None:
            doc["witness"] = witness_to_json(descr, e.witness)
        return doc

    doc = {
        "n": sys_a.n, "m": sys_a.slots,
        "equal": cert.equal,
        "forward": [entry_doc(e) for e in cert.forward],
        "backward": [entry_doc(e) for e in cert.backward],
    }
    if cert.counterexample is not None:
        doc["counterexample"] = entry_doc(cert.counterexample)
    return doc


def system_to_latex(system: InequalitySystem) -> str:
    """Readable rendering; the JSON export is the source of truth."""
    lines = [
        r"% inequalities read as sums of pairings with 2n-gon vertices",
        r"\begin{align*}"]
    for q in system.inequalities:
        terms = [rf"\langle \lambda_{{{s + 1}}}, v_{{{k}}} \rangle"
                 for s, k in enumerate(q.key)]
        lines.append(" + ".join(terms) + r" &\le 0 \\")
    lines.append(r"\end{align*}")
    return "\n".join(lines)
