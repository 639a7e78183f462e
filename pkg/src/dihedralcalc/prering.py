"""Homology pre-rings of rank-2 buildings with 0/1/infinity coefficients.

Coefficients live in the three-element system {0, 1, inf} over Z/2 (a
modulus hook exists but only Z/2 is exercised): inf + inf is undefined and
raises, 0 * inf = 0.  Two graded pre-rings are built on top:

- the Grassmannian one, basis C_0 .. C_{n-1}, unit C_{n-1};
- the flag one, basis C_w indexed by Weyl elements with dim C_w = len(w),
  the point class C_1 at the identity and the unit at the longest element.

Products follow ball-intersection cardinalities: complementary classes of
opposite types meet in a point (coefficient 1), oversized intersections in
a thick building are infinite, undersized ones empty.

enumerate_sigma lists the m-tuples whose flag product is a nonzero
multiple of the point class.  Products are evaluated with same-type chains
first and one mixed step at the end; this never hits inf + inf, mirroring
the fact that a nonzero product splits through the two vertex types.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import (
    BudgetExceededError,
    DomainError,
    InvalidParameterError,
    UndefinedSumError,
)
from .weyl import IDENTITY, DihedralGroup, WeylElement


@dataclass(frozen=True)
class PreRingCoeff:
    finite: bool
    residue: int = 0

    def is_zero(self) -> bool:
        return self.finite and self.residue == 0

    def __repr__(self) -> str:
        return str(self.residue) if self.finite else "inf"

    def to_json(self) -> str:
        return repr(self)


class HatArithmetic:
    """Coefficient pre-ring R + {inf} for R = Z/modulus."""

    def __init__(self, modulus: int = 2):
        if modulus < 2:
            raise InvalidParameterError("modulus must be at least 2")
        self.modulus = modulus
        self.zero = PreRingCoeff(True, 0)
        self.one = PreRingCoeff(True, 1)
        self.inf = PreRingCoeff(False)

    def coeff(self, value) -> PreRingCoeff:
        if value is None:
            return self.inf
        return PreRingCoeff(True, value % self.modulus)

    def add(self, a: PreRingCoeff, b: PreRingCoeff) -> PreRingCoeff:
        if a.finite and b.finite:
            return self.coeff(a.residue + b.residue)
        if a.finite or b.finite:
            return self.inf
        raise UndefinedSumError("inf + inf has no value")

    def mul(self, a: PreRingCoeff, b: PreRingCoeff) -> PreRingCoeff:
        if a.is_zero() or b.is_zero():
            return self.zero
        if not (a.finite and b.finite):
            return self.inf
        return self.coeff(a.residue * b.residue)


Z2 = HatArithmetic(2)


def hat_ops(a: PreRingCoeff, b: PreRingCoeff, op: str,
            arith: HatArithmetic = Z2) -> PreRingCoeff:
    if op == "add":
        return arith.add(a, b)
    if op == "mul":
        return arith.mul(a, b)
    raise InvalidParameterError(f"unknown op {op!r}")


def coeff_from_json(doc: str, arith: HatArithmetic = Z2) -> PreRingCoeff:
    if doc == "inf":
        return arith.inf
    return arith.coeff(int(doc))


class GrassPreRing:
    """Classes C_0 .. C_{n-1} of one vertex type; the unit is C_{n-1}."""

    def __init__(self, n: int, arith: HatArithmetic = Z2):
        if n < 2:
            raise InvalidParameterError("n must be at least 2")
        self.n = n
        self.dim = n - 1
        self.arith = arith

    def _check(self, r: int) -> None:
        if not 0 <= r <= self.dim:
            raise DomainError(f"degree {r} outside 0..{self.dim}")

    def unit(self) -> dict:
        return {self.dim: self.arith.one}

    def pd(self, r: int) -> int:
        self._check(r)
        return self.dim - r

    def mul_basis(self, r1: int, r2: int) -> dict:
        self._check(r1)
        self._check(r2)
        if r1 == self.dim:
            return {r2: self.arith.one}
        if r2 == self.dim:
            return {r1: self.arith.one}
        r3 = r1 + r2 - self.dim
        if r3 < 0:
            return {}
        if r3 == 0:
            return {0: self.arith.one}
        return {r3: self.arith.inf}

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for r1, a in x.items():
            for r2, b in y.items():
                ab = self.arith.mul(a, b)
                if ab.is_zero():
                    continue
                for r3, c in self.mul_basis(r1, r2).items():
                    c = self.arith.mul(ab, c)
                    if r3 in out:
                        c = self.arith.add(out[r3], c)
                    if c.is_zero():
                        out.pop(r3, None)
                    else:
                        out[r3] = c
        return out

    def product_chain(self, degrees: list[int]) -> dict:
        acc = self.unit()
        for r in degrees:
            acc = self.mul(acc, {r: self.arith.one})
            if not acc:
                return {}
        return acc


class FlagPreRing:
    """Classes C_w, dim C_w = len(w); the unit sits at the longest element."""

    def __init__(self, n: int, arith: HatArithmetic = Z2):
        if n < 2:
            raise InvalidParameterError("n must be at least 2")
        self.n = n
        self.arith = arith
        self.group = DihedralGroup(n)

    def basis(self) -> list[WeylElement]:
        return list(self.group.elements())

    def unit(self) -> dict:
        return {self.group.longest: self.arith.one}

    def point(self) -> dict:
        return {IDENTITY: self.arith.one}

    def pd(self, w: WeylElement) -> WeylElement:
        return self.group.pd(w)

    def pullback(self, l: int, x: dict) -> dict:
        """p_l^* : C_r of the type-l Grassmannian -> C_{r+1, l}."""
        if l not in (1, 2):
            raise InvalidParameterError("type must be 1 or 2")
        out = {}
        for r, a in x.items():
            w = self.group.element(r + 1, l if r + 1 < self.n else None)
            out[w] = a
        return out

    def mul_basis(self, u: WeylElement, v: WeylElement) -> dict:
        n = self.n
        if u.length == n:
            return {v: self.arith.one}
        if v.length == n:
            return {u: self.arith.one}
        if u.length == 0 or v.length == 0:
            return {}  # the point class kills every non-unit
        r3 = u.length + v.length - n
        if u.side == v.side:
            if r3 <= 0:
                return {}
            return {self.group.element(r3, u.side): self.arith.inf}
        if r3 < 0:
            return {}
        if r3 == 0:
            return {IDENTITY: self.arith.one}
        return {self.group.element(r3, 1): self.arith.inf,
                self.group.element(r3, 2): self.arith.inf}

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for u, a in x.items():
            for v, b in y.items():
                ab = self.arith.mul(a, b)
                if ab.is_zero():
                    continue
                for w, c in self.mul_basis(u, v).items():
                    c = self.arith.mul(ab, c)
                    if w in out:
                        c = self.arith.add(out[w], c)
                    if c.is_zero():
                        out.pop(w, None)
                    else:
                        out[w] = c
        return out

    def point_multiple(self, factors: tuple[WeylElement, ...]) -> PreRingCoeff:
        """Coefficient a with prod C_{u_i} = a * C_1, or zero if the product
        is not a multiple of the point class.

        Same-type chains are multiplied first, then the two chains meet in
        one mixed step; a nonzero product always factors this way.
        """
        n = self.n
        if sum(n - u.length for u in factors) != n:
            return self.arith.zero
        sides = {1: [], 2: []}
        points = 0
        for u in factors:
            if u.length == n:
                continue
            if u.length == 0:
                points += 1
            else:
                sides[u.side].append(u.length)
        if points:
            # codegrees force everything else to be the unit
            if points == 1 and not sides[1] and not sides[2]:
                return self.arith.one
            return self.arith.zero
        if not sides[1] or not sides[2]:
            return self.arith.zero  # one-type chains never reach the point
        value = self.arith.one
        dims = {}
        for l in (1, 2):
            acc = sides[l][0]
            for r in sides[l][1:]:
                if acc + r <= n:
                    return self.arith.zero
                acc = acc + r - n
                value = self.arith.inf
            dims[l] = acc
        if dims[1] + dims[2] != n:
            return self.arith.zero
        return value


def enumerate_sigma(n: int, m: int, budget: int = 64) -> list[tuple]:
    """All m-tuples of Weyl elements whose flag product is a nonzero
    multiple of the point class, in lexicographic label order."""
    if m < 2:
        raise InvalidParameterError("m must be at least 2")
    if n is None:
        raise InvalidParameterError("finite groups only")
    if m * n > budget:
        raise BudgetExceededError(f"m*n = {m * n} exceeds budget {budget}")
    ring = FlagPreRing(n)
    labels = sorted((w.length, w.side or 0) for w in ring.basis())
    elems = [ring.group.element(ln, sd or None) for ln, sd in labels]
    out = []

    def rec(prefix: tuple, codegree_left: int):
        slots_left = m - len(prefix)
        if slots_left == 0:
            if codegree_left == 0 and \
                    not ring.point_multiple(prefix).is_zero():
                out.append(prefix)
            return
        for u in elems:
            cd = n - u.length
            if cd > codegree_left:
                continue
            rec(prefix + (u,), codegree_left - cd)

    rec((), n)
    return out


def sigma_to_json(tuples: list[tuple]) -> str:
    doc = [[{"len": u.length, "side": u.side} for u in tup]
           for tup in tuples]
    return json.dumps(doc, separators=(",", ":"), sort_keys=True)
