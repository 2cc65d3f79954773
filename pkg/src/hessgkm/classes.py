"""
Explicit degree-two classes on ``S_n`` and the identities they satisfy.

Each class is a rule ``w -> linear form in t``:

* ``x_k(w)      = t_{w(k)}``
* ``y_{j,k}(w)  = t_k - t_{w(j+1)}``   if ``k`` is among ``w(1..j)``, else 0
* ``y*_{i,k}(w) = t_k - t_{w(i-1)}``   if ``k`` is among ``w(i..n)``, else 0
* ``tau_A(w)    = t_{w(|A|)} - t_{w(|A|+1)}``  if ``w(1..|A|) = A`` as sets, else 0
* ``rho_k(w)    = t_{w(n-1)} - t_{w(n)}``  if ``w(n) = k``, else 0

The rules do not depend on ``h``; whether a class lies in the graph
cohomology of ``h`` is decided by :func:`membership_conditions` and checked
by :func:`hessgkm.gkm.is_gkm_class`.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from itertools import combinations
from math import factorial
from typing import Iterable

from .gkm import Cochain, Perm, all_perms, involution_vee, is_gkm_class
from .hessfn import HessenbergFunction, bottom_and_ell_sets, h_star, is_connected
from .polyring import MultiPoly
from .qseries import family_function

__all__ = [
    "BadParameters", "RelationFailure", "ClassSpec", "class_value", "build_class",
    "membership_conditions", "RelationReport", "verify_linear_relations",
    "verify_product_relations", "EXHAUSTIVE_LIMIT",
]

KINDS = ("X", "Y", "YSTAR", "TAU", "RHO")

# beyond this many permutations the verifiers check a seeded random sample
EXHAUSTIVE_LIMIT = 5040


class BadParameters(ValueError):
    pass


class RelationFailure(AssertionError):
    def __init__(self, identity: str, witness: Perm, detail: str = ""):
        self.identity = identity
        self.witness = witness
        msg = f"{identity} fails at w={''.join(map(str, witness))}"
        super().__init__(msg + (f": {detail}" if detail else ""))


@dataclass(frozen=True)
class ClassSpec:
    kind: str
    params: tuple

    @classmethod
    def x(cls, k: int) -> ClassSpec:
        return cls("X", (k,))

    @classmethod
    def y(cls, j: int, k: int) -> ClassSpec:
        return cls("Y", (j, k))

    @classmethod
    def ystar(cls, i: int, k: int) -> ClassSpec:
        return cls("YSTAR", (i, k))

    @classmethod
    def tau(cls, subset: Iterable[int]) -> ClassSpec:
        return cls("TAU", (frozenset(subset),))

    @classmethod
    def rho(cls, k: int) -> ClassSpec:
        return cls("RHO", (k,))

    def check(self, n: int) -> None:
        kind, p = self.kind, self.params
        if kind not in KINDS:
            raise BadParameters(f"unknown class kind {kind!r}")
        ok = True
        if kind == "X":
            ok = 1 <= p[0] <= n
        elif kind == "Y":
            ok = 1 <= p[0] <= n - 1 and 1 <= p[1] <= n
        elif kind == "YSTAR":
            ok = 2 <= p[0] <= n and 1 <= p[1] <= n
        elif kind == "TAU":
            a = p[0]
            ok = 1 <= len(a) <= n - 1 and all(1 <= k <= n for k in a)
        elif kind == "RHO":
            ok = n >= 2 and 1 <= p[0] <= n
        if not ok:
            raise BadParameters(f"{self} out of range for n={n}")

    def __str__(self) -> str:
        p = self.params
        if self.kind == "TAU":
            return "tau:{" + ",".join(map(str, sorted(p[0]))) + "}"
        return f"{self.kind.lower()}:" + ",".join(map(str, p))

    @classmethod
    def parse(cls, text: str) -> ClassSpec:
        m = re.fullmatch(r"\s*(x|y|ystar|tau|rho)\s*:\s*(.*)", text)
        if not m:
            raise BadParameters(f"cannot parse class spec {text!r}")
        kind, rest = m.group(1).upper(), m.group(2)
        if kind == "TAU":
            inner = rest.strip().strip("{}")
            return cls.tau(int(x) for x in inner.split(",") if x.strip())
        nums = tuple(int(x) for x in rest.split(","))
        expected = {"X": 1, "RHO": 1, "Y": 2, "YSTAR": 2}[kind]
        if len(nums) != expected:
            raise BadParameters(f"{kind.lower()} takes {expected} parameter(s)")
        return cls(kind, nums)


def _diff(n: int, a: int, b: int) -> MultiPoly:
    return MultiPoly.linear(n, {a: 1, b: -1})


def class_value(n: int, spec: ClassSpec, w: Perm) -> MultiPoly:
    kind, p = spec.kind, spec.params
    if kind == "X":
        return MultiPoly.var(n, w[p[0] - 1])
    if kind == "Y":
        j, k = p
        return _diff(n, k, w[j]) if k in w[:j] else MultiPoly.zero(n)
    if kind == "YSTAR":
        i, k = p
        return _diff(n, k, w[i - 2]) if k in w[i - 1:] else MultiPoly.zero(n)
    if kind == "TAU":
        a = p[0]
        m = len(a)
        return _diff(n, w[m - 1], w[m]) if frozenset(w[:m]) == a else MultiPoly.zero(n)
    if kind == "RHO":
        return _diff(n, w[n - 2], w[n - 1]) if w[n - 1] == p[0] else MultiPoly.zero(n)
    raise BadParameters(kind)


def build_class(n: int, spec: ClassSpec) -> Cochain:
    spec.check(n)
    return Cochain(n, 1, {w: class_value(n, spec, w) for w in all_perms(n)})


def membership_conditions(h: HessenbergFunction, spec: ClassSpec) -> bool:
    """Side condition under which the class is known to be a graph-cohomology class of ``h``."""
    n = h.n
    spec.check(n)
    bottom, ell = bottom_and_ell_sets(h)
    kind, p = spec.kind, spec.params
    if kind == "X":
        return True
    if kind == "Y":
        return p[0] in bottom
    if kind == "YSTAR":
        return h_star(h, p[0]) == p[0] - 1
    if kind == "TAU":
        return len(p[0]) in ell
    # rho_k = -y*_{n,k}
    return h_star(h, n) == n - 1


@dataclass
class RelationReport:
    h: str
    checked: list[str]
    points: int
    exhaustive: bool

    def to_dict(self) -> dict:
        return {"h": self.h, "checked": self.checked, "points": self.points,
                "exhaustive": self.exhaustive}


def _points(n: int, sample: int | None, seed: int) -> tuple[list[Perm], bool]:
    if factorial(n) <= EXHAUSTIVE_LIMIT and sample is None:
        return list(all_perms(n)), True
    rng = random.Random(seed)
    size = sample or 500
    pts = set()
    while len(pts) < min(size, factorial(n)):
        w = list(range(1, n + 1))
        rng.shuffle(w)
        pts.add(tuple(w))
    return sorted(pts), False


def _sum(n: int, specs: Iterable[ClassSpec], w: Perm) -> MultiPoly:
    total = MultiPoly.zero(n)
    for s in specs:
        total = total + class_value(n, s, w)
    return total


def _xs(n: int, coeffs: dict[int, int], w: Perm) -> MultiPoly:
    """``sum c_k x_k`` at ``w``."""
    return MultiPoly.linear(n, {w[k - 1]: c for k, c in coeffs.items()})


def verify_linear_relations(h: HessenbergFunction, sample: int | None = None,
                            seed: int = 0) -> RelationReport:
    """Check the linear identities among the degree-two classes pointwise.

    Up to ``EXHAUSTIVE_LIMIT`` permutations every point is visited; above it a
    seeded sample is used and the report says so.
    """
    n = h.n
    if not is_connected(h):
        raise ValueError(f"{h} is not connected")
    bottom, ell = bottom_and_ell_sets(h)
    pts, exhaustive = _points(n, sample, seed)
    total_t = MultiPoly.linear(n, {i: 1 for i in range(1, n + 1)})
    checked = []

    def require(name: str, w: Perm, lhs: MultiPoly, rhs: MultiPoly):
        if lhs != rhs:
            raise RelationFailure(name, w, f"{lhs} != {rhs}")

    name = "sum_k x_k = sum_i t_i"
    for w in pts:
        require(name, w, _sum(n, [ClassSpec.x(k) for k in range(1, n + 1)], w), total_t)
    checked.append(name)

    for j in sorted(bottom - {n - 1}):
        name = f"sum_k y_{j},k = x_1+...+x_{j} - {j} x_{j + 1}"
        specs = [ClassSpec.y(j, k) for k in range(1, n + 1)]
        rhs_coeffs = {k: 1 for k in range(1, j + 1)}
        rhs_coeffs[j + 1] = -j
        for w in pts:
            require(name, w, _sum(n, specs, w), _xs(n, rhs_coeffs, w))
        checked.append(name)

    for j in sorted(ell - {n - 1}):
        name = f"sum_|A|={j} tau_A = x_{j} - x_{j + 1}"
        specs = [ClassSpec.tau(a) for a in combinations(range(1, n + 1), j)]
        for w in pts:
            require(name, w, _sum(n, specs, w), _xs(n, {j: 1, j + 1: -1}, w))
        checked.append(name)

    if n >= 3:
        name = "sum_k rho_k = x_{n-1} - x_n"
        specs = [ClassSpec.rho(k) for k in range(1, n + 1)]
        for w in pts:
            require(name, w, _sum(n, specs, w), _xs(n, {n - 1: 1, n: -1}, w))
        checked.append(name)

        name = "(y_k - y_l) - (rho_k - rho_l) = t_k - t_l  (y = y_{n-2,.})"
        for w in pts:
            for k in range(1, n + 1):
                for l in range(1, n + 1):
                    if k == l:
                        continue
                    lhs = (class_value(n, ClassSpec.y(n - 2, k), w)
                           - class_value(n, ClassSpec.y(n - 2, l), w)
                           - class_value(n, ClassSpec.rho(k), w)
                           + class_value(n, ClassSpec.rho(l), w))
                    require(name, w, lhs, _diff(n, k, l))
        checked.append(name)

    return RelationReport(str(h), checked, len(pts), exhaustive)


def verify_product_relations(n: int) -> RelationReport:
    """Pointwise product identities for ``tau_k = tau_{{k}}`` and ``rho_k`` on ``(2, n-1, ..., n-1, n, n)``."""
    h = family_function(n)
    pts = list(all_perms(n))
    ks = range(1, n + 1)
    tau = {k: build_class(n, ClassSpec.tau({k})) for k in ks}
    rho = {k: build_class(n, ClassSpec.rho(k)) for k in ks}
    x = {k: build_class(n, ClassSpec.x(k)) for k in ks}
    checked = []

    def require_equal(name: str, lhs: Cochain, rhs: Cochain):
        for w in pts:
            if lhs(w) != rhs(w):
                raise RelationFailure(name, w, f"{lhs(w)} != {rhs(w)}")

    def zero(deg):
        return Cochain.zero(n, deg)

    for k in ks:
        for l in ks:
            if k == l:
                require_equal(f"tau_{k}^2 = (x_1 - x_2) tau_{k}", tau[k] * tau[k], (x[1] - x[2]) * tau[k])
                require_equal(f"rho_{k}^2 = (x_n-1 - x_n) rho_{k}", rho[k] * rho[k],
                              (x[n - 1] - x[n]) * rho[k])
            else:
                require_equal(f"tau_{k} tau_{l} = 0", tau[k] * tau[l], zero(2))
                require_equal(f"rho_{k} rho_{l} = 0", rho[k] * rho[l], zero(2))
    checked += ["tau_k tau_l", "rho_k rho_l"]

    for k in ks:
        require_equal(f"tau_{k} rho_{k} = 0", tau[k] * rho[k], zero(2))
        t_k = Cochain.constant(n, MultiPoly.var(n, k))
        require_equal(f"(x_1 - t_{k}) tau_{k} = 0", (x[1] - t_k) * tau[k], zero(2))
        require_equal(f"(x_n - t_{k}) rho_{k} = 0", (x[n] - t_k) * rho[k], zero(2))
    checked += ["tau_k rho_k = 0", "(x_1 - t_k) tau_k = 0", "(x_n - t_k) rho_k = 0"]

    for k in ks:
        require_equal(f"x_{k}^vee = x_{n - k + 1}", involution_vee(x[k]), x[n - k + 1])
        require_equal(f"tau_{k}^vee = -rho_{k}", involution_vee(tau[k]), -rho[k])
        require_equal(f"rho_{k}^vee = -tau_{k}", involution_vee(rho[k]), -tau[k])
    checked += ["x_k^vee = x_{n-k+1}", "tau_k^vee = -rho_k", "rho_k^vee = -tau_k"]

    for k in ks:
        for f, label in ((tau[k], f"tau_{k}"), (rho[k], f"rho_{k}")):
            if not is_gkm_class(h, f):
                raise RelationFailure(f"{label} is a graph-cohomology class of {h}", pts[0])
    checked.append("tau_k, rho_k satisfy the edge conditions")

    return RelationReport(str(h), checked, len(pts), True)
