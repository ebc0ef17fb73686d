"""n-ary groups and quasigroups: construction, validation, retracts and the
Hosszu-Gluskin decomposition.

Dense n-ary tables are flat arrays in row-major order with ``x1`` varying
slowest, so ``f(x1, ..., xn)`` lives at index ``sum(x_i * order**(n-i))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .checks import Check
from .config import LIMITS
from .errors import (
    ArityMismatch,
    IndexOutOfRange,
    InternalInconsistency,
    NotAssociative,
    NotAutomorphism,
    NotSolvable,
    PowerConditionFails,
    RequiresDerivedForm,
    TableTooLarge,
    ThetaDoesNotFixB,
    ThetaNotAutomorphism,
)
from .group_core import (
    ElementMap,
    FiniteGroup,
    center,
    inner_automorphism,
    is_automorphism,
    is_subgroup,
    validate_group,
)


def flat_index(args: Sequence[int], order: int) -> int:
    idx = 0
    for x in args:
        idx = idx * order + x
    return idx


def _tuples(order: int, width: int) -> np.ndarray:
    """All ``order**width`` tuples, lexicographic, as a (rows, width) array."""
    grids = np.indices((order,) * width, dtype=np.int64)
    return grids.reshape(width, -1).T


def _power_vector(order: int, width: int) -> np.ndarray:
    return order ** np.arange(width - 1, -1, -1, dtype=np.int64)


@dataclass(frozen=True, eq=False)
class DerivedSpec:
    """``der_{theta,b}(base)`` at arity ``n``."""

    base: FiniteGroup
    n: int
    theta: ElementMap
    b: int

    @property
    def is_der_n(self) -> bool:
        return self.b == self.base.identity and self.theta == ElementMap.identity(self.base.order)

    def theta_powers(self) -> list[ElementMap]:
        """``[theta^0, ..., theta^(n-1)]``."""
        out = [ElementMap.identity(self.base.order)]
        for _ in range(self.n - 1):
            out.append(self.theta.compose(out[-1]))
        return out

    def check(self):
        g = self.base
        if self.n < 2:
            raise ArityMismatch(f"arity must be at least 2, got {self.n}")
        if not 0 <= self.b < g.order:
            raise IndexOutOfRange(f"b = {self.b} outside group of order {g.order}")
        if not is_automorphism(g, self.theta):
            raise ThetaNotAutomorphism("theta is not an automorphism of the base", witness=self.theta.images)
        if self.theta(self.b) != self.b:
            raise ThetaDoesNotFixB(f"theta(b) = {self.theta(self.b)} != b = {self.b}", witness=self.b)
        top = self.theta.power(self.n - 1)
        binv = g.inv(self.b)
        for x in g.elements():
            if top(x) != g.mul(g.mul(self.b, x), binv):
                raise PowerConditionFails(f"theta^{self.n - 1}({x}) != b {x} b^-1", witness=x)

    def dense_table(self) -> np.ndarray:
        g = self.base
        acc = np.arange(g.order, dtype=np.int64)
        for p in self.theta_powers()[1:]:
            acc = g.table[acc[:, None], p.as_array()[None, :]].ravel()
        return g.table[acc, self.b]

    def evaluate(self, args: Sequence[int]) -> int:
        g = self.base
        acc = g.identity
        for p, x in zip(self.theta_powers(), args):
            acc = g.mul(acc, p(x))
        return g.mul(acc, self.b)


class _NaryOperation:
    __slots__ = ("order", "n", "element_names", "spec", "_table")

    def __init__(self, order, n, table=None, spec=None, names=None):
        self.order = int(order)
        self.n = int(n)
        self.spec = spec
        self.element_names = tuple(names) if names is not None else tuple(str(i) for i in range(order))
        if table is not None:
            table = np.array(table, dtype=np.int64).ravel()
            table.setflags(write=False)
        self._table = table

    @property
    def table(self) -> np.ndarray:
        """The dense flat table, materialised from the derived form on first use."""
        if self._table is None:
            if self.order**self.n > LIMITS.dense_cap:
                raise TableTooLarge(f"{self.order}**{self.n} entries exceed the dense cap {LIMITS.dense_cap}")
            t = self.spec.dense_table()
            t.setflags(write=False)
            self._table = t
        return self._table

    def __call__(self, *args: int) -> int:
        return evaluate(self, args)

    def __eq__(self, other):
        return (type(self) is type(other) and self.order == other.order and self.n == other.n
                and np.array_equal(self.table, other.table))

    def __hash__(self):
        return hash((self.order, self.n, self.table.tobytes()))

    def __len__(self):
        return self.order

    def elements(self) -> range:
        return range(self.order)

    def section(self, args: Sequence[int], pos: int) -> np.ndarray:
        """Values of ``f`` with slot ``pos`` running over the carrier."""
        stride = self.order ** (self.n - 1 - pos)
        fixed = list(args)
        fixed[pos] = 0
        start = flat_index(fixed, self.order)
        return self.table[start:start + stride * self.order:stride]


class PolyadicGroup(_NaryOperation):
    """An n-ary group.

    ``validation`` records how associativity was established: ``"exhaustive"``
    or ``"derivation"`` (via a derived form and its side conditions).
    """

    __slots__ = ("validation",)

    def __init__(self, order, n, table=None, spec=None, names=None, validation="exhaustive"):
        super().__init__(order, n, table, spec, names)
        self.validation = validation

    def __repr__(self):
        kind = "derived" if self.spec is not None else "dense"
        return f"PolyadicGroup(order={self.order}, n={self.n}, {kind})"


class PolyadicQuasigroup(_NaryOperation):
    """An n-ary quasigroup: unique solvability in every slot, no associativity."""

    __slots__ = ()

    def __repr__(self):
        return f"PolyadicQuasigroup(order={self.order}, n={self.n})"

    def is_associative(self) -> bool:
        return kernels.assoc_witness(self.table, self.order, self.n) is None


# --- construction ----------------------------------------------------------

def derive(spec: DerivedSpec) -> PolyadicGroup:
    """``f(x1..xn) = x1 theta(x2) ... theta^(n-1)(xn) b`` after checking the side conditions."""
    spec.check()
    return PolyadicGroup(spec.base.order, spec.n, spec=spec, names=spec.base.element_names,
                         validation="derivation")


def der_n(g: FiniteGroup, n: int) -> PolyadicGroup:
    return derive(DerivedSpec(g, n, ElementMap.identity(g.order), g.identity))


def derive_linear_quasigroup(base: FiniteGroup, autos: Sequence[ElementMap], b: int) -> PolyadicQuasigroup:
    """``f(x1..xn) = alpha_1(x1) ... alpha_n(xn) b`` for automorphisms ``alpha_i``."""
    for i, m in enumerate(autos):
        if not is_automorphism(base, m):
            raise NotAutomorphism(f"alpha_{i + 1} is not an automorphism", witness=m.images)
    if not 0 <= b < base.order:
        raise IndexOutOfRange(f"b = {b} outside group of order {base.order}")
    n = len(autos)
    if n < 2:
        raise ArityMismatch("need at least two maps")
    if base.order**n > LIMITS.dense_cap:
        raise TableTooLarge(f"{base.order}**{n} entries exceed the dense cap")
    acc = autos[0].as_array()
    for m in autos[1:]:
        acc = base.table[acc[:, None], m.as_array()[None, :]].ravel()
    table = base.table[acc, b]
    bad = kernels.solvable_witness(table, base.order, n)
    if bad is not None:
        raise InternalInconsistency(f"linear quasigroup not solvable at slot {bad[0]} with {bad[1]}")
    return PolyadicQuasigroup(base.order, n, table=table, names=base.element_names)


def _infer_order(size: int, n: int) -> int:
    order = max(1, round(size ** (1.0 / n)))
    for cand in (order - 1, order, order + 1):
        if cand >= 1 and cand**n == size:
            return cand
    raise ArityMismatch(f"table of {size} entries is not order**{n} for any order")


def validate_quasigroup(table, n: int, names=None) -> PolyadicQuasigroup:
    t = np.asarray(table, dtype=np.int64).ravel()
    order = _infer_order(t.size, n)
    _check_dense(t, order, n)
    return PolyadicQuasigroup(order, n, table=t, names=names)


def _check_dense(t: np.ndarray, order: int, n: int):
    if t.size > LIMITS.dense_cap:
        raise TableTooLarge(f"{t.size} entries exceed the dense cap {LIMITS.dense_cap}")
    if t.size and (t.min() < 0 or t.max() >= order):
        i = int(np.flatnonzero((t < 0) | (t >= order))[0])
        raise IndexOutOfRange(f"entry {i} = {t[i]} outside 0..{order - 1}")
    bad = kernels.solvable_witness(t, order, n)
    if bad is not None:
        pos, fixed = bad
        raise NotSolvable(f"slot {pos + 1} is not a bijection for fixed arguments {fixed}",
                          position=pos, fixed_args=fixed)


def validate_polyadic_group(table, n: int, names=None, budget: Optional[int] = None) -> PolyadicGroup:
    """Validate a dense n-ary table.

    Solvability is always exhaustive.  Associativity is exhaustive over all
    (2n-1)-tuples when ``order**(2n-1) <= budget``; above that the table is
    accepted iff it equals the derived form recovered from its retract at 0.
    """
    if n < 2:
        raise ArityMismatch(f"arity must be at least 2, got {n}")
    budget = LIMITS.assoc_budget if budget is None else budget
    t = np.asarray(table, dtype=np.int64).ravel()
    order = _infer_order(t.size, n)
    _check_dense(t, order, n)
    if order ** (2 * n - 1) <= budget:
        bad = kernels.assoc_witness(t, order, n)
        if bad is not None:
            tup, p = bad
            raise NotAssociative(
                f"placing the inner operation at slot 1 and slot {p + 1} disagree on {tup}", witness=bad)
        return PolyadicGroup(order, n, table=t, names=names, validation="exhaustive")
    pg = PolyadicGroup(order, n, table=t, names=names, validation="derivation")
    try:
        hg_decompose(pg, 0)
    except Exception as exc:  # any failure means f is not der_{theta,b} of its retract
        raise NotAssociative(f"table is not associative (derived-form check failed: {exc})") from exc
    return pg


# --- evaluation and elementary notions ---------------------------------------

def evaluate(pg: _NaryOperation, args: Sequence[int]) -> int:
    if len(args) != pg.n:
        raise ArityMismatch(f"expected {pg.n} arguments, got {len(args)}")
    for x in args:
        if not 0 <= x < pg.order:
            raise IndexOutOfRange(f"element {x} outside carrier of order {pg.order}")
    if pg._table is None and pg.spec is not None:
        return pg.spec.evaluate(args)
    return int(pg.table[flat_index(args, pg.order)])


def skew(pg: PolyadicGroup, x: int) -> int:
    """The unique ``y`` with ``f(x, ..., x, y) == x``."""
    hits = np.flatnonzero(pg.section([x] * pg.n, pg.n - 1) == x)
    if hits.size != 1:
        raise InternalInconsistency(f"{hits.size} solutions for the skew of {x}")
    return int(hits[0])


def skews(pg: PolyadicGroup) -> list[int]:
    return [skew(pg, x) for x in pg.elements()]


def check_dornte(pg: PolyadicGroup) -> Check:
    """Exhaustively check the three skew-element identity families."""
    n = pg.n
    sk = skews(pg)
    cases = 0
    for x in pg.elements():
        xb = sk[x]
        for k in range(1, n + 1):
            args = [x] * (k - 1) + [xb] + [x] * (n - k)
            cases += 1
            if evaluate(pg, args) != x:
                return Check("dornte", False, cases, witness=("k", k, x),
                             detail=f"f{tuple(args)} = {evaluate(pg, args)} != {x}")
        for y in pg.elements():
            for i in range(2, n + 1):
                args = [x] * (i - 2) + [xb] + [x] * (n - i) + [y]
                cases += 1
                if evaluate(pg, args) != y:
                    return Check("dornte", False, cases, witness=("i", i, x, y),
                                 detail=f"f{tuple(args)} = {evaluate(pg, args)} != {y}")
            for j in range(2, n + 1):
                args = [y] + [x] * (n - j) + [xb] + [x] * (j - 2)
                cases += 1
                if evaluate(pg, args) != y:
                    return Check("dornte", False, cases, witness=("j", j, x, y),
                                 detail=f"f{tuple(args)} = {evaluate(pg, args)} != {y}")
    return Check("dornte", True, cases)


def retract(pg: PolyadicGroup, a: int) -> FiniteGroup:
    """``Ret_a``: the binary group ``x.y = f(x, a, ..., a, y)`` with identity ``skew(a)``."""
    n, order = pg.n, pg.order
    cube = pg.table.reshape((order,) * n)
    table = cube[(slice(None),) + (a,) * (n - 2) + (slice(None),)]
    try:
        g = validate_group(table, pg.element_names)
    except Exception as exc:
        raise InternalInconsistency(f"retract at {a} is not a group: {exc}") from exc
    abar = skew(pg, a)
    if g.identity != abar:
        raise InternalInconsistency(f"retract identity {g.identity} != skew({a}) = {abar}")
    if n >= 3:
        sk = skews(pg)
        for x in pg.elements():
            if evaluate(pg, [abar] + [x] * (n - 3) + [sk[x], abar]) != g.inv(x):
                raise InternalInconsistency(f"retract inverse formula fails at x = {x}")
    return g


def hg_decompose(pg: PolyadicGroup, a: int = 0) -> DerivedSpec:
    """Recover ``(Ret_a, theta, b)`` with ``pg == der_{theta,b}(Ret_a)``.

    ``theta(x) = f(abar, x, a, ..., a)`` and ``b = f(abar, ..., abar)``.
    """
    base = retract(pg, a)
    abar = base.identity
    theta = ElementMap(tuple(evaluate(pg, [abar, x] + [a] * (pg.n - 2)) for x in pg.elements()), pg.order)
    b = evaluate(pg, [abar] * pg.n)
    spec = DerivedSpec(base, pg.n, theta, b)
    try:
        rebuilt = derive(spec)
    except Exception as exc:
        raise InternalInconsistency(f"recovered (theta, b) invalid: {exc}") from exc
    if not np.array_equal(rebuilt.table, pg.table):
        i = int(np.flatnonzero(rebuilt.table != pg.table)[0])
        raise InternalInconsistency(f"round trip differs at flat index {i}")
    return spec


def idempotents(pg: PolyadicGroup) -> list[int]:
    """``{a : f(a, ..., a) == a}``, cross-checked against the fixed points of skew."""
    by_value = [a for a in pg.elements() if evaluate(pg, [a] * pg.n) == a]
    by_skew = [a for a in pg.elements() if skew(pg, a) == a]
    if by_value != by_skew:
        raise InternalInconsistency(f"idempotents {by_value} != skew fixed points {by_skew}")
    return by_value


def z_star(pg: PolyadicGroup) -> list[int]:
    """Central idempotents of ``der_theta(G)`` (``b`` must be the identity)."""
    spec = pg.spec
    if spec is None or spec.b != spec.base.identity:
        raise RequiresDerivedForm("Z* is defined for der_theta(G) with b = e")
    out = sorted(set(idempotents(pg)) & set(center(spec.base)))
    if not is_subgroup(spec.base, out):
        raise InternalInconsistency(f"Z* = {out} is not a subgroup")
    return out


def commutative_base_points(pg: PolyadicGroup) -> list[int]:
    n, order = pg.n, pg.order
    cube = pg.table.reshape((order,) * n)
    out = []
    for a in pg.elements():
        t = cube[(slice(None),) + (a,) * (n - 2) + (slice(None),)]
        if np.array_equal(t, t.T):
            out.append(a)
    return out


def is_semiabelian(pg: PolyadicGroup) -> bool:
    """Whether some retract is commutative.

    When it is, ``f(x1..xn) == f(xn, x2..x_{n-1}, x1)`` is confirmed
    exhaustively and a failure raises :class:`InternalInconsistency`.
    """
    if not commutative_base_points(pg):
        return False
    cube = pg.table.reshape((pg.order,) * pg.n)
    if not np.array_equal(cube, np.swapaxes(cube, 0, pg.n - 1)):
        raise InternalInconsistency("semiabelian group violates f(x1..xn) = f(xn, x2.., x1)")
    return True


def _sample_rows(order, width, samples, seed):
    rng = np.random.default_rng(seed)
    return rng.integers(0, order, size=(samples, width), dtype=np.int64)


def is_medial(pg: PolyadicGroup, budget: Optional[int] = None, samples: Optional[int] = None,
              seed: Optional[int] = None) -> Check:
    """The n x n interchange identity, exhaustive within ``budget`` else sampled."""
    budget = LIMITS.exhaustive_budget if budget is None else budget
    samples = LIMITS.samples if samples is None else samples
    seed = LIMITS.seed if seed is None else seed
    n, order, t = pg.n, pg.order, pg.table
    total = order ** (n * n)
    if total <= budget:
        bad = kernels.medial_witness(t, order, n)
        witness = None if bad is None else _matrix(bad, n)
        return Check("medial", bad is None, total, witness=witness,
                     detail="" if witness is None else _medial_detail(pg, witness))
    m = _sample_rows(order, n * n, samples, seed).reshape(-1, n, n)
    pw = _power_vector(order, n)
    rows = np.stack([t[m[:, i, :] @ pw] for i in range(n)], axis=1)
    cols = np.stack([t[m[:, :, j] @ pw] for j in range(n)], axis=1)
    bad = np.flatnonzero(t[rows @ pw] != t[cols @ pw])
    witness = _matrix(m[int(bad[0])].ravel(), n) if bad.size else None
    return Check("medial", not bad.size, samples, witness=witness, exhaustive=False, seed=seed,
                 detail="" if witness is None else _medial_detail(pg, witness))


def _matrix(flat, n):
    flat = [int(v) for v in flat]
    return tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))


def _medial_detail(pg, mat) -> str:
    rows = [evaluate(pg, r) for r in mat]
    cols = [evaluate(pg, c) for c in zip(*mat)]
    return (f"f(rows) = f{tuple(rows)} = {evaluate(pg, rows)} != "
            f"f(columns) = f{tuple(cols)} = {evaluate(pg, cols)}")


def check_skew_distribution(pg: PolyadicGroup, budget: Optional[int] = None,
                            samples: Optional[int] = None, seed: Optional[int] = None) -> Check:
    """``skew(f(x1..xn)) == f(skew(x1), ..., skew(xn))``."""
    budget = LIMITS.exhaustive_budget if budget is None else budget
    samples = LIMITS.samples if samples is None else samples
    seed = LIMITS.seed if seed is None else seed
    n, order, t = pg.n, pg.order, pg.table
    sk = np.asarray(skews(pg), dtype=np.int64)
    pw = _power_vector(order, n)
    exhaustive = order**n <= budget
    x = _tuples(order, n) if exhaustive else _sample_rows(order, n, samples, seed)
    lhs = sk[t[x @ pw]]
    rhs = t[sk[x] @ pw]
    bad = np.flatnonzero(lhs != rhs)
    witness = tuple(int(v) for v in x[int(bad[0])]) if bad.size else None
    detail = ""
    if witness is not None:
        detail = (f"skew(f{witness}) = {int(sk[evaluate(pg, witness)])} != "
                  f"f{tuple(int(sk[v]) for v in witness)} = {evaluate(pg, [int(sk[v]) for v in witness])}")
    return Check("skew-distribution", not bad.size, len(x), witness=witness, exhaustive=exhaustive,
                 seed=None if exhaustive else seed, detail=detail)
