"""Matrix representations of n-ary groups over prime fields.

A representation is a map ``x -> Lambda(x)`` into invertible m x m matrices
with ``Lambda(f(x_1..x_n)) == Lambda(x_1) ... Lambda(x_n)``.  For
``der_{theta,b}(G)`` every representation splits as ``Lambda(x) = Gamma(x) A``
with ``Gamma`` an ordinary representation of ``G``,

    A^(n-1) == Gamma(b)   and   Gamma(theta(x)) == A Gamma(x) A^-1.

``literal=True`` swaps the first condition for ``A^(n-1) == Lambda(b)``
(i.e. ``Gamma(b) A``), which admits pairs that are not representations and
misses some that are; it exists for comparison only.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .config import LIMITS
from .checks import Check
from .errors import (
    BudgetExceeded,
    ConditionsFail,
    InternalInconsistency,
    ModularCharacteristic,
    NotBinaryRepresentation,
    NotRepresentation,
    RequiresDerivedForm,
    SingularImage,
)
from .group_core import ElementMap, FiniteGroup, enumerate_homomorphisms, multiplicative_group
from .linalg_fp import Matrix, is_prime
from .polyadic_core import DerivedSpec, PolyadicGroup, der_n, derive, evaluate


@dataclass(frozen=True)
class FieldSpec:
    p: int
    required_roots: int = 1

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if (self.p - 1) % self.required_roots:
            raise ValueError(f"F_{self.p} has no element of order {self.required_roots}")

    def nonzero(self) -> range:
        return range(1, self.p)


@dataclass(frozen=True)
class Representation:
    pg: PolyadicGroup
    field: FieldSpec
    images: tuple[Matrix, ...]

    @property
    def degree(self) -> int:
        return self.images[0].dim

    def __call__(self, x: int) -> Matrix:
        return self.images[x]

    @property
    def key(self) -> tuple:
        return tuple(m.rows for m in self.images)

    def to_dict(self) -> dict:
        return {"field": self.field.p, "degree": self.degree,
                "images": [[v for r in m.rows for v in r] for m in self.images]}


def _reject_modular(order: int, field: FieldSpec):
    if order % field.p == 0:
        raise ModularCharacteristic(f"characteristic {field.p} divides the group order {order}")


def _prod(ms: Sequence[Matrix]) -> Matrix:
    out = ms[0]
    for m in ms[1:]:
        out = out @ m
    return out


def is_representation(images: Sequence[Matrix], pg: PolyadicGroup, field: FieldSpec) -> Check:
    """Exhaustive check of ``Lambda(f(x..)) == Lambda(x_1)...Lambda(x_n)``."""
    if len(images) != pg.order:
        raise ValueError(f"{len(images)} images for {pg.order} elements")
    for x, m in enumerate(images):
        if m.p != field.p:
            raise ValueError("image over the wrong field")
        if not m.is_invertible():
            raise SingularImage(f"image of {x} is singular")
    # prefix products are shared across tuples with a common head
    cases = 0

    def walk(prefix, acc):
        nonlocal cases
        if len(prefix) == pg.n:
            cases += 1
            return None if images[evaluate(pg, prefix)] == acc else tuple(prefix)
        for x in pg.elements():
            bad = walk(prefix + [x], images[x] if acc is None else acc @ images[x])
            if bad is not None:
                return bad
        return None

    bad = walk([], None)
    if bad is None:
        return Check("representation", True, cases)
    lhs = images[evaluate(pg, bad)]
    return Check("representation", False, cases, witness=bad,
                 detail=f"Lambda(f{bad}) = {lhs.rows} != product {_prod([images[x] for x in bad]).rows}")


def _is_binary_rep(g: FiniteGroup, gamma: Sequence[Matrix]):
    for x in g.elements():
        for y in g.elements():
            if gamma[g.mul(x, y)] != gamma[x] @ gamma[y]:
                return (x, y)
    return None


def _conditions(gamma, a: Matrix, spec: DerivedSpec, literal: bool):
    """Yields ``(name, witness)`` for each failing condition."""
    power = a ** (spec.n - 1)
    rhs = gamma[spec.b] @ a if literal else gamma[spec.b]
    if power != rhs:
        yield ("A^(n-1)=Lambda(b)" if literal else "A^(n-1)=Gamma(b)"), spec.b
    ainv = a.inverse()
    for x in spec.base.elements():
        if gamma[spec.theta(x)] != a @ gamma[x] @ ainv:
            yield "Gamma(theta(x))=A.Gamma(x).A^-1", x
            break


def pair_conditions_hold(gamma: Sequence[Matrix], a: Matrix, spec: DerivedSpec, literal: bool = False) -> bool:
    return next(_conditions(gamma, a, spec, literal), None) is None


def build_representation(gamma: Sequence[Matrix], a: Matrix, spec: DerivedSpec, field: FieldSpec,
                         literal: bool = False) -> Representation:
    """``Lambda(x) = Gamma(x) A`` after checking the two side conditions."""
    g = spec.base
    _reject_modular(g.order, field)
    gamma = tuple(gamma)
    if len(gamma) != g.order:
        raise NotBinaryRepresentation(f"{len(gamma)} images for {g.order} elements")
    for x, m in enumerate(gamma):
        if not m.is_invertible():
            raise NotBinaryRepresentation(f"Gamma({x}) is singular", witness=x)
    bad = _is_binary_rep(g, gamma)
    if bad is not None:
        raise NotBinaryRepresentation(f"Gamma({bad[0]}*{bad[1]}) != Gamma({bad[0]}) Gamma({bad[1]})", witness=bad)
    if not a.is_invertible():
        raise SingularImage("A is singular")
    failed = next(_conditions(gamma, a, spec, literal), None)
    if failed is not None:
        name, x = failed
        raise ConditionsFail(f"condition {name} fails at x = {x}", condition=name, witness=x)
    pg = derive(spec)
    images = tuple(m @ a for m in gamma)
    chk = is_representation(images, pg, field)
    if not chk:
        raise NotRepresentation(f"Gamma(x) A is not a representation: {chk.detail}", witness=chk.witness)
    return Representation(pg, field, images)


def decompose_representation(rep: Representation, spec: Optional[DerivedSpec] = None) -> tuple[tuple[Matrix, ...], Matrix]:
    """``(Gamma, A)`` with ``A = Lambda(e)`` and ``Gamma(x) = Lambda(x) A^-1``."""
    spec = rep.pg.spec if spec is None else spec
    if spec is None:
        raise RequiresDerivedForm("decomposition needs a derived form")
    g = spec.base
    _reject_modular(g.order, rep.field)
    chk = is_representation(rep.images, rep.pg, rep.field)
    if not chk:
        raise NotRepresentation(f"not a representation: {chk.detail}", witness=chk.witness)
    a = rep(g.identity)
    ainv = a.inverse()
    gamma = tuple(rep(x) @ ainv for x in g.elements())
    if _is_binary_rep(g, gamma) is not None:
        raise InternalInconsistency("Gamma is not an ordinary representation")
    failed = next(_conditions(gamma, a, spec, False), None)
    if failed is not None:
        raise InternalInconsistency(f"condition {failed[0]} fails at {failed[1]}")
    if tuple(m @ a for m in gamma) != rep.images:
        raise InternalInconsistency("reconstruction mismatch")
    return gamma, a


def character(rep: Representation) -> list[int]:
    return [m.trace() for m in rep.images]


def direct_sum(r1: Representation, r2: Representation) -> Representation:
    return Representation(r1.pg, r1.field, tuple(a.direct_sum(b) for a, b in zip(r1.images, r2.images)))


def enumerate_degree1_reps(pg: PolyadicGroup, field: FieldSpec, budget: Optional[int] = None) -> list[Representation]:
    """Every map ``carrier -> F_p^*`` satisfying the defining identity, by exhaustion."""
    budget = LIMITS.rep_budget if budget is None else budget
    p, order, n = field.p, pg.order, pg.n
    total = (p - 1) ** order
    if total > budget:
        raise BudgetExceeded(f"{total} scalar assignments exceed budget {budget}")
    table = pg.table
    grid = np.indices((order,) * n).reshape(n, -1).T
    # all assignments at once; each block of argument tuples discards failing rows
    cand = np.array(list(itertools.product(range(1, p), repeat=order)), dtype=np.int64).reshape(-1, order)
    for start in range(0, len(grid), 64):
        block = grid[start:start + 64]
        rhs = np.ones((len(cand), len(block)), dtype=np.int64)
        for k in range(n):
            rhs = rhs * cand[:, block[:, k]] % p
        keep = (cand[:, table[start:start + 64]] == rhs).all(axis=1)
        cand = cand[keep]
        if not len(cand):
            break
    return [Representation(pg, field, tuple(Matrix.scalar(int(v), p) for v in row)) for row in cand]


def binary_degree1_reps(g: FiniteGroup, field: FieldSpec) -> list[tuple[Matrix, ...]]:
    """Homomorphisms ``G -> F_p^*`` as 1x1 matrices."""
    fstar = multiplicative_group(field.p)
    return [tuple(Matrix.scalar(i + 1, field.p) for i in hom.images)
            for hom in enumerate_homomorphisms(g, fstar)]


def degree1_pairs(spec: DerivedSpec, field: FieldSpec, literal: bool = False) -> list[tuple[tuple[Matrix, ...], Matrix]]:
    """All degree-1 ``(Gamma, A)`` satisfying the side conditions."""
    out = []
    for gamma in binary_degree1_reps(spec.base, field):
        for c in field.nonzero():
            a = Matrix.scalar(c, field.p)
            if pair_conditions_hold(gamma, a, spec, literal):
                out.append((gamma, a))
    return out


def as_polyadic_homomorphism(rep: Representation) -> tuple[ElementMap, PolyadicGroup]:
    """A degree-1 representation as a map into ``der^n(F_p^*)``."""
    if rep.degree != 1:
        raise ValueError("only degree-1 representations embed in der^n(F_p^*)")
    target = der_n(multiplicative_group(rep.field.p), rep.pg.n)
    return ElementMap(tuple(m.rows[0][0] - 1 for m in rep.images), rep.field.p - 1), target
