"""Finite binary groups given by Cayley tables over indices 0..order-1.

Maps act on the left: ``(f.compose(g))(x) == f(g(x))``.  In particular the
inner automorphism ``I_a`` sends ``x`` to ``a^-1 x a``, so
``I_a o I_b == I_(b a)`` and ``R_a o R_b == R_(b a)``.
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .config import LIMITS
from .errors import (
    IndexOutOfRange,
    NoIdentity,
    NotAssociative,
    NotAutomorphism,
    NotLatinSquare,
    OrderTooLarge,
)


@dataclass(frozen=True, order=True)
class ElementMap:
    """A map between carriers, stored by its image vector."""

    images: tuple[int, ...]
    codomain_order: int = field(default=-1, compare=False)

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        object.__setattr__(self, "images", images)
        if self.codomain_order < 0:
            object.__setattr__(self, "codomain_order", len(images))
        for v in images:
            if not 0 <= v < self.codomain_order:
                raise IndexOutOfRange(f"image {v} outside codomain of order {self.codomain_order}")

    @classmethod
    def identity(cls, order: int) -> ElementMap:
        return cls(tuple(range(order)), order)

    @property
    def domain_order(self) -> int:
        return len(self.images)

    @property
    def bijective(self) -> bool:
        return self.domain_order == self.codomain_order and len(set(self.images)) == len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __len__(self):
        return len(self.images)

    def compose(self, other: ElementMap) -> ElementMap:
        """``self o other``: apply ``other`` first."""
        if other.codomain_order != self.domain_order:
            raise ValueError("maps are not composable")
        return ElementMap(tuple(self.images[v] for v in other.images), self.codomain_order)

    __matmul__ = compose

    def inverse(self) -> ElementMap:
        if not self.bijective:
            raise ValueError("map is not a bijection")
        inv = [0] * len(self.images)
        for x, v in enumerate(self.images):
            inv[v] = x
        return ElementMap(tuple(inv), len(inv))

    def power(self, k: int) -> ElementMap:
        base = self if k >= 0 else self.inverse()
        out = ElementMap.identity(self.domain_order)
        for _ in range(abs(k)):
            out = base.compose(out)
        return out

    def as_array(self) -> np.ndarray:
        return np.asarray(self.images, dtype=np.int64)


class FiniteGroup:
    """A validated finite group.  Build with :func:`validate_group`."""

    __slots__ = ("order", "element_names", "table", "identity", "inverses", "_abelian")

    def __init__(self, table: np.ndarray, names: Sequence[str], identity: int, inverses: Sequence[int]):
        table = np.array(table, dtype=np.int64)
        table.setflags(write=False)
        self.order = table.shape[0]
        self.element_names = tuple(names)
        self.table = table
        self.identity = int(identity)
        self.inverses = tuple(int(v) for v in inverses)
        self._abelian = None

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def __len__(self):
        return self.order

    def elements(self) -> range:
        return range(self.order)

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def inv(self, x: int) -> int:
        return self.inverses[x]

    def prod(self, xs: Iterable[int]) -> int:
        acc = self.identity
        for x in xs:
            acc = int(self.table[acc, x])
        return acc

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inverses[x], -k
        acc = self.identity
        for _ in range(k):
            acc = int(self.table[acc, x])
        return acc

    def element_order(self, x: int) -> int:
        k, acc = 1, x
        while acc != self.identity:
            acc = int(self.table[acc, x])
            k += 1
        return k

    @property
    def is_abelian(self) -> bool:
        if self._abelian is None:
            self._abelian = bool(np.array_equal(self.table, self.table.T))
        return self._abelian

    def generators(self) -> tuple[int, ...]:
        """A small generating set, picked greedily by descending element order."""
        gens: list[int] = []
        span = {self.identity}
        for x in sorted(self.elements(), key=lambda z: (-self.element_order(z), z)):
            if x not in span:
                gens.append(x)
                span = set(_closure(self, gens))
            if len(span) == self.order:
                break
        return tuple(gens)


def _closure(g: FiniteGroup, gens: Sequence[int]) -> list[int]:
    seen = {g.identity}
    queue = deque([g.identity])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = int(g.table[x, s])
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return sorted(seen)


def validate_group(table, names: Optional[Sequence[str]] = None) -> FiniteGroup:
    """Check the group axioms exhaustively and return a :class:`FiniteGroup`.

    Raises :class:`NotLatinSquare`, :class:`NotAssociative` or :class:`NoIdentity`
    naming the first violating cell or triple.
    """
    t = np.asarray(table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise NotLatinSquare(f"table must be a non-empty square array, got shape {t.shape}")
    order = t.shape[0]
    if names is None:
        names = [str(i) for i in range(order)]
    if len(names) != order:
        raise ValueError(f"{len(names)} names for {order} elements")
    bad = np.argwhere((t < 0) | (t >= order))
    if bad.size:
        r, c = (int(v) for v in bad[0])
        raise NotLatinSquare(f"entry [{r}][{c}] = {t[r, c]} out of range", witness=(r, c))

    ref = np.arange(order)
    for r in range(order):
        if not np.array_equal(np.sort(t[r]), ref):
            c = _first_repeat(t[r])
            raise NotLatinSquare(f"row {r} repeats value {t[r, c]} at column {c}", witness=(r, c))
    for c in range(order):
        if not np.array_equal(np.sort(t[:, c]), ref):
            r = _first_repeat(t[:, c])
            raise NotLatinSquare(f"column {c} repeats value {t[r, c]} at row {r}", witness=(r, c))

    # (xy)z == x(yz) for all triples, vectorised over y, z per x
    for x in range(order):
        lhs = t[t[x]]           # lhs[y, z] = (x y) z
        rhs = t[x][t]           # rhs[y, z] = x (y z)
        diff = np.argwhere(lhs != rhs)
        if diff.size:
            y, z = (int(v) for v in diff[0])
            raise NotAssociative(f"({x}*{y})*{z} != {x}*({y}*{z})", witness=(x, y, z))

    candidates = [e for e in range(order) if np.array_equal(t[e], ref) and np.array_equal(t[:, e], ref)]
    if not candidates:
        raise NoIdentity("no two-sided identity", witness=None)
    e = candidates[0]
    inverses = [int(np.flatnonzero(t[x] == e)[0]) for x in range(order)]
    return FiniteGroup(t, names, e, inverses)


def _first_repeat(line) -> int:
    seen = set()
    for i, v in enumerate(line):
        if int(v) in seen:
            return i
        seen.add(int(v))
    return 0


def _check_index(g: FiniteGroup, *xs: int):
    for x in xs:
        if not 0 <= x < g.order:
            raise IndexOutOfRange(f"element {x} outside group of order {g.order}")


def product(g: FiniteGroup, x: int, y: int) -> int:
    _check_index(g, x, y)
    return g.mul(x, y)


def inverse_of(g: FiniteGroup, x: int) -> int:
    _check_index(g, x)
    return g.inv(x)


def translation(g: FiniteGroup, side: str, a: int) -> ElementMap:
    """``L_a: x -> a x`` for ``side='left'``, ``R_a: x -> x a`` for ``side='right'``."""
    _check_index(g, a)
    if side == "left":
        return ElementMap(tuple(int(v) for v in g.table[a]), g.order)
    if side == "right":
        return ElementMap(tuple(int(v) for v in g.table[:, a]), g.order)
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def inner_automorphism(g: FiniteGroup, a: int) -> ElementMap:
    """``I_a: x -> a^-1 x a``."""
    _check_index(g, a)
    ai = g.inv(a)
    return ElementMap(tuple(g.mul(g.mul(ai, x), a) for x in g.elements()), g.order)


def is_homomorphism(g: FiniteGroup, h: FiniteGroup, m: ElementMap) -> bool:
    arr = m.as_array()
    return bool(np.array_equal(arr[g.table], h.table[arr[:, None], arr[None, :]]))


def is_automorphism(g: FiniteGroup, m: ElementMap) -> bool:
    return len(m) == g.order and m.codomain_order == g.order and m.bijective and is_homomorphism(g, g, m)


def _extend(g: FiniteGroup, h: FiniteGroup, gens: Sequence[int], images: Sequence[int]) -> Optional[ElementMap]:
    """The homomorphism sending ``gens[i] -> images[i]``, if one exists."""
    m = [-1] * g.order
    m[g.identity] = h.identity
    queue = deque([g.identity])
    while queue:
        x = queue.popleft()
        for s, t in zip(gens, images):
            y = int(g.table[x, s])
            v = int(h.table[m[x], t])
            if m[y] < 0:
                m[y] = v
                queue.append(y)
            elif m[y] != v:
                return None
    # consistency on every (x, generator) edge makes m a homomorphism
    return ElementMap(tuple(m), h.order)


def _check_cap(order: int, cap: Optional[int]):
    cap = LIMITS.brute_cap if cap is None else cap
    if order > cap:
        raise OrderTooLarge(f"order {order} exceeds brute-force cap {cap}")


def enumerate_homomorphisms(g: FiniteGroup, h: FiniteGroup, bijective: bool = False) -> list[ElementMap]:
    """All homomorphisms ``g -> h``, found by assigning generator images."""
    gens = g.generators()
    pools = []
    for s in gens:
        k = g.element_order(s)
        pools.append([t for t in h.elements() if k % h.element_order(t) == 0 and (not bijective or h.element_order(t) == k)])
    found = set()
    for images in itertools.product(*pools):
        m = _extend(g, h, gens, images)
        if m is not None and (not bijective or m.bijective):
            found.add(m)
    return sorted(found)


def enumerate_automorphisms(g: FiniteGroup, cap: Optional[int] = None) -> list[ElementMap]:
    """Aut(g) in canonical (image-vector) order."""
    _check_cap(g.order, cap)
    return enumerate_homomorphisms(g, g, bijective=True)


def commutator_of_autos(g: FiniteGroup, theta: ElementMap, phi: ElementMap) -> ElementMap:
    """``theta phi theta^-1 phi^-1`` as a map."""
    for name, m in (("theta", theta), ("phi", phi)):
        if not is_automorphism(g, m):
            raise NotAutomorphism(f"{name} is not an automorphism", witness=m.images)
    return theta.compose(phi).compose(theta.inverse()).compose(phi.inverse())


def centralizer(g: FiniteGroup, subset: Iterable[int]) -> list[int]:
    subset = list(subset)
    _check_index(g, *subset)
    return [a for a in g.elements() if all(g.mul(a, s) == g.mul(s, a) for s in subset)]


def center(g: FiniteGroup) -> list[int]:
    return centralizer(g, g.elements())


def is_subgroup(g: FiniteGroup, subset: Iterable[int]) -> bool:
    s = set(subset)
    return g.identity in s and all(g.inv(x) in s for x in s) and all(g.mul(x, y) in s for x in s for y in s)


def order_profile(g: FiniteGroup) -> Counter:
    return Counter(g.element_order(x) for x in g.elements())


def find_isomorphism(g1: FiniteGroup, g2: FiniteGroup, cap: Optional[int] = None) -> Optional[ElementMap]:
    """Some isomorphism ``g1 -> g2``, or ``None``."""
    _check_cap(g1.order, cap)
    _check_cap(g2.order, cap)
    if g1.order != g2.order or order_profile(g1) != order_profile(g2):
        return None
    gens = g1.generators()
    pools = [[t for t in g2.elements() if g2.element_order(t) == g1.element_order(s)] for s in gens]
    for images in itertools.product(*pools):
        m = _extend(g1, g2, gens, images)
        if m is not None and m.bijective:
            return m
    return None


# --- standard groups -------------------------------------------------------

def cyclic_group(k: int) -> FiniteGroup:
    idx = np.arange(k)
    return validate_group((idx[:, None] + idx[None, :]) % k)


def trivial_group() -> FiniteGroup:
    return cyclic_group(1)


def klein_four_group() -> FiniteGroup:
    idx = np.arange(4)
    return validate_group(idx[:, None] ^ idx[None, :], ["e", "a", "b", "ab"])


def symmetric_group(k: int) -> FiniteGroup:
    """Sym(k) on permutations in lexicographic order; ``x*y`` applies ``y`` first."""
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[i]] for i in range(k))] for q in perms] for p in perms]
    names = ["".join(str(v) for v in p) for p in perms]
    return validate_group(table, names)


def multiplicative_group(p: int) -> FiniteGroup:
    """F_p^* with element ``i`` standing for the scalar ``i + 1``."""
    s = np.arange(1, p)
    return validate_group((s[:, None] * s[None, :]) % p - 1, [str(v) for v in s])


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    n = h.order
    table = [[g.mul(x // n, y // n) * n + h.mul(x % n, y % n) for y in range(g.order * n)] for x in range(g.order * n)]
    names = [f"({a},{b})" for a in g.element_names for b in h.element_names]
    return validate_group(table, names)
