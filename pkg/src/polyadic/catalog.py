"""Named small groups and the standard derived test suite."""

from __future__ import annotations

from typing import Callable, Iterable, Optional

from .errors import GroupValidationError
from .group_core import (
    ElementMap,
    FiniteGroup,
    cyclic_group,
    enumerate_automorphisms,
    inner_automorphism,
    klein_four_group,
    symmetric_group,
    trivial_group,
)
from .polyadic_core import DerivedSpec, PolyadicGroup, derive

BASES: dict[str, Callable[[], FiniteGroup]] = {
    "Z1": trivial_group,
    "Z2": lambda: cyclic_group(2),
    "Z3": lambda: cyclic_group(3),
    "Z4": lambda: cyclic_group(4),
    "V4": klein_four_group,
    "Z6": lambda: cyclic_group(6),
    "S3": lambda: symmetric_group(3),
}

# index 1 of S3 is the transposition swapping the last two points
S3_T = 1


def _spec(base: str, n: int, theta: Optional[Iterable[int]] = None, b: int = 0) -> DerivedSpec:
    g = BASES[base]()
    t = ElementMap.identity(g.order) if theta is None else ElementMap(tuple(theta))
    return DerivedSpec(g, n, t, b)


def _named() -> dict[str, Callable[[], DerivedSpec]]:
    out = {}
    for base in ("Z1", "Z2", "Z3", "Z4", "V4", "Z6", "S3"):
        for n in (3, 4, 5):
            out[f"der{n}({base})"] = (lambda base=base, n=n: _spec(base, n))
    out["der3_3x(Z4)"] = lambda: _spec("Z4", 3, (0, 3, 2, 1))
    out["der3_id_1(Z2)"] = lambda: _spec("Z2", 3, b=1)
    out["der3_id_2(Z4)"] = lambda: _spec("Z4", 3, b=2)
    out["der3_It(S3)"] = lambda: DerivedSpec(symmetric_group(3), 3,
                                             inner_automorphism(symmetric_group(3), S3_T), 0)
    return out


NAMED_SPECS = _named()


def named_binary(name: str) -> FiniteGroup:
    return BASES[name]()


def named_spec(name: str) -> DerivedSpec:
    return NAMED_SPECS[name]()


def named(name: str) -> PolyadicGroup:
    return derive(named_spec(name))


def names() -> list[str]:
    return sorted(BASES) + sorted(NAMED_SPECS)


def spec_label(base: str, spec: DerivedSpec) -> str:
    if spec.is_der_n:
        return f"der{spec.n}({base})"
    theta = "".join(str(v) if v < 10 else f"[{v}]" for v in spec.theta.images)
    return f"der{spec.n}[theta={theta},b={spec.b}]({base})"


def valid_specs(g: FiniteGroup, n: int) -> list[DerivedSpec]:
    """Every ``(theta, b)`` meeting the side conditions, in (theta, b) order."""
    out = []
    for theta in sorted(enumerate_automorphisms(g)):
        for b in g.elements():
            spec = DerivedSpec(g, n, theta, b)
            try:
                spec.check()
            except GroupValidationError:
                continue
            out.append(spec)
    return out


def derived_suite(bases: Iterable[str] = tuple(BASES), arities: Iterable[int] = (3, 4, 5),
                  max_order: Optional[int] = None) -> list[tuple[str, PolyadicGroup]]:
    """All valid derived groups over the listed bases and arities."""
    out = []
    for base in bases:
        g = BASES[base]()
        if max_order is not None and g.order > max_order:
            continue
        for n in arities:
            for spec in valid_specs(g, n):
                out.append((spec_label(base, spec), derive(spec)))
    return out
