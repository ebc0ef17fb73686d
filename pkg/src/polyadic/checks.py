from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional


@dataclass
class Check:
    """Outcome of an exhaustive or sampled identity check.

    Truthy iff the check passed.  ``witness`` is the first failing case in
    lexicographic order (or in sampling order when ``exhaustive`` is false).
    """

    name: str
    ok: bool
    cases: int = 0
    witness: Optional[Any] = None
    exhaustive: bool = True
    seed: Optional[int] = None
    detail: str = ""
    counts: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok
