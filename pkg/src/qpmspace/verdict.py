from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class Check:
    """Outcome of a decision procedure: a truth value plus a counterexample when false.

    Truthiness follows ``ok``, so ``if is_convex(space): ...`` reads naturally.
    ``skipped`` marks a check whose precondition did not hold; it is falsy and the
    witness explains which precondition failed.
    """

    ok: bool
    witness: Any = None
    skipped: bool = False

    def __bool__(self) -> bool:
        return self.ok

    @property
    def status(self) -> str:
        if self.skipped:
            return "skip"
        return "ok" if self.ok else "fail"


OK = Check(True)


def fail(witness: Any) -> Check:
    return Check(False, witness)


def skip(witness: Any) -> Check:
    return Check(False, witness, skipped=True)
