"""Structured verification records and their deterministic JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable

import numpy as np

from .groups import FiniteGroup, Subgroup, derived_subgroup, quotient_by_normal
from .numbers import p_part, prime_factors

STATUSES = ("pass", "fail", "boundary", "empirical", "skipped-cap")


def _exact_log(c: int, p: int) -> int:
    e = 0
    while c > 1:
        c //= p
        e += 1
    return e


def abelian_invariants(G: FiniteGroup) -> list[int]:
    """Invariants (prime powers, sorted) of the abelianization of ``G``."""
    D = derived_subgroup(G)
    n = G.order // D.order
    if n == 1:
        return []
    Q, _ = quotient_by_normal(G, D)
    orders = Q.element_orders
    out = []
    for p in prime_factors(n):
        top = _exact_log(p_part(n, p), p)
        # s[k] = log_p of the number of elements killed by p^k
        s = [0]
        while s[-1] < top:
            k = len(s)
            s.append(_exact_log(int(np.count_nonzero((p**k) % orders == 0)), p))
        at_least = [s[k + 1] - s[k] for k in range(len(s) - 1)] + [0]
        for k in range(len(at_least) - 1):
            out += [p ** (k + 1)] * (at_least[k] - at_least[k + 1])
    return sorted(out)


def fingerprint(G: FiniteGroup, provenance: str = "") -> dict:
    return {
        "order": str(G.order),
        "abelian_invariants": [str(k) for k in abelian_invariants(G)],
        "provenance": provenance or G.name,
    }


def describe(S) -> Any:
    """A JSON-friendly witness: element ids for subgroups, else str()."""
    if isinstance(S, Subgroup):
        return {"order": str(S.order), "elements": [int(i) for i in S.ids]}
    return str(S)


def _exact(v) -> Any:
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (list, tuple)):
        return [_exact(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _exact(x) for k, x in v.items()}
    return v if v is None or isinstance(v, str) else str(v)


@dataclass
class VerificationReport:
    check: str
    status: str
    fingerprint: dict = field(default_factory=dict)
    values: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    note: str = ""

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == "fail" and not self.witnesses:
            raise ValueError("a failing report needs a witness")

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def to_dict(self) -> dict:
        d = {
            "check": self.check,
            "status": self.status,
            "fingerprint": _exact(self.fingerprint),
            "values": _exact(self.values),
            "witnesses": [_exact(describe(w) if not isinstance(w, (dict, str)) else w) for w in self.witnesses],
        }
        if self.note:
            d["note"] = self.note
        return d


def dumps(reports: Iterable[VerificationReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], sort_keys=True, indent=1)


def emit_report(reports: Iterable[VerificationReport], path: str | Path) -> Path:
    path = Path(path)
    path.write_text(dumps(reports) + "\n")
    return path
