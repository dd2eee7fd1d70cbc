"""Finite posets: Möbius function, theta sums and order-complex Euler characteristics.

All counts are exact.  Row computations run in int64 while a float64
magnitude bound proves no overflow can happen; otherwise they are redone
with Python integers.
"""

from __future__ import annotations

import json
from typing import Sequence

import numpy as np

from .errors import DomainError
from .groups import Subgroup
from .lattice import containment_matrix
from .reports import VerificationReport, describe

_SAFE = 2.0**60


class Poset:
    """A finite poset given by a dense ``leq`` matrix (``leq[a, b]`` means a <= b)."""

    def __init__(self, leq, labels: Sequence | None = None, provenance: str = "", check: bool = True):
        leq = np.asarray(leq, dtype=bool)
        n = leq.shape[0]
        if leq.shape != (n, n):
            raise DomainError("leq must be a square matrix")
        if check:
            _check_partial_order(leq)
        self.leq = leq
        self.n = n
        self.labels = list(labels) if labels is not None else list(range(n))
        self.provenance = provenance
        # number of elements below is strictly monotone along a < b
        self.topo = np.lexsort((np.arange(n), leq.sum(axis=0)))
        self._mu_rows: dict[int, dict] = {}
        self.marks: dict[str, int] = {}

    @classmethod
    def from_subgroups(cls, subgroups: Sequence[Subgroup], provenance: str = "") -> "Poset":
        return cls(containment_matrix(list(subgroups)), labels=list(subgroups),
                   provenance=provenance, check=False)

    def __len__(self):
        return self.n

    def index(self, label) -> int:
        for i, lab in enumerate(self.labels):
            if lab is label or lab == label:
                return i
        raise DomainError(f"{label!r} is not an element of this poset")

    @property
    def strict(self) -> np.ndarray:
        return self.leq & ~np.eye(self.n, dtype=bool)

    def maximal(self) -> np.ndarray:
        return np.flatnonzero(~self.strict.any(axis=1))

    def restrict(self, indices: Sequence[int], provenance: str | None = None) -> "Poset":
        idx = np.asarray(list(indices), dtype=np.int64)
        return Poset(self.leq[np.ix_(idx, idx)], [self.labels[i] for i in idx],
                     provenance if provenance is not None else self.provenance, check=False)

    def up_set(self, x: int, strict: bool = False) -> np.ndarray:
        mask = self.leq[x].copy()
        if strict:
            mask[x] = False
        return np.flatnonzero(mask)

    def bounded_extension(self) -> "Poset":
        """Adjoin a new bottom (index 0) and a new top (index n + 1)."""
        n = self.n
        leq = np.zeros((n + 2, n + 2), dtype=bool)
        leq[1:n + 1, 1:n + 1] = self.leq
        leq[0, :] = True
        leq[:, n + 1] = True
        return Poset(leq, ["bottom"] + self.labels + ["top"], self.provenance, check=False)

    # -- Möbius function ------------------------------------------------

    def mobius_row(self, x: int, order: Sequence[int] | None = None) -> dict[int, int]:
        """``{y: mu(x, y)}`` for every ``y >= x``.

        ``order`` may supply any linear extension; the default is cached.
        """
        if order is None and x in self._mu_rows:
            return self._mu_rows[x]
        topo = self.topo if order is None else np.asarray(order)
        up = topo[self.leq[x, topo]]
        sub = self.leq[np.ix_(up, up)]
        values = _mobius_from_top(sub)
        row = {int(y): int(v) for y, v in zip(up, values)}
        if order is None:
            self._mu_rows[x] = row
        return row

    def mobius(self, x: int, y: int) -> int:
        return self.mobius_row(x).get(int(y), 0)

    def theta(self, x: int) -> int:
        """Sum of ``mu(x, y)`` over all ``y >= x``."""
        return sum(self.mobius_row(x).values())

    # -- chains -----------------------------------------------------------

    def chain_counts(self) -> list[int]:
        """``counts[k]`` is the number of chains with ``k + 1`` elements."""
        if self.n == 0:
            return []
        below = self.strict.T.astype(np.int64)  # below[y, z] = z < y
        cur = np.ones(self.n, dtype=np.int64)
        counts = []
        while True:
            total = int(sum(cur)) if cur.dtype == object else int(cur.sum())
            if total == 0:
                return counts
            counts.append(total)
            if cur.dtype != object and float(np.abs(cur).max()) * self.n > _SAFE:
                cur, below = cur.astype(object), below.astype(object)
            cur = below @ cur

    def reduced_euler_characteristic(self) -> int:
        return -1 + sum((-1) ** k * c for k, c in enumerate(self.chain_counts()))

    # -- maximal elements -------------------------------------------------

    def nu_max(self, x: int) -> int:
        """Number of maximal elements lying above ``x``."""
        return int(self.leq[x, self.maximal()].sum())

    def to_json(self) -> str:
        """``[{id, covers}]`` where ``covers`` lists the elements ``x`` covers."""
        s = self.strict.astype(np.int64)
        two_step = (s @ s) > 0
        cover = self.strict & ~two_step
        out = [{"id": i, "covers": [int(j) for j in np.flatnonzero(cover[:, i])]} for i in range(self.n)]
        return json.dumps(out)


def _check_partial_order(leq: np.ndarray) -> None:
    n = leq.shape[0]
    if not leq.diagonal().all():
        raise DomainError("relation is not reflexive")
    if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
        raise DomainError("relation is not antisymmetric")
    m = leq.astype(np.float32)
    if ((m @ m > 0) & ~leq).any():
        raise DomainError("relation is not transitive")


def _mobius_from_top(sub: np.ndarray) -> list[int]:
    """Möbius values ``mu(b, y)`` for a poset whose element 0 is the bottom ``b``
    and whose rows are in a linear extension."""
    n = sub.shape[0]
    strict = sub & ~np.eye(n, dtype=bool)
    mu = np.zeros(n, dtype=np.int64)
    mag = np.zeros(n)
    mu[0], mag[0] = 1, 1.0
    for y in range(1, n):
        below = strict[:y, y]
        mag[y] = mag[:y][below].sum()
        if mag[y] > _SAFE:
            return _mobius_exact(strict)
        mu[y] = -mu[:y][below].sum()
    return [int(v) for v in mu]


def _mobius_exact(strict: np.ndarray) -> list[int]:
    n = strict.shape[0]
    mu = [0] * n
    mu[0] = 1
    for y in range(1, n):
        mu[y] = -sum(mu[z] for z in np.flatnonzero(strict[:y, y]))
    return mu


# ---------------------------------------------------------------------------
# module-level operations


def mobius(P: Poset, x: int, y: int) -> int:
    return P.mobius(x, y)


def theta(P: Poset, x: int) -> int:
    return P.theta(x)


def reduced_euler_characteristic(P: Poset) -> int:
    return P.reduced_euler_characteristic()


def nu_max(P: Poset, x: int) -> int:
    return P.nu_max(x)


def check_max_congruence(P: Poset, m: int) -> VerificationReport:
    """If every element lies below ``1 (mod m)`` maximal elements, every
    non-maximal ``x`` has ``theta(x) = 0 (mod m)``."""
    if m < 1:
        raise DomainError("modulus must be >= 1")
    values = {"modulus": m, "elements": P.n}
    bad = [y for y in range(P.n) if (P.nu_max(y) - 1) % m]
    if bad:
        values["hypothesis_witness_nu"] = P.nu_max(bad[0])
        return VerificationReport("max-congruence", "boundary", values=values,
                                  witnesses=[describe(P.labels[bad[0]])],
                                  note="hypothesis fails: some nu(y) is not 1 mod m")
    maximal = set(P.maximal().tolist())
    for x in range(P.n):
        if x in maximal:
            continue
        t = P.theta(x)
        if t % m:
            values["theta"] = t
            return VerificationReport("max-congruence", "fail", values=values,
                                      witnesses=[describe(P.labels[x])])
    return VerificationReport("max-congruence", "pass", values=values)
