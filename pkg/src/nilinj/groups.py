"""Finite groups as id-indexed multiplication tables.

Elements of a :class:`FiniteGroup` are the integers ``0 .. order-1`` with
``0`` the identity.  A group is backed either by a dense Cayley table or by
a permutation realization (or both; the table is then derived lazily).
Products compose left to right: for permutations ``(x*y)(i) = y(x(i))`` and
conjugation is ``x^g = g^-1 x g``.

Subgroups are bitsets (Python ints) over the parent's element ids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from . import limits
from .errors import DomainError, ResourceLimitError

__all__ = [
    "Permutation",
    "FiniteGroup",
    "Subgroup",
    "Homomorphism",
    "ambient",
    "group_from_generators",
    "group_from_table",
    "generate",
    "centralizer",
    "normalizer",
    "conjugate_subgroup",
    "conjugacy_class",
    "normal_core",
    "normal_closure",
    "is_normal",
    "quotient_by_normal",
    "direct_product",
    "semidirect_product",
    "derived_subgroup",
    "join",
    "intersection",
]


# ---------------------------------------------------------------------------
# bitset helpers


def ids_to_bits(ids, n: int) -> int:
    mask = np.zeros(n, dtype=np.uint8)
    mask[np.asarray(ids, dtype=np.int64)] = 1
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


def mask_to_bits(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(mask.astype(np.uint8), bitorder="little").tobytes(), "little")


def bits_to_mask(bits: int, n: int) -> np.ndarray:
    raw = bits.to_bytes((n + 7) // 8, "little")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:n].astype(bool)


def bits_to_ids(bits: int, n: int) -> np.ndarray:
    return np.flatnonzero(bits_to_mask(bits, n))


# ---------------------------------------------------------------------------
# permutations


class Permutation:
    """A bijection of ``{0, ..., degree-1}`` stored as its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise DomainError(f"not a permutation: {images}")
        self.images = images

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> "Permutation":
        images = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[a] = b
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.degree != self.degree:
            raise DomainError("degree mismatch")
        return Permutation(other.images[i] for i in self.images)

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def order(self) -> int:
        seen = [False] * self.degree
        result = 1
        for start in range(self.degree):
            if seen[start]:
                continue
            length, i = 0, start
            while not seen[i]:
                seen[i] = True
                i = self.images[i]
                length += 1
            result = math.lcm(result, length)
        return result

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({list(self.images)})"


# ---------------------------------------------------------------------------
# groups


def _find_base(perms: np.ndarray) -> list[int] | None:
    """Greedy base: points whose images separate all rows, if the
    mixed-radix key over them fits in 63 bits."""
    n, degree = perms.shape
    if n <= 1:
        return []
    limit = int(63 // max(1.0, np.log2(max(degree, 2))))
    base: list[int] = []
    key = np.zeros(n, dtype=np.int64)
    distinct = 1
    while distinct < n:
        if len(base) >= min(limit, degree):
            return None
        best, best_count, best_key = None, -1, None
        for pt in range(degree):
            if pt in base:
                continue
            cand = key * degree + perms[:, pt]
            c = len(np.unique(cand))
            if c > best_count:
                best, best_count, best_key = pt, c, cand
            if c == n:
                break
        if best_count <= distinct:
            return None
        base.append(best)
        key, distinct = best_key, best_count
    return base


class FiniteGroup:
    """An immutable finite group on element ids ``0 .. order-1``.

    Use :func:`group_from_generators` or :func:`group_from_table` rather than
    calling the constructor directly.
    """

    def __init__(self, order: int, *, table: np.ndarray | None = None,
                 perms: np.ndarray | None = None, inverse: np.ndarray | None = None,
                 generators: Sequence[int] | None = None, name: str = ""):
        self.order = int(order)
        self.name = name
        self._table = table
        self._perms = perms
        if perms is not None:
            self.degree = perms.shape[1]
            self._base = _find_base(perms)
            keys = self._perm_keys(perms)
            self._key_order = np.argsort(keys, kind="stable")
            self._sorted_keys = keys[self._key_order]
        else:
            self.degree = None
        if inverse is None:
            inverse = self._compute_inverse()
        self._inv = inverse
        self._gens = list(generators) if generators is not None else None
        self._cache: dict = {}
        self.labels: dict[str, "Subgroup"] = {}

    # -- backends ---------------------------------------------------------

    def _perm_keys(self, rows: np.ndarray) -> np.ndarray:
        # images of the base points, read as a mixed-radix integer
        if self._base is not None:
            sub = rows[..., self._base].astype(np.int64)
            return sub @ (self.degree ** np.arange(len(self._base), dtype=np.int64))
        rows = np.ascontiguousarray(rows)
        return rows.view(np.dtype((np.void, rows.dtype.itemsize * rows.shape[-1]))).reshape(rows.shape[:-1])

    def lookup(self, rows: np.ndarray, verify: bool = True) -> np.ndarray:
        """Element ids of an array of permutation rows (last axis = points)."""
        if self._perms is None:
            raise DomainError("group has no permutation realization")
        rows = np.asarray(rows, dtype=self._perms.dtype)
        keys = self._perm_keys(rows)
        pos = np.searchsorted(self._sorted_keys, keys)
        pos = np.minimum(pos, self.order - 1)
        ids = self._key_order[pos]
        if verify and not np.array_equal(self._perms[ids], rows):
            raise DomainError("permutation is not an element of this group")
        return ids

    @property
    def has_table(self) -> bool:
        return self._table is not None

    @property
    def table(self) -> np.ndarray:
        if self._table is None:
            cap = limits.current().max_table_order
            if self.order > cap:
                raise ResourceLimitError(f"order {self.order} exceeds table cap {cap}")
            dtype = np.int16 if self.order < 2**15 else np.int32
            t = np.empty((self.order, self.order), dtype=dtype)
            P = self._perms
            step = max(1, 2**20 // self.order)
            for lo in range(0, self.order, step):
                # rows g*h for h in the chunk: apply g, then h
                block = P[lo:lo + step][:, P].transpose(1, 0, 2)
                t[:, lo:lo + step] = self.lookup(block, verify=False)
            self._table = t
        return self._table

    def mul(self, a, b):
        """Vectorized product ``a*b`` of broadcastable id arrays (or ints)."""
        a_arr, b_arr = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        # small products on a permutation group do not justify building the table
        use_table = self._table is not None or (
            self.order <= limits.current().max_table_order
            and (self._perms is None or a_arr.size >= self.order // 4))
        if use_table:
            res = self.table[a, b]
        else:
            pa, pb = self._perms[a_arr], self._perms[b_arr]
            res = self.lookup(np.take_along_axis(pb, pa, axis=-1), verify=False)
        if np.ndim(res) == 0:
            return int(res)
        return res

    def inv(self, a):
        res = self._inv[a]
        return int(res) if np.ndim(res) == 0 else res

    def conj(self, x, g):
        """``g^-1 x g`` (vectorized in ``x``)."""
        return self.mul(self.mul(self._inv[g], x), g)

    def _compute_inverse(self) -> np.ndarray:
        if self._perms is not None:
            inv_rows = np.empty_like(self._perms)
            idx = np.arange(self.degree)
            inv_rows[np.arange(self.order)[:, None], self._perms] = idx
            return self.lookup(inv_rows)
        t = self._table
        rows, cols = np.nonzero(t == 0)
        inv = np.empty(self.order, dtype=np.int64)
        inv[rows] = cols
        return inv

    def perm(self, g: int) -> Permutation:
        if self._perms is None:
            raise DomainError("group has no permutation realization")
        return Permutation(self._perms[g])

    def index_of(self, p: Permutation) -> int:
        return int(self.lookup(np.asarray(p.images)[None, :])[0])

    @property
    def perms(self) -> np.ndarray | None:
        return self._perms

    # -- derived data -----------------------------------------------------

    @property
    def element_orders(self) -> np.ndarray:
        if "orders" not in self._cache:
            n = self.order
            orders = np.zeros(n, dtype=np.int64)
            orders[0] = 1
            pending = np.arange(1, n)
            power = pending.copy()
            k = 1
            while pending.size:
                k += 1
                power = self.mul(power, pending)
                done = power == 0
                orders[pending[done]] = k
                pending, power = pending[~done], power[~done]
            self._cache["orders"] = orders
        return self._cache["orders"]

    @property
    def generators(self) -> list[int]:
        if self._gens is None:
            self._gens = self.whole.gens
        return list(self._gens)

    @property
    def whole(self) -> "Subgroup":
        if "whole" not in self._cache:
            self._cache["whole"] = Subgroup(self, (1 << self.order) - 1, self._gens)
        return self._cache["whole"]

    @property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, 1, [])

    def subgroup(self, ids: Iterable[int]) -> "Subgroup":
        """Subgroup with the given member ids (must already be closed)."""
        ids = np.unique(np.asarray(list(ids), dtype=np.int64))
        sub = Subgroup(self, ids_to_bits(ids, self.order))
        sub._ids = ids
        return sub

    def generated(self, gens: Iterable[int]) -> "Subgroup":
        return generate(self, list(gens))

    def is_abelian(self) -> bool:
        return self.whole.is_abelian()

    def check_axioms(self) -> None:
        """Exhaustively check associativity, identity and inverses."""
        n = self.order
        t = self.table.astype(np.int64)
        ids = np.arange(n)
        if not (np.array_equal(t[0], ids) and np.array_equal(t[:, 0], ids)):
            raise DomainError("id 0 is not a two-sided identity")
        if not (np.all(t[ids, self._inv] == 0) and np.all(t[self._inv, ids] == 0)):
            raise DomainError("invert is not a two-sided inverse")
        for a in range(n):
            # (a*b)*c == a*(b*c) for all b, c
            if not np.array_equal(t[t[a]], t[a][t]):
                raise DomainError(f"associativity fails at a={a}")

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"FiniteGroup(order={self.order}, name={self.name!r})"


class Subgroup:
    """A subgroup of a fixed parent group, stored as a bitset of element ids."""

    __slots__ = ("parent", "bits", "_ids", "_gens", "_order")

    def __init__(self, parent: FiniteGroup, bits: int, gens: Sequence[int] | None = None):
        self.parent = parent
        self.bits = bits
        self._ids = None
        self._gens = list(gens) if gens is not None else None
        self._order = bits.bit_count()

    @property
    def order(self) -> int:
        return self._order

    def __len__(self):
        return self._order

    @property
    def ids(self) -> np.ndarray:
        if self._ids is None:
            self._ids = bits_to_ids(self.bits, self.parent.order)
        return self._ids

    @property
    def mask(self) -> np.ndarray:
        return bits_to_mask(self.bits, self.parent.order)

    @property
    def gens(self) -> list[int]:
        if self._gens is None:
            self._gens = _generating_set(self)
        return list(self._gens)

    def __contains__(self, g) -> bool:
        return bool((self.bits >> int(g)) & 1)

    def _check_parent(self, other: "Subgroup"):
        if other.parent is not self.parent:
            raise DomainError("subgroups of different parent groups are not comparable")

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        self._check_parent(other)
        return self.bits == other.bits

    def __hash__(self):
        return hash(self.bits)

    def __le__(self, other: "Subgroup") -> bool:
        self._check_parent(other)
        return self.bits & other.bits == self.bits

    def __lt__(self, other: "Subgroup") -> bool:
        return self <= other and self.bits != other.bits

    def __ge__(self, other: "Subgroup") -> bool:
        return other <= self

    def __gt__(self, other: "Subgroup") -> bool:
        return other < self

    def __and__(self, other: "Subgroup") -> "Subgroup":
        return intersection(self, other)

    def index_in(self, other: "Subgroup") -> int:
        return other.order // self.order

    def is_abelian(self) -> bool:
        g = self.gens
        G = self.parent
        for i, a in enumerate(g):
            for b in g[i + 1:]:
                if G.mul(a, b) != G.mul(b, a):
                    return False
        return True

    def is_whole(self) -> bool:
        return self._order == self.parent.order

    def element_orders(self) -> np.ndarray:
        return self.parent.element_orders[self.ids]

    def __repr__(self):
        name = self.parent.name or "G"
        return f"Subgroup(order={self._order} of {name})"


@dataclass(frozen=True)
class Homomorphism:
    source: FiniteGroup
    target: FiniteGroup
    map: np.ndarray = field(repr=False)

    def __call__(self, g):
        res = self.map[g]
        return int(res) if np.ndim(res) == 0 else res

    def image(self, S: Subgroup) -> Subgroup:
        return self.target.subgroup(np.unique(self.map[S.ids]))

    def preimage(self, T: Subgroup) -> Subgroup:
        return self.source.subgroup(np.flatnonzero(T.mask[self.map]))

    def kernel(self) -> Subgroup:
        return self.source.subgroup(np.flatnonzero(self.map == 0))

    def check(self) -> None:
        """Verify ``map(xy) = map(x) map(y)`` for every pair."""
        a = self.source.table.astype(np.int64)
        lhs = self.map[a]
        rhs = self.target.mul(self.map[:, None], self.map[None, :])
        if not np.array_equal(lhs, rhs) or self.map[0] != 0:
            raise DomainError("map is not a homomorphism")


# ---------------------------------------------------------------------------
# construction


def group_from_generators(degree: int, gens: Iterable[Permutation | Sequence[int]],
                          name: str = "", max_order: int | None = None) -> FiniteGroup:
    """Close a set of permutations into a group (breadth-first, identity first)."""
    cap = max_order if max_order is not None else limits.current().max_elements
    gens = [g if isinstance(g, Permutation) else Permutation(g) for g in gens]
    for g in gens:
        if g.degree != degree:
            raise DomainError(f"generator {g} does not have degree {degree}")
    dtype = np.int16 if degree < 2**15 else np.int32
    gen_arr = [np.asarray(g.images, dtype=dtype) for g in gens]
    identity = np.arange(degree, dtype=dtype)
    rows = [identity]
    seen = {identity.tobytes(): 0}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gen_arr:
                y = s[x]
                key = y.tobytes()
                if key not in seen:
                    seen[key] = len(rows)
                    rows.append(y)
                    nxt.append(y)
                    if len(rows) > cap:
                        raise ResourceLimitError(f"closure exceeds element cap {cap}")
        frontier = nxt
    perms = np.array(rows, dtype=dtype).reshape(len(rows), degree)
    gen_ids = [seen[s.tobytes()] for s in gen_arr]
    return FiniteGroup(len(rows), perms=perms, generators=[g for g in gen_ids if g != 0] or [], name=name)


def group_from_table(table, name: str = "", generators: Sequence[int] | None = None) -> FiniteGroup:
    t = np.asarray(table)
    n = t.shape[0]
    if t.shape != (n, n):
        raise DomainError("table must be square")
    if n > limits.current().max_table_order:
        raise ResourceLimitError(f"order {n} exceeds table cap")
    ids = np.arange(n)
    if not (np.array_equal(t[0], ids) and np.array_equal(t[:, 0], ids)):
        raise DomainError("id 0 must be the identity")
    for row in t:
        if not np.array_equal(np.sort(row), ids):
            raise DomainError("table rows must be permutations of the ids")
    dtype = np.int16 if n < 2**15 else np.int32
    return FiniteGroup(n, table=t.astype(dtype), generators=generators, name=name)


def ambient(G: FiniteGroup | Subgroup) -> Subgroup:
    """View a group or subgroup uniformly as a :class:`Subgroup`."""
    return G.whole if isinstance(G, FiniteGroup) else G


# ---------------------------------------------------------------------------
# closure and subgroup arithmetic


def generate(G: FiniteGroup | Subgroup, gens: Sequence[int], start: Subgroup | None = None) -> Subgroup:
    """Subgroup generated by ``gens`` (together with ``start`` if given)."""
    parent = G if isinstance(G, FiniteGroup) else G.parent
    gens = [int(g) for g in gens]
    all_gens = list(dict.fromkeys((start.gens if start is not None else []) + [g for g in gens if g != 0]))
    n = parent.order
    mask = np.zeros(n, dtype=bool)
    if start is not None:
        mask[start.ids] = True
        if all(mask[g] for g in gens):
            return start
        frontier = start.ids
    else:
        mask[0] = True
        frontier = np.array([0])
    if not all_gens:
        return Subgroup(parent, 1, [])
    g_arr = np.asarray(all_gens)
    while frontier.size:
        nxt = parent.mul(frontier[:, None], g_arr[None, :]).ravel()
        nxt = np.unique(nxt[~mask[nxt]])
        mask[nxt] = True
        frontier = nxt
    sub = Subgroup(parent, mask_to_bits(mask), all_gens)
    return sub


def _generating_set(S: Subgroup) -> list[int]:
    """Greedy small generating set: repeatedly adjoin an element of maximal order."""
    G = S.parent
    if S.order == 1:
        return []
    ids = S.ids
    orders = G.element_orders[ids]
    candidates = ids[np.lexsort((ids, -orders))]
    gens: list[int] = []
    current = Subgroup(G, 1, [])
    for c in candidates:
        c = int(c)
        if c in current:
            continue
        gens.append(c)
        current = generate(G, [c], start=current)
        if current.order == S.order:
            break
    return gens


def join(A: Subgroup, B: Subgroup) -> Subgroup:
    A._check_parent(B)
    if B <= A:
        return A
    if A <= B:
        return B
    big, small = (A, B) if A.order >= B.order else (B, A)
    return generate(big.parent, small.gens, start=big)


def intersection(A: Subgroup, B: Subgroup) -> Subgroup:
    A._check_parent(B)
    return Subgroup(A.parent, A.bits & B.bits)


def _require_subgroup(G: Subgroup, S: Subgroup):
    G._check_parent(S)
    if not S <= G:
        raise DomainError("S is not a subgroup of G")


def centralizer(G: FiniteGroup | Subgroup, S: Subgroup) -> Subgroup:
    """``{g in G : gs = sg for all s in S}``."""
    Y = ambient(G)
    _require_subgroup(Y, S)
    P = Y.parent
    key = ("cent", Y.bits, S.bits)
    if key in P._cache:
        return P._cache[key]
    ids = Y.ids
    keep = np.ones(ids.size, dtype=bool)
    for s in S.gens:
        keep &= P.mul(ids, s) == P.mul(s, ids)
    res = Subgroup(P, ids_to_bits(ids[keep], P.order))
    P._cache[key] = res
    return res


def normalizer(G: FiniteGroup | Subgroup, S: Subgroup) -> Subgroup:
    """``{g in G : S^g = S}``."""
    Y = ambient(G)
    _require_subgroup(Y, S)
    P = Y.parent
    key = ("norm", Y.bits, S.bits)
    if key in P._cache:
        return P._cache[key]
    ids = Y.ids
    smask = S.mask
    keep = np.ones(ids.size, dtype=bool)
    for s in S.gens:
        keep &= smask[P.conj(s, ids)]
    res = Subgroup(P, ids_to_bits(ids[keep], P.order))
    P._cache[key] = res
    return res


def conjugate_subgroup(S: Subgroup, g: int) -> Subgroup:
    """``S^g = {g^-1 s g : s in S}``."""
    P = S.parent
    if not 0 <= int(g) < P.order:
        raise DomainError("element id out of range")
    ids = P.conj(S.ids, int(g))
    res = Subgroup(P, ids_to_bits(ids, P.order), [P.conj(s, int(g)) for s in S.gens])
    return res


def conjugacy_class(S: Subgroup, G: FiniteGroup | Subgroup | None = None) -> list[Subgroup]:
    """All ``G``-conjugates of ``S``, in breadth-first discovery order."""
    Y = ambient(G) if G is not None else S.parent.whole
    P = S.parent
    key = ("class", Y.bits, S.bits)
    if key in P._cache:
        return P._cache[key]
    gens = Y.gens
    found = {S.bits: S}
    order = [S]
    i = 0
    while i < len(order):
        T = order[i]
        i += 1
        for g in gens:
            ids = P.conj(T.ids, g)
            bits = ids_to_bits(ids, P.order)
            if bits not in found:
                U = Subgroup(P, bits, [P.conj(s, g) for s in T.gens])
                U._ids = np.sort(ids)
                found[bits] = U
                order.append(U)
    P._cache[key] = order
    return order


def normal_core(G: FiniteGroup | Subgroup, S: Subgroup) -> Subgroup:
    """Intersection of all conjugates of ``S`` in ``G``."""
    Y = ambient(G)
    _require_subgroup(Y, S)
    bits = S.bits
    for T in conjugacy_class(S, Y):
        bits &= T.bits
    return Subgroup(S.parent, bits)


def normal_closure(G: FiniteGroup | Subgroup, S: Subgroup) -> Subgroup:
    """Smallest normal subgroup of ``G`` containing ``S``."""
    Y = ambient(G)
    _require_subgroup(Y, S)
    P = S.parent
    K = S
    queue = list(S.gens)
    while queue:
        x = queue.pop()
        for g in Y.gens:
            y = P.conj(x, g)
            if y not in K:
                K = generate(P, [y], start=K)
                queue.append(y)
    return K


def is_normal(G: FiniteGroup | Subgroup, S: Subgroup) -> bool:
    Y = ambient(G)
    _require_subgroup(Y, S)
    P = S.parent
    if not S.gens:
        return True
    smask = S.mask
    sg = np.asarray(S.gens)
    return all(smask[P.conj(sg, g)].all() for g in Y.gens)


def derived_subgroup(G: FiniteGroup | Subgroup) -> Subgroup:
    """Normal closure of the commutators of a generating set."""
    Y = ambient(G)
    P = Y.parent
    gens = Y.gens
    comms = []
    for i, a in enumerate(gens):
        for b in gens[i + 1:]:
            c = P.mul(P.mul(P.inv(a), P.inv(b)), P.mul(a, b))
            if c != 0:
                comms.append(c)
    return normal_closure(Y, generate(P, comms))


# ---------------------------------------------------------------------------
# quotients and products


def quotient_by_normal(G: FiniteGroup | Subgroup, N: Subgroup) -> tuple[FiniteGroup, Homomorphism]:
    """Coset group ``G/N`` together with the projection (defined on the parent
    group when ``G`` is a :class:`FiniteGroup`)."""
    Y = ambient(G)
    if not is_normal(Y, N):
        raise DomainError("N is not normal in G")
    P = Y.parent
    if not Y.is_whole():
        raise DomainError("quotients are taken of whole groups; rebuild the subgroup as a group first")
    labels = np.full(P.order, -1, dtype=np.int64)
    reps = []
    n_ids = N.ids
    for x in range(P.order):
        if labels[x] < 0:
            labels[P.mul(n_ids, x)] = len(reps)
            reps.append(x)
    reps = np.asarray(reps)
    table = labels[P.mul(reps[:, None], reps[None, :])]
    Q = group_from_table(table, name=f"{P.name}/N" if P.name else "")
    return Q, Homomorphism(P, Q, labels)


def direct_product(A: FiniteGroup, B: FiniteGroup, name: str = "") -> FiniteGroup:
    """``A x B`` with pair ``(a, b)`` stored at id ``a*|B| + b``."""
    nA, nB = A.order, B.order
    n = nA * nB
    if n > limits.current().max_elements:
        raise ResourceLimitError(f"product order {n} exceeds element cap")
    name = name or (f"{A.name}x{B.name}" if A.name and B.name else "")
    gens = [a * nB for a in A.generators] + list(B.generators)
    if A.perms is not None and B.perms is not None:
        pa, pb = A.perms.astype(np.int32), B.perms.astype(np.int32) + A.degree
        rows = np.concatenate([np.repeat(pa, nB, axis=0), np.tile(pb, (nA, 1))], axis=1)
        dtype = np.int16 if rows.shape[1] < 2**15 else np.int32
        G = FiniteGroup(n, perms=rows.astype(dtype), generators=gens, name=name)
    else:
        ta, tb = A.table.astype(np.int64), B.table.astype(np.int64)
        t = (ta[:, None, :, None] * nB + tb[None, :, None, :]).reshape(n, n)
        G = group_from_table(t, name=name, generators=gens)
    G._factors = (A, B)
    return G


def product_embeddings(G: FiniteGroup) -> tuple[Homomorphism, Homomorphism]:
    """Canonical embeddings of the factors of a :func:`direct_product`."""
    A, B = G._factors
    nB = B.order
    return (Homomorphism(A, G, np.arange(A.order) * nB), Homomorphism(B, G, np.arange(nB)))


def semidirect_product(N: FiniteGroup, C: FiniteGroup,
                       action: Mapping[int, Sequence[int]] | Sequence[Sequence[int]] | Callable[[int], Sequence[int]],
                       name: str = "") -> FiniteGroup:
    """``N x| C`` with ``(n1,c1)(n2,c2) = (n1 * act(c1)(n2), c1 c2)``.

    ``action`` maps each id of ``C`` (all of them, or just ``C.generators``
    for a mapping) to an automorphism of ``N`` given as an image array over
    ``N``'s ids.  Pair ``(n, c)`` is stored at id ``n*|C| + c``.
    """
    nN, nC = N.order, C.order
    if nN * nC > limits.current().max_table_order:
        raise ResourceLimitError("semidirect product exceeds table cap")
    acts = _action_table(N, C, action)
    tn, tc = N.table.astype(np.int64), C.table.astype(np.int64)
    n1 = np.arange(nN)[:, None, None, None]
    c1 = np.arange(nC)[None, :, None, None]
    n2 = np.arange(nN)[None, None, :, None]
    c2 = np.arange(nC)[None, None, None, :]
    new_n = tn[n1, acts[c1, n2]]
    new_c = tc[c1, c2]
    t = (new_n * nC + new_c).reshape(nN * nC, nN * nC)
    gens = [n * nC for n in N.generators] + list(C.generators)
    G = group_from_table(t, name=name, generators=gens)
    G.labels["normal"] = G.subgroup(np.arange(nN) * nC)
    G.labels["complement"] = G.subgroup(np.arange(nC))
    return G


def _action_table(N: FiniteGroup, C: FiniteGroup, action) -> np.ndarray:
    nN, nC = N.order, C.order
    tn = N.table.astype(np.int64)
    if callable(action):
        acts = np.array([np.asarray(action(c)) for c in range(nC)], dtype=np.int64)
    elif isinstance(action, Mapping) and len(action) < nC:
        acts = _extend_action(N, C, {int(k): np.asarray(v, dtype=np.int64) for k, v in action.items()})
    else:
        items = action.items() if isinstance(action, Mapping) else enumerate(action)
        acts = np.empty((nC, nN), dtype=np.int64)
        for c, img in items:
            acts[int(c)] = np.asarray(img, dtype=np.int64)
    ids = np.arange(nN)
    for c in range(nC):
        a = acts[c]
        if not np.array_equal(np.sort(a), ids) or a[0] != 0:
            raise DomainError(f"action of {c} is not a bijection fixing the identity")
        if not np.array_equal(a[tn], tn[a[:, None], a[None, :]]):
            raise DomainError(f"action of {c} is not an automorphism")
    tc = C.table.astype(np.int64)
    # act(c1 c2) = act(c1) o act(c2)
    if not np.array_equal(acts[tc], _compose_all(acts)):
        raise DomainError("action is not a homomorphism C -> Aut(N)")
    return acts


def _compose_all(acts: np.ndarray) -> np.ndarray:
    # out[c1, c2, n] = acts[c1][acts[c2][n]]
    return acts[np.arange(acts.shape[0])[:, None, None], acts[None, :, :]]


def _extend_action(N: FiniteGroup, C: FiniteGroup, gen_images: dict[int, np.ndarray]) -> np.ndarray:
    """Extend automorphisms given on generators of C to all of C by closure."""
    nN, nC = N.order, C.order
    acts = np.full((nC, nN), -1, dtype=np.int64)
    acts[0] = np.arange(nN)
    frontier = [0]
    while frontier:
        nxt = []
        for c in frontier:
            for g, img in gen_images.items():
                d = C.mul(c, g)
                cand = acts[c][img]
                if acts[d, 0] < 0:
                    acts[d] = cand
                    nxt.append(d)
                elif not np.array_equal(acts[d], cand):
                    raise DomainError("generator images do not define a homomorphism")
        frontier = nxt
    if (acts < 0).any():
        raise DomainError("action generators do not generate C")
    return acts
