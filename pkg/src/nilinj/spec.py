"""Declarative group descriptions (GroupSpec) and their JSON form.

Examples::

    {"construct": "symmetric", "n": 4}
    {"construct": "jrv", "p": 2, "a": 1}
    {"construct": "generators", "degree": 3, "gens": [[1, 0, 2], [1, 2, 0]]}
    {"construct": "direct", "factors": [{"construct": "symmetric", "n": 3},
                                        {"construct": "symmetric", "n": 4}]}
    {"construct": "semidirect", "normal": {...}, "complement": {...},
     "action": {"1": [0, 2, 1, ...]}}

A semidirect ``action`` maps generator ids of the complement (as strings) to
image arrays over the element ids of the normal factor.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .constructions import families
from .errors import DomainError
from .groups import FiniteGroup, direct_product, group_from_generators, semidirect_product


class SpecError(DomainError):
    """A GroupSpec document is malformed; the message names the field."""


# construct -> ordered integer parameters
_NAMED: dict[str, tuple[str, ...]] = {
    "symmetric": ("n",),
    "alternating": ("n",),
    "cyclic": ("n",),
    "dihedral": ("n",),
    "elementary_abelian": ("p", "k"),
    "quaternion": (),
    "frobenius21": (),
    "agl": ("n", "p"),
    "gl": ("n", "p"),
    "agammal1": ("q",),
    "jrv": ("p", "a"),
    "small_54_5": (),
}
CONSTRUCTS = tuple(_NAMED) + ("generators", "direct", "semidirect")


@dataclass(frozen=True)
class GroupSpec:
    construct: str
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"construct": self.construct}
        for k, v in self.params.items():
            if isinstance(v, GroupSpec):
                out[k] = v.to_dict()
            elif k == "factors":
                out[k] = [f.to_dict() for f in v]
            else:
                out[k] = v
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @property
    def label(self) -> str:
        if self.construct in _NAMED:
            args = ",".join(str(self.params[k]) for k in _NAMED[self.construct])
            return f"{self.construct}({args})"
        if self.construct == "direct":
            return " x ".join(f.label for f in self.params["factors"])
        if self.construct == "semidirect":
            return f"({self.params['normal'].label}) x| ({self.params['complement'].label})"
        return f"generators(degree={self.params['degree']})"


def _int(doc: dict, key: str, where: str) -> int:
    if key not in doc:
        raise SpecError(f"{where}: missing field {key!r}")
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise SpecError(f"{where}.{key}: expected an integer, got {v!r}")
    return v


def parse_group_spec(document, where: str = "spec") -> GroupSpec:
    """Validate a JSON string or already-decoded dict into a GroupSpec."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SpecError(f"{where}: not valid JSON ({exc})") from None
    if not isinstance(document, dict):
        raise SpecError(f"{where}: expected an object")
    construct = document.get("construct")
    if construct not in CONSTRUCTS:
        raise SpecError(f"{where}.construct: unknown construct {construct!r}")
    allowed = {"construct"}
    if construct in _NAMED:
        params = {k: _int(document, k, where) for k in _NAMED[construct]}
        allowed |= set(params)
    elif construct == "generators":
        degree = _int(document, "degree", where)
        gens = document.get("gens")
        if not isinstance(gens, list):
            raise SpecError(f"{where}.gens: expected a list of permutations")
        for i, g in enumerate(gens):
            if not isinstance(g, list) or sorted(g) != list(range(degree)):
                raise SpecError(f"{where}.gens[{i}]: not a permutation of 0..{degree - 1}")
        params = {"degree": degree, "gens": [list(map(int, g)) for g in gens]}
        allowed |= {"degree", "gens"}
    elif construct == "direct":
        factors = document.get("factors")
        if not isinstance(factors, list) or not factors:
            raise SpecError(f"{where}.factors: expected a non-empty list")
        params = {"factors": [parse_group_spec(f, f"{where}.factors[{i}]") for i, f in enumerate(factors)]}
        allowed |= {"factors"}
    else:
        normal = parse_group_spec(document.get("normal"), f"{where}.normal")
        complement = parse_group_spec(document.get("complement"), f"{where}.complement")
        action = document.get("action")
        if not isinstance(action, dict):
            raise SpecError(f"{where}.action: expected an object mapping generator ids to images")
        try:
            action = {str(int(k)): [int(x) for x in v] for k, v in action.items()}
        except (TypeError, ValueError):
            raise SpecError(f"{where}.action: keys must be ids and values id lists") from None
        params = {"normal": normal, "complement": complement, "action": action}
        allowed |= {"normal", "complement", "action"}
    extra = set(document) - allowed
    if extra:
        raise SpecError(f"{where}: unexpected field(s) {sorted(extra)}")
    spec = GroupSpec(construct, params)
    if construct == "semidirect":
        try:
            build_group(spec)
        except SpecError:
            raise
        except DomainError as exc:
            raise SpecError(f"{where}.action: {exc}") from None
    return spec


def build_group(spec: GroupSpec) -> FiniteGroup:
    c, p = spec.construct, spec.params
    if c == "small_54_5":
        G = families.small_54_5()
    elif c in _NAMED:
        G = families.standard(c, *(p[k] for k in _NAMED[c]))
    elif c == "generators":
        G = group_from_generators(p["degree"], p["gens"])
    elif c == "direct":
        G = build_group(p["factors"][0])
        for f in p["factors"][1:]:
            G = direct_product(G, build_group(f))
    else:
        N = build_group(p["normal"])
        C = build_group(p["complement"])
        action = {int(k): np.asarray(v) for k, v in p["action"].items()}
        for k, v in action.items():
            if not 0 <= k < C.order:
                raise SpecError(f"action key {k} is not an element id of the complement")
            if len(v) != N.order:
                raise SpecError(f"action image for {k} has length {len(v)}, expected {N.order}")
        G = semidirect_product(N, C, action)
    G.name = spec.label
    return G


def load_spec_file(path: str) -> GroupSpec:
    if path == "-":
        import sys

        return parse_group_spec(sys.stdin.read())
    with open(path) as fh:
        return parse_group_spec(fh.read(), where=path)
