"""``nilinj`` command line: one verb per module surface.

Exit codes: 0 when every report passed (or was a boundary/empirical record),
1 when any check failed, 2 when a resource cap was hit and nothing failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections import Counter

from . import limits
from .carter import carter_subgroups, question_congruence_scan
from .errors import DomainError, ResourceLimitError
from .injectors import _fp, injector_poset, mann_injector, nilpotent_subgroup_poset, p_subgroup_poset, question_one_data
from .lattice import all_subgroups, is_n_constrained, is_soluble
from .reports import _exact, describe, fingerprint
from .spec import SpecError, build_group, load_spec_file
from .suites import SUITE_IDS, SylowTowerViolation, exit_status, generated_family, run_suite

log = logging.getLogger("nilinj")


def _write(obj, out: str | None, spec=None) -> None:
    obj = _exact(obj)
    if spec is not None:  # GroupSpec parameters stay JSON integers so the spec can be fed back in
        obj["spec"] = spec.to_dict()
    text = json.dumps(obj, sort_keys=True, indent=1) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _group(args):
    if not args.spec:
        raise SpecError("--spec FILE is required for this verb")
    spec = load_spec_file(args.spec)
    return spec, build_group(spec)


def cmd_construct(args) -> int:
    spec, G = _group(args)
    body = {"fingerprint": fingerprint(G, spec.label),
            "generators": [[int(x) for x in G.perms[g]] if G.perms is not None else g for g in G.generators],
            "labels": {k: describe(S) for k, S in sorted(G.labels.items())}}
    _write(body, args.out, spec)
    return 0


def cmd_lattice(args) -> int:
    spec, G = _group(args)
    L = all_subgroups(G)
    by_order = Counter(S.order for S in L)
    body = {"fingerprint": fingerprint(G, spec.label), "subgroups": len(L), "classes": len(L.classes),
            "normal": len(L.normal_subgroups()), "by_order": {str(k): v for k, v in sorted(by_order.items())}}
    _write(body, args.out)
    return 0


def cmd_injectors(args) -> int:
    spec, G = _group(args)
    if not is_n_constrained(G):
        raise DomainError(f"{spec.label} is not N-constrained")
    prof = mann_injector(G)
    body = {"fingerprint": fingerprint(G, spec.label), "fitting": describe(prof.fitting),
            "injector": describe(prof.injector), "injectors": len(prof.all_injectors),
            "index": prof.index, "m_G": prof.m_G,
            "primes": {str(d.p): {"sylow_order": d.sylow.order, "centralizer_order": d.centralizer.order}
                       for d in prof.primes.values()}}
    _write(body, args.out)
    return 0


def cmd_carter(args) -> int:
    spec, G = _group(args)
    prof = carter_subgroups(G)
    body = {"fingerprint": fingerprint(G, spec.label), "carter": describe(prof.carter),
            "carters": len(prof.carters), "index": prof.index, "m_hat": prof.m_hat}
    _write(body, args.out)
    return 0


def cmd_mobius(args) -> int:
    spec, G = _group(args)
    if args.poset == "injector":
        P = injector_poset(G)
        at = {"1": 0, "F": P.marks["fitting"]}
    elif args.poset == "nilpotent":
        P = nilpotent_subgroup_poset(G)
        at = {"1": 0}
    else:
        P = p_subgroup_poset(G, args.prime)
        at = {"1": 0}
    body = {"fingerprint": fingerprint(G, spec.label), "poset": P.provenance, "size": P.n,
            "theta": {k: P.theta(x) for k, x in at.items()},
            "reduced_euler": P.reduced_euler_characteristic()}
    _write(body, args.out)
    return 0


def cmd_verify(args) -> int:
    specs = [load_spec_file(args.spec)] if args.spec else None
    caps = {"max_lattice_order": args.max_order, "max_subgroups": args.max_subgroups}
    try:
        reports = run_suite(args.check, specs, caps=caps, jobs=args.jobs)
    except SylowTowerViolation as exc:
        log.error("%s", exc)
        return 1
    _write(reports, args.out)
    for r in reports:
        if r["status"] == "fail":
            log.error("FAIL %s on %s: witnesses %s", r["check"], r["fingerprint"].get("provenance"),
                      r["witnesses"])
    return exit_status(reports)


def cmd_survey(args) -> int:
    """Append question-scan and injector-ratio records for the generated family."""
    bound = args.max_order or 400
    out = open(args.out, "a") if args.out else sys.stdout
    status = 0
    try:
        for spec in generated_family(bound, extras=False):
            record = {"label": spec.label}
            try:
                with limits.override(max_subgroups=args.max_subgroups):
                    G = build_group(spec)
                    record["fingerprint"] = _fp(G)
                    if is_soluble(G):
                        prof = carter_subgroups(G)
                        record["carter_index"] = prof.index
                        record["m_hat"] = prof.m_hat
                        record["question_scan"] = question_congruence_scan(G).to_dict()["values"]
                    if G.order > 1 and is_n_constrained(G):
                        record["question_one"] = question_one_data(G)
            except ResourceLimitError as exc:
                record["skipped_cap"] = str(exc)
                status = 2
            record = _exact(record)
            record["spec"] = spec.to_dict()
            out.write(json.dumps(record, sort_keys=True) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nilinj", description="Nilpotent injectors, Carter subgroups "
                                     "and Möbius sums of small finite groups.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p):
        p.add_argument("--spec", help="GroupSpec JSON file ('-' for stdin)")
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--max-order", type=int, help="largest group order whose lattice is built")
        p.add_argument("--max-subgroups", type=int, help="cap on the number of subgroups")
        p.add_argument("--jobs", type=int, default=1, help="worker processes")
        return p

    for name, fn in (("construct", cmd_construct), ("lattice", cmd_lattice), ("injectors", cmd_injectors),
                     ("carter", cmd_carter), ("survey", cmd_survey)):
        common(sub.add_parser(name)).set_defaults(func=fn)
    mob = common(sub.add_parser("mobius"))
    mob.add_argument("--poset", choices=("injector", "nilpotent", "p"), default="injector")
    mob.add_argument("--prime", type=int, default=2, help="prime for --poset p")
    mob.set_defaults(func=cmd_mobius)
    ver = common(sub.add_parser("verify"))
    ver.add_argument("--check", choices=SUITE_IDS, default="all")
    ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s", stream=sys.stderr)
    args = build_parser().parse_args(argv)
    caps = {"max_subgroups": args.max_subgroups}
    if args.verb != "survey":  # for survey --max-order bounds the family instead
        caps["max_lattice_order"] = args.max_order
    try:
        with limits.override(**caps):
            return args.func(args)
    except ResourceLimitError as exc:
        log.error("cap exceeded: %s", exc)
        return 2
    except DomainError as exc:
        log.error("%s", exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
