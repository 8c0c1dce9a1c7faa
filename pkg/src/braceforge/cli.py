"""``brace-forge`` command line.

Every subcommand reads JSON, calls one library operation and prints JSON.
Exit codes: 0 success, 1 domain error (JSON diagnostic on stdout),
2 usage error (argparse message on stderr).
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from typing import Sequence

from . import brace as br
from .census import build_census, enumerate_solutions, write_census
from .config import Limits
from .errors import BraceForgeError, MalformedInput
from .permgrp import NAMED_GROUPS, PermGroup, is_engel_group, is_nilpotent
from .ring import embed_group_adjoint
from .solution import (
    INFINITE,
    mpl,
    permutation_generators,
    retract,
    solution_from_json,
    solution_to_json,
)
from .structure_group import (
    check_binomial_identity,
    check_eq2_recursion,
    check_nonabelian,
    check_theorem_one,
    embed_finite_brace,
    from_word,
    generator,
    socle_index,
    theorem_one_witness,
)

CHECKS = ("prop5", "socle-commutator", "theorem-one", "eq2", "binomial", "two-sided", "retract-iso")
SOLUTION_CHECKS = ("theorem-one", "eq2", "binomial")


def _load(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path} is not valid JSON: {exc}") from exc


def _level(value):
    return "infinite" if value is INFINITE else value


def _brace_and_solution(data: dict, limits: Limits) -> tuple:
    """A brace from brace JSON, or the embedded brace of a solution."""
    if "repr" in data:
        return br.brace_from_json(data), None
    S = solution_from_json(data)
    return embed_finite_brace(S, limits.cap).brace, S


def cmd_validate(args, limits):
    data = _load(args.input)
    if "repr" in data:
        return br.validate_brace(br.brace_from_json(data), limits)
    S = solution_from_json(data)
    return {"valid": True, "size": S.size}


def cmd_info(args, limits):
    S = solution_from_json(_load(args.input))
    return {
        "size": S.size,
        "trivial": S.is_trivial(),
        "mpl": _level(mpl(S)),
        "perm_group_order": socle_index(S, limits.cap),
        "lambda_classes": len(set(S.lam)),
        "generators": [list(p.images) for p in permutation_generators(S)],
    }


def cmd_retract(args, limits):
    R = retract(solution_from_json(_load(args.input)))
    return {"class_of": list(R.class_of), "retracted": solution_to_json(R.retracted)}


def cmd_mpl(args, limits):
    return {"mpl": _level(mpl(solution_from_json(_load(args.input))))}


def cmd_embed(args, limits):
    return embed_finite_brace(solution_from_json(_load(args.input)), limits.cap).to_json()


def cmd_chains(args, limits):
    B, _ = _brace_and_solution(_load(args.input), limits)
    right, rn = br.right_series(B)
    left, ln = br.left_series(B)
    return {
        "order": B.order,
        "right_series": [c.order for c in right],
        "right_nilpotent": rn,
        "left_series": [c.order for c in left],
        "left_nilpotent": ln,
    }


def _solution_checks(S, which) -> dict:
    out = {}
    words = [w for n in (1, 2) for w in itertools.product(range(S.size), (1, -1), repeat=n)]
    elems = [from_word(S, list(zip(w[::2], w[1::2]))) for w in words]
    gens = [generator(S, y) for y in range(S.size)]
    if "theorem-one" in which:
        w = theorem_one_witness(S)
        out["theorem-one"] = {
            "holds": check_theorem_one(S),
            "trivial": S.is_trivial(),
            "nonvanishing_pair": list(w) if w else None,
            "nonabelian_ok": check_nonabelian(S),
        }
    if "binomial" in which:
        ok = all(check_binomial_identity(a, b, m) for a in elems for b in gens for m in range(1, 7))
        out["binomial"] = {"holds": ok, "cases": len(elems) * len(gens) * 6}
    if "eq2" in which:
        ok = all(check_eq2_recursion(a, b, 4) for a in elems for b in gens)
        out["eq2"] = {"holds": ok, "cases": len(elems) * len(gens)}
    return out


def _brace_checks(B, which, limits) -> dict:
    out = {}
    if "prop5" in which:
        out["prop5"] = br.check_proposition_five(B, limits)
    if "socle-commutator" in which:
        w = br.socle_commutator_witness(B)
        out["socle-commutator"] = {"holds": w is None, "witness": list(w) if w else None}
    if "two-sided" in which:
        ok, w = br.is_two_sided(B, limits)
        out["two-sided"] = {"holds": ok, "witness": list(w) if w else None}
    if "retract-iso" in which:
        out["retract-iso"] = {"holds": br.retract_iso_check(B, limits)}
    return out


def cmd_check(args, limits):
    data = _load(args.input)
    which = [args.what] if args.what else list(CHECKS)
    if "repr" in data:
        B, S = br.brace_from_json(data), None
        if args.what in SOLUTION_CHECKS:
            raise MalformedInput(f"check {args.what} needs a solution as input")
        which = [w for w in which if w not in SOLUTION_CHECKS]
    else:
        S = solution_from_json(data)
        B = embed_finite_brace(S, limits.cap).brace if set(which) - set(SOLUTION_CHECKS) else None
    results = {}
    if S is not None:
        results.update(_solution_checks(S, which))
    if B is not None:
        results.update(_brace_checks(B, which, limits))
    return {"checks": results}


def cmd_enumerate(args, limits):
    sols = enumerate_solutions(args.size, up_to_iso=not args.labelled)
    return {"size": args.size, "count": len(sols), "solutions": [solution_to_json(S) for S in sols]}


def cmd_census(args, limits):
    records = build_census(args.size, limits)
    if args.output:
        with open(args.output, "w") as fh:
            write_census(records, fh)
        return None
    write_census(records, sys.stdout)
    return None


def cmd_groupring(args, limits):
    if args.input:
        G = PermGroup.from_json(_load(args.input), cap=limits.cap)
    else:
        G = NAMED_GROUPS[args.group]()
    emb = embed_group_adjoint(G, args.k, limits.cap)
    nilpotent, cls = is_nilpotent(G, limits.cap)
    return {
        "group_order": G.order,
        "k": args.k,
        "image_size": emb.image_size,
        "pairs_checked": emb.pairs_checked,
        "injective_morphism": True,
        "engel": is_engel_group(G),
        "nilpotent": nilpotent,
        "nilpotency_class": cls,
        "image": [emb.ring.elt_to_json(emb.image[g]) for g in emb.ring.group_elements],
    }


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=10**6, help="closure and brace order cap")
    common.add_argument("--json", action="store_true", help="accepted for compatibility; output is always JSON")
    common.add_argument("--output", help="write the JSON result to this file")
    common.add_argument("--threads", type=int, default=1, help="accepted; work runs in one thread")

    parser = argparse.ArgumentParser(prog="brace-forge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, needs_input=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if needs_input:
            p.add_argument("--input", required=True, help="solution or brace JSON file")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "validate a solution or brace")
    add("info", cmd_info, "summary of a solution")
    add("retract", cmd_retract, "retraction of a solution")
    add("mpl", cmd_mpl, "multipermutation level")
    add("embed", cmd_embed, "finite brace containing the solution")
    add("chains", cmd_chains, "left and right series of a brace")
    p = add("check", cmd_check, "run property checkers")
    p.add_argument("--what", choices=CHECKS)
    p = add("enumerate", cmd_enumerate, "all solutions of a given size", needs_input=False)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--labelled", action="store_true", help="do not reduce up to isomorphism")
    p = add("census", cmd_census, "census records as JSON lines", needs_input=False)
    p.add_argument("--size", type=int, required=True)
    p = add("groupring", cmd_groupring, "g -> g - 1 into the adjoint semigroup of Z/k[G]", needs_input=False)
    p.add_argument("--group", choices=sorted(NAMED_GROUPS), default="S3")
    p.add_argument("--input", help="group JSON {degree, generators} instead of --group")
    p.add_argument("--k", type=int, default=2)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    limits = Limits(cap=args.cap)
    try:
        result = args.func(args, limits)
    except BraceForgeError as exc:
        print(json.dumps(exc.to_json()))
        return 1
    if result is None:
        return 0
    text = json.dumps(result)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
