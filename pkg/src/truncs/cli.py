"""Command-line front end.

Exit codes: 0 when every checked property holds, 1 when one fails, 2 on
malformed input or usage errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import __version__
from .formats import (
    InputError,
    element_from_text,
    frame_bundle_from_data,
    read_json,
    trunc_from_data,
)
from .kernel_frame import (
    KernelFrameSizeError,
    classify_unital,
    kernel_frame,
    kernel_frame_to_dot,
    spectrum_to_dict,
    spectrum_to_dot,
)
from .lattice import element_str, frame_listing, frame_to_dot, points
from .pointed import frame_checks, pointed_to_dot, two_sub_F
from .representation import (
    MorphismError,
    hat,
    hat_morphism,
    induced_g,
    nonfunctorial_demo,
    represent,
    underline,
    w_morphism_factorizations,
    w_reflect,
)
from .suite import MODULES, REGISTRY, SuiteConfig, report_json, report_text, run_suite
from .trunc import EvSeq, FinVec, check_axioms, qstr

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class UsageError(InputError):
    pass


# ---------------------------------------------------------------------------
# helpers


def _carrier(args):
    """The trunc from --trunc FILE, or from --kind/--unit."""
    if getattr(args, "trunc", None):
        return trunc_from_data(read_json(args.trunc))
    if args.kind == "evseq":
        return trunc_from_data({"kind": "evseq"})
    unit = [u.strip() for u in (args.unit or "1").split(",") if u.strip()]
    return trunc_from_data({"kind": "finvec", "unit": unit})


def _emit(args, payload: dict, text: str | None = None) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(text if text is not None else _as_text(payload))


def _as_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        out = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}{k}:\n{_as_text(v, indent + 1)}")
            else:
                out.append(f"{pad}{k}: {v}\n")
        return "".join(out)
    if isinstance(obj, list):
        return "".join(f"{pad}- {x}\n" if not isinstance(x, (dict, list))
                       else f"{pad}-\n{_as_text(x, indent + 1)}" for x in obj)
    return f"{pad}{obj}\n"


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None


# ---------------------------------------------------------------------------
# subcommands


def cmd_check_axioms(args) -> int:
    spec = _carrier(args)
    c = spec.carrier.mutated(args.mutate) if args.mutate else spec.carrier
    rep = check_axioms(c, samples=args.samples, seed=args.seed)
    _emit(args, rep.to_dict())
    return EXIT_OK if rep.passed else EXIT_FAIL


def _bundle(args, carrier):
    try:
        return kernel_frame(carrier, max_dim=args.max_dim, window=args.window)
    except KernelFrameSizeError as e:
        raise UsageError(str(e)) from None


def cmd_kernel_frame(args) -> int:
    b = _bundle(args, _carrier(args).carrier)
    if args.dot:
        _write(args.dot, kernel_frame_to_dot(b))
    payload = b.to_dict()
    payload.update(size=len(b.frame), boolean=b.frame.is_boolean(), regular=b.frame.is_regular())
    _emit(args, payload)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    carrier = _carrier(args).carrier
    b = _bundle(args, carrier)
    if args.dot:
        _write(args.dot, spectrum_to_dot(b))
    payload = spectrum_to_dict(b)
    payload["classification"] = classify_unital(carrier, window=args.window, samples=args.samples,
                                                seed=args.seed).to_dict()
    _emit(args, payload)
    return EXIT_OK


def cmd_represent(args) -> int:
    spec = _carrier(args)
    carrier = spec.carrier
    elements = [element_from_text(carrier, e) for e in args.element] or list(spec.generators)
    if not elements:
        raise UsageError("give --element or generators in the trunc file")
    rep = represent(carrier, args.window)
    out = []
    for a in elements:
        out.append({"element": a.to_list(),
                    "underline": underline(rep.bundle, a).to_list(),
                    "hat": hat(rep, a).to_list()})
    _emit(args, {"carrier": repr(carrier), "representations": out})
    return EXIT_OK


def cmd_induce_g(args) -> int:
    src = trunc_from_data(read_json(args.source)).carrier if args.source else FinVec([1])
    tgt = trunc_from_data(read_json(args.target)).carrier if args.target else FinVec([1, 1])
    images = json.loads(args.theta) if args.theta else [["1", "0"]]
    if not isinstance(images, list):
        raise UsageError("--theta must be a JSON list of target coordinate lists")
    from .formats import element_from_data

    imgs = [element_from_data(tgt, im, f"theta[{i}]") for i, im in enumerate(images)]

    def theta(a):
        out = tgt.zero()
        for i, im in enumerate(imgs):
            coef = a[i] / src.scale_of(i)
            if coef:
                out = out + im * coef
        return out

    ra, rb = represent(src, args.window), represent(tgt, args.window)
    th = hat_morphism(ra, rb, theta)
    try:
        th.validate(seed=args.seed)
    except MorphismError as e:
        _emit(args, {"valid": False, "broken_identity": e.identity})
        return EXIT_FAIL
    ind = induced_g(ra, th, seed=args.seed)
    _emit(args, ind.to_dict())
    return EXIT_OK if ind.passed else EXIT_FAIL


def cmd_reflect(args) -> int:
    carrier = _carrier(args).carrier
    refl = w_reflect(carrier, window=args.window, samples=args.samples, seed=args.seed)
    rng = random.Random(args.seed)
    facts = [w_morphism_factorizations(refl, carrier, args.window, rng) for _ in range(args.samples)]
    payload = refl.to_dict()
    payload["factorizations"] = {"sampled": len(facts), "unique": sum(f.ok for f in facts)}
    ok = refl.unital and all(f.ok for f in facts)
    _emit(args, payload, "\n".join(refl.lines) + f"\nunique factorizations: "
                                                 f"{payload['factorizations']['unique']}/{len(facts)}\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_demo(args) -> int:
    if args.name == "ex1":
        d = nonfunctorial_demo()
        _emit(args, d.to_dict(), "\n".join(d.lines) + "\n")
        return EXIT_OK if d.passed else EXIT_FAIL
    carrier = EvSeq() if args.kind == "evseq" else _carrier(args).carrier
    refl = w_reflect(carrier, window=args.window, seed=args.seed)
    verdict = ("omega is an isomorphism (already unital)" if refl.b0_in_image
               else "reflection adjoins the top b0")
    _emit(args, refl.to_dict() | {"verdict": verdict}, "\n".join(refl.lines + [verdict]) + "\n")
    return EXIT_OK if refl.unital else EXIT_FAIL


def cmd_suite(args) -> int:
    cfg = SuiteConfig(seed=args.seed, instances=args.samples, window=args.window,
                      max_dim=args.max_dim, mutate=args.mutate, jobs=args.jobs)
    anchors = set(args.only) if args.only else None
    if anchors and not anchors <= {c.anchor for c in REGISTRY}:
        raise UsageError(f"unknown anchors: {sorted(anchors - {c.anchor for c in REGISTRY})}")
    report = run_suite(cfg, modules=set(args.module) if args.module else None, anchors=anchors)
    text = report_json(report) if args.format == "json" else report_text(report)
    if args.output:
        _write(args.output, text)
    sys.stdout.write(text)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_frame(args) -> int:
    L, F = frame_bundle_from_data(read_json(args.poset))
    payload = {"size": len(L), "elements": frame_listing(L), "regular": L.is_regular(),
               "boolean": L.is_boolean(),
               "points": [element_str(p.kernel) for p in points(L)]}
    dot = frame_to_dot(L)
    if F is not None:
        M = two_sub_F(L, F)
        payload["filter"] = sorted(element_str(a) for a in F)
        payload["two_sub_F"] = {"size": len(M.frame), "checks": frame_checks(M).to_dict()}
        dot = pointed_to_dot(M, "two_sub_F", (x for x in M.frame if M.at(x)))
    if args.dot:
        _write(args.dot, dot)
    _emit(args, payload)
    return EXIT_OK


def cmd_list(args) -> int:
    rows = [{"module": c.module, "anchor": c.anchor} for c in REGISTRY]
    _emit(args, {"checks": rows}, "".join(f"[{r['module']}] {r['anchor']}\n" for r in rows))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=None)
    common.add_argument("--max-dim", type=int, default=4)
    common.add_argument("--window", type=int, default=4)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--dot", metavar="PATH")

    trunc = argparse.ArgumentParser(add_help=False)
    trunc.add_argument("--trunc", metavar="FILE", help="trunc description (JSON)")
    trunc.add_argument("--kind", choices=("finvec", "evseq"), default="finvec")
    trunc.add_argument("--unit", help="FinVec unit, comma-separated rationals (default 1)")

    p = argparse.ArgumentParser(prog="truncs", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check-axioms", parents=[common, trunc], help="check T1-T4 on samples")
    s.add_argument("--mutate", choices=("zero", "identity"))
    s.set_defaults(func=cmd_check_axioms, samples_default=200)

    s = sub.add_parser("kernel-frame", parents=[common, trunc], help="build and export K A")
    s.set_defaults(func=cmd_kernel_frame, samples_default=0)

    s = sub.add_parser("spectrum", parents=[common, trunc], help="build M A and classify unitality")
    s.set_defaults(func=cmd_spectrum, samples_default=20)

    s = sub.add_parser("represent", parents=[common, trunc], help="step forms of underline(a) and hat(a)")
    s.add_argument("--element", action="append", default=[], help="comma-separated coordinates")
    s.set_defaults(func=cmd_represent, samples_default=0)

    s = sub.add_parser("induce-g", parents=[common], help="the pointed frame map induced by theta")
    s.add_argument("--source", metavar="FILE")
    s.add_argument("--target", metavar="FILE")
    s.add_argument("--theta", help="JSON list: target coordinates of each source basis element")
    s.set_defaults(func=cmd_induce_g, samples_default=8)

    s = sub.add_parser("reflect", parents=[common, trunc], help="the W-reflection and factorizations")
    s.set_defaults(func=cmd_reflect, samples_default=50)

    s = sub.add_parser("demo", parents=[common, trunc], help="worked constructions")
    s.add_argument("name", choices=("ex1", "reflection"))
    s.set_defaults(func=cmd_demo, samples_default=0)

    s = sub.add_parser("suite", parents=[common], help="run the property suites")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--mutate", choices=("zero", "identity"))
    s.add_argument("--module", action="append", choices=MODULES)
    s.add_argument("--only", action="append", metavar="ANCHOR")
    s.add_argument("--output", metavar="PATH")
    s.set_defaults(func=cmd_suite, samples_default=200)

    s = sub.add_parser("frame", parents=[common], help="frame (and 2_F L) from a poset file")
    s.add_argument("poset", metavar="FILE")
    s.set_defaults(func=cmd_frame, samples_default=0)

    s = sub.add_parser("list", parents=[common], help="list the registered checks")
    s.set_defaults(func=cmd_list, samples_default=0)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code not in (0, None) else EXIT_OK
    if args.samples is None:
        args.samples = args.samples_default
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except json.JSONDecodeError as e:
        print(f"error: {e.msg} (line {e.lineno}, column {e.colno})", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
