"""Command-line entry point.

Subcommands mirror the library operations; all randomness flows from one
seed (--seed, or ORBITFORGE_SEED, default 1).  Machine output is JSON with
sorted keys, so identical (command, config, seed) give byte-identical
bytes.  Exit codes: 0 success, 1 check failure, 2 usage error,
3 unsupported spectrum.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import verify as verify_mod
from .conjecture import (
    class_catalog,
    conjecture_batch,
    conjecture_check,
    nc_subspace,
    sample_inflation_generic,
)
from .errors import (
    GenericityError,
    InvariantViolation,
    OrbitforgeError,
    PreconditionError,
    UnsupportedSpectrumError,
)
from .jmtriple import canonical_parabolic, canonical_parabolic_of_element, jm_triple
from .liecore import is_nilpotent, mult_jc
from .orbits import (
    ClassLabel,
    LeviSpec,
    MClassLabel,
    check_assoc,
    check_codim,
    check_descent,
    check_gn,
    induce,
    inflated_class_contains,
    is_inflation_generic,
    regular_m_class,
    richardson,
    trivial_m_class,
)
from .polyring import MPoly, PolyMat
from .prehomo import AffineActionModel, dk_data, is_special
from .ratmat import QMat

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_SPECTRUM = 3


def _load_matrix(spec: str) -> QMat:
    """Matrix from inline JSON or from a file path."""
    if os.path.exists(spec):
        with open(spec) as fh:
            obj = json.load(fh)
    else:
        obj = json.loads(spec)
    return QMat.from_json_obj(obj)


def _parse_composition(spec: str) -> LeviSpec:
    return LeviSpec(tuple(int(x) for x in spec.split(",")))


def _parse_m_class(spec: str, levi: LeviSpec) -> MClassLabel:
    if spec == "trivial":
        return trivial_m_class(levi)
    if spec == "regular":
        return regular_m_class(levi)
    if spec == "mixed":
        from .conjecture import mixed_m_class

        return mixed_m_class(levi)
    obj = json.loads(spec)
    return MClassLabel.from_json_obj(obj)


def _parse_model(spec: str) -> AffineActionModel:
    if os.path.exists(spec):
        with open(spec) as fh:
            obj = json.load(fh)
    else:
        obj = json.loads(spec)
    coord_dim = int(obj["coord_dim"])
    generators = [QMat.from_json_obj(g) for g in obj.get("generators", [])]
    rows = []
    for row in obj["vector_fields"]:
        prow = []
        for entry in row:
            terms = {}
            for exps, coeff in entry["terms"]:
                terms[tuple(int(e) for e in exps)] = Fraction(coeff)
            prow.append(MPoly(coord_dim, terms))
        rows.append(prow)
    pm = PolyMat.from_rows(rows) if rows else PolyMat(0, coord_dim, [])
    return AffineActionModel(coord_dim=coord_dim, generators=generators, vector_fields=pm)


def _emit(payload: dict, args) -> None:
    payload = {"schema_version": SCHEMA_VERSION, **payload}
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _add_common(p: argparse.ArgumentParser, samples=True):
    p.add_argument("--seed", type=int, default=None, help="random seed (default: ORBITFORGE_SEED or 1)")
    if samples:
        p.add_argument("--samples", type=int, default=7, help="genericity samples (>= 3)")
    p.add_argument("--bound", type=int, default=10, help="integer sampling bound B (>= 2)")
    p.add_argument("--out", default=None, help="write JSON to this path instead of stdout")
    p.add_argument("--json", action="store_true", help="accepted for compatibility; output is JSON")


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("ORBITFORGE_SEED")
    return int(env) if env else 1


def _validate_config(args) -> None:
    if getattr(args, "samples", 3) < 3:
        raise PreconditionError("samples must be >= 3")
    if getattr(args, "bound", 2) < 2:
        raise PreconditionError("bound must be >= 2")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orbitforge")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("jm", help="Lie triple of a nilpotent matrix")
    p.add_argument("--matrix", required=True)
    _add_common(p, samples=False)

    p = sub.add_parser("parabolic", help="canonical parabolic data of an element")
    p.add_argument("--matrix", required=True)
    _add_common(p, samples=False)

    for name in ("induce", "richardson", "check-codim", "check-assoc", "check-descent"):
        p = sub.add_parser(name)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--levi", required=True, help="comma-separated block sizes")
        if name != "richardson":
            p.add_argument("--class", dest="mclass", default="trivial",
                           help="trivial | regular | mixed | JSON per-block labels")
        _add_common(p)

    p = sub.add_parser("check-gn", help="semisimple parts along delta N are N-conjugate")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--levi", required=True)
    p.add_argument("--delta", required=True, help="matrix (file or inline JSON)")
    _add_common(p)

    p = sub.add_parser("infl-check", help="inflation-genericity membership")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--levi", required=True)
    p.add_argument("--delta", required=True)
    p.add_argument("--class", dest="mclass", default=None)
    _add_common(p, samples=False)

    p = sub.add_parser("dk", help="grade-2 relative invariant of a nilpotent class")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--partition", required=True, help="comma-separated parts")
    _add_common(p, samples=False)

    p = sub.add_parser("special", help="speciality of an affine action model")
    p.add_argument("--model", required=True, help="model JSON (file or inline)")
    _add_common(p, samples=False)

    p = sub.add_parser("nc", help="the subalgebra nc for a sampled inflation-generic element")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--levi", required=True)
    p.add_argument("--class", dest="mclass", default="trivial")
    _add_common(p)

    p = sub.add_parser("conjecture", help="speciality verdict for one case")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--levi", required=True)
    p.add_argument("--class", dest="mclass", default="trivial")
    _add_common(p)

    p = sub.add_parser("conjecture-batch")
    p.add_argument("--n-max", type=int, default=4)
    _add_common(p)

    p = sub.add_parser("verify", help="run the full invariant suites")
    p.add_argument("--n-max", type=int, default=4)
    _add_common(p)
    return ap


def _cmd_jm(args) -> int:
    m = _load_matrix(args.matrix)
    if not is_nilpotent(m):
        raise PreconditionError("jm requires a nilpotent matrix")
    t = jm_triple(m)
    _emit({"X": t.x.to_json_obj(), "H": t.h.to_json_obj(), "Y": t.y.to_json_obj()}, args)
    return EXIT_OK


def _cmd_parabolic(args) -> int:
    m = _load_matrix(args.matrix)
    if is_nilpotent(m):
        pd = canonical_parabolic(jm_triple(m))
    else:
        pd = canonical_parabolic_of_element(m)
    from .jmtriple import graded_decomposition

    levels = graded_decomposition(pd.h)
    _emit(
        {
            "H": pd.h.to_json_obj(),
            "levels": {
                str(k): sub.basis.to_json_obj() for k, sub in sorted(levels.levels.items())
            },
            "q": pd.q.basis.to_json_obj(),
            "l": pd.l.basis.to_json_obj(),
            "u": pd.u.basis.to_json_obj(),
            "uprime": pd.uprime.basis.to_json_obj(),
        },
        args,
    )
    return EXIT_OK


def _levi_and_class(args) -> tuple[LeviSpec, MClassLabel]:
    levi = _parse_composition(args.levi)
    if levi.n != args.n:
        raise PreconditionError("composition does not sum to n")
    c = _parse_m_class(getattr(args, "mclass", "trivial") or "trivial", levi)
    if not c.matches(levi):
        raise PreconditionError("class block sizes do not match the composition")
    return levi, c


def _cmd_induce(args) -> int:
    levi, c = _levi_and_class(args)
    res = induce(levi, c, args.samples, _resolve_seed(args), args.bound)
    _emit({"result": res.to_json_obj()}, args)
    return EXIT_OK


def _cmd_richardson(args) -> int:
    levi = _parse_composition(args.levi)
    if levi.n != args.n:
        raise PreconditionError("composition does not sum to n")
    res = richardson(levi, args.samples, _resolve_seed(args), args.bound)
    _emit({"result": res.to_json_obj()}, args)
    return EXIT_OK


def _cmd_check(args, fn) -> int:
    levi, c = _levi_and_class(args)
    rep = fn(levi, c, args.samples, _resolve_seed(args), args.bound)
    _emit({"report": rep.to_json_obj()}, args)
    return EXIT_OK if rep.ok else EXIT_CHECK_FAILED


def _cmd_check_gn(args) -> int:
    levi = _parse_composition(args.levi)
    delta = _load_matrix(args.delta)
    rep = check_gn(delta, levi, args.samples, _resolve_seed(args), args.bound)
    _emit({"report": rep.to_json_obj()}, args)
    return EXIT_OK if rep.ok else EXIT_CHECK_FAILED


def _cmd_infl(args) -> int:
    levi = _parse_composition(args.levi)
    delta = _load_matrix(args.delta)
    generic = is_inflation_generic(delta, levi)
    payload = {"inflation_generic": generic}
    if args.mclass:
        c = _parse_m_class(args.mclass, levi)
        payload["in_inflated_class"] = inflated_class_contains(delta, levi, c)
    _emit(payload, args)
    return EXIT_OK


def _cmd_dk(args) -> int:
    from .liecore import Partition
    from .orbits import unipotent_block

    parts = Partition(tuple(int(x) for x in args.partition.split(",")))
    if parts.size != args.n:
        raise PreconditionError("partition does not sum to n")
    nilp = unipotent_block(parts) - QMat.identity(args.n)
    t = jm_triple(nilp)
    data = dk_data(t)
    _emit(
        {
            "partition": list(parts.parts),
            "grade2_dim": data.g2.dim,
            "p": data.p.render(),
            "degree": data.p.total_degree(),
        },
        args,
    )
    return EXIT_OK


def _cmd_special(args) -> int:
    model = _parse_model(args.model)
    rep = is_special(model, seed=_resolve_seed(args))
    _emit({"report": rep.to_json_obj()}, args)
    return EXIT_OK


def _cmd_nc(args) -> int:
    levi, c = _levi_and_class(args)
    seed = _resolve_seed(args)
    gamma = sample_inflation_generic(levi, c, seed, args.bound)
    res = nc_subspace(gamma, levi, confirmations=args.samples + 13, seed=seed)
    _emit(
        {
            "gamma": gamma.to_json_obj(),
            "nc_dim": res.nc_basis.dim,
            "nc_basis": res.nc_basis.basis.to_json_obj(),
            "iterations": res.iterations,
        },
        args,
    )
    return EXIT_OK


def _cmd_conjecture(args) -> int:
    levi, c = _levi_and_class(args)
    case = conjecture_check(levi, c, args.samples, _resolve_seed(args), args.bound)
    _emit({"verdict": case.verdict.to_json_obj()}, args)
    return EXIT_OK if case.verdict.verdict != "inconclusive" else EXIT_CHECK_FAILED


def _cmd_batch(args) -> int:
    batch = conjecture_batch(args.n_max, _resolve_seed(args), args.samples, args.bound)
    _emit({"report": batch.to_json_obj()}, args)
    return EXIT_OK if batch.summary()["inconclusive"] == 0 else EXIT_CHECK_FAILED


def _cmd_verify(args) -> int:
    results = verify_mod.run_all(n_max=args.n_max, seed=_resolve_seed(args))
    ok = all(r.ok for r in results)
    for r in results:
        sys.stdout.write(f"{'PASS' if r.ok else 'FAIL'}  {r.name}: {r.detail}\n")
    sys.stdout.write(
        f"{'OK' if ok else 'FAILED'}: {sum(r.ok for r in results)}/{len(results)} suites passed\n"
    )
    return EXIT_OK if ok else EXIT_CHECK_FAILED


_DISPATCH = {
    "jm": _cmd_jm,
    "parabolic": _cmd_parabolic,
    "induce": _cmd_induce,
    "richardson": _cmd_richardson,
    "check-codim": lambda a: _cmd_check(a, check_codim),
    "check-assoc": lambda a: _cmd_check(a, check_assoc),
    "check-descent": lambda a: _cmd_check(a, check_descent),
    "check-gn": _cmd_check_gn,
    "infl-check": _cmd_infl,
    "dk": _cmd_dk,
    "special": _cmd_special,
    "nc": _cmd_nc,
    "conjecture": _cmd_conjecture,
    "conjecture-batch": _cmd_batch,
    "verify": _cmd_verify,
}


def cmd_dispatch(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0,) else 0
    try:
        _validate_config(args)
        return _DISPATCH[args.command](args)
    except UnsupportedSpectrumError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_SPECTRUM
    except (GenericityError, InvariantViolation) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_CHECK_FAILED
    except (ValueError, KeyError, json.JSONDecodeError) as e:
        sys.stderr.write(f"usage error: {e}\n")
        return EXIT_USAGE
    except OrbitforgeError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_CHECK_FAILED


def main() -> None:
    sys.exit(cmd_dispatch())
