"""``hfent`` command-line interface.

Exit codes: 0 when every assertion passed, 1 when one failed (the first
failing invariant is named on stderr), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from hfent import io
from hfent.complexes import BipartitionError, ComplexValidationError, load_complex, load_cut
from hfent.config import DEFAULT_SEED, EIGEN_TOL, ENTROPY_TOL, OPERATOR_TOL, RunConfig, dim_cap_from_env
from hfent.groups import FiniteAbelianGroup, StructureError
from hfent.entropy import CommutationError
from hfent.hilbert import CapabilityError
from hfent.models.sumrule import LeakageError

EXIT_OK, EXIT_ASSERT, EXIT_USAGE = 0, 1, 2

PARAM_ALIASES = {
    "μ": "mu",
    "Δ_F": "dF",
    "Δ_V": "dV",
    "Δ_L": "dL",
    "Δ′_L": "dL_",
    "Δ′_V": "dV_",
    "Δ′_F": "dF_",
    "dL'": "dL_",
    "dV'": "dV_",
    "dF'": "dF_",
}


class UsageError(Exception):
    pass


class AssertionFailure(Exception):
    def __init__(self, invariant: str, detail: str = ""):
        super().__init__(f"{invariant}: {detail}" if detail else invariant)
        self.invariant = invariant


def parse_params(items: list[str] | None) -> dict[str, float]:
    """``["w=1.0,mu=0.5", "J=0.7"]`` -> ``{"w": 1.0, "mu": 0.5, "J": 0.7}``."""
    out = {}
    for item in items or []:
        for part in item.split(","):
            part = part.strip()
            if not part:
                continue
            if "=" not in part:
                raise UsageError(f"parameter {part!r} is not of the form K=V")
            k, v = part.split("=", 1)
            k = PARAM_ALIASES.get(k.strip(), k.strip())
            try:
                out[k] = float(v)
            except ValueError as exc:
                raise UsageError(f"parameter {k} has non-numeric value {v!r}") from exc
    return out


def _group(text: str) -> FiniteAbelianGroup:
    try:
        return FiniteAbelianGroup.parse(text)
    except (StructureError, ValueError) as exc:
        raise UsageError(f"bad group {text!r}: {exc}") from exc


def _complex(ref: str):
    try:
        return load_complex(ref)
    except KeyError as exc:
        raise UsageError(f"{ref!r} is neither a complex file nor a library complex") from exc
    except (OSError, ComplexValidationError, StructureError) as exc:
        raise UsageError(f"cannot load complex {ref!r}: {exc}") from exc


def _cut(X, ref: str):
    try:
        return load_cut(X, ref)
    except (KeyError, BipartitionError, IndexError, ValueError) as exc:
        raise UsageError(f"cannot load cut {ref!r} on {X.name}: {exc}") from exc


def _emit(cfg: RunConfig, payload: dict, default_name: str) -> None:
    payload = {"config": _config_dict(cfg), **payload}
    out = Path(cfg.out) if cfg.out else Path(default_name)
    io.write_json(payload, out)


def _config_dict(cfg: RunConfig) -> dict:
    return {
        "command": cfg.command,
        "complex": cfg.complex,
        "group": cfg.group,
        "p": cfg.p,
        "cut": cfg.cut,
        "model": cfg.model,
        "params": cfg.params,
        "tolerances": cfg.tolerances,
        "dim_cap": cfg.dim_cap,
        "seed": cfg.seed,
    }


# --------------------------------------------------------------------------
# subcommands


def cmd_homology(cfg: RunConfig, args) -> int:
    from hfent.homology import cohomology, homology

    X = _complex(cfg.complex)
    G = _group(cfg.group)
    n = args.dim
    if not 0 <= n <= X.dim:
        raise UsageError(f"dimension {n} outside 0..{X.dim}")
    if args.cohomology:
        H = cohomology(X, n, G)
        label = f"H^{n}"
    else:
        H = homology(X, n, G)
        label = f"H_{n}"
    print(f"{label} = {H}")
    reps = [[int(x) for x in r.vector] for r in H.representatives]
    for i, r in enumerate(reps):
        print(f"  generator {i} (order {H.factors[i]}): {r}")
    _emit(
        cfg,
        {
            "kind": H.kind,
            "dim": n,
            "structure": str(H),
            "factors": list(H.factors),
            "order": H.order,
            "representatives": reps,
        },
        "hfent_homology.json",
    )
    return EXIT_OK


def cmd_mv_check(cfg: RunConfig, args) -> int:
    from hfent.homology import mv_criterion

    X = _complex(cfg.complex)
    G = _group(cfg.group)
    bp = _cut(X, cfg.cut)
    mv = mv_criterion(bp, G.dual_group())
    summ = mv.summary()
    print(f"criterion: {'HOLDS' if mv.holds else 'FAILS'}")
    print(f"  H_p(A∩B) = {summ['H_AB']}, H_p(A) = {summ['H_A']}, H_p(B) = {summ['H_B']}")
    print(f"  |S| = {summ['order_S']}, |Im i_A| = {summ['order_image_A']}, |Im i_B| = {summ['order_image_B']}")
    print(f"  {mv.diagnostic}")
    _emit(cfg, {"mv": mv.summary()}, "hfent_mv_check.json")
    if args.expect and (args.expect == "holds") != mv.holds:
        raise AssertionFailure("mv_criterion", f"expected {args.expect}, got {'holds' if mv.holds else 'fails'}")
    return EXIT_OK


def _build_bundle(cfg: RunConfig):
    from hfent.models import MODEL_BUILDERS

    if cfg.model not in MODEL_BUILDERS:
        raise UsageError(f"unknown model {cfg.model!r}; choose from {', '.join(MODEL_BUILDERS)}")
    params_cls, build = MODEL_BUILDERS[cfg.model]
    known = set(params_cls.__dataclass_fields__)
    unknown = set(cfg.params) - known
    if unknown:
        raise UsageError(f"unknown parameters {sorted(unknown)} for {cfg.model}; known: {sorted(known)}")
    X = _complex(cfg.complex)
    try:
        return build(X, params_cls(**cfg.params), dim_cap=cfg.dim_cap)
    except StructureError as exc:
        raise UsageError(str(exc)) from exc


def cmd_sum_rule(cfg: RunConfig, args) -> int:
    from hfent.models import run_sum_rule

    bundle = _build_bundle(cfg)
    bp = _cut(bundle.model.complex, cfg.cut)
    rep = run_sum_rule(bundle, bp, tol=cfg.entropy_tol, eigen_tol=cfg.eigen_tol, max_pairs=args.max_pairs)
    print(
        f"{rep.model} on {rep.complex}, cut {rep.cut}: mv {'holds' if rep.mv_holds else 'fails'}, "
        f"{len(rep.rows)} eigenpairs, max |residual| = {rep.max_abs_residual:.3e}, status {rep.status}"
    )
    for note in rep.notes:
        print(f"  note: {note}")
    _emit(cfg, {"report": rep.to_dict(timing=args.timing)}, "hfent_sum_rule.json")
    if cfg.csv:
        io.write_csv([dict(vars(r)) for r in rep.rows], cfg.csv)
    if not rep.passed:
        raise AssertionFailure("sum_rule", f"max |residual| {rep.max_abs_residual:.3e} > {cfg.entropy_tol}")
    return EXIT_OK


def cmd_operators(cfg: RunConfig, args) -> int:
    from hfent.coupling import dual_coupling, minimal_coupling
    from hfent.factorize import FactorizationError, factorize
    from hfent.hilbert import HilbertModel, projector_inv

    if args.model_file:
        model = io.load_model(args.model_file, cfg.dim_cap)
    else:
        if cfg.p is None:
            raise UsageError("operators needs --p (or --model-file)")
        X = _complex(cfg.complex)
        model = HilbertModel(X, cfg.p, _group(cfg.group), dim_cap=cfg.dim_cap)
    outdir = Path(args.out_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    U = minimal_coupling(model)
    Ubar = dual_coupling(model)
    inv = projector_inv(model)
    io.dump_operator(U.to_sparse(), outdir / "U.coo")
    io.dump_operator(Ubar.to_sparse(), outdir / "Ubar.coo")
    io.dump_operator(inv.to_sparse(), outdir / "P_inv.coo")
    checks = {
        "dual_coupling": U.distance(Ubar, inv.support),
        "unitarity": float(np.abs(np.abs(U.values()[inv.support]) ** 2 - 1).max()) if inv.support.any() else 0.0,
    }
    if cfg.cut:
        bp = _cut(model.complex, cfg.cut)
        try:
            fac = factorize(model, bp)
        except FactorizationError as exc:
            print(f"factorization refused: {exc}")
        else:
            io.dump_operator(fac.assembled(model).to_sparse(), outdir / "U_A_x_U_Ac.coo")
            checks["factorization"] = fac.residual(model, U)
    for k, v in checks.items():
        print(f"{k}: {v:.3e}")
    _emit(cfg, {"model": repr(model), "dim": model.dim, "checks": checks}, str(outdir / "operators.json"))
    for k, v in checks.items():
        if v > cfg.operator_tol:
            raise AssertionFailure(k, f"{v:.3e} > {cfg.operator_tol}")
    return EXIT_OK


def cmd_verify(cfg: RunConfig, args) -> int:
    from hfent.verify import run_verify

    rep = run_verify(cfg.seed, pairs=args.pairs, samples=args.samples, progress=None if args.quiet else print)
    _emit(cfg, {"verify": rep.to_dict(timing=args.timing)}, "hfent_verify.json")
    bad = rep.first_failure
    if bad is not None:
        raise AssertionFailure(bad.name, f"value {bad.value} (tol {bad.tol}) {bad.detail}".strip())
    print(f"all {len(rep.checks)} checks passed (seed {cfg.seed})")
    return EXIT_OK


def cmd_demo(cfg: RunConfig, args) -> int:
    """A short tour: homology, one passing and one failing cut, one sum rule."""
    from hfent.complexes import library_complex, library_cut
    from hfent.homology import homology, mv_criterion
    from hfent.models import fermion_z2_build, run_sum_rule

    Z2 = FiniteAbelianGroup((2,))
    lines = []
    for name, n in (("circle_6", 1), ("torus_delta", 1), ("sphere_tetra", 2)):
        lines.append(f"H_{n}({name}; Z2) = {homology(library_complex(name), n, Z2)}")
    for name, cut in (("circle_6", "arc"), ("circle_8", "two_arcs")):
        X = library_complex(name)
        mv = mv_criterion(library_cut(cut, X), Z2)
        lines.append(f"{name} / {cut}: criterion {'holds' if mv.holds else 'fails'}")
    X = library_complex("circle_4")
    rep = run_sum_rule(fermion_z2_build(X), library_cut("arc", X), tol=cfg.entropy_tol)
    lines.append(f"fermion-z2 on circle_4 arc: {len(rep.rows)} pairs, max |residual| {rep.max_abs_residual:.2e}")
    print("\n".join(lines))
    _emit(cfg, {"lines": lines, "sum_rule_status": rep.status}, "hfent_demo.json")
    if not rep.passed:
        raise AssertionFailure("sum_rule", rep.status)
    return EXIT_OK


COMMANDS = {
    "homology": cmd_homology,
    "mv-check": cmd_mv_check,
    "sum-rule": cmd_sum_rule,
    "operators": cmd_operators,
    "verify": cmd_verify,
    "demo": cmd_demo,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="JSON report path")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--entropy-tol", type=float, default=ENTROPY_TOL)
    common.add_argument("--operator-tol", type=float, default=OPERATOR_TOL)
    common.add_argument("--eigen-tol", type=float, default=EIGEN_TOL)
    common.add_argument("--timing", action="store_true", help="include wall-clock times in the JSON")

    ap = argparse.ArgumentParser(prog="hfent", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    h = sub.add_parser("homology", parents=[common], help="(co)homology of a complex")
    h.add_argument("--complex", required=True)
    h.add_argument("--group", default="Z2")
    h.add_argument("--dim", type=int, required=True)
    h.add_argument("--cohomology", action="store_true")

    m = sub.add_parser("mv-check", parents=[common], help="Mayer-Vietoris factorization criterion")
    m.add_argument("--complex", required=True)
    m.add_argument("--group", default="Z2")
    m.add_argument("--cut", required=True)
    m.add_argument("--expect", choices=("holds", "fails"))

    s = sub.add_parser("sum-rule", parents=[common], help="entanglement sum rule experiment")
    s.add_argument("--model", required=True, choices=("fermion-z2", "toric-stack"))
    s.add_argument("--complex", required=True)
    s.add_argument("--cut", required=True)
    s.add_argument("--params", action="append", help="K=V[,K=V...]")
    s.add_argument("--tol", type=float, help="entropy tolerance (alias of --entropy-tol)")
    s.add_argument("--max-pairs", type=int)
    s.add_argument("--csv")

    o = sub.add_parser("operators", parents=[common], help="dump U, Ubar and P_inv as sorted COO text")
    o.add_argument("--complex")
    o.add_argument("--group", default="Z2")
    o.add_argument("--p", type=int)
    o.add_argument("--model-file")
    o.add_argument("--cut")
    o.add_argument("--out-dir", default="hfent_operators")

    v = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    v.add_argument("--pairs", type=int, default=100, help="random pairs per complex, group and dimension")
    v.add_argument("--samples", type=int, default=20, help="random operators per model")
    v.add_argument("--quiet", action="store_true")

    sub.add_parser("demo", parents=[common], help="short guided tour")
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    try:
        entropy_tol = args.tol if getattr(args, "tol", None) is not None else args.entropy_tol
        cfg = RunConfig(
            command=args.command,
            complex=getattr(args, "complex", None),
            group=getattr(args, "group", "Z2"),
            p=getattr(args, "p", None) if args.command == "operators" else None,
            cut=getattr(args, "cut", None),
            model=getattr(args, "model", None),
            params=parse_params(getattr(args, "params", None)),
            entropy_tol=entropy_tol,
            operator_tol=args.operator_tol,
            eigen_tol=args.eigen_tol,
            dim_cap=dim_cap_from_env(),
            seed=args.seed,
            out=args.out,
            csv=getattr(args, "csv", None),
        )
        return COMMANDS[args.command](cfg, args)
    except (CommutationError, LeakageError) as exc:
        print(f"hfent: assertion failed: symmetric_sector: {exc}", file=sys.stderr)
        return EXIT_ASSERT
    except (UsageError, ValueError, CapabilityError) as exc:
        print(f"hfent: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionFailure as exc:
        print(f"hfent: assertion failed: {exc}", file=sys.stderr)
        return EXIT_ASSERT


if __name__ == "__main__":
    sys.exit(main())
