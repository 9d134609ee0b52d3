"""Command-line interface.

Exit codes: 0 success, 1 invalid input, 2 usage error, 3 internal failure.
Run ``sheaflab <group> <command> --help`` for the options of each command.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import acceptance, fixtures, hodge
from .complex import (
    GeometricComplex,
    SimplicialComplex,
    build_from_facets,
    complex_to_dict,
    dumps_json,
    load_complex,
    read_points_csv,
    rips_complex,
)
from .constructors import anm_sheaf, face_extension_sheaf, gnm_sheaf, tensor_extension_sheaf
from .formats import read_edge_weights_csv, read_face_vectors_csv
from .ringed import ZnRingSheaf, build_ideal_sheaf, ideal_sheaf_report, read_moduli_csv, zn_global_sections
from .sheaf import REAL, Sheaf, constant_sheaf, load_sheaf, sheaf_to_dict
from .weighted import WeightFunction, homology_table, read_weights_csv, weight_cosheaf

SHEAF_KINDS = ("constant", "gnm", "anm", "face-ext", "tensor-ext", "weight-cosheaf")
IDEAL_KINDS = ("vertex", "edge-product", "complement-prime")
FIXTURE_NAMES = tuple(n.rsplit(".", 1)[0] for n in fixtures.FIXTURES if n.endswith(".json"))


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    """Everything a command needs, gathered from argv and the environment."""

    complex_path: str | None = None
    points_path: str | None = None
    fixture: str | None = None
    sheaf_path: str | None = None
    edge_weights_path: str | None = None
    normals_path: str | None = None
    face_vectors_path: str | None = None
    weights_path: str | None = None
    moduli_path: str | None = None
    kind: str | None = None
    lam: Fraction = Fraction(1)
    gamma: float = 1.0
    epsilon: float | None = None
    max_dim: int | None = None
    stalk_dim: int | None = None
    rank_tol: float | None = None
    field: str = REAL
    mode: str = hodge.FLOAT
    out: str | None = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        cfg = cls(**{k: v for k, v in vars(args).items() if k in cls.__dataclass_fields__ and v is not None})
        env = os.environ.get("SHEAFLAB_RANK_TOL")
        if env:
            try:
                cfg.rank_tol = float(env)
            except ValueError:
                raise InputError(f"SHEAFLAB_RANK_TOL={env!r} is not a number") from None
        sources = [s for s in (cfg.complex_path, cfg.points_path, cfg.fixture) if s]
        if len(sources) > 1:
            raise InputError("give exactly one of --complex, --points, --fixture")
        if cfg.points_path and cfg.epsilon is None:
            raise InputError("--points needs --epsilon")
        if cfg.epsilon is not None and not cfg.epsilon > 0:
            raise InputError("--epsilon must be positive")
        return cfg

    def has_complex(self) -> bool:
        return bool(self.complex_path or self.points_path or self.fixture)

    def load_complex(self) -> SimplicialComplex | GeometricComplex:
        if self.complex_path:
            return load_complex(self.complex_path)
        if self.fixture:
            return load_complex(fixtures.fixture_path(self.fixture + ".json"))
        if self.points_path:
            pts = read_points_csv(self.points_path, exact=self.field != REAL)
            max_dim = self.max_dim
            if max_dim is None:
                max_dim = 1 if self.kind in ("gnm", "anm") else 2
            return rips_complex(pts, self.epsilon, max_dim)
        raise InputError("no complex given; use --complex, --points or --fixture")


def _plain(K) -> SimplicialComplex:
    return K.complex if isinstance(K, GeometricComplex) else K


def _coords(K):
    return K.coords if isinstance(K, GeometricComplex) else None


def build_sheaf(cfg: RunConfig) -> tuple[Sheaf, object]:
    """The sheaf described by ``cfg`` plus the coordinates to store with it."""
    if cfg.sheaf_path:
        return load_sheaf(cfg.sheaf_path), None
    K = cfg.load_complex()
    kind = cfg.kind or "constant"
    w = read_edge_weights_csv(cfg.edge_weights_path) if cfg.edge_weights_path else None
    normals = read_face_vectors_csv(cfg.normals_path) if cfg.normals_path else "auto"
    if kind == "constant":
        F = constant_sheaf(_plain(K), cfg.stalk_dim or 1, cfg.field)
    elif kind == "gnm":
        F = gnm_sheaf(K, cfg.lam, cfg.stalk_dim or 3, cfg.field)
    elif kind == "anm":
        F = anm_sheaf(_geometric(K, kind), cfg.gamma)
    elif kind == "face-ext":
        F = face_extension_sheaf(_geometric(K, kind), w, normals, cfg.field)
    elif kind == "tensor-ext":
        fv = read_face_vectors_csv(cfg.face_vectors_path) if cfg.face_vectors_path else None
        F = tensor_extension_sheaf(_geometric(K, kind), w, fv, normals, cfg.field)
    elif kind == "weight-cosheaf":
        wt = read_weights_csv(cfg.weights_path) if cfg.weights_path else WeightFunction.constant(_plain(K))
        F = weight_cosheaf(_plain(K), wt)
    else:
        raise InputError(f"unknown sheaf kind {kind!r}")
    return F, _coords(K)


def _geometric(K, kind: str) -> GeometricComplex:
    if not isinstance(K, GeometricComplex):
        raise InputError(f"--kind {kind} needs vertex coordinates (a complex JSON with coords, or --points)")
    return K


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# -- command handlers ------------------------------------------------------


def cmd_complex_build(args, cfg: RunConfig) -> int:
    K = cfg.load_complex()
    _emit(dumps_json(complex_to_dict(_plain(K), _coords(K))), cfg.out)
    return 0


def cmd_sheaf_build(args, cfg: RunConfig) -> int:
    F, coords = build_sheaf(cfg)
    _emit(dumps_json(sheaf_to_dict(F, coords)), cfg.out)
    return 0


def cmd_sheaf_validate(args, cfg: RunConfig) -> int:
    F, _ = build_sheaf(cfg)
    report = {
        "valid": F.is_valid,
        "violations": [
            {"source": list(v.source), "target": list(v.target),
             "via": [list(t) for t in v.via], "discrepancy": hodge.format_float(v.discrepancy)}
            for v in F.violations
        ],
    }
    _emit(dumps_json(report), cfg.out)
    return 0 if F.is_valid else 1


def _write_matrix(M, fmt: str, out: str | None) -> None:
    if fmt == "mtx":
        if not out:
            raise InputError("--format mtx needs --out (exact matrices also get a .json sidecar)")
        hodge.write_matrix_market(out, M)
    else:
        _emit(hodge.matrix_to_csv(M), out)


def cmd_hodge(args, cfg: RunConfig) -> int:
    F, _ = build_sheaf(cfg)
    K = F.complex
    what = args.hodge_cmd
    if what == "coboundary":
        _write_matrix(hodge.coboundary_matrix(F, _need_q(args)), args.format, cfg.out)
    elif what == "laplacian":
        _write_matrix(hodge.hodge_laplacian(F, _need_q(args), args.part), args.format, cfg.out)
    elif what == "spectrum":
        L = hodge.hodge_laplacian(F, _need_q(args), args.part)
        _emit(hodge.spectrum_to_text(hodge.spectrum(L)), cfg.out)
    elif what == "betti":
        qs = [args.q] if args.q is not None else range(K.dim + 1)
        dims = [hodge.cohomology_dimension(F, q, cfg.mode, cfg.rank_tol) for q in qs]
        if args.q is not None:
            text = f"{dims[0]}\n"
        else:
            text = "".join(f"{q} {d}\n" for q, d in zip(qs, dims))
        _emit(text, cfg.out)
    elif what == "sections":
        _write_matrix(hodge.global_sections(F, cfg.mode, cfg.rank_tol), args.format, cfg.out)
    return 0


def _need_q(args) -> int:
    if args.q is None:
        raise InputError("--q is required")
    return args.q


def cmd_weighted_homology(args, cfg: RunConfig) -> int:
    K = _plain(cfg.load_complex())
    w = read_weights_csv(cfg.weights_path) if cfg.weights_path else WeightFunction.constant(K)
    rows = homology_table(K, w, args.coeff)
    lines = ["q,rank,torsion"] + [f"{q},{r},{' '.join(map(str, t))}" for q, r, t in rows]
    _emit("\n".join(lines) + "\n", cfg.out)
    return 0


def cmd_ringed_ideal(args, cfg: RunConfig) -> int:
    K = _plain(cfg.load_complex())
    A = build_ideal_sheaf(K, args.kind)
    _emit(dumps_json(ideal_sheaf_report(A)), cfg.out)
    return 0


def cmd_ringed_sections(args, cfg: RunConfig) -> int:
    if not cfg.moduli_path:
        raise InputError("--moduli is required")
    moduli = read_moduli_csv(cfg.moduli_path)
    if cfg.has_complex():
        K = _plain(cfg.load_complex())
    else:
        n = max((v for s in moduli for v in s), default=0)
        if n < 1:
            raise InputError(f"{cfg.moduli_path}: no simplices")
        K = build_from_facets(n, moduli)
    S = ZnRingSheaf(K, moduli)
    gs = zn_global_sections(S, args.limit)
    _emit(dumps_json(gs.to_dict()), cfg.out)
    return 0


def cmd_verify(args, cfg: RunConfig) -> int:
    names = args.only or list(acceptance.CRITERIA)
    unknown = [n for n in names if n not in acceptance.CRITERIA]
    if unknown:
        raise InputError(f"unknown criteria {unknown}; choose from {list(acceptance.CRITERIA)}")
    checks = [lambda: acceptance.complex_checks(cfg.load_complex())] if cfg.has_complex() else []
    checks += [lambda n=n: acceptance.CRITERIA[n](args.seed) for n in names]
    results = []
    for run in checks:
        r = run()
        results.append(r)
        if not args.quiet:
            print(r.line(), flush=True)
    ok = all(r.passed for r in results)
    print(f"{'ALL PASS' if ok else 'FAILURES'}: {sum(r.passed for r in results)}/{len(results)}")
    if cfg.out:
        Path(cfg.out).write_text(acceptance.format_table(results))
    return 0 if ok else 1


# -- parser ----------------------------------------------------------------


def _add_complex_source(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("complex source (give one)")
    g.add_argument("--complex", "--facets", dest="complex_path", metavar="JSON",
                   help="complex JSON: {n_vertices, facets[, coords]}")
    g.add_argument("--points", dest="points_path", metavar="CSV", help="point cloud, one row per vertex")
    g.add_argument("--fixture", choices=FIXTURE_NAMES, help="bundled complex")
    g.add_argument("--epsilon", type=float, help="Rips threshold for --points (inclusive)")
    g.add_argument("--max-dim", dest="max_dim", type=int, help="largest simplex dimension for --points (default 2, or 1 for gnm/anm)")


def _add_sheaf_options(p: argparse.ArgumentParser, with_file: bool = True) -> None:
    if with_file:
        p.add_argument("--sheaf", dest="sheaf_path", metavar="JSON", help="sheaf JSON instead of building one")
    _add_complex_source(p)
    g = p.add_argument_group("sheaf construction")
    g.add_argument("--kind", choices=SHEAF_KINDS, help="default: constant")
    g.add_argument("--field", choices=("real", "rational"))
    g.add_argument("--dim", dest="stalk_dim", type=int, help="stalk dimension (constant, gnm)")
    g.add_argument("--lambda", dest="lam", type=Fraction, help="gnm scale, decimal or p/q")
    g.add_argument("--gamma", type=float, help="ANM spring constant")
    g.add_argument("--edge-weights", dest="edge_weights_path", metavar="CSV", help="rows i,j,w")
    g.add_argument("--normals", dest="normals_path", metavar="CSV", help="rows i,j,k,vx,vy,vz; default auto")
    g.add_argument("--face-vectors", dest="face_vectors_path", metavar="CSV",
                   help="rows i,j,k,wx,wy,wz (tensor-ext)")
    g.add_argument("--weights", dest="weights_path", metavar="CSV",
                   help="simplex weights, rows dim,v0..vdim,w (weight-cosheaf)")


def _add_out(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", "-o", help="output file (default stdout)")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sheaflab", description="Cellular sheaf toolkit")
    groups = parser.add_subparsers(dest="group", required=True)

    cx = groups.add_parser("complex", help="simplicial complexes").add_subparsers(dest="cmd", required=True)
    p = cx.add_parser("build", help="facets JSON or point cloud to canonical complex JSON")
    _add_complex_source(p)
    p.add_argument("--field", choices=("real", "rational"), help="rational keeps CSV coordinates exact")
    _add_out(p)
    p.set_defaults(func=cmd_complex_build)

    sh = groups.add_parser("sheaf", help="build or validate sheaves").add_subparsers(dest="cmd", required=True)
    p = sh.add_parser("build", help="construct a sheaf and write its JSON")
    _add_sheaf_options(p, with_file=False)
    _add_out(p)
    p.set_defaults(func=cmd_sheaf_build)
    p = sh.add_parser("validate", help="check the composition axiom; exit 1 if violated")
    _add_sheaf_options(p)
    _add_out(p)
    p.set_defaults(func=cmd_sheaf_validate)

    hg = groups.add_parser("hodge", help="coboundaries, Laplacians, cohomology")
    hs = hg.add_subparsers(dest="hodge_cmd", required=True)
    for name, help_ in (("coboundary", "coboundary matrix C^q"), ("laplacian", "Hodge Laplacian"),
                        ("betti", "cohomology dimensions"), ("sections", "global-section basis"),
                        ("spectrum", "Laplacian eigenvalues")):
        p = hs.add_parser(name, help=help_)
        _add_sheaf_options(p)
        p.add_argument("--q", type=int, help="degree")
        p.add_argument("--part", choices=("up", "down", "full"), default="full")
        p.add_argument("--mode", choices=(hodge.FLOAT, hodge.EXACT), help="rank computation")
        p.add_argument("--rank-tol", dest="rank_tol", type=float,
                       help="relative singular-value threshold (SHEAFLAB_RANK_TOL overrides)")
        p.add_argument("--format", choices=("csv", "mtx"), default="csv")
        _add_out(p)
        p.set_defaults(func=cmd_hodge)

    wg = groups.add_parser("weighted", help="weighted simplicial homology").add_subparsers(dest="cmd", required=True)
    p = wg.add_parser("homology", help="table of q, rank, torsion")
    _add_complex_source(p)
    p.add_argument("--weights", dest="weights_path", metavar="CSV", help="rows dim,v0..vdim,w; default all 1")
    p.add_argument("--coeff", choices=("Q", "Z"), default="Z")
    _add_out(p)
    p.set_defaults(func=cmd_weighted_homology)

    rg = groups.add_parser("ringed", help="ideal and Z/n ring sheaves").add_subparsers(dest="cmd", required=True)
    p = rg.add_parser("ideal-sheaf", help="containment report for a monomial-ideal assignment")
    _add_complex_source(p)
    p.add_argument("--kind", choices=IDEAL_KINDS, required=True)
    _add_out(p)
    p.set_defaults(func=cmd_ringed_ideal)
    p = rg.add_parser("global-sections", help="enumerate the global sections of a Z/n sheaf")
    _add_complex_source(p)
    p.add_argument("--moduli", dest="moduli_path", metavar="CSV", help="rows dim,v0..vdim,n")
    p.add_argument("--limit", type=int, default=10**7, help="bound on the product of vertex moduli")
    _add_out(p)
    p.set_defaults(func=cmd_ringed_sections)

    vg = groups.add_parser("verify", help="acceptance suite").add_subparsers(dest="cmd", required=True)
    p = vg.add_parser("all", help="run A1-A10 and print a PASS/FAIL table")
    _add_complex_source(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--only", nargs="+", metavar="AN", help="subset of criteria, e.g. A1 A10")
    p.add_argument("--quiet", action="store_true", help="print only the summary line")
    _add_out(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = RunConfig.from_args(args)
        return args.func(args, cfg)
    except (InputError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"sheaflab: error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001
        print(f"sheaflab: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
