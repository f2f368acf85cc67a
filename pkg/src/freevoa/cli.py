"""Command-line front end.

Exit codes: 0 success or verified, 1 a verification returned false,
2 input or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .algebra import FreeAlgebra
from .commutant import (
    DiagonalAction,
    extract_unit,
    generator_set,
    graded_commutant_basis,
    invariance_defects,
    quantum_correct,
)
from .expr import ParseError, format_state, parse_poly, parse_state, parse_weyl
from .fields import central_charge_alpha, virasoro_alpha
from .linalg import ActionMatrix
from .ope import ModeCalculus, ope_singular, virasoro_defects
from .scalar import Scalar, format_scalar, parse_scalar
from .transvect import star_extract_unit, star_k, star_k_weyl, transvectant
from .w3 import build_bc_LW, build_heis_LW, build_LS_WS, w3_defects
from .zhu import cokernel_probe, zhu_image

__all__ = ["main", "run", "build_parser"]

OK, FALSE, INPUT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


# -- configuration ---------------------------------------------------------

def _scalar_list(text):
    try:
        return [parse_scalar(t.strip()) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad scalar list {text!r}: {exc}") from None


def _load_json(path):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}") from None


class Config:
    """Algebra, optional action, alpha and lambda resolved from the flags."""

    def __init__(self, args):
        self.format = getattr(args, "format", "text")
        rows = None
        if getattr(args, "action", None):
            obj = _load_json(args.action)
            try:
                rows = ActionMatrix.from_json(obj).rows
            except (KeyError, TypeError, ValueError) as exc:
                raise InputError(f"{args.action}: bad action file ({exc})") from None
        elif getattr(args, "rho", None):
            rows = [_scalar_list(r) for r in args.rho.split(";")]
        self.algebra = None
        if getattr(args, "algebra", None):
            try:
                self.algebra = FreeAlgebra.from_json(_load_json(args.algebra))
            except (KeyError, TypeError, ValueError) as exc:
                raise InputError(f"{args.algebra}: bad algebra file ({exc})") from None
        self._rows = rows
        self._action = None
        self.alpha = _scalar_list(args.alpha) if getattr(args, "alpha", None) else None
        self.lam = _scalar_list(args.lam) if getattr(args, "lam", None) else None

    @property
    def action(self) -> DiagonalAction:
        if self._action is None:
            rows = self._rows if self._rows is not None else [[1]]
            try:
                self._action = DiagonalAction(rows, self.algebra)
            except ValueError as exc:
                raise InputError(str(exc)) from None
        return self._action

    @property
    def explicit_action(self):
        return self.action if self._rows is not None else None

    @property
    def alg(self) -> FreeAlgebra:
        if self.algebra is not None:
            return self.algebra
        return self.action.algebra

    def alpha_for(self, n):
        if self.alpha is None:
            return [Fraction(1, 2)] * n
        if len(self.alpha) != n:
            raise InputError(f"--alpha needs {n} entries, got {len(self.alpha)}")
        return self.alpha

    def state(self, text):
        act = self.action if self.alg.is_pure_bg() and self.alg.bg_pairs else None
        return parse_state(text, self.alg, act, self.alpha)


# -- output ----------------------------------------------------------------

def _emit(cfg, text_lines, obj):
    if cfg.format == "json":
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _scalar_json(s):
    return Scalar(s).to_json() if not isinstance(s, Scalar) else s.to_json()


# -- subcommands -----------------------------------------------------------

def cmd_ope(args, cfg):
    u, v = cfg.state(args.a), cfg.state(args.b)
    table = ope_singular(u, v)
    lines = [f"o_{n}: {format_state(s)}" for n, s in table] or ["regular (no singular part)"]
    _emit(cfg, lines, {"ope": [{"n": n, "state": s.to_json(), "text": format_state(s)} for n, s in table]})
    return OK


def cmd_nprod(args, cfg):
    u, v = cfg.state(args.a), cfg.state(args.b)
    r = ModeCalculus(cfg.alg).product(u, v, args.n)
    _emit(cfg, [format_state(r)], {"n": args.n, "state": r.to_json(), "text": format_state(r)})
    return OK


def _realization(cfg, name):
    if name == "bg":
        alg = cfg.algebra if cfg.algebra is not None else FreeAlgebra(1)
        if alg.bg_pairs < 1:
            raise InputError("the betagamma realization needs a betagamma pair")
        return alg, build_LS_WS(alg, 1)
    if name == "heis":
        alg = cfg.algebra if cfg.algebra is not None else FreeAlgebra(0, 0, (Scalar(1),))
        return alg, build_heis_LW(alg, 1)
    alg = cfg.algebra if cfg.algebra is not None else FreeAlgebra(0, 1)
    return alg, build_bc_LW(alg, 1)


def cmd_check(args, cfg):
    if args.what == "w3":
        alg, (L, W) = _realization(cfg, args.realization)
        defects = w3_defects(L, W, ModeCalculus(alg))
        label = f"W3 OPE ({args.realization})"
    else:
        if args.realization == "bg" and args.expr is None:
            alg = cfg.algebra if cfg.algebra is not None else FreeAlgebra(1)
            alpha = cfg.alpha_for(alg.bg_pairs)
            L = virasoro_alpha(alg, alpha)
            c = central_charge_alpha(alpha)
        elif args.expr is not None:
            alg = cfg.alg
            L = cfg.state(args.expr)
            c = parse_scalar(args.c) if args.c else None
            if c is None:
                raise InputError("--c is required with --expr")
        else:
            alg, (L, _) = _realization(cfg, args.realization)
            c = Scalar(-2)
        defects = virasoro_defects(L, c, ModeCalculus(alg))
        label = f"Virasoro OPE at c = {format_scalar(Scalar(c) if not isinstance(c, Scalar) else c)}"
    ok = not defects
    _emit(cfg, [f"{label}: {'verified' if ok else 'FAILED'}"] + [f"  {d}" for d in defects],
          {"check": args.what, "verified": ok, "defects": defects})
    return OK if ok else FALSE


def cmd_commutant(args, cfg):
    act = cfg.action
    if args.what == "gens":
        gens = generator_set(act)
        _emit(cfg, [f"{k}: {format_state(u)}" for k, u in gens.items()],
              {"generators": [{"name": k, "state": u.to_json(), "text": format_state(u)} for k, u in gens.items()]})
        return OK
    if args.weight is None:
        raise InputError("commutant basis needs --weight")
    w = Fraction(str(args.weight))
    basis = graded_commutant_basis(act, w, args.charge)
    lines = [f"dimension {len(basis)} at weight {w}, charge {args.charge}"] + [format_state(u) for u in basis]
    _emit(cfg, lines, {"weight": str(w), "charge": args.charge, "dimension": len(basis),
                       "basis": [{"state": u.to_json(), "text": format_state(u)} for u in basis]})
    return OK


def cmd_invariant(args, cfg):
    u = cfg.state(args.expr)
    defects = invariance_defects(u, cfg.action)
    if not defects:
        _emit(cfg, ["invariant"], {"invariant": True, "defects": []})
        return OK
    top = max(n for _, n in defects)
    lines = [f"fails at pole order {top}"] + [f"  theta[{i}] o_{n} u != 0" for i, n in defects]
    _emit(cfg, lines, {"invariant": False, "defects": [{"theta": i, "n": n} for i, n in defects]})
    return FALSE


def cmd_quantum_correct(args, cfg):
    r = quantum_correct(cfg.action, args.power)
    _emit(cfg, [format_state(r)], {"power": args.power, "state": r.to_json(), "text": format_state(r)})
    return OK


def cmd_zhu(args, cfg):
    u = cfg.state(args.expr)
    alg = u.algebra
    w = zhu_image(u, cfg.alpha_for(alg.bg_pairs))
    p = w.to_euler_poly()
    lines = [str(w)] + ([f"= {p} (in the Euler operators)"] if p is not None else [])
    _emit(cfg, lines, {"weyl": w.to_json(), "text": str(w), "euler": p.to_json() if p is not None else None})
    return OK


def cmd_cokernel(args, cfg):
    act = cfg.action
    r = cokernel_probe(act, cfg.alpha_for(act.n), args.degree)
    reps = [str(p) for p in r["representative_polys"]]
    lines = [f"codim {r['codim']} in E_<={args.degree} (dim {r['dim_E']})",
             "representatives: " + (", ".join(reps) if reps else "none"),
             f"theta images cover E_<={args.degree}: {'yes' if r['theta_covers'] else 'no'}"]
    _emit(cfg, lines, {"codim": r["codim"], "dim_E": r["dim_E"], "representatives": reps,
                       "theta_covers": r["theta_covers"]})
    return OK


def cmd_star(args, cfg):
    if args.side == "vertex":
        r = star_k(cfg.state(args.a), cfg.state(args.b), args.k)
        _emit(cfg, [format_state(r)], {"state": r.to_json(), "text": format_state(r)})
    else:
        n = cfg.alg.bg_pairs or 1
        r = star_k_weyl(parse_weyl(args.a, n), parse_weyl(args.b, n), args.k)
        _emit(cfg, [str(r)], {"weyl": r.to_json(), "text": str(r)})
    return OK


def cmd_transvect(args, cfg):
    n = cfg.alg.bg_pairs or 1
    r = transvectant(parse_poly(args.p, n), parse_poly(args.q, n), args.k)
    _emit(cfg, [str(r)], {"poly": r.to_json(), "text": str(r)})
    return OK


def cmd_extract_unit(args, cfg):
    act = cfg.explicit_action
    if args.side == "weyl":
        n = cfg.alg.bg_pairs or 1
        l, d, c = star_extract_unit(act, parse_weyl(args.expr, n))
    else:
        l, d, c = extract_unit(cfg.state(args.expr), act)
    lines = [f"l = {l}, d = {d}, c = {format_scalar(c)}"]
    _emit(cfg, lines, {"l": list(l), "d": d, "c": c.to_json()})
    return OK


def cmd_selftest(args, cfg):
    from .acceptance import run_all

    results = run_all()
    ok = all(r.passed for r in results)
    if args.json or cfg.format == "json":
        print(json.dumps({"passed": ok, "checks": [
            {"id": r.id, "title": r.title, "passed": r.passed, "detail": r.detail} for r in results]},
            indent=2))
    else:
        for r in results:
            print(r.line())
        print(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    return OK if ok else FALSE


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", help="algebra description (JSON file)")
    common.add_argument("--action", help="action matrix JSON file")
    common.add_argument("--rho", help='inline action rows, e.g. "1,-1" or "1,0;0,1"')
    common.add_argument("--alpha", help="comma-separated conformal weights of the betas")
    common.add_argument("--lambda", dest="lam", help="comma-separated lambda values")
    common.add_argument("--format", choices=("text", "json"), default="text")

    p = argparse.ArgumentParser(prog="freevoa", description="Exact free-field vertex algebra calculator.",
                                parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("ope", parents=[common], help="singular OPE table of A(z)B(w)")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_ope)

    s = sub.add_parser("nprod", parents=[common], help="circle product A o_n B")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("n", type=int)
    s.set_defaults(func=cmd_nprod)

    s = sub.add_parser("check", parents=[common], help="verify Virasoro or W3 OPEs")
    s.add_argument("what", choices=("virasoro", "w3"))
    s.add_argument("--realization", choices=("bg", "heis", "bc"), default="bg")
    s.add_argument("--expr", help="check this state instead of a built-in field")
    s.add_argument("--c", help="central charge for --expr")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("commutant", parents=[common], help="generators or graded bases of the invariants")
    s.add_argument("what", choices=("gens", "basis"))
    s.add_argument("--weight", help="internal weight (multiple of 1/2)")
    s.add_argument("--charge", type=int, default=0)
    s.set_defaults(func=cmd_commutant)

    s = sub.add_parser("invariant", parents=[common], help="test invariance under the action")
    s.add_argument("expr")
    s.set_defaults(func=cmd_invariant)

    s = sub.add_parser("quantum-correct", parents=[common], help="invariant completion of :theta^N:")
    s.add_argument("power", type=int)
    s.set_defaults(func=cmd_quantum_correct)

    s = sub.add_parser("zhu", parents=[common], help="Zhu image in the Weyl algebra")
    s.add_argument("expr")
    s.set_defaults(func=cmd_zhu)

    s = sub.add_parser("cokernel", parents=[common], help="compare E_<=D with the Zhu image")
    s.add_argument("--degree", type=int, default=3)
    s.set_defaults(func=cmd_cokernel)

    s = sub.add_parser("star", parents=[common], help="*_k product of level-zero elements")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--side", choices=("vertex", "weyl"), default="vertex")
    s.set_defaults(func=cmd_star)

    s = sub.add_parser("transvect", parents=[common], help="transvectant [P, Q]_k")
    s.add_argument("p")
    s.add_argument("q")
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_transvect)

    s = sub.add_parser("extract-unit", parents=[common], help="recover the unit from sum c_l omega_l")
    s.add_argument("expr")
    s.add_argument("--side", choices=("vertex", "weyl"), default="vertex")
    s.set_defaults(func=cmd_extract_unit)

    s = sub.add_parser("selftest", parents=[common], help="run the acceptance checks")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_selftest)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and INPUT_ERROR
    try:
        cfg = Config(args)
        return args.func(args, cfg)
    except (InputError, ParseError, ValueError, IndexError, KeyError, ZeroDivisionError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"freevoa {args.command}: error: {msg}", file=sys.stderr)
        return INPUT_ERROR


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
