"""Command line front end.  Standard output carries JSON only; summaries go to standard error."""

import argparse
import sys
import time
from math import sqrt

import numpy as np

from . import config, formats
from . import state_library as lib
from .entanglement_measures import gme
from .errors import ArgumentError, BudgetError, EntanglibError
from .hermitian_tensors import HermitianTensor
from .optim_engine import NETS, nuclear_norm, spectral_norm
from .sym_poly import monomials
from .separability import (real_strong_separability_sym, separability_via_nuclear, spec_floor_check,
                           strong_separability_bisym)

METHODS = ("product", "bisym", "realsym")


def _epsilon(text):
    v = float(text)
    if not 0 < v < 1:
        raise argparse.ArgumentTypeError("epsilon must lie in (0, 1)")
    return v


def _common(p, epsilon=0.3):
    p.add_argument("--epsilon", type=_epsilon, default=epsilon, help="target relative bracket width")
    p.add_argument("--m", type=int, default=None, help="grid resolution override")
    p.add_argument("--budget", type=int, default=None, help="grid point budget (default ENTANGLIB_BUDGET or 1e8)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--net", choices=NETS, default="auto")
    p.add_argument("--field", choices=("real", "complex"), default=None)
    p.add_argument("--in", dest="inp", default="-", help="input JSON path ('-' for stdin)")
    p.add_argument("--out", default="-", help="output JSON path ('-' for stdout)")


def build_parser():
    ap = argparse.ArgumentParser(prog="entanglib", description="Certified tensor norms and entanglement checks.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("norm", help="spectral or nuclear norm bracket of a tensor")
    _common(p)
    p.add_argument("--kind", choices=("spectral", "nuclear", "spec", "bspec", "nuc", "bnuc"), default="spectral")

    p = sub.add_parser("gme", help="entanglement report of a unit state")
    _common(p)
    p.add_argument("--nuclear", action="store_true", help="also bracket the nuclear energy")

    p = sub.add_parser("sep-check", help="separability verdict for a density")
    _common(p)
    p.add_argument("--method", choices=METHODS, default="product")
    p.add_argument("--eps-decision", type=float, default=None)
    p.add_argument("--floor", action="store_true", help="also run the spectral floor check")

    p = sub.add_parser("states", help="list or emit library states")
    ssub = p.add_subparsers(dest="action", required=True)
    q = ssub.add_parser("list")
    q.add_argument("--out", default="-")
    q = ssub.add_parser("emit")
    q.add_argument("label")
    q.add_argument("--out", default="-")

    p = sub.add_parser("clique", help="Motzkin-Straus clique tensor norm")
    _common(p)
    p.add_argument("--graph", required=True, help="graph JSON path")
    p.add_argument("--power", type=int, default=1)
    p.add_argument("--kappa", type=int, default=None, help="clique number, for the comparison")

    p = sub.add_parser("selftest", help="run the built-in oracle checks")
    p.add_argument("--out", default="-")
    p.add_argument("--seed", type=int, default=0)
    return ap


def _say(msg):
    print(msg, file=sys.stderr)


def _cmd_norm(a):
    T = formats.tensor_from_json(formats.read_json(a.inp))
    kind = {"spectral": "spec", "nuclear": "nuc"}.get(a.kind, a.kind)
    kw = {}
    if isinstance(T, HermitianTensor):
        kw["norm"] = kind
    elif kind in ("bspec", "bnuc"):
        raise ArgumentError("bspec and bnuc need a Hermitian input")
    if kind in ("spec", "bspec"):
        est = spectral_norm(T, a.epsilon, m=a.m, net=a.net, budget=a.budget, field=a.field, **kw)
    else:
        est, _ = nuclear_norm(T, a.epsilon, m=a.m, net=a.net, budget=a.budget, field=a.field, **kw)
    _say(f"{est.norm} in [{est.lower:.8g}, {est.upper:.8g}]")
    return est.to_json(), est


def _cmd_gme(a):
    T = formats.tensor_from_json(formats.read_json(a.inp))
    rep = gme(T, a.epsilon, m=a.m, budget=a.budget, field=a.field, nuclear=a.nuclear, net=a.net)
    _say(f"gme in [{rep.gme_bracket[0]:.6g}, {rep.gme_bracket[1]:.6g}]")
    return rep.to_json(), None


def _cmd_sep(a):
    R = formats.density_from_json(formats.read_json(a.inp))
    if a.method == "product":
        v = separability_via_nuclear(R, a.epsilon, a.eps_decision, budget=a.budget)
    elif a.method == "bisym":
        v = strong_separability_bisym(R, a.epsilon, a.m, a.eps_decision, budget=a.budget)
    else:
        v = real_strong_separability_sym(R, a.epsilon, a.m, a.eps_decision, budget=a.budget)
    out = v.to_json()
    if a.floor:
        ok, est, floor = spec_floor_check(R, a.epsilon, budget=a.budget)
        out["spec_floor"] = {"holds": ok, "floor": floor, "spectral": est.to_json()}
    _say(f"{v.status} (nuclear bracket {v.nuclear_bracket}, ppt {v.ppt})")
    return out, None


def _cmd_states(a):
    if a.action == "list":
        out = []
        for label in lib.list_states():
            s = lib.get_state(label)
            out.append({"label": label, "provenance": s.provenance, "known_spectral": s.spectral_value,
                        "known_nuclear": s.nuclear_value})
        return out, None
    return lib.get_state(a.label).to_json(), None


def _cmd_clique(a):
    A = formats.graph_from_json(formats.read_json(a.graph))
    st = lib.clique_tensor(A, a.power, a.kappa)
    est = spectral_norm(st.tensor, a.epsilon, m=a.m, net=a.net, budget=a.budget, field="real")
    out = {"graph_order": int(A.shape[0]), "power": a.power, "bracket": est.to_json()}
    if a.kappa is not None:
        target = (1.0 - 1.0 / a.kappa) ** a.power
        out["motzkin_straus"] = {"kappa": a.kappa, "value": target, "contained": est.contains(target, 1e-9)}
    _say(f"spectral in [{est.lower:.6g}, {est.upper:.6g}]")
    return out, None


def selftest_checks():
    """(name, callable returning (ok, detail)) pairs; all run in a few seconds."""
    def w_spectral():
        est = spectral_norm(lib.w_state().tensor, 0.3, m=9, net="bloch")
        return est.contains(2 / 3) and abs(est.lower - 2 / 3) < 1e-6, [est.lower, est.upper]

    def w_zeta():
        terms = lib.w_zeta_decomposition()
        S = sum(w * monomials(np.asarray(v), 3) for w, v in terms)
        err = float(np.max(np.abs(S - lib.w_state().tensor.coeffs)))
        total = float(sum(w for w, _ in terms))
        return err < 1e-12 and abs(total - 1.5) < 1e-12, [err, total]

    def t3_spectral():
        est = spectral_norm(lib.t_lambda(3).tensor.with_field("complex"), 0.3, m=9, net="bloch")
        return est.contains(1 / sqrt(2)) and abs(est.lower - 1 / sqrt(2)) < 1e-8, [est.lower, est.upper]

    def bell_matrix():
        est = spectral_norm(lib.bipartite_max_entangled(2, 2).tensor, 0.3)
        nuc, _ = nuclear_norm(lib.bipartite_max_entangled(2, 2).tensor, 0.3)
        return est.contains(1 / sqrt(2)) and nuc.contains(sqrt(2)), [est.lower, nuc.upper]

    def identity_separable():
        v = separability_via_nuclear(HermitianTensor((2, 2), np.eye(4) / 4))
        return v.status == "separable" and len(v.certificate) <= 17, [v.status, len(v.certificate or [])]

    def k3_clique():
        est = spectral_norm(lib.clique_tensor(lib.complete_graph(3), 1).tensor, 0.3, field="real")
        return est.contains(2 / 3) and abs(est.lower - 2 / 3) < 1e-6, [est.lower, est.upper]

    def isotropic():
        v = float(lib.sphere_moment((4, 0)))
        return abs(v - 0.375) < 1e-15, [v]

    def wedge_density():
        from .antisym_tensors import wedge_pure_density
        R = wedge_pure_density(np.eye(3)[0], np.eye(3)[1])
        est = spectral_norm(R, 0.3, norm="spec")
        return est.contains(0.5, 1e-6), [est.lower, est.upper]

    return [("w_spectral", w_spectral), ("w_zeta_decomposition", w_zeta), ("t3_spectral", t3_spectral),
            ("bell_matrix", bell_matrix), ("identity_separable", identity_separable), ("k3_clique", k3_clique),
            ("isotropic_moment", isotropic), ("wedge_density", wedge_density)]


def _cmd_selftest(a):
    rows, ok_all = [], True
    for name, fn in selftest_checks():
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except EntanglibError as exc:
            ok, detail = False, [str(exc)]
        dt = time.perf_counter() - t0
        ok_all &= bool(ok)
        rows.append({"check": name, "pass": bool(ok), "detail": detail, "seconds": round(dt, 3)})
        _say(f"{'PASS' if ok else 'FAIL'}  {name:<24} {dt:6.2f}s")
    return {"passed": ok_all, "checks": rows}, None


COMMANDS = {"norm": _cmd_norm, "gme": _cmd_gme, "sep-check": _cmd_sep, "states": _cmd_states,
            "clique": _cmd_clique, "selftest": _cmd_selftest}


def main(argv=None):
    a = build_parser().parse_args(argv)
    if getattr(a, "threads", None):
        config.set_threads(a.threads)
    np.random.seed(a.seed if getattr(a, "seed", None) is not None else 0)
    try:
        out, _ = COMMANDS[a.command](a)
    except BudgetError as exc:
        print(formats.dumps(exc.to_dict()), file=sys.stderr)
        return 2
    except EntanglibError as exc:
        print(formats.dumps(exc.to_dict()), file=sys.stderr)
        return 1
    formats.write_json(out, getattr(a, "out", "-"))
    if a.command == "selftest" and not out["passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
