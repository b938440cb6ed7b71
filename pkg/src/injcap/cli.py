"""Command-line front end: ``injcap COMMAND WORKSPACE [flags]``.

Exit status: 0 success, 1 mathematical negative (no injection, local target
unmet, oracle mismatch, map not injective), 2 input error, 3 budget or
hypothesis failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Any, Dict, List, Optional

from . import artinian as A
from . import graded as G
from . import oracle as O
from . import pid as D
from . import poly as P
from . import synthesis as S
from . import workspace as W
from .errors import InjcapError, InputError

REPORT_SCHEMA = "injcap-report"
REPORT_VERSION = 1

COMMANDS = ("validate", "decompose", "ass", "socle", "hom-basis", "inj", "cog", "has-injection",
            "synthesize-row", "synthesize-column", "synthesize-graded", "check-injective", "oracle")


class Negative(Exception):
    """A well-posed question whose answer is no; carries the partial result."""

    def __init__(self, message: str, result: dict):
        super().__init__(message)
        self.result = result


def jsonable(x):
    """Infinities become the string "inf"; tuples become lists."""
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return x


def _plain(M):
    return M.module if isinstance(M, G.GradedModule) else M


class Context:
    def __init__(self, ws: W.Workspace, args):
        self.ws = ws
        req = ws.request
        self.seed = args.seed if args.seed is not None else int(req.get("seed", 0))
        self.maximal_only = args.maximal_only
        self.params: Dict[str, Any] = dict(req.get("params", {}))
        self.n_name = req.get("N", "N")
        self.m_name = req.get("M", "M")
        self.f_name = req.get("F", "F")
        self.notes: List[str] = []

    @property
    def N(self):
        return self.ws.module(self.n_name)

    @property
    def M(self):
        return self.ws.module(self.m_name)

    @property
    def F(self) -> list:
        if self.f_name in self.ws.homs:
            return self.ws.homs[self.f_name]
        if "F" in self.ws.request:
            return self.ws.homset(self.f_name)
        self.notes.append(f"no hom set {self.f_name!r}; using all of Hom(N, M)")
        return W.all_homs(self.ws, self.N, self.M)

    def adapter(self) -> S.RingAdapter:
        N, M = _plain(self.N), _plain(self.M)
        if self.ws.is_pid:
            return S.PidAdapter(N, M, self.F, self.seed)
        return S.ArtinianAdapter(N, M, self.F, self.seed, A.decompose(N.algebra, self.seed))


# -- commands ------------------------------------------------------------------------

def _module_summary(ws: W.Workspace, M) -> dict:
    if isinstance(M, G.GradedModule):
        out = _module_summary(ws, M.module)
        if M.is_pid:
            out["summands"] = [{"exponent": e, "shift": s} if e is not None else {"free": True, "shift": s}
                               for e, s in M.summands]
        else:
            out["degrees"] = list(M.degrees)
        return out
    if isinstance(M, D.PidModule):
        return {"generators": M.gens, "invariant_factors": [P.to_str(d) for d in M.invariant_factors],
                "free_rank": M.free_rank}
    return {"dimension": M.dim}


def cmd_validate(ctx: Context) -> dict:
    ws = ctx.ws
    ring: Dict[str, Any]
    if ws.is_pid:
        ring = {"polynomial_ring": ws.p}
    else:
        ring = {"p": ws.p, "dimension": ws.algebra.dim, "basis": list(ws.algebra.labels)}
    return {"universe": ws.universe, "ring": ring,
            "modules": {k: _module_summary(ws, m) for k, m in ws.modules.items()},
            "homs": {k: len(v) for k, v in ws.homs.items()}}


def cmd_decompose(ctx: Context) -> dict:
    ws = ctx.ws
    if ws.is_pid:
        return {"modules": {k: _module_summary(ws, m) for k, m in ws.modules.items()}}
    dec = A.decompose(ws.algebra, ctx.seed)
    return {"nilradical_dimension": len(dec.nilradical),
            "components": [{"prime": c.key, "idempotent": list(c.idempotent), "residue_field": repr(c.kappa),
                            "residue_degree": c.degree, "local_dimension": len(c.basis),
                            "maximal_ideal": [list(v) for v in c.maximal_ideal]} for c in dec.components]}


def _primes(ctx: Context, M) -> List[str]:
    M = _plain(M)
    if ctx.ws.is_pid:
        return [q.key for q in D.pid_associated_primes(M)]
    dec = A.decompose(M.algebra, ctx.seed)
    return [dec.components[i].key for i in A.associated_primes(M, dec)]


def cmd_ass(ctx: Context) -> dict:
    name = ctx.params.get("module", ctx.n_name)
    return {"module": name, "primes": _primes(ctx, ctx.ws.module(name))}


def cmd_socle(ctx: Context) -> dict:
    ad = ctx.adapter()
    return {"sites": [{"prime": s.key, "residue_field": repr(s.kappa), "socle_N": s.dim_n, "socle_M": s.dim_m,
                       "maximal": s.is_maximal} for s in ad.sites]}


def cmd_hom_basis(ctx: Context) -> dict:
    ws = ctx.ws
    N, M = ctx.N, ctx.M
    if ws.graded:
        if "degree" in ctx.params:
            i = int(ctx.params["degree"])
            basis = G.graded_hom_component(N, M, i)
            return {"degree": i, "dimension": len(basis), "basis": [W.hom_to_dict(h) for h in basis]}
        return {"components": {str(i): len(G.graded_hom_component(N, M, i)) for i in G.hom_degrees(N, M)}}
    homs = W.all_homs(ws, N, M)
    key = "generators" if ws.is_pid else "basis"
    return {"count": len(homs), key: [W.hom_to_dict(h) for h in homs]}


def _local_values(ctx: Context, ad: S.RingAdapter, which: str) -> dict:
    fn = S.local_capacity if which == "inj" else S.local_cog
    return {s.key: fn(ad, i, ctx.seed)[0] for i, s in enumerate(ad.sites)}


def cmd_inj(ctx: Context) -> dict:
    ad = ctx.adapter()
    return {"value": S.compute_inj(ad, ctx.maximal_only, ctx.seed), "local": _local_values(ctx, ad, "inj"),
            "maximal_only": ctx.maximal_only}


def cmd_cog(ctx: Context) -> dict:
    ad = ctx.adapter()
    return {"value": S.compute_cog(ad, ctx.maximal_only, ctx.seed), "local": _local_values(ctx, ad, "cog"),
            "maximal_only": ctx.maximal_only}


def cmd_has_injection(ctx: Context) -> dict:
    ad = ctx.adapter()
    val = S.has_injection(ad, ctx.maximal_only)
    res = {"value": val, "maximal_only": ctx.maximal_only}
    if not val:
        raise Negative("no element of F is injective", res)
    return res


def _synth(ctx: Context, orientation: str) -> dict:
    ad = ctx.adapter()
    targets = ctx.params.get("targets")
    local = ctx.params.get("local")
    if local is not None and ctx.ws.is_pid:
        local = {k: [[P.trim(c, ctx.ws.p) for c in vec] for vec in rows] for k, rows in local.items()}
    elif local is not None:
        local = {k: [[tuple(int(x) % ctx.ws.p for x in c) for c in vec] for vec in rows] for k, rows in local.items()}
    fn = S.synthesize_row if orientation == "row" else S.synthesize_column
    res = fn(ad, targets, local, ctx.seed)
    return {"orientation": orientation, "length": res.v, "homs": [W.hom_to_dict(h) for h in res.homs],
            "coefficients": res.coefficients, "targets": res.targets, "certificates": res.certificates,
            "_trace": res.trace}


def cmd_synthesize_row(ctx):
    return _synth(ctx, "row")


def cmd_synthesize_column(ctx):
    return _synth(ctx, "column")


def cmd_synthesize_graded(ctx: Context) -> dict:
    if not ctx.ws.graded:
        raise InputError("synthesize-graded needs a graded universe (graded-artinian or graded-pid)")
    N, M = ctx.N, ctx.M
    sites = G.graded_sites(N, M, ctx.seed)
    if "degree" in ctx.params:
        degree = int(ctx.params["degree"])
        table = {gs.key: sorted(G.injective_degrees(gs, N, M, [degree])) for gs in sites}
        res = G.synthesize_graded(N, M, degree, seed=ctx.seed)
    else:
        uni, table = G.choose_uniform_degree(N, M, sites)
        G.check_hypothesis(sites)
        res = G.synthesize_graded(N, M, uni.degree, uni.maps, seed=ctx.seed)
    injective = G.graded_is_injective(res.hom, N, M)
    if not injective:
        raise InjcapError("graded synthesis produced a non-injective map")
    return {"degree": res.degree, "hom": W.hom_to_dict(res.hom), "local_injection_degrees": table,
            "sites": [{"prime": gs.key, "fiber": gs.fiber, "rank": gs.rank, "residue_size": gs.residue_size}
                      for gs in sites],
            "certificates": res.certificates, "injective": injective, "_trace": res.trace}


def _pick_hom(ctx: Context):
    if "matrix" in ctx.params:
        return W._parse_hom(ctx.params["matrix"], ctx.N, ctx.M, ctx.ws, "request/params/matrix")
    k = int(ctx.params.get("index", 0))
    F = ctx.F
    if not 0 <= k < len(F):
        raise InputError(f"request/params/index: hom set {ctx.f_name!r} has {len(F)} maps, no index {k}")
    return F[k]


def cmd_check_injective(ctx: Context) -> dict:
    h = _pick_hom(ctx)
    N, M = _plain(ctx.N), _plain(ctx.M)
    if ctx.ws.is_pid:
        socle = D.pid_is_injective(h, N, M)
        direct = bool(D.pid_is_injective_kernel(h, N, M))
    else:
        socle = A.is_injective(h, N, M, A.ass_sites(A.decompose(N.algebra, ctx.seed), N, M))
        direct = h.rank() == N.dim
    if bool(socle) != direct:
        raise InjcapError("socle criterion and direct kernel disagree")
    res = {"injective": bool(socle), "direct_kernel": direct}
    if not socle:
        res["prime"] = socle.prime
        res["kernel_witness"] = [list(x) if isinstance(x, tuple) else x for x in socle.witness]
        raise Negative(f"map is not injective: socle kernel at {socle.prime}", res)
    return res


def cmd_oracle(ctx: Context) -> dict:
    if ctx.ws.is_pid:
        raise InputError("the oracle enumerates finite modules; it needs an Artinian universe")
    N, M = _plain(ctx.N), _plain(ctx.M)
    budget = O.OracleBudget()
    elems = O.span_elements(ctx.F, N, M, budget)
    ad = ctx.adapter()
    dec = ad.dec
    engine = {"inj": S.compute_inj(ad, ctx.maximal_only, ctx.seed), "cog": S.compute_cog(ad, ctx.maximal_only, ctx.seed),
              "has_injection": S.has_injection(ad, ctx.maximal_only),
              "ass": [dec.components[i].key for i in A.associated_primes(N, dec)]}
    brute = {"inj": O.oracle_inj(elems, N, M), "cog": O.oracle_cog(elems, N, M),
             "has_injection": O.oracle_has_injection(elems, N),
             "ass": [dec.components[i].key for i in O.oracle_ass(N, dec, budget)]}
    diffs = sorted(k for k in engine if engine[k] != brute[k])
    res = {"engine": engine, "oracle": brute, "mismatches": diffs, "span_size": int(len(elems))}
    if diffs:
        raise Negative(f"oracle mismatch in {', '.join(diffs)}", res)
    return res


HANDLERS = {
    "validate": cmd_validate, "decompose": cmd_decompose, "ass": cmd_ass, "socle": cmd_socle,
    "hom-basis": cmd_hom_basis, "inj": cmd_inj, "cog": cmd_cog, "has-injection": cmd_has_injection,
    "synthesize-row": cmd_synthesize_row, "synthesize-column": cmd_synthesize_column,
    "synthesize-graded": cmd_synthesize_graded, "check-injective": cmd_check_injective, "oracle": cmd_oracle,
}


# -- output ---------------------------------------------------------------------------

def _human(command: str, report: dict) -> str:
    res = report.get("result") or {}
    lines = []
    if report["status"] == "error":
        return ""
    if command in ("inj", "cog", "has-injection"):
        lines.append(str(jsonable(res["value"])).lower() if isinstance(res["value"], bool) else str(jsonable(res["value"])))
        for k, v in res.get("local", {}).items():
            lines.append(f"  {k}: {jsonable(v)}")
    elif command == "ass":
        lines.append(" ".join(res["primes"]) if res["primes"] else "(none)")
    else:
        for k, v in sorted(res.items()):
            if k.startswith("_"):
                continue
            lines.append(f"{k}: {json.dumps(jsonable(v), sort_keys=True)}")
    if report.get("message"):
        lines.append(report["message"])
    for n in report.get("notes", []):
        lines.append(f"note: {n}")
    if "trace" in report:
        lines.append("trace: " + json.dumps(report["trace"], sort_keys=True))
    return "\n".join(lines)


def run(command: str, path: str, seed: Optional[int] = None, maximal_only: bool = False,
        trace: bool = False) -> tuple:
    """Run one command; returns (exit status, report dict)."""
    args = argparse.Namespace(seed=seed, maximal_only=maximal_only, trace=trace)
    report: Dict[str, Any] = {"schema": REPORT_SCHEMA, "version": REPORT_VERSION, "command": command,
                              "workspace": path}
    status = 0
    try:
        if command not in HANDLERS:
            raise InputError(f"unknown command {command!r}")
        ws = W.load(path)
        ctx = Context(ws, args)
        report.update({"universe": ws.universe, "seed": ctx.seed})
        try:
            result = HANDLERS[command](ctx)
            report["status"] = "ok"
        except Negative as neg:
            result = neg.result
            report["status"] = "negative"
            report["message"] = str(neg)
            status = 1
        tr = result.pop("_trace", None)
        if trace and tr is not None:
            report["trace"] = jsonable(tr)
        report["result"] = jsonable(result)
        if ctx.notes:
            report["notes"] = ctx.notes
    except InjcapError as exc:
        status = exc.exit_code
        report["status"] = "negative" if status == 1 else "error"
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
    return status, report


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="injcap", description="Injective capacity and cogenerator numbers of "
                                 "modules over Artinian algebras and F_p[x], with synthesis of the maps.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("workspace", help="path to a JSON workspace file")
    ap.add_argument("--seed", type=int, default=None, help="seed for every randomized step (default: request seed or 0)")
    ap.add_argument("--maximal-only", action="store_true", help="use only the maximal members of Ass(N)")
    ap.add_argument("--json", action="store_true", help="print the machine-readable report")
    ap.add_argument("--trace", action="store_true", help="include the synthesis trace")
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    status, report = run(args.command, args.workspace, args.seed, args.maximal_only, args.trace)
    if args.json:
        sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    else:
        text = _human(args.command, report)
        if text:
            print(text)
        if "error" in report:
            print(f"error: {report['error']['message']}", file=sys.stderr)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
