"""Workspace files: a strict, versioned JSON format for rings, modules and hom sets.

A workspace is checked against ``schemas/workspace-v1.json`` first, so
shape errors come back with a JSON path.  Then each block is built into
domain objects, and mathematical errors (non-associative constants,
non-linear maps) name the block they come from.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from importlib import resources
from typing import Any, Dict, List, Optional

import jsonschema

from . import artinian as A
from . import graded as G
from . import pid as D
from . import poly as P
from .errors import InjcapError, InputError
from .linalg import Matrix

FORMAT = "injcap-workspace"
VERSION = 1
UNIVERSES = ("artinian", "pid", "graded-artinian", "graded-pid")


def schema() -> dict:
    text = resources.files("injcap").joinpath("schemas/workspace-v1.json").read_text()
    return json.loads(text)


def _where(path) -> str:
    return "/".join(str(x) for x in path) or "<root>"


def check_schema(raw: Any) -> None:
    validator = jsonschema.Draft202012Validator(schema())
    errors = sorted(validator.iter_errors(raw), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        raise InputError(f"workspace field {_where(e.absolute_path)}: {e.message}")


@dataclass
class Workspace:
    universe: str
    ring: Any                                  # StructAlgebra, int p, or GradedAlgebra
    modules: Dict[str, Any] = dc_field(default_factory=dict)
    homs: Dict[str, list] = dc_field(default_factory=dict)
    request: Dict[str, Any] = dc_field(default_factory=dict)
    description: str = ""

    @property
    def graded(self) -> bool:
        return self.universe.startswith("graded")

    @property
    def is_pid(self) -> bool:
        return self.universe.endswith("pid")

    @property
    def p(self) -> int:
        if isinstance(self.ring, int):
            return self.ring
        return self.ring.p

    @property
    def algebra(self) -> A.StructAlgebra:
        if isinstance(self.ring, G.GradedAlgebra):
            return self.ring.algebra
        return self.ring

    def module(self, name: str):
        if name not in self.modules:
            raise InputError(f"no module named {name!r} (have: {', '.join(sorted(self.modules)) or 'none'})")
        return self.modules[name]

    def homset(self, name: str) -> list:
        if name not in self.homs:
            raise InputError(f"no hom set named {name!r} (have: {', '.join(sorted(self.homs)) or 'none'})")
        return self.homs[name]

    def to_dict(self) -> dict:
        out: Dict[str, Any] = {"format": FORMAT, "version": VERSION, "universe": self.universe}
        if self.description:
            out["description"] = self.description
        out["ring"] = ring_to_dict(self.ring)
        out["modules"] = {k: module_to_dict(m) for k, m in self.modules.items()}
        out["homs"] = {k: [hom_to_dict(h) for h in hs] for k, hs in self.homs.items()}
        if self.request:
            out["request"] = dict(self.request)
        return out


# -- serialization ---------------------------------------------------------------

def ring_to_dict(ring) -> dict:
    if isinstance(ring, int):
        return {"polynomial_ring": ring}
    if isinstance(ring, G.GradedAlgebra):
        if ring.kind == "pid":
            return {"polynomial_ring": ring.p}
        out = ring.algebra.to_dict()
        if any(ring.degrees):
            out["degrees"] = list(ring.degrees)
        return out
    return ring.to_dict()


def module_to_dict(M) -> dict:
    return M.to_dict()


def hom_to_dict(h):
    if isinstance(h, D.PidHom):
        return h.to_dict()
    return h.to_lists()


# -- parsing ------------------------------------------------------------------------

def _poly(raw, p: int) -> P.Poly:
    return P.trim([int(c) for c in raw], p)


def parse_ring(raw: dict, universe: str):
    if "polynomial_ring" in raw:
        if universe not in ("pid", "graded-pid"):
            raise InputError(f"ring: polynomial_ring only fits the pid universes, not {universe}")
        p = raw["polynomial_ring"]
        if universe == "graded-pid":
            return G.GradedAlgebra.polynomial(p)
        from .fields import PrimeField
        PrimeField(p)
        return p
    if universe in ("pid", "graded-pid"):
        raise InputError(f"ring: the {universe} universe needs {{\"polynomial_ring\": p}}")
    R = _parse_struct(raw, "ring")
    if universe == "graded-artinian":
        return G.GradedAlgebra.artinian(R, raw.get("degrees", ()))
    if "degrees" in raw:
        raise InputError("ring/degrees: degrees are only meaningful in the graded universes")
    return R


def _parse_struct(raw: dict, where: str) -> A.StructAlgebra:
    try:
        if "product" in raw:
            parts = [_parse_struct(r, f"{where}/product/{k}") for k, r in enumerate(raw["product"])]
            return A.product_algebra(*parts)
        if "modulus" in raw:
            return A.algebra_from_polynomial(raw["p"], raw["modulus"])
        return A.validate_algebra({k: raw[k] for k in ("p", "basis", "structure_constants", "unity")})
    except InjcapError as exc:
        raise type(exc)(f"{where}: {exc}") from None


class _ModuleBuilder:
    def __init__(self, ws_raw: dict, universe: str, ring):
        self.raw = ws_raw.get("modules", {})
        self.universe = universe
        self.ring = ring
        self.built: Dict[str, Any] = {}
        self.stack: List[str] = []

    @property
    def algebra(self) -> A.StructAlgebra:
        return self.ring.algebra if isinstance(self.ring, G.GradedAlgebra) else self.ring

    def named(self, name: str):
        if name in self.built:
            return self.built[name]
        if name not in self.raw:
            raise InputError(f"modules: reference to undefined module {name!r}")
        if name in self.stack:
            raise InputError(f"modules: cyclic reference through {' -> '.join(self.stack + [name])}")
        self.stack.append(name)
        try:
            M = self.build(self.raw[name], f"modules/{name}")
        finally:
            self.stack.pop()
        M_inner = M.module if isinstance(M, G.GradedModule) else M
        M_inner.name = name
        self.built[name] = M
        return M

    def ref(self, raw, where):
        return self.named(raw) if isinstance(raw, str) else self.build(raw, where)

    def build(self, raw: dict, where: str):
        try:
            if self.universe == "artinian":
                if "degrees" in raw or "shift" in raw:
                    raise InputError("degrees and shifts need a graded universe")
                return self._artinian(raw, where)
            if self.universe == "pid":
                if "shift" in raw:
                    raise InputError("shifts need a graded universe")
                return self._pid(raw, where)
            if self.universe == "graded-pid":
                return self._graded_pid(raw, where)
            return self._graded_artinian(raw, where)
        except InjcapError as exc:
            msg = str(exc)
            if not msg.startswith("modules/"):
                msg = f"{where}: {msg}"
            raise type(exc)(msg) from None

    def _artinian(self, raw, where) -> A.FpModule:
        R = self.algebra
        if "action" in raw:
            mats = raw["action"]
            dim = len(mats[0]) if mats else 0
            return A.FpModule(R, dim, mats)
        if "dimension" in raw:
            return A.zero_module(R)
        if "regular" in raw:
            return A.regular_module(R)
        if "cyclic" in raw:
            return A.cyclic_module(R, [tuple(int(c) % R.p for c in g) for g in raw["cyclic"]])
        if "direct_sum" in raw:
            parts = [self._plain(self.ref(x, f"{where}/direct_sum/{k}")) for k, x in enumerate(raw["direct_sum"])]
            return A.direct_sum(*parts) if parts else A.zero_module(R)
        if "dual" in raw:
            return A.dual_module(self._plain(self.ref(raw["dual"], f"{where}/dual")))
        raise InputError("an Artinian module needs action, dimension, regular, cyclic, direct_sum or dual")

    @staticmethod
    def _plain(M):
        return M.module if isinstance(M, G.GradedModule) else M

    def _pid(self, raw, where) -> D.PidModule:
        p = self.ring if isinstance(self.ring, int) else self.ring.p
        if "generators" in raw:
            pres = [[_poly(c, p) for c in row] for row in raw.get("presentation", [])]
            return D.PidModule(p, raw["generators"], pres)
        if "summands" in raw:
            parts = []
            for s in raw["summands"]:
                if "shift" in s:
                    raise InputError("shifts need the graded-pid universe")
                if "free" in s:
                    parts.append(None)
                elif "exponent" in s:
                    parts.append(P.monomial(1, s["exponent"], p))
                else:
                    d = _poly(s["modulus"], p)
                    if not d:
                        raise InputError("modulus 0: use {\"free\": true} for a free summand")
                    parts.append(d)
            return D.PidModule.from_summands(p, parts)
        if "direct_sum" in raw:
            parts = [self.ref(x, f"{where}/direct_sum/{k}") for k, x in enumerate(raw["direct_sum"])]
            return D.pid_direct_sum(*parts) if parts else D.PidModule.zero(p)
        if "dimension" in raw:
            return D.PidModule.zero(p)
        raise InputError("a pid module needs generators/presentation, summands, direct_sum or dimension 0")

    def _graded_pid(self, raw, where) -> G.GradedModule:
        ring = self.ring
        extra = raw.get("shift", 0)
        if "summands" in raw:
            out = []
            for s in raw["summands"]:
                if "modulus" in s:
                    raise InputError("graded summands are F_p[x]/(x^e) (\"exponent\") or free")
                out.append((None if "free" in s else s["exponent"], s.get("shift", 0)))
            M = G.GradedModule.polynomial(ring, out)
        elif "direct_sum" in raw:
            parts = [self.ref(x, f"{where}/direct_sum/{k}") for k, x in enumerate(raw["direct_sum"])]
            M = G.graded_direct_sum(*parts) if parts else G.GradedModule.polynomial(ring, [])
        elif "dimension" in raw:
            M = G.GradedModule.polynomial(ring, [])
        else:
            raise InputError("graded pid modules are given by summands or direct_sum")
        return G.shift(M, extra) if extra else M

    def _graded_artinian(self, raw, where) -> G.GradedModule:
        ring = self.ring
        extra = raw.get("shift", 0)
        if "direct_sum" in raw:
            parts = [self.ref(x, f"{where}/direct_sum/{k}") for k, x in enumerate(raw["direct_sum"])]
            parts = [x if isinstance(x, G.GradedModule) else G.GradedModule.artinian(ring, x, (0,) * x.dim)
                     for x in parts]
            M = G.graded_direct_sum(*parts) if parts else G.GradedModule.artinian(ring, A.zero_module(ring.algebra), ())
            if "degrees" in raw:
                M = G.GradedModule.artinian(ring, M.module, raw["degrees"])
        else:
            plain = self._artinian({k: v for k, v in raw.items() if k not in ("degrees", "shift")}, where)
            degs = raw.get("degrees", [0] * plain.dim)
            M = G.GradedModule.artinian(ring, plain, degs)
        return G.shift(M, extra) if extra else M


def _parse_hom(raw, N, M, ws: Workspace, where: str):
    if ws.is_pid:
        Nm = N.module if isinstance(N, G.GradedModule) else N
        Mm = M.module if isinstance(M, G.GradedModule) else M
        mat = raw["matrix"] if isinstance(raw, dict) else raw
        H = [[_poly(c, ws.p) for c in row] for row in mat]
        if len(H) != Mm.gens or any(len(r) != Nm.gens for r in H):
            raise InputError(f"{where}: matrix must be {Mm.gens} x {Nm.gens}")
        h = D.make_pid_hom(H, Nm, Mm)
        if isinstance(raw, dict) and "witness" in raw:
            Y = [[_poly(c, ws.p) for c in row] for row in raw["witness"]]
            if not D.check_witness(D.PidHom(h.H, tuple(tuple(r) for r in Y)), Nm, Mm):
                raise InputError(f"{where}: supplied witness does not satisfy H P_N = P_M Y")
        return h
    Nm = N.module if isinstance(N, G.GradedModule) else N
    Mm = M.module if isinstance(M, G.GradedModule) else M
    if isinstance(raw, dict):
        raise InputError(f"{where}: Artinian homs are plain integer matrices")
    try:
        h = Matrix.from_values(ws.algebra.field, raw, Nm.dim)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{where}: {exc}") from None
    if h.shape != (Mm.dim, Nm.dim):
        raise InputError(f"{where}: matrix has shape {h.shape}, expected {(Mm.dim, Nm.dim)}")
    if not A.check_linear(h, Nm, Mm):
        raise InputError(f"{where}: matrix is not R-linear from N to M")
    return h


def all_homs(ws: Workspace, N, M) -> list:
    """The whole of Hom_R(N, M): an F_p-basis (artinian) or R-generators (pid)."""
    Nm = N.module if isinstance(N, G.GradedModule) else N
    Mm = M.module if isinstance(M, G.GradedModule) else M
    if ws.is_pid:
        return D.pid_hom_generators(Nm, Mm)
    return A.hom_basis(Nm, Mm).basis


def from_dict(raw: Any) -> Workspace:
    check_schema(raw)
    universe = raw["universe"]
    ring = parse_ring(raw["ring"], universe)
    ws = Workspace(universe, ring, request=dict(raw.get("request", {})), description=raw.get("description", ""))
    builder = _ModuleBuilder(raw, universe, ring)
    for name in raw.get("modules", {}):
        ws.modules[name] = builder.named(name)
    req = ws.request
    n_name, m_name = req.get("N", "N"), req.get("M", "M")
    for name, items in raw.get("homs", {}).items():
        where = f"homs/{name}"
        if n_name not in ws.modules or m_name not in ws.modules:
            raise InputError(f"{where}: hom sets go from module {n_name!r} to {m_name!r}, which must both exist")
        N, M = ws.modules[n_name], ws.modules[m_name]
        if items == "all":
            ws.homs[name] = all_homs(ws, N, M)
        else:
            ws.homs[name] = [_parse_hom(h, N, M, ws, f"{where}/{k}") for k, h in enumerate(items)]
    return ws


def loads(text: str) -> Workspace:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"workspace is not valid JSON: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_dict(raw)


def load(path: str) -> Workspace:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read workspace {path}: {exc.strerror}") from None
    return loads(text)


def dumps(ws: Workspace) -> str:
    return json.dumps(ws.to_dict(), sort_keys=True, indent=2) + "\n"
