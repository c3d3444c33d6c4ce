"""HTTP facade over the library, plus the in-process functions behind it.

Every route body lives in a do_* function taking and returning pydantic
models, so the command line can run the same logic without a socket.
Basis results are memoized per (group, s, order kind, tool version).
"""

from __future__ import annotations

import threading
from dataclasses import asdict
from typing import Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__, census, honda_fgl, verify as verify_mod
from .groebner import (
    IndeterminateError,
    ReducedGB,
    ResourceLimitError,
    buchberger,
    dimension,
    normal_form,
)
from .polyring import ParseError, parse, to_text
from .presentations import (
    GROUPS,
    build,
    default_order,
    dump_text,
    elimination_order,
    forget_v,
    restrict_c0,
)

_GB_MEMO: dict[tuple, ReducedGB] = {}
_GB_LOCK = threading.Lock()


def cached_gb(group: str, s: int, kind: str = "degrevlex") -> ReducedGB:
    """Reduced basis of the v-forgotten presentation, memoized per process."""
    key = (group, s, kind, __version__)
    with _GB_LOCK:
        hit = _GB_MEMO.get(key)
    if hit is not None:
        return hit
    nv = forget_v(build(group, s))
    order = (elimination_order(nv.table) if kind == "elimination"
             else default_order(nv.table))
    gb = buchberger(nv.polynomials(), order)
    with _GB_LOCK:
        _GB_MEMO[key] = gb
    return gb


class VerifyRequest(BaseModel):
    group: str
    s: int = Field(ge=1)
    skip: list[str] = []
    cap: Optional[int] = None
    cache_dir: Optional[str] = None


class VerifyResponse(BaseModel):
    report: dict
    ok: bool


class DimRequest(BaseModel):
    group: str
    s: int = Field(ge=1)
    restrict_c0: bool = False
    cap: Optional[int] = None


class DimResponse(BaseModel):
    dimension: int
    expected: int
    matches: bool


class GbRequest(BaseModel):
    group: str
    s: int = Field(ge=1)
    order: str = "degrevlex"


class GbResponse(BaseModel):
    group: str
    s: int
    order: str
    order_spec: str
    basis: list[str]
    tool_version: str


class NfRequest(BaseModel):
    group: str
    s: int = Field(ge=1)
    poly: str


class NfResponse(BaseModel):
    normal_form: str
    member: bool


class CensusRequest(BaseModel):
    s_max: int = Field(ge=1)


class CensusResponse(BaseModel):
    reports: list[dict]
    reassembly_ok: bool
    totals_ok: bool


class FglRequest(BaseModel):
    height: int = Field(ge=1)
    truncate: int = 0


class FglResponse(BaseModel):
    height: int
    truncate: int
    law: str
    two_series: str
    two_series_expected: str
    associative: bool


class PresentationRequest(BaseModel):
    group: str
    s: int = Field(ge=1)


class PresentationResponse(BaseModel):
    group: str
    s: int
    text: str
    relation_names: list[str]


def _check_group(group: str):
    if group not in GROUPS:
        raise ValueError(f"unknown group {group!r}, expected one of {GROUPS}")


def do_verify(req: VerifyRequest) -> VerifyResponse:
    _check_group(req.group)
    report = verify_mod.verify(req.group, req.s, skip=tuple(req.skip),
                               cap=req.cap, cache_dir=req.cache_dir)
    return VerifyResponse(report=report.to_dict(),
                          ok=report.all_checks_pass())


def do_dim(req: DimRequest) -> DimResponse:
    _check_group(req.group)
    if req.restrict_c0:
        rpres = restrict_c0(forget_v(build(req.group, req.s)))
        gb = buchberger(rpres.polynomials(), default_order(rpres.table))
        expected = census.chi_restriction(req.s)
    else:
        gb = cached_gb(req.group, req.s)
        expected = census.chi(req.s)
    dim = dimension(gb, req.cap)
    return DimResponse(dimension=dim, expected=expected,
                       matches=dim == expected)


def do_gb(req: GbRequest) -> GbResponse:
    _check_group(req.group)
    if req.order not in ("degrevlex", "elimination"):
        raise ValueError(f"unknown order {req.order!r}")
    gb = cached_gb(req.group, req.s, req.order)
    return GbResponse(group=req.group, s=req.s, order=req.order,
                      order_spec=gb.order.to_spec(),
                      basis=[to_text(p, gb.order) for p in gb.basis],
                      tool_version=__version__)


def do_nf(req: NfRequest) -> NfResponse:
    _check_group(req.group)
    gb = cached_gb(req.group, req.s)
    p = parse(req.poly, gb.table)
    nf = normal_form(p, gb)
    return NfResponse(normal_form=to_text(nf, gb.order), member=not nf)


def do_census(req: CensusRequest) -> CensusResponse:
    reports = [census.family_totals(group, s)
               for s in range(1, req.s_max + 1) for group in GROUPS]
    return CensusResponse(
        reports=[asdict(r) for r in reports],
        reassembly_ok=all(census.reassembly_identity(s)
                          for s in range(1, req.s_max + 1)),
        totals_ok=all(r.total_matches for r in reports))


def do_fgl(req: FglRequest) -> FglResponse:
    s = req.height
    n = req.truncate or 2 ** (s + 1)
    law = honda_fgl.fgl(s, n)
    expected = parse(f"v^1*x^{2 ** s}", honda_fgl.series_table(s))
    return FglResponse(
        height=s, truncate=n,
        law=to_text(law.F),
        two_series=to_text(law.two_series),
        two_series_expected=to_text(expected),
        associative=honda_fgl.associativity_check(s, n))


def do_presentation(req: PresentationRequest) -> PresentationResponse:
    _check_group(req.group)
    pres = build(req.group, req.s)
    return PresentationResponse(group=req.group, s=req.s,
                                text=dump_text(pres),
                                relation_names=list(pres.relation_names()))


app = FastAPI(title="morava32", version=__version__)


def _guard(fn, req):
    try:
        return fn(req)
    except (ValueError, ParseError) as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    except (ResourceLimitError, IndeterminateError) as exc:
        raise HTTPException(status_code=503, detail=str(exc))


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.get("/version")
def version() -> dict:
    return {"tool_version": __version__}


@app.post("/verify")
def route_verify(req: VerifyRequest) -> VerifyResponse:
    return _guard(do_verify, req)


@app.post("/dim")
def route_dim(req: DimRequest) -> DimResponse:
    return _guard(do_dim, req)


@app.post("/gb")
def route_gb(req: GbRequest) -> GbResponse:
    return _guard(do_gb, req)


@app.post("/nf")
def route_nf(req: NfRequest) -> NfResponse:
    return _guard(do_nf, req)


@app.post("/census")
def route_census(req: CensusRequest) -> CensusResponse:
    return _guard(do_census, req)


@app.post("/fgl")
def route_fgl(req: FglRequest) -> FglResponse:
    return _guard(do_fgl, req)


@app.post("/presentation")
def route_presentation(req: PresentationRequest) -> PresentationResponse:
    return _guard(do_presentation, req)
