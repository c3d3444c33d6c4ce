"""Command line front end.

Thin client over the service layer: every subcommand builds a request
model and dispatches it, either in-process (default) or to a running
server via --server. Exit codes are CI-oriented:

    0  all executed checks pass
    1  a finding (some check failed, e.g. a dimension mismatch)
    2  usage error (bad flags, unknown group, malformed polynomial)
    3  resource error (basis or staircase budget exhausted)
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import __version__, service
from .groebner import (
    IndeterminateError,
    ReducedGB,
    ResourceLimitError,
    load_gb,
    save_gb,
)
from .polyring import ParseError
from .presentations import GROUPS
from .verify import SKIPPABLE, format_table, report_from_dict

EXIT_OK, EXIT_FINDING, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
# severity order for combining per-group codes: usage > resource > finding
_RANK = {EXIT_OK: 0, EXIT_FINDING: 1, EXIT_RESOURCE: 2, EXIT_USAGE: 3}


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class CliConfig:
    """Validated invocation; built before any computation starts."""

    subcommand: str
    groups: tuple[str, ...] = ()
    s: int = 0
    order: str = "degrevlex"
    truncate: int = 0
    cache_dir: Optional[str] = None
    out_path: Optional[str] = None
    skip: tuple[str, ...] = ()
    verbose: bool = False
    server: Optional[str] = None
    extra: dict = field(default_factory=dict)


def _groups_of(tag: str) -> tuple[str, ...]:
    if tag == "all":
        return GROUPS
    if tag in GROUPS:
        return (tag,)
    raise UsageError(f"unknown group {tag!r}, expected one of "
                     f"{', '.join(GROUPS)} or all")


def _config(args: argparse.Namespace) -> CliConfig:
    groups = _groups_of(args.group) if hasattr(args, "group") else ()
    skip = ()
    if getattr(args, "skip", None):
        skip = tuple(part for chunk in args.skip
                     for part in chunk.split(",") if part)
        bad = set(skip) - set(SKIPPABLE)
        if bad:
            raise UsageError(f"unknown skip phases: {sorted(bad)}; "
                             f"known: {', '.join(SKIPPABLE)}")
    return CliConfig(
        subcommand=args.cmd,
        groups=groups,
        s=getattr(args, "s", 0) or getattr(args, "height", 0),
        order=getattr(args, "order", "degrevlex"),
        truncate=getattr(args, "truncate", 0),
        cache_dir=getattr(args, "cache", None),
        out_path=getattr(args, "json", None) or getattr(args, "dump", None),
        skip=skip,
        verbose=args.verbose,
        server=args.server,
        extra={k: v for k, v in vars(args).items()
               if k in ("restrict_c0", "poly", "s_max", "host", "port")},
    )


def _call(cfg: CliConfig, name: str, payload: dict) -> dict:
    """One service call, in-process by default, HTTP when --server is set."""
    if cfg.server:
        import httpx

        resp = httpx.post(cfg.server.rstrip("/") + "/" + name, json=payload,
                          timeout=600.0)
        if resp.status_code == 422:
            raise UsageError(str(resp.json().get("detail", resp.text)))
        if resp.status_code == 503:
            raise ResourceLimitError(str(resp.json().get("detail",
                                                         resp.text)))
        resp.raise_for_status()
        return resp.json()
    table = {
        "verify": (service.VerifyRequest, service.do_verify),
        "dim": (service.DimRequest, service.do_dim),
        "gb": (service.GbRequest, service.do_gb),
        "nf": (service.NfRequest, service.do_nf),
        "census": (service.CensusRequest, service.do_census),
        "fgl": (service.FglRequest, service.do_fgl),
        "presentation": (service.PresentationRequest,
                         service.do_presentation),
    }
    req_cls, fn = table[name]
    return fn(req_cls(**payload)).model_dump()


def cache_roundtrip(gb: ReducedGB, path, *, group: str, s: int) -> ReducedGB:
    """Save then reload a basis; the loaded copy must be identical."""
    save_gb(gb, path, group=group, s=s)
    back = load_gb(path, gb.table, group=group, s=s, order=gb.order)
    if back.basis != gb.basis:
        raise CacheRoundtripError("reloaded basis differs from the saved one")
    return back


class CacheRoundtripError(RuntimeError):
    pass


def _report_code(report: dict) -> int:
    if report["phase_errors"]:
        return EXIT_RESOURCE
    return EXIT_OK if report_from_dict(report).all_checks_pass() \
        else EXIT_FINDING


def _cmd_verify(cfg: CliConfig) -> int:
    payload = {"s": cfg.s, "skip": list(cfg.skip), "cache_dir": cfg.cache_dir}
    with ThreadPoolExecutor(max_workers=min(4, len(cfg.groups))) as pool:
        futures = {g: pool.submit(_call, cfg, "verify",
                                  dict(payload, group=g))
                   for g in cfg.groups}
        results = {g: f.result() for g, f in futures.items()}
    reports = [results[g]["report"] for g in cfg.groups]
    for rep in reports:
        print(format_table(report_from_dict(rep)))
        print()
    if cfg.out_path:
        doc = reports[0] if len(reports) == 1 else reports
        Path(cfg.out_path).write_text(json.dumps(doc, indent=2) + "\n")
        if cfg.verbose:
            print(f"wrote report to {cfg.out_path}")
    codes = [_report_code(rep) for rep in reports]
    return max(codes, key=_RANK.__getitem__)


def _cmd_dim(cfg: CliConfig) -> int:
    restrict = cfg.extra.get("restrict_c0", False)
    with ThreadPoolExecutor(max_workers=min(4, len(cfg.groups))) as pool:
        futures = {g: pool.submit(_call, cfg, "dim",
                                  {"group": g, "s": cfg.s,
                                   "restrict_c0": restrict})
                   for g in cfg.groups}
        results = {g: f.result() for g, f in futures.items()}
    code = EXIT_OK
    for g in cfg.groups:
        out = results[g]
        if cfg.verbose or len(cfg.groups) > 1:
            flag = "ok" if out["matches"] else "MISMATCH"
            print(f"{g}: {out['dimension']} (expected {out['expected']}) "
                  f"{flag}")
        else:
            print(out["dimension"])
        if not out["matches"]:
            code = EXIT_FINDING
    return code


def _cmd_gb(cfg: CliConfig) -> int:
    g = cfg.groups[0]
    out = _call(cfg, "gb", {"group": g, "s": cfg.s, "order": cfg.order})
    lines = [f"group={out['group']}", f"s={out['s']}",
             f"order={out['order_spec']}",
             f"tool_version={out['tool_version']}"] + out["basis"]
    text = "\n".join(lines) + "\n"
    if cfg.out_path:
        Path(cfg.out_path).write_text(text)
        print(f"wrote {len(out['basis'])} basis elements to {cfg.out_path}")
    else:
        print(text, end="")
    return EXIT_OK


def _cmd_nf(cfg: CliConfig) -> int:
    out = _call(cfg, "nf", {"group": cfg.groups[0], "s": cfg.s,
                            "poly": cfg.extra["poly"]})
    print(out["normal_form"])
    if cfg.verbose:
        print("member" if out["member"] else "not a member")
    return EXIT_OK


def _cmd_census(cfg: CliConfig) -> int:
    out = _call(cfg, "census", {"s_max": cfg.extra["s_max"]})
    for rep in out["reports"]:
        status = "ok" if rep["total_matches"] else "MISMATCH"
        line = (f"{rep['group']} s={rep['s']}: ranges total "
                f"{rep['total_from_ranges']} expected {rep['expected']} "
                f"{status}")
        flagged = rep["mismatched_labels"]
        if flagged:
            line += "  [stated-cardinality mismatch: " + \
                ", ".join(flagged) + "]"
        print(line)
    ok = out["reassembly_ok"] and out["totals_ok"]
    print("reassembly identity:", "ok" if out["reassembly_ok"] else "FAIL")
    return EXIT_OK if ok else EXIT_FINDING


def _cmd_fgl(cfg: CliConfig) -> int:
    out = _call(cfg, "fgl", {"height": cfg.s, "truncate": cfg.truncate})
    print(f"height {out['height']}, truncation {out['truncate']}")
    print("F(x, y) =", out["law"])
    print("[2](x)  =", out["two_series"])
    ok = (out["two_series"] == out["two_series_expected"]
          and out["associative"])
    print("associative:", "yes" if out["associative"] else "NO")
    if not ok:
        print("expected [2](x) =", out["two_series_expected"])
    return EXIT_OK if ok else EXIT_FINDING


def _cmd_presentation(cfg: CliConfig) -> int:
    out = _call(cfg, "presentation", {"group": cfg.groups[0], "s": cfg.s})
    if cfg.out_path:
        Path(cfg.out_path).write_text(out["text"])
        print(f"wrote {len(out['relation_names'])} relations to "
              f"{cfg.out_path}")
    else:
        print(out["text"], end="")
    return EXIT_OK


def _cmd_serve(cfg: CliConfig) -> int:
    import uvicorn

    uvicorn.run(service.app, host=cfg.extra["host"],
                port=cfg.extra["port"], log_level="info")
    return EXIT_OK


_HANDLERS = {
    "verify": _cmd_verify,
    "dim": _cmd_dim,
    "gb": _cmd_gb,
    "nf": _cmd_nf,
    "census": _cmd_census,
    "fgl": _cmd_fgl,
    "presentation": _cmd_presentation,
    "serve": _cmd_serve,
}


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="morava32",
        description="Groebner verification of mod-2 Morava K-theory "
                    "presentations for the order-32 groups g38-g41.")
    top.add_argument("--version", action="version", version=__version__)
    top.add_argument("--server", metavar="URL", default=None,
                     help="send requests to a running server instead of "
                          "computing in-process")
    top.add_argument("-v", "--verbose", action="store_true")
    sub = top.add_subparsers(dest="cmd", required=True)

    def add_group(p, default=None):
        kw = {"required": default is None, "default": default}
        p.add_argument("--group", choices=GROUPS + ("all",), **kw)

    p = sub.add_parser("verify", help="run every check for a group")
    add_group(p)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--json", metavar="PATH",
                   help="also write the report(s) as JSON")
    p.add_argument("--skip", action="append", metavar="PHASE[,PHASE]",
                   help=f"skip phases: {', '.join(SKIPPABLE)}")
    p.add_argument("--cache", metavar="DIR",
                   help="basis cache directory (header-checked)")

    p = sub.add_parser("dim", help="dimension of the quotient")
    add_group(p)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--restrict-c0", action="store_true",
                   help="dimension of the c = 0 specialization")

    p = sub.add_parser("gb", help="reduced basis in the text grammar")
    add_group(p)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--order", choices=("degrevlex", "elimination"),
                   default="degrevlex")
    p.add_argument("--dump", metavar="PATH",
                   help="write to a cache file instead of stdout")

    p = sub.add_parser("nf", help="normal form of a polynomial")
    add_group(p)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--poly", required=True, metavar="EXPR")

    p = sub.add_parser("census", help="basis-family cardinality identities")
    p.add_argument("--s-max", type=int, required=True, dest="s_max")

    p = sub.add_parser("fgl", help="formal group law witnesses mod 2")
    p.add_argument("--height", type=int, required=True)
    p.add_argument("--truncate", type=int, default=0, metavar="N")

    p = sub.add_parser("presentation", help="relations in the text grammar")
    add_group(p)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--dump", metavar="PATH")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8032)
    return top


def run(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        cfg = _config(args)
        if cfg.subcommand != "serve" and cfg.subcommand != "census" \
                and cfg.subcommand != "fgl" and cfg.s < 1:
            raise UsageError("--s must be at least 1")
        if cfg.subcommand == "fgl" and cfg.s < 1:
            raise UsageError("--height must be at least 1")
        return _HANDLERS[cfg.subcommand](cfg)
    except (UsageError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ResourceLimitError, IndeterminateError) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


def main():  # console entry point
    sys.exit(run())
