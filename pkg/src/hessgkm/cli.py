"""
Command-line interface.

Every command prints one JSON document (``--pretty`` indents it).  Results
are cached on disk under a key built from the command, its arguments and the
package version, so a repeated run prints the cached bytes unchanged.

Exit status: 0 on success, 1 when an input is invalid or a checked identity
fails (a JSON error object is printed), 2 when a size gate refuses the work.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Callable

from . import __version__
from .classes import RelationFailure, verify_linear_relations, verify_product_relations
from .cohomology import (Disconnected, degree2_spanning_set, equivariant_kernel_basis,
                         equivariant_rank_oracle, invariant_quotient_hilbert,
                         is_degree2_generated, subring_hilbert)
from .gkm import (TooLarge, all_perms, build_graph, dot_action, export_dot, export_json,
                  fixed_level_components, is_gkm_class, phi_r_check)
from .hessfn import (HessenbergError, HessenbergFunction, bottom_and_ell_sets, boxes,
                     dimension, enumerate_functions, flip, has_forbidden_minor, is_connected,
                     lollipop_form, parse, validate)
from .linalg import modular_rank
from .qseries import (family_function, hilb_invariants, poincare_direct, poincare_h1_closed,
                      poincare_recursive, subring_bound_components, subring_upper_bound)

CACHE_ENV = "HESSGKM_CACHE_DIR"
CACHE_FORMAT = 1


class CheckFailed(Exception):
    """A computed invariant disagreed with its expected value."""

    def __init__(self, message: str, details=None):
        super().__init__(message)
        self.details = details


@dataclass
class RunConfig:
    command: str
    target: str = ""
    max_degree: int | None = None
    threads: int = 1
    cache_dir: str | None = None
    connected_only: bool = True
    modular: bool = False
    allow_large: bool = False
    method: str = "evaluation"
    dot: bool = False
    pretty: bool = False
    use_cache: bool = True

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> RunConfig:
        return cls(**data)

    def cache_key(self) -> str:
        relevant = {k: v for k, v in self.to_dict().items()
                    if k not in ("cache_dir", "pretty", "use_cache", "threads")}
        relevant["version"] = __version__
        relevant["format"] = CACHE_FORMAT
        blob = json.dumps(relevant, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:32]


def default_cache_dir() -> Path:
    if os.environ.get(CACHE_ENV):
        return Path(os.environ[CACHE_ENV])
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "hessgkm"


def _write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------- commands

def _connected(text: str) -> HessenbergFunction:
    h = parse(text)
    if not is_connected(h):
        raise Disconnected(f"{h} is not connected")
    return h


def cmd_analyze(cfg: RunConfig) -> dict:
    h = parse(cfg.target)
    n = h.n
    shaded = boxes(h)
    bottom, ell = bottom_and_ell_sets(h)
    shape = lollipop_form(h) if n >= 2 else None
    return {
        "h": str(h),
        "n": n,
        "dimension": dimension(h),
        "connected": is_connected(h),
        "diagram": ["".join("#" if (i, j) in shaded else "." for j in range(1, n + 1))
                    for i in range(1, n + 1)],
        "bottom": sorted(bottom),
        "ell": sorted(ell),
        "lollipop": None if shape is None else {"a": shape.a, "b": shape.b},
        "forbidden_minor": has_forbidden_minor(h) if n >= 2 else False,
        "flip": str(flip(h)),
    }


def cmd_poincare(cfg: RunConfig) -> dict:
    h = parse(cfg.target)
    direct = poincare_direct(h)
    recursive = poincare_recursive(h)
    closed = None
    if h.n >= 2 and all(h[j] == h.n for j in range(2, h.n + 1)):
        closed = poincare_h1_closed(h.n, h[1])
    agree = direct == recursive and (closed is None or closed == direct)
    if not agree:
        raise CheckFailed("Poincare polynomial methods disagree",
                          {"direct": str(direct), "recursive": str(recursive),
                           "h1_closed": None if closed is None else str(closed)})
    return {
        "h": str(h),
        "poincare": str(direct),
        "coefficients": list(direct),
        "methods": {"direct": str(direct), "recursive": str(recursive),
                    "h1_closed": None if closed is None else str(closed)},
        "agree": agree,
    }


def cmd_check_gen2(cfg: RunConfig) -> dict:
    h = _connected(cfg.target)
    kwargs = {}
    if cfg.allow_large:
        kwargs = {"max_columns": 10 ** 9, "max_n": 8}
    report = is_degree2_generated(h, method=cfg.method, **kwargs)
    out = report.to_dict()
    if cfg.modular and cfg.method == "evaluation":
        from .cohomology import evaluation_spans
        spans = evaluation_spans(h, dimension(h), max_n=kwargs.get("max_n", 6))
        out["modular_ranks"] = [modular_rank(s.vectors()) for s in spans]
    return out


def _classify(n: int, method: str, allow_large: bool) -> list[dict]:
    if n > 5 and not allow_large:
        raise TooLarge(f"classification at n={n} is gated; pass --allow-large")
    rows = []
    for h in enumerate_functions(n, connected_only=True):
        shape = lollipop_form(h) if n >= 2 else None
        kwargs = {"max_n": n} if allow_large and method == "evaluation" else {}
        report = is_degree2_generated(h, method=method, **kwargs)
        rows.append({
            "h": str(h),
            "lollipop": None if shape is None else [shape.a, shape.b],
            "generated": report.verdict,
            "first_failure": report.first_failure(),
            "agree": report.verdict == (shape is not None or n == 1),
        })
    return rows


def cmd_classify(cfg: RunConfig) -> dict:
    n = int(cfg.target)
    rows = _classify(n, cfg.method, cfg.allow_large)
    table = {
        "n": n,
        "method": cfg.method,
        "rows": rows,
        "generated": sum(r["generated"] for r in rows),
        "total": len(rows),
        "all_agree": all(r["agree"] for r in rows),
    }
    if not table["all_agree"]:
        raise CheckFailed("verdicts disagree with the lollipop classification", table)
    return table


def _check(name: str, fn: Callable[[], str | None]) -> dict:
    try:
        detail = fn()
        return {"name": name, "status": "pass", "detail": detail or ""}
    except TooLarge as exc:
        return {"name": name, "status": "skipped", "detail": str(exc)}
    except Exception as exc:  # any other error is a failed check, reported not raised
        return {"name": name, "status": "fail", "detail": f"{type(exc).__name__}: {exc}"}


def _gate(cond: bool, why: str):
    if not cond:
        raise TooLarge(why)


def size_checks(n: int, allow_large: bool = False) -> list[dict]:
    """Every structural check that makes sense at size ``n``."""
    everything = enumerate_functions(n)
    connected = [h for h in everything if is_connected(h)]

    def poincare_methods():
        _gate(n <= 7 or allow_large, "gated to n <= 7")
        for h in everything:
            assert poincare_direct(h) == poincare_recursive(h), str(h)
        if n >= 2:
            for h1 in range(2, n + 1):
                h = validate([h1] + [n] * (n - 1))
                assert poincare_direct(h) == poincare_h1_closed(n, h1), str(h)
        return f"{len(everything)} functions"

    def lollipop_minors():
        _gate(n >= 2, "needs n >= 2")
        for h in connected:
            assert (lollipop_form(h) is not None) == (not has_forbidden_minor(h)), str(h)
        return f"{len(connected)} connected functions"

    def flip_checks():
        for h in everything:
            assert flip(flip(h)) == h, str(h)
            assert poincare_direct(flip(h)) == poincare_direct(h), str(h)
        return f"{len(everything)} functions"

    def linear_relations():
        for h in connected:
            verify_linear_relations(h)
        return f"{len(connected)} connected functions"

    def product_relations():
        _gate(4 <= n <= 6, "defined for 4 <= n <= 6")
        verify_product_relations(n)
        return str(family_function(n))

    def gkm_classes():
        _gate(n <= 5, "gated to n <= 5")
        total = 0
        for h in connected:
            g = build_graph(h)
            for f in degree2_spanning_set(h):
                assert is_gkm_class(h, f, g), f"{h}: {f}"
                total += 1
        return f"{total} classes"

    def dot_closure():
        _gate(n <= 4, "gated to n <= 4")
        for h in connected:
            g = build_graph(h)
            for f in degree2_spanning_set(h):
                for sigma in all_perms(n):
                    assert is_gkm_class(h, dot_action(sigma, f), g), f"{h}: {sigma}"
        return f"{len(connected)} connected functions"

    def phi_r():
        _gate(2 <= n <= 4, "gated to 2 <= n <= 4")
        count = 0
        for h in connected:
            g = build_graph(h)
            for r in range(1, n + 1):
                for comp in fixed_level_components(h, r, g):
                    assert phi_r_check(h, r, comp), f"{h}, r={r}"
                    count += 1
        return f"{count} components"

    def free_module():
        _gate(n <= 4, "gated to n <= 4")
        for h in connected:
            for d in range(dimension(h) + 1):
                got = equivariant_kernel_basis(h, d, 10 ** 9).rank
                assert got == equivariant_rank_oracle(h, d), f"{h}, d={d}"
        return f"{len(connected)} connected functions"

    def invariant_ring():
        _gate(n <= 5, "gated to n <= 5")
        for h in connected:
            assert invariant_quotient_hilbert(h) == hilb_invariants(h), str(h)
        return f"{len(connected)} connected functions"

    def classification():
        rows = _classify(n, "evaluation", allow_large)
        bad = [r["h"] for r in rows if not r["agree"]]
        assert not bad, f"disagreement at {bad}"
        return f"{sum(r['generated'] for r in rows)} of {len(rows)} generated in degree two"

    checks = [
        ("poincare_methods", poincare_methods), ("lollipop_vs_minors", lollipop_minors),
        ("flip", flip_checks), ("linear_relations", linear_relations),
        ("product_relations", product_relations), ("gkm_classes", gkm_classes),
        ("dot_action_closure", dot_closure), ("phi_r_isomorphism", phi_r),
        ("free_module_rank", free_module), ("invariant_ring", invariant_ring),
        ("classification", classification),
    ]
    return [_check(name, fn) for name, fn in checks]


def cmd_verify(cfg: RunConfig) -> dict:
    n = int(cfg.target)
    checks = size_checks(n, cfg.allow_large)
    out = {"n": n, "checks": checks, "ok": all(c["status"] != "fail" for c in checks)}
    if not out["ok"]:
        raise CheckFailed(f"checks failed at n={n}", out)
    return out


def cmd_graph(cfg: RunConfig):
    h = parse(cfg.target)
    g = build_graph(h, max_n=8 if cfg.allow_large else 6)
    if cfg.dot:
        return export_dot(g, name="h" + "".join(map(str, h)))
    data = json.loads(export_json(g))
    data["h"] = str(h)
    return data


def cmd_hilbert(cfg: RunConfig) -> dict:
    h = _connected(cfg.target)
    n = h.n
    top = dimension(h) if cfg.max_degree is None else cfg.max_degree
    expected = hilb_invariants(h)
    computed = invariant_quotient_hilbert(h, top)
    if computed != expected.truncate(top + 1):
        raise CheckFailed("invariant quotient disagrees with the product formula",
                          {"computed": str(computed), "formula": str(expected)})
    out = {
        "h": str(h),
        "poincare": str(poincare_direct(h)),
        "invariants": str(expected),
        "invariant_quotient": str(computed),
        "subring": str(subring_hilbert(h, top, method=cfg.method,
                                       allow_large=cfg.allow_large)),
    }
    if n >= 4 and h == family_function(n):
        out["bounds"] = {k: str(v) for k, v in subring_bound_components(n).items()}
        out["upper_bound"] = str(subring_upper_bound(n))
    return out


COMMANDS = {
    "analyze": cmd_analyze,
    "poincare": cmd_poincare,
    "check-gen2": cmd_check_gen2,
    "classify": cmd_classify,
    "verify": cmd_verify,
    "graph": cmd_graph,
    "hilbert": cmd_hilbert,
}


# ---------------------------------------------------------------- plumbing

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hessgkm", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="indent JSON output")
    common.add_argument("--cache-dir", help=f"cache directory (default: ${CACHE_ENV} or ~/.cache/hessgkm)")
    common.add_argument("--no-cache", action="store_true", help="neither read nor write the cache")
    common.add_argument("--threads", type=int, default=1, help="accepted for compatibility; work is single-threaded")
    common.add_argument("--allow-large", action="store_true", help="override the size gates")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, helptext in [("analyze", "diagram data, bottom and L sets, lollipop form"),
                           ("poincare", "Poincare polynomial by three methods")]:
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("h", help="comma-separated values, e.g. 2,3,4,4")

    p = sub.add_parser("check-gen2", parents=[common], help="degree-two generation report")
    p.add_argument("h")
    p.add_argument("--method", choices=["evaluation", "equivariant"], default="evaluation")
    p.add_argument("--modular", action="store_true", help="also report span ranks modulo a prime")

    p = sub.add_parser("classify", parents=[common], help="verdicts for every connected h of size n")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--method", choices=["evaluation", "equivariant"], default="evaluation")

    p = sub.add_parser("verify", parents=[common], help="all structural checks at size n")
    p.add_argument("-n", type=int, required=True)

    p = sub.add_parser("graph", parents=[common], help="GKM graph as JSON or DOT")
    p.add_argument("h")
    p.add_argument("--dot", action="store_true")

    p = sub.add_parser("hilbert", parents=[common], help="invariant ring, degree-two subring, bounds")
    p.add_argument("h")
    p.add_argument("--max-degree", type=int)
    p.add_argument("--method", choices=["evaluation", "equivariant"], default="evaluation")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    target = getattr(args, "h", None)
    if target is None:
        target = str(args.n)
    return RunConfig(
        command=args.command,
        target=target,
        max_degree=getattr(args, "max_degree", None),
        threads=args.threads,
        cache_dir=args.cache_dir,
        modular=getattr(args, "modular", False),
        allow_large=args.allow_large,
        method=getattr(args, "method", "evaluation"),
        dot=getattr(args, "dot", False),
        pretty=args.pretty,
        use_cache=not args.no_cache,
    )


def _render(canonical: str, cfg: RunConfig) -> str:
    if cfg.dot:
        return canonical
    if cfg.pretty:
        return json.dumps(json.loads(canonical), indent=2) + "\n"
    return canonical + "\n"


def run(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    path = None
    if cfg.use_cache:
        cache = Path(cfg.cache_dir) if cfg.cache_dir else default_cache_dir()
        path = cache / f"{cfg.command}-{cfg.cache_key()}.json"
        if path.exists():
            out.write(_render(path.read_text(encoding="utf-8"), cfg))
            return 0
    try:
        result = COMMANDS[cfg.command](cfg)
    except TooLarge as exc:
        out.write(json.dumps({"error": "too_large", "message": str(exc)}) + "\n")
        return 2
    except CheckFailed as exc:
        out.write(json.dumps({"error": "check_failed", "message": str(exc),
                              "details": exc.details}) + "\n")
        return 1
    except (HessenbergError, Disconnected, RelationFailure, ValueError) as exc:
        out.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 1
    canonical = result if isinstance(result, str) else json.dumps(result)
    if path is not None:
        _write_atomic(path, canonical)
    out.write(_render(canonical, cfg))
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return run(config_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
