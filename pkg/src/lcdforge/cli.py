"""``lcdforge`` command line: construct, atlas, reproduce, sweep, verify.

Exit codes: 0 success, 1 malformed input, 2 precondition failure,
3 the code has a nontrivial hull (construct/verify) or a fixture FAILed
(reproduce uses 1 for unknown ids and 3 for failures).
"""
from __future__ import annotations

import argparse
import itertools
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .cyclotomic import atlas
from .distance import budget_from_env, distance_report
from .field import FieldError
from .fixtures import FEASIBILITY, run_fixture, select
from .matrix import LinearCode, MatrixFormatError, hull_dimension, parse_matrix
from .subfield import KINDS, RECIPROCITY, ConstructionRequest, PreconditionError, construct
from .variety import ConfigError, VarietyConfig

EXIT_OK, EXIT_MALFORMED, EXIT_PRECONDITION, EXIT_HULL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _ints(text: str) -> list[int]:
    text = text.strip()
    if text in ("", "none", "-"):
        return []
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _config(args) -> VarietyConfig:
    return VarietyConfig(args.p, args.r, tuple(args.N), tuple(args.J))


def _add_config(sp) -> None:
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--N", type=_ints, required=True, help="comma-separated N_1,...,N_m")
    sp.add_argument("--J", type=_ints, default=[], help="comma-separated 1-based indices, empty for none")


def _emit(doc, out: str | None) -> None:
    text = doc if isinstance(doc, str) else json.dumps(doc, sort_keys=True)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# --- construct ------------------------------------------------------------------

def _request_from_args(args) -> ConstructionRequest:
    params: dict = {}
    for name in ("t", "delta", "designed"):
        v = getattr(args, name)
        if v is not None:
            params[name] = v
    if args.alpha is not None:
        params["alpha"] = args.alpha
    if args.delta_set is not None:
        try:
            params["delta_set"] = json.loads(args.delta_set)
        except json.JSONDecodeError as exc:
            raise UsageError(f"--delta-set is not valid JSON: {exc}") from None
    if args.reciprocity:
        params["reciprocity"] = args.reciprocity
    return ConstructionRequest(_config(args), args.kind, params)


def cmd_construct(args) -> int:
    req = _request_from_args(args)
    rep = construct(req, distance=args.distance, w_max=args.w_max, emit_matrix=args.emit_matrix)
    _emit(rep.to_dict(), args.out)
    return EXIT_HULL if rep.hull_dim else EXIT_OK


# --- atlas ----------------------------------------------------------------------

def cmd_atlas(args) -> int:
    _emit(atlas(_config(args)).to_dict(), args.out)
    return EXIT_OK


# --- reproduce ----------------------------------------------------------------------

def _run_one(job):
    fid, cap = job
    from .fixtures import lookup
    return run_fixture(lookup(fid), feasibility_cap=cap).to_json()


def _jobs(n: int | None) -> int:
    return max(1, n if n else (os.cpu_count() or 1))


def cmd_reproduce(args) -> int:
    fixtures = select(args.only)
    if not fixtures:
        print(f"no fixture matches {args.only!r}", file=sys.stderr)
        return EXIT_MALFORMED
    jobs = [(f.id, args.feasibility_cap) for f in sorted(fixtures, key=lambda f: f.id)]
    workers = _jobs(args.jobs)
    if workers == 1:
        lines = [_run_one(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            lines = list(pool.map(_run_one, jobs))
    out = open(args.out, "w") if args.out else sys.stdout
    verdicts = []
    try:
        # sorted by fixture id so the stream does not depend on scheduling
        for line in sorted(lines, key=lambda x: json.loads(x)["id"]):
            out.write(line + "\n")
            verdicts.append(json.loads(line))
        counts = {"pass": 0, "fail": 0, "discrepancy": 0}
        for v in verdicts:
            counts[v["verdict"].lower()] += 1
        out.write(json.dumps({"summary": counts}, sort_keys=True) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_HULL if counts["fail"] else EXIT_OK


# --- sweep ----------------------------------------------------------------------

def admissible_N(p: int, r: int, max_n: int) -> list[int]:
    q = p**r
    return [N for N in range(3, max_n + 2) if (q - 1) % (N - 1) == 0]


def sweep_requests(p: int, r: int, max_m: int, kinds: list[str], max_n: int, t_max: int):
    """Admissible requests within the caps, in a fixed order."""
    Ns = admissible_N(p, r, max_n + 1)
    for m in range(1, max_m + 1):
        for N in itertools.combinations_with_replacement(Ns, m):
            full = tuple(range(1, m + 1))
            Js = [full]
            partial = tuple(j + 1 for j in range(m) if N[j] % p)
            if partial != full:
                Js.append(partial)
            for J in Js:
                n = math.prod(N[j] - (1 if j + 1 in J else 0) for j in range(m))
                if n > max_n or n < 2:
                    continue
                cfg = VarietyConfig(p, r, N, J)
                for kind in kinds:
                    if kind in ("hyperbolic-ss", "hyperbolic-ss-shifted"):
                        for t in range(2, t_max + 1):
                            yield ConstructionRequest(cfg, kind, {"t": t})
                    elif kind == "nok" and m == 1:
                        for t in range(0, t_max + 1):
                            yield ConstructionRequest(cfg, kind, {"t": t})
                    elif kind == "bch-dimension" and m == 1:
                        for d in range(2, t_max + 1):
                            yield ConstructionRequest(cfg, kind, {"delta": d})


def _sweep_one(job):
    req_dict, mode, search_budget = job
    req = ConstructionRequest.from_dict(req_dict)
    try:
        rep = construct(req, distance=mode, search_budget=search_budget)
    except (PreconditionError, ConfigError) as exc:
        return None, f"skip {json.dumps(req_dict, sort_keys=True)}: {exc}"
    return rep.to_json(), None


def cmd_sweep(args) -> int:
    kinds = [k.strip() for k in args.kinds.split(",") if k.strip()]
    bad = [k for k in kinds if k not in KINDS]
    if bad:
        raise UsageError(f"unknown kinds: {', '.join(bad)}")
    try:
        reqs = list(sweep_requests(args.p, args.r, args.max_m, kinds, args.max_n, args.t_max))
    except (ConfigError, FieldError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_PRECONDITION
    jobs = [(r.to_dict(), args.distance, args.search_budget) for r in reqs]
    workers = _jobs(args.jobs)
    if workers == 1:
        results = [_sweep_one(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_one, jobs))
    out = open(args.out, "w") if args.out else sys.stdout
    best: dict[tuple[int, int], dict] = {}
    try:
        for line, notice in results:
            if notice:
                print(notice, file=sys.stderr)
                continue
            out.write(line + "\n")
            rep = json.loads(line)
            if not rep["lcd"]:
                continue
            key = (rep["n"], rep["k"])
            cur = best.get(key)
            if cur is None or rep["d_lower"] > cur["d_lower"]:
                best[key] = {"n": rep["n"], "k": rep["k"], "d_lower": rep["d_lower"],
                             "d_exact": rep["d_exact"], "request": rep["provenance"]}
        if best:
            table = [best[k] for k in sorted(best)]
            out.write(json.dumps({"summary": table}, sort_keys=True) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


# --- verify ---------------------------------------------------------------------

def cmd_verify(args) -> int:
    text = sys.stdin.read() if args.matrix == "-" else open(args.matrix).read()
    designed, w_max = args.designed, args.w_max
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MatrixFormatError(f"invalid JSON: {exc.msg}", exc.lineno) from None
        if "generator" not in doc:
            raise MatrixFormatError("report has no 'generator' key", 1)
        text = doc["generator"]
        if designed is None:
            designed = doc.get("d_designed")
    M = parse_matrix(text)
    C = LinearCode.from_rows(M.field, M.data, M.cols, provenance={"kind": "verify"})
    method = "both" if C.n * max(C.n - C.k, 1) <= 4_000_000 else "gram"
    hull = hull_dimension(C, method)
    res = distance_report(C, designed or 1, budget_from_env(), w_max)
    doc = {
        "field": {"p": M.field.p, "r": M.field.r},
        "n": C.n,
        "k": C.k,
        "hull_dim": hull,
        "lcd": hull == 0,
        "hull_method": method,
        "d_exact": res.d,
        "d_lower": res.lower,
        "d_upper": res.upper,
        "d_search_window": res.certified_window,
        "d_designed": designed or 1,
        "distance": res.to_dict(),
    }
    _emit(doc, args.out)
    return EXIT_HULL if hull else EXIT_OK


# --- entry point --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="lcdforge", description="LCD codes from J-affine variety codes")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", help="build one code and report its parameters")
    _add_config(c)
    c.add_argument("--kind", required=True, choices=KINDS)
    c.add_argument("--t", type=int)
    c.add_argument("--delta", type=int)
    c.add_argument("--alpha", type=_ints)
    c.add_argument("--delta-set", dest="delta_set", help="JSON list of exponents")
    c.add_argument("--designed", type=int, help="designed distance for custom-delta")
    c.add_argument("--reciprocity", choices=RECIPROCITY)
    c.add_argument("--distance", choices=("auto", "designed", "off"), default="auto")
    c.add_argument("--w-max", dest="w_max", type=int)
    c.add_argument("--emit-matrix", dest="emit_matrix", action="store_true")
    c.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    a = sub.add_parser("atlas", help="cyclotomic sets and the A1 representatives")
    _add_config(a)
    a.add_argument("--out")
    a.set_defaults(func=cmd_atlas)

    r = sub.add_parser("reproduce", help="run the fixture table")
    r.add_argument("--only", help="fixture id glob")
    r.add_argument("--feasibility-cap", dest="feasibility_cap", choices=FEASIBILITY)
    r.add_argument("--jobs", type=int)
    r.add_argument("--out")
    r.set_defaults(func=cmd_reproduce)

    s = sub.add_parser("sweep", help="construct every admissible code within caps")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--max-m", dest="max_m", type=int, default=3)
    s.add_argument("--kinds", default="hyperbolic-ss-shifted")
    s.add_argument("--max-n", dest="max_n", type=int, default=150)
    s.add_argument("--t-max", dest="t_max", type=int, default=4)
    s.add_argument("--distance", choices=("auto", "designed", "off"), default="auto")
    s.add_argument("--search-budget", dest="search_budget", type=int, default=1 << 20)
    s.add_argument("--jobs", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_sweep)

    v = sub.add_parser("verify", help="hull and distance of a user-supplied generator matrix")
    v.add_argument("--matrix", required=True, help="matrix text file, a construct report, or - for stdin")
    v.add_argument("--w-max", dest="w_max", type=int)
    v.add_argument("--designed", type=int)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_MALFORMED
    except MatrixFormatError as exc:
        print(f"malformed matrix: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except OSError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_MALFORMED
    except (PreconditionError, ConfigError, FieldError) as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
