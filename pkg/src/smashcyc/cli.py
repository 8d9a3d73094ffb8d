"""Command-line front end.

    smashcyc --input PRESET_OR_JSON --computation KIND [bounds] [--format json|csv|text]

Exit status: 0 when every check passes, 1 when some check fails (the report
is still written), 2 on malformed input.  Progress goes to stderr, data to
stdout or ``--out``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from math import lcm

from .algebra import FinDimAlgebra
from .cyclic import AlgebraCyclicModule, check_axioms, check_b_B_relations
from .cylindrical import (build_cylindrical, check_anticommutation, check_cylindrical,
                          check_phi_psi, diagonal, total_mixed)
from .exactmath import MAX_ORDER, NotInvertible, field_order, parse_scalar, ExactMatrix
from .homology import (HomologyTable, agree, connes_lambda_dims, cyclic_homology,
                       hochschild_dims, module_homology, sbi_consistency, Unsupported,
                       coefficient)
from .hopf import (build_double_crossproduct, check_inverse_antipode_identities,
                   check_matched_pair, drinfeld_matched_pair)
from .presets import (Preset, UnknownPreset, UnsupportedField, check_algebra_pair,
                      preset, smash_certification, _trivial_smash)
from .report import SCHEMA_VERSION, AxiomViolation, Check, Report
from .smash import RMap, build_smash, check_subalgebra_embeddings, rmap_from_json
from .spectral import (check_duality, check_h0_coinvariants, check_row_recoordinatize,
                       coinvariant_cyclic, separable_collapse_check, verify_spectral,
                       TruncationTooSmall)

log = logging.getLogger("smashcyc")

COMPUTATIONS = ("axioms", "cylindrical-cert", "ez-check", "hh", "hc", "coinvariants",
                "spectral-rows", "spectral-cols", "separable-collapse", "matched-pair-check")


class InputError(ValueError):
    """Malformed input; ``field`` names the offending flag or JSON key."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


# ---------------------------------------------------------------------------
# input resolution


class Job:
    def __init__(self, args):
        self.args = args
        self.input = args.input
        self.preset: Preset | None = None
        self.r: RMap | None = None
        self.overridden = False

    @property
    def params(self) -> dict:
        a = self.args
        out = {"n_max": a.n_max, "p_max": a.p_max, "q_max": a.q_max, "field": a.field}
        if a.computation in ("coinvariants", "spectral-rows", "spectral-cols", "separable-collapse"):
            out["coefficients"] = a.coefficients
        if a.r_override:
            out["r_override"] = os.path.basename(a.r_override)
        return out


def _read_json(path: str, flag: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(flag, f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(flag, f"{path} is not valid JSON ({exc.msg}, line {exc.lineno})") from exc


def _rmap_from_data(data: dict, flag: str) -> RMap:
    try:
        return rmap_from_json(data)
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(flag, str(exc)) from exc


def resolve_input(job: Job) -> None:
    """Fill ``job.preset`` / ``job.r`` from --input and --r-override."""
    src = job.args.input
    if src.endswith(".json") or os.path.exists(src):
        data = _read_json(src, "--input")
        if not isinstance(data, dict):
            raise InputError("--input", "expected a JSON object")
        if "R" in data:
            job.r = _rmap_from_data(data, "--input")
        else:
            try:
                alg = FinDimAlgebra.from_json(data)
            except (ValueError, KeyError, TypeError) as exc:
                raise InputError("--input", str(exc)) from exc
            job.r = _trivial_smash(alg).r
    else:
        try:
            job.preset = preset(src)
        except UnknownPreset as exc:
            raise InputError("--input", str(exc)) from exc
        except UnsupportedField as exc:
            raise InputError("--input", str(exc)) from exc
        job.r = job.preset.rmap
    if job.args.r_override:
        data = _read_json(job.args.r_override, "--r-override")
        if not isinstance(data, dict) or "R" not in data:
            raise InputError("--r-override", "expected an object with an 'R' entry list")
        A, B = job.r.A, job.r.B
        n = A.dim * B.dim
        try:
            m = ExactMatrix.from_entries(n, n, [(int(i), int(j), parse_scalar(v))
                                                for i, j, v in data["R"]])
        except (ValueError, TypeError, IndexError) as exc:
            raise InputError("--r-override", f"bad R entries: {exc}") from exc
        job.r = RMap(A, B, m, name=data.get("name", "R (override)"))
        job.overridden = True
    _check_field(job)


def _scalar_order(mats) -> int:
    order = 1
    for m in mats:
        for col in m.cols:
            for v in col.values():
                order = lcm(order, field_order(v))
    return order


def _check_field(job: Job) -> None:
    choice = job.args.field
    if choice == "rational":
        allowed = 1
    elif choice.startswith("cyclotomic:"):
        try:
            allowed = int(choice.split(":", 1)[1])
        except ValueError as exc:
            raise InputError("--field", f"bad order in {choice!r}") from exc
        if not 1 <= allowed <= MAX_ORDER:
            raise InputError("--field", f"cyclotomic order must lie in 1..{MAX_ORDER}")
    else:
        raise InputError("--field", "expected 'rational' or 'cyclotomic:N'")
    r = job.r
    need = _scalar_order([r.A.mult, r.B.mult, r.matrix])
    if allowed % need:
        raise InputError("--field", f"the input needs Q(zeta_{need}), which is not inside {choice}")


# ---------------------------------------------------------------------------
# computations; each returns (payload dict, passed)


def _smash(job: Job):
    if job.preset is not None and not job.overridden and job.preset.smash is not None:
        return job.preset.smash
    return build_smash(job.r)


def _report_payload(rep: Report) -> dict:
    return {"report": rep.to_dict()}


def run_axioms(job: Job):
    rep = Report(f"axioms for {job.input}")
    r = job.r
    rep.extend(check_algebra_pair(r))
    try:
        rep.extend(smash_certification(r))
    except NotInvertible:
        rep.add(Check("invertible", False, {}, {"error": "R is singular"}))
    if job.preset is not None and not job.overridden:
        p = job.preset
        rep.extend(p.report)
        if p.pair is not None:
            rep.extend(check_matched_pair(p.pair))
            rep.extend(check_inverse_antipode_identities(p.pair))
    if rep.passed:
        sm = build_smash(r, check=False)
        rep.extend(check_subalgebra_embeddings(sm))
        C = AlgebraCyclicModule(sm.algebra)
        n = job.args.n_max
        log.info("cyclic module axioms of C(%s) up to level %d", sm.algebra.name, n)
        rep.extend(check_axioms(C, n, "cyclic"))
        rep.extend(check_b_B_relations(C, n))
    return _report_payload(rep), rep.passed


def _grid_bound(job: Job) -> int:
    return max(job.args.p_max, job.args.q_max)


def run_cylindrical(job: Job):
    bound = _grid_bound(job)
    cyl = build_cylindrical(job.r, bound, check=False)
    rep = Report(f"cylindrical certification of {cyl.name}, bound {bound}")
    log.info("cylindrical identities on the grid p, q <= %d", bound)
    rep.extend(check_cylindrical(cyl, bound))
    rep.extend(check_anticommutation(cyl, bound))
    for q in range(bound + 1):
        rep.extend(check_b_B_relations(cyl.row(q), bound - 1))
    for p in range(bound + 1):
        rep.extend(check_b_B_relations(cyl.column(p), bound - 1))
    if rep.passed:
        n = job.args.n_max
        log.info("diagonal and Φ/Ψ up to level %d", n)
        rep.extend(check_axioms(cyl.diagonal(), n, "cyclic"))
        rep.extend(check_phi_psi(cyl, n))
        rep.extend(check_row_recoordinatize(cyl, bound))
    return _report_payload(rep), rep.passed


def _tables_payload(tables, rep: Report | None = None) -> dict:
    out = {"tables": [t.to_dict() for t in tables]}
    if rep is not None:
        out["report"] = rep.to_dict()
    return out


def run_homology(job: Job, w: str):
    sm = _smash(job)
    C = AlgebraCyclicModule(sm.algebra)
    n = job.args.n_max
    log.info("%s of %s up to degree %d", "HH" if w == "hochschild" else "HC", sm.algebra.name, n)
    if w == "hochschild":
        tab = hochschild_dims(C, n, workers=job.args.workers)
    else:
        tab = module_homology(C, n, "cyclic", workers=job.args.workers)
    return _tables_payload([tab]), True


def run_ez(job: Job):
    n = job.args.n_max
    sm = _smash(job)
    cyl = build_cylindrical(sm, n + 1, check=False)
    C = AlgebraCyclicModule(sm.algebra)
    D = diagonal(cyl, n + 1)
    rep = Report(f"route agreement for {sm.algebra.name}")
    tables = []
    for w in ("hochschild", "cyclic"):
        log.info("%s through three routes", w)
        direct = module_homology(C, n, w, workers=job.args.workers)
        diag = module_homology(D, n, w, workers=job.args.workers)
        tot = cyclic_homology(total_mixed(cyl, n + 1, normalized=True), w,
                              workers=job.args.workers).truncate(n)
        direct.title, diag.title, tot.title = (f"{w}: C({sm.algebra.name})", f"{w}: diagonal",
                                               f"{w}: Tot")
        tables += [direct, diag, tot]
        ok = agree([direct, diag, tot])
        rep.add(Check(f"{w} routes agree", ok, {"n_max": n},
                      None if ok else {t.title: t.dims for t in (direct, diag, tot)}))
        if w == "cyclic":
            lam = connes_lambda_dims(C, n)
            lam.title = "cyclic: λ-quotient"
            tables.append(lam)
            ok = agree([direct, lam])
            rep.add(Check("λ-quotient agrees", ok, {"n_max": n},
                          None if ok else {"lambda": lam.dims, "direct": direct.dims}))
            rep.extend(sbi_consistency(tables[0], direct))
    return _tables_payload(tables, rep), rep.passed


def run_coinvariants(job: Job):
    n = job.args.n_max
    w = job.args.coefficients
    cyl = build_cylindrical(job.r, n + 1, check=False)
    rep = Report(f"coinvariant cyclic modules of {cyl.name}")
    tables = []
    for side in ("A", "B"):
        co = coinvariant_cyclic(cyl, side)
        log.info("coinvariants, side %s", side)
        rep.extend(check_axioms(co, n + 1, "cyclic"))
        rep.extend(check_h0_coinvariants(cyl, n, side))
        if rep.passed:
            tab = module_homology(co, n, w)
            tab.title = f"{w}: {co.name}"
            tables.append(tab)
        tables.append(HomologyTable(f"dim {co.name}_n", [co.dim(k) for k in range(n + 1)]))
    return _tables_payload(tables, rep), rep.passed


def run_spectral(job: Job, filtration: str):
    n = job.args.n_max
    w = job.args.coefficients
    sm = _smash(job)
    cyl = build_cylindrical(sm, n + 1, check=False)
    C = AlgebraCyclicModule(sm.algebra)
    direct = module_homology(C, n, w)
    log.info("%s spectral sequence (%s) up to total degree %d", filtration, w, n)
    rep, ss = verify_spectral(cyl, filtration, w, n, direct=direct)
    rep.extend(check_duality(cyl, w, n))
    return {"spectral_sequence": ss.to_dict(), "report": rep.to_dict()}, rep.passed


def run_separable(job: Job):
    n = job.args.n_max
    sm = _smash(job)
    cyl = build_cylindrical(sm, n + 1, check=False)
    rep = separable_collapse_check(cyl, n, job.args.coefficients)
    return _report_payload(rep), rep.passed


def run_matched_pair(job: Job):
    p = job.preset
    if p is None or job.overridden:
        raise InputError("--input", "matched-pair-check needs a Hopf algebra or matched-pair preset")
    if p.pair is not None:
        pair = p.pair
    elif p.hopf is not None:
        pair = drinfeld_matched_pair(p.hopf)
    else:
        raise InputError("--input", f"{job.input} has no Hopf structure")
    rep = Report(f"matched pair {pair.name}")
    rep.extend(check_matched_pair(pair))
    rep.extend(check_inverse_antipode_identities(pair))
    if rep.passed:
        rep.extend(build_double_crossproduct(pair).report)
    return _report_payload(rep), rep.passed


RUNNERS = {
    "axioms": run_axioms,
    "cylindrical-cert": run_cylindrical,
    "ez-check": run_ez,
    "hh": lambda job: run_homology(job, "hochschild"),
    "hc": lambda job: run_homology(job, "cyclic"),
    "coinvariants": run_coinvariants,
    "spectral-rows": lambda job: run_spectral(job, "rows"),
    "spectral-cols": lambda job: run_spectral(job, "columns"),
    "separable-collapse": run_separable,
    "matched-pair-check": run_matched_pair,
}


# ---------------------------------------------------------------------------
# output


def _csv(doc: dict) -> str:
    """Report checks as identity,passed,context,witness; tables as
    table,n,dim,flagged; spectral pages as page,p,q,dim,rank."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    res = doc["result"]
    if "spectral_sequence" in res:
        ss = res["spectral_sequence"]
        w.writerow(["page", "p", "q", "dim", "rank"])
        for page in ss["pages"]:
            ranks = {(e["p"], e["q"]): e["rank"] for e in page["differential_ranks"]}
            for e in page["entries"]:
                w.writerow([page["page"], e["p"], e["q"], e["dim"], ranks.get((e["p"], e["q"]), "")])
        for e in ss["e_infinity"]:
            w.writerow(["inf", e["p"], e["q"], e["dim"], ""])
    elif "tables" in res:
        w.writerow(["table", "n", "dim", "flagged"])
        for t in res["tables"]:
            for r in t["rows"]:
                w.writerow([t["title"], r["n"], r["dim"], str(r["flagged"]).lower()])
    if "report" in res:
        if "tables" in res or "spectral_sequence" in res:
            w.writerow([])
        w.writerow(["identity", "passed", "context", "witness"])
        for c in res["report"]["checks"]:
            w.writerow([c["identity"], str(c["passed"]).lower(),
                        json.dumps(c.get("context", {}), sort_keys=True, ensure_ascii=False),
                        json.dumps(c["witness"], sort_keys=True, ensure_ascii=False)
                        if "witness" in c else ""])
    return buf.getvalue()


def _text(doc: dict) -> str:
    res = doc["result"]
    lines = [f"{doc['computation']} on {doc['input']}: {'PASS' if doc['passed'] else 'FAIL'}"]
    for t in res.get("tables", []):
        lines.append(HomologyTable(t["title"], [r["dim"] for r in t["rows"]],
                                   [r["n"] for r in t["rows"] if r["flagged"]]).to_text())
    if "spectral_sequence" in res:
        ss = res["spectral_sequence"]
        for page in ss["pages"]:
            entries = ", ".join(f"({e['p']},{e['q']}):{e['dim']}" for e in page["entries"])
            lines.append(f"E^{page['page']}: {entries}")
        lines.append("E^inf: " + ", ".join(f"({e['p']},{e['q']}):{e['dim']}"
                                           for e in ss["e_infinity"]))
    if "report" in res:
        rep = res["report"]
        lines.append(f"{rep['title']}: {rep['n_checks'] - rep['n_failed']}/{rep['n_checks']} checks pass")
        for c in rep["checks"]:
            if not c["passed"]:
                lines.append(f"  FAIL {c['identity']} {json.dumps(c.get('context', {}), sort_keys=True)}"
                             f" witness={json.dumps(c.get('witness'), sort_keys=True, ensure_ascii=False)}")
    return "\n".join(lines) + "\n"


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=2) + "\n"
    if fmt == "csv":
        return _csv(doc)
    return _text(doc)


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="smashcyc", description=(
        "Exact cyclic homology computations for strong smash product algebras."))
    ap.add_argument("--input", required=True,
                    help="preset name (e.g. 'pareigis_surrogate(1)') or a JSON algebra / R-map file")
    ap.add_argument("--computation", required=True, choices=COMPUTATIONS)
    ap.add_argument("--n-max", type=int, default=2, help="top homological degree (default 2)")
    ap.add_argument("--p-max", type=int, default=None, help="grid bound in the B direction")
    ap.add_argument("--q-max", type=int, default=None, help="grid bound in the A direction")
    ap.add_argument("--format", choices=("json", "csv", "text"), default="json")
    ap.add_argument("--out", default=None, help="output file (default stdout)")
    ap.add_argument("--workers", type=int, default=1, help="processes for rank computations")
    ap.add_argument("--field", default="rational", help="rational or cyclotomic:N")
    ap.add_argument("--coefficients", choices=("hochschild", "cyclic", "negative", "periodic"),
                    default="cyclic", help="coefficient module W for spectral/coinvariant runs")
    ap.add_argument("--r-override", default=None,
                    help="JSON file with an 'R' entry list replacing the input's R-map")
    ap.add_argument("--quiet", action="store_true", help="no progress messages")
    return ap


def _validate(args) -> None:
    if args.p_max is None:
        args.p_max = args.n_max
    if args.q_max is None:
        args.q_max = args.n_max
    for flag, v in (("--n-max", args.n_max), ("--p-max", args.p_max), ("--q-max", args.q_max),
                    ("--workers", args.workers)):
        if v < 1:
            raise InputError(flag, "must be a positive integer")
    if args.coefficients in ("negative", "periodic"):
        try:
            coefficient(args.coefficients)
        except Unsupported as exc:
            raise InputError("--coefficients", str(exc)) from exc


def run(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING if args.quiet else logging.INFO,
                        format="smashcyc: %(message)s", force=True)
    job = Job(args)
    try:
        _validate(args)
        resolve_input(job)
        t0 = time.perf_counter()
        try:
            result, passed = RUNNERS[args.computation](job)
        except (AxiomViolation, TruncationTooSmall) as exc:
            c = getattr(exc, "check", None)
            rep = Report(f"{args.computation} stopped")
            rep.add(c if c is not None else Check(type(exc).__name__, False, {}, {"error": str(exc)}))
            result, passed = _report_payload(rep), False
        log.info("done in %.2f s", time.perf_counter() - t0)
    except InputError as exc:
        print(f"smashcyc: error: {exc}", file=sys.stderr)
        return 2
    doc = {
        "schema_version": SCHEMA_VERSION,
        "computation": args.computation,
        "input": args.input,
        "parameters": job.params,
        "passed": passed,
        "result": result,
    }
    text = render(doc, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if passed else 1


def main() -> None:
    sys.exit(run())
