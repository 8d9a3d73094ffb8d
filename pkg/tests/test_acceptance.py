"""Acceptance gate: each test checks one criterion at its stated bounds and
time limit, and prints a single PASS/FAIL line."""

from __future__ import annotations

import time

import pytest

from smashcyc.algebra import check_algebra
from smashcyc.cli import run
from smashcyc.cyclic import AlgebraCyclicModule, check_axioms, check_b_B_relations
from smashcyc.cylindrical import (CylindricalModule, check_anticommutation, check_cylindrical,
                                  check_phi_psi, diagonal, total_mixed)
from smashcyc.bimodule import regular_bimodule
from smashcyc.homology import (agree, connes_lambda_dims, cyclic_homology, hochschild_dims,
                               module_homology)
from smashcyc.hopf import (build_double_crossproduct, check_hopf,
                           check_inverse_antipode_identities, check_matched_pair,
                           drinfeld_matched_pair)
from smashcyc.presets import (dual_numbers, dual_numbers_resolution_homology, preset,
                              smash_certification, sweedler)
from smashcyc.report import Report
from smashcyc.spectral import (coinvariant_cyclic, induced_cyclic_on_homology,
                               separable_collapse_check, verify_spectral)

ALL_PRESETS = ["dual_numbers", "cyclic_group(2)", "cyclic_group(3)", "sweedler", "taft(3)",
               "module_algebra_5_2(2)", "module_algebra_5_2(3)", "pareigis_surrogate(1)",
               "pareigis_surrogate(2)", "bismash(Z2,Z2)", "bismash(Z3,Z2)",
               "drinfeld_double_sweedler", "tensor_flip(K2,K2)", "tensor_flip(D,K2)"]

# (preset, bound): dimension 4 gets the larger bounds, dimension 8 the smaller
SMALL = [("pareigis_surrogate(1)", 4, 3), ("tensor_flip(K2,K2)", 4, 3), ("sweedler", 4, 3),
         ("bismash(Z2,Z2)", 4, 3), ("module_algebra_5_2(2)", 2, 2),
         ("pareigis_surrogate(2)", 2, 2)]

ROUTE_PRESETS = ["dual_numbers", "cyclic_group(2)", "sweedler", "pareigis_surrogate(1)",
                 "tensor_flip(K2,K2)", "bismash(Z2,Z2)", "bismash(Z3,Z2)",
                 "module_algebra_5_2(2)", "pareigis_surrogate(2)"]


def _gate(capsys, number, title, limit, body):
    t0 = time.perf_counter()
    ok, detail = body()
    elapsed = time.perf_counter() - t0
    in_time = elapsed < limit
    verdict = "PASS" if ok and in_time else "FAIL"
    with capsys.disabled():
        print(f"\n[criterion {number:2d}] {verdict}  {title}  ({elapsed:.1f} s, limit {limit} s)"
              + ("" if ok else f"  {detail}"))
    assert ok, detail
    assert in_time, f"took {elapsed:.1f} s, limit {limit} s"


def _first_failure(rep: Report):
    f = rep.failures()
    return None if not f else (rep.title, f[0].identity, f[0].context, f[0].witness)


def test_criterion_1_axiom_certification(capsys):
    def body():
        preset.cache_clear()
        for name in ALL_PRESETS:
            p = preset(name)
            rep = Report(name)
            rep.extend(p.report)
            rep.extend(check_algebra(p.algebra))
            rep.extend(smash_certification(p.rmap))
            if p.hopf is not None:
                rep.extend(check_hopf(p.hopf))
            if p.pair is not None:
                rep.extend(check_matched_pair(p.pair))
                rep.extend(check_inverse_antipode_identities(p.pair))
            if not rep.passed:
                return False, _first_failure(rep)
        return True, None
    _gate(capsys, 1, "axiom certification of every preset", 5, body)


def test_criterion_2_b_B_relations(capsys):
    def body():
        for name, n, grid in SMALL:
            sm = preset(name).smash
            rep = check_b_B_relations(AlgebraCyclicModule(sm.algebra), n)
            cyl = CylindricalModule(sm.r)
            for k in range(grid + 1):
                # level grid - 1 also uses level grid
                rep.extend(check_b_B_relations(cyl.row(k), grid - 1))
                rep.extend(check_b_B_relations(cyl.column(k), grid - 1))
            if not rep.passed:
                return False, _first_failure(rep)
        return True, None
    _gate(capsys, 2, "bB + Bb = 1 - T and bT = Tb", 30, body)


def test_criterion_3_cylindrical(capsys):
    def body():
        for name, bound in [("pareigis_surrogate(1)", 3), ("module_algebra_5_2(2)", 3),
                            ("tensor_flip(K2,K2)", 3), ("drinfeld_double_sweedler", 1)]:
            cyl = CylindricalModule(preset(name).smash.r)
            rep = check_cylindrical(cyl, bound)
            rep.extend(check_anticommutation(cyl, bound))
            if not rep.passed:
                return False, _first_failure(rep)
        return True, None
    _gate(capsys, 3, "cylindrical identities and commutations", 300, body)


def test_criterion_4_phi_psi(capsys):
    def body():
        for name, n in [("pareigis_surrogate(1)", 3), ("tensor_flip(K2,K2)", 3), ("sweedler", 3),
                        ("bismash(Z2,Z2)", 3), ("module_algebra_5_2(2)", 2),
                        ("pareigis_surrogate(2)", 2)]:
            sm = preset(name).smash
            rep = check_phi_psi(CylindricalModule(sm.r), n, sm)
            if not rep.passed:
                return False, _first_failure(rep)
        return True, None
    _gate(capsys, 4, "Φ Ψ = Ψ Φ = id with cyclic intertwining", 120, body)


def test_criterion_5_route_agreement(capsys):
    def body():
        n = 2
        for name in ROUTE_PRESETS:
            sm = preset(name).smash
            cyl = CylindricalModule(sm.r)
            C = AlgebraCyclicModule(sm.algebra)
            D = diagonal(cyl, n + 1)
            for w in ("hochschild", "cyclic"):
                direct = module_homology(C, n, w)
                diag = module_homology(D, n, w)
                tot = cyclic_homology(total_mixed(cyl, n + 1), w).truncate(n)
                if not agree([direct, diag, tot]) or direct.flagged:
                    return False, (name, w, direct.dims, diag.dims, tot.dims)
        return True, None
    _gate(capsys, 5, "direct, diagonal and Tot routes agree", 600, body)


def test_criterion_6_oracles(capsys):
    def body():
        n = 2
        modules = [AlgebraCyclicModule(preset(name).algebra) for name in ROUTE_PRESETS]
        cyl = CylindricalModule(preset("pareigis_surrogate(1)").smash.r)
        modules += [diagonal(cyl), coinvariant_cyclic(cyl, "A"), coinvariant_cyclic(cyl, "B"),
                    induced_cyclic_on_homology(cyl, 1, "A")]
        for cm in modules:
            lam, box = connes_lambda_dims(cm, n), module_homology(cm, n)
            if not agree([lam, box], upto=n):
                return False, (cm.name, lam.dims, box.dims)
        D = dual_numbers()
        bar = hochschild_dims(AlgebraCyclicModule(D), 3).dims
        res = dual_numbers_resolution_homology(regular_bimodule(D), 3)
        if not bar == res == [2, 1, 1, 1]:
            return False, {"bar": bar, "resolution": res}
        return True, None
    _gate(capsys, 6, "λ-quotient and resolution oracles", 60, body)


def _cli(capsys, *argv):
    code = run(list(argv) + ["--quiet"])
    out, _ = capsys.readouterr()
    return code, out


def test_criterion_7_known_values(capsys):
    def body():
        import json
        runs = {}
        for comp, n in (("hh", "3"), ("hc", "2")):
            first = _cli(capsys, "--input", "cyclic_group(2)", "--computation", comp, "--n-max", n)
            second = _cli(capsys, "--input", "cyclic_group(2)", "--computation", comp, "--n-max", n)
            if first != second or first[0] != 0:
                return False, f"{comp}: reports differ or exit {first[0]}"
            rows = json.loads(first[1])["result"]["tables"][0]["rows"]
            runs[comp] = [r["dim"] for r in rows if not r["flagged"]]
        ok = runs == {"hh": [2, 0, 0, 0], "hc": [2, 0, 2]}
        return ok, runs
    _gate(capsys, 7, "HH(K2) = (2,0,0,0), HC(K2) = (2,0,2), byte-identical", 60, body)


def test_criterion_8_spectral_identifications(capsys):
    def body():
        n = 2
        for name in ("tensor_flip(K2,K2)", "module_algebra_5_2(2)"):
            sm = preset(name).smash
            cyl = CylindricalModule(sm.r)
            for w in ("cyclic", "hochschild"):
                direct = module_homology(AlgebraCyclicModule(sm.algebra), n, w)
                for filtration in ("rows", "columns"):
                    rep, _ = verify_spectral(cyl, filtration, w, n, direct)
                    if not rep.passed:
                        return False, _first_failure(rep)
        return True, None
    _gate(capsys, 8, "E^1, E^2 and E^∞ identifications", 600, body)


def test_criterion_9_separable_collapse(capsys):
    def body():
        sm = preset("module_algebra_5_2(2)").smash
        rep = separable_collapse_check(CylindricalModule(sm.r), 2)
        sides = {c.identity for c in rep.checks}
        if "HC(A # B) = HC(coinvariants, side A)" not in sides:
            return False, "side A was not checked"
        return rep.passed, _first_failure(rep)
    _gate(capsys, 9, "separable collapse for A = k[Z/2]", 300, body)


def test_criterion_10_sweedler_double(capsys):
    def body():
        pair = drinfeld_matched_pair(sweedler())
        rep = check_matched_pair(pair)
        rep.extend(check_inverse_antipode_identities(pair))
        dcp = build_double_crossproduct(pair)
        rep.extend(dcp.report)
        names = {c.identity for c in rep.checks}
        need = {"r equals matrix inverse of R", "R r = id", "r R = id",
                "S_B^-1 through |>", "S_H^-1 through <|"}
        if not need <= names:
            return False, f"missing checks {sorted(need - names)}"
        rep.extend(check_hopf(dcp.hopf))
        return rep.passed, _first_failure(rep)
    _gate(capsys, 10, "explicit r = R^-1 and the double is a Hopf algebra", 60, body)
