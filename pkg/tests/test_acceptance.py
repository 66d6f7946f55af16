"""One test per acceptance criterion; each records a PASS/FAIL line printed at the end of the run."""

import math
import time
import warnings
from pathlib import Path

import mpmath as mp
import numpy as np
import pytest

from modmass import cli
from modmass import experiments as ex
from modmass.forms import CuspForm, Eisenstein, RaisedCuspForm, laplacian_numeric, lam, lowering_numeric, raising_numeric
from modmass.geometry import HPoint
from modmass.hecke import eigenform, eigenforms, hecke_suite
from modmass.io import ingest_maass
from modmass.numerics import ENV_PRECISION, Precision
from modmass.quadrature import petersson

MAASS = Path(__file__).parent / "data" / "maass_synthetic.txt"
PREC = Precision(192)
POINTS = [HPoint(mp.mpf(x), mp.mpf(y)) for x, y in ((0.1, 1), (0, 1.3), (0.3, 0.9), (-0.25, 1.1), (0.45, 0.95), (0.2, 1.6), (-0.4, 2.0), (0.05, 2.5), (-0.15, 0.99), (0.35, 1.4))]


@pytest.fixture(autouse=True)
def _quiet():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        yield


def _failed(rep):
    return [f"{c.name} = {ex.fmt(c.value)}" for c in rep.checks if c.asserted and not c.passed]


def test_criterion_01_rankin_selberg(criterion):
    t0 = time.perf_counter()
    rep = ex.rankin_selberg_report([((12, 0), (12, 0)), ((12, 0), (16, 0)), ((16, 0), (20, 0))], s=2.0, tol=1e-4)
    elapsed = time.perf_counter() - t0
    worst = max(r["rel_error"] for r in rep.rows)
    ok = rep.passed and elapsed <= 600
    criterion(1, ok, f"RS identity at s=2 for (12,12), (12,16), (16,20): worst rel error {worst:.2e} (<= 1e-4), {elapsed:.1f} s (<= 600 s)")
    assert ok, _failed(rep)


def test_criterion_02_raising_isometry(criterion):
    f = eigenform(12)
    norms = {k2: math.sqrt(petersson(RaisedCuspForm(f, k2), RaisedCuspForm(f, k2), tol=1e-10).value.real) for k2 in (16, 20)}
    dev = max(abs(v - 1) for v in norms.values())
    ok = dev <= 1e-4
    criterion(2, ok, f"||R_12^16 F_12|| = {norms[16]:.10f}, ||R_12^20 F_12|| = {norms[20]:.10f} (1 +- 1e-4)")
    assert ok


def test_criterion_03_whittaker(criterion):
    rep = ex.whittaker_report(prec=PREC)
    vals = {c.name: c.value for c in rep.checks}
    criterion(3, rep.passed, "; ".join(f"{k}: {v:.1e}" for k, v in vals.items()) + " (1e-25, 1e-20)")
    assert rep.passed, _failed(rep)


def test_criterion_04_eisenstein(criterion):
    rep = ex.eisenstein_report(ks=(0, 2, 4), s=2.0, prec=PREC)
    coset, residue = rep.checks[0], rep.checks[1]
    ok = coset.passed and residue.passed
    criterion(4, ok, f"coset vs Fourier at 10 points, k in (0,2,4): {coset.value:.1e} (1e-8); residue |(s-1)E_0 - 3/pi| = {residue.value:.1e} (1e-4)")
    assert ok, _failed(rep)


def test_criterion_05_eigenfunctions(criterion):
    worst_rel, literal = 0.0, []
    worst_lower = 0.0
    with PREC.workprec():
        for k in (12, 16):
            F = CuspForm(eigenform(k), prec=PREC)
            ev = lam(mp.mpf(k) / 2)
            for z in POINTS:
                v = F.evaluate(z, reduce_first=False)
                d = laplacian_numeric(F, z)
                # eigenvalue lambda(k/2) in the sense (Delta_k + lambda) F = 0
                worst_rel = max(worst_rel, float(abs(d + ev * v) / abs(ev * v)))
                literal.append(complex(d / (ev * v)).real)
                worst_lower = max(worst_lower, float(abs(lowering_numeric(F, z))))
        E0, E2 = Eisenstein(0, 2, prec=PREC), Eisenstein(2, 2, prec=PREC)
        worst_k = 0.0
        for z in POINTS[1:]:
            rhs = 2 * E2.evaluate(z)
            worst_k = max(worst_k, float(abs(raising_numeric(E0, z) - rhs) / abs(rhs)))
    ok = worst_rel <= 1e-6 and worst_lower <= 1e-8 and worst_k <= 1e-6
    criterion(
        5,
        ok,
        f"(Delta_k + lambda(k/2)) F_k = 0 rel {worst_rel:.1e} (1e-6; Delta_k F / ((k/2)(1-k/2) F) = {np.mean(literal):+.6f}); "
        f"|Lambda_k F_k| {worst_lower:.1e} (1e-8); K_0 E = 2 E_2 rel {worst_k:.1e} (1e-6)",
    )
    assert ok


def test_criterion_06_normalization(criterion):
    f = eigenform(12)
    q = petersson(CuspForm(f, l2_normalized=False), CuspForm(f, l2_normalized=False), tol=1e-10)
    ref = math.gamma(12) * float(f.l_sym2_at_1) / (2 * math.pi**2 * (4 * math.pi) ** 11)
    rel = abs(q.value.real / ref - 1)
    ok = rel <= 1e-3
    criterion(6, ok, f"<Delta, Delta> = {q.value.real:.12e} vs Gamma(12) L(1,sym^2)/(2 pi^2 (4 pi)^11) = {ref:.12e}, rel {rel:.1e} (1e-3)")
    assert ok


def test_criterion_07_hecke_suite(criterion):
    failures, forms = 0, 0
    for k in ex.DESK_WEIGHTS + ex.DIM2_WEIGHTS:
        for f in eigenforms(k, 10_000):
            forms += 1
            failures += sum(len(c.failures) for c in hecke_suite(f))
    ok = failures == 0
    criterion(7, ok, f"multiplicativity, lambda(p^2) = lambda(p)^2 - 1, |lambda(p)| <= 2 on {forms} forms, n <= 1e4: {failures} failures")
    assert ok


def test_criterion_08_bound_suites(criterion):
    reps = [
        ex.incomplete_eisenstein_bound_suite(),
        ex.maass_bound_suite(ingest_maass(MAASS)),
        ex.jakobson_bound_suite(),
    ]
    ok = all(r.passed for r in reps)
    fitted = ", ".join(f"{k} = {v:.3g}" for r in reps for k, v in r.fitted.items())
    criterion(8, ok, f"one fitted C per grid: {fitted}")
    assert ok


def test_criterion_09_sieve(criterion):
    f = eigenform(12, 100_010)
    rep = ex.sieve_suite(f, f)
    bounded, monotone = rep.checks
    ok = rep.passed
    criterion(9, ok, f"(Delta, Delta): C = {bounded.value:.3g}; sequences rising by > 10% in x: {monotone.value} of 40")
    assert ok, _failed(rep)


@pytest.fixture(scope="module")
def que():
    return ex.que_scan(ex.DESK_WEIGHTS, 2.0)


def test_criterion_10_decorrelation(criterion, que):
    by_name = {c.name: c for c in que.checks}
    a = by_name["diagonal gap at k=26 below k=12"]
    b = [c for c in que.checks if c.name.startswith("off-diagonal (")]
    c = [c for c in que.checks if c.name.startswith("Gamma envelope")]
    ok_a, ok_b, ok_c = a.passed, all(x.passed for x in b), all(x.passed for x in c)
    ok = ok_a and ok_b and ok_c
    criterion(
        10,
        ok,
        f"(a) {'PASS' if ok_a else 'FAIL'} gap_26/gap_12 = {a.value:.3f}; (b) {'PASS' if ok_b else 'FAIL'} {sum(x.passed for x in b)}/{len(b)} off-diagonal below diagonal; "
        f"(c) {'PASS' if ok_c else 'FAIL'} {sum(x.passed for x in c)}/{len(c)} envelopes",
    )
    assert ok


def test_criterion_11_determinism(criterion, tmp_path, monkeypatch):
    monkeypatch.delenv(ENV_PRECISION, raising=False)
    same = {}
    for cmd in ("selftest", "que-scan"):
        outs = []
        for i in range(2):
            p = tmp_path / f"{cmd}-{i}.csv"
            cli.cli_main([cmd, "--out", str(p)])
            outs.append(p.read_bytes())
        same[cmd] = outs[0] == outs[1] and len(outs[0]) > 0
    ok = all(same.values())
    criterion(11, ok, ", ".join(f"{k}: {'identical' if v else 'differ'}" for k, v in same.items()))
    assert ok
