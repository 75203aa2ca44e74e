"""The twelve acceptance criteria, exact tolerances, one report line each."""

import json
import random
import subprocess
import sys
import time

from _support import TWO_PLANES, PLANE_LINE, ideal_pairs, ideal_suite, known_modules, random_known_module, record
from _support import rand_representation, triangular_product_algebra
from test_nori import check_random_diagram
from norilc.algebra import (
    AModule,
    FDAlgebra,
    composition_length,
    direct_sum,
    dual_comodule,
    dualize_back,
    is_module_map,
    nilpotency_index,
    radical_elements,
    round_trip_isomorphism,
)
from norilc.bridge import motive_sweep
from norilc.localcoh import (
    Stratification,
    cellular_check,
    five_term_check,
    lyubeznik_table,
    mayer_vietoris,
    prop3_run,
    skeleton_stratification,
    strat_complex,
)
from norilc.monomial import SqfIdeal, clamp, local_cohomology_dims, oracle_extended, to_mask
from norilc.nori import end_algebra
from norilc.ratlin import Matrix, rank


def table_only(entries, d, nonzero):
    return all(entries[r][i] == nonzero.get((r, i), 0) for r in range(d + 1) for i in range(d + 1))


def box_matches_oracle(i, window):
    box = local_cohomology_dims(i)
    for k in range(i.n + 1):
        for a, v in oracle_extended(i, k, window).items():
            if box[k][clamp(a)] != v:
                return False
    return True


def test_criterion_01_point():
    t0 = time.perf_counter()
    ok = True
    for n in (1, 2, 3, 4):
        t = lyubeznik_table(SqfIdeal.maximal(n))
        ok &= t.d == 0 and t.entries == [[1]]
    dt = time.perf_counter() - t0
    ok &= dt < 1.0
    record(1, ok, f"point ideal n<=4: lambda = [[1]]; {dt:.2f}s (< 1s)")
    assert ok


def test_criterion_02_hypersurface():
    t0 = time.perf_counter()
    i = SqfIdeal.from_supports(3, [[1]])
    t = lyubeznik_table(i)
    ok = t.d == 2 and table_only(t.entries, 2, {(2, 2): 1})
    ok &= box_matches_oracle(i, (-2, 1))
    dt = time.perf_counter() - t0
    ok &= dt < 5.0
    record(2, ok, f"(x1), n=3: lambda[2][2]=1 only, extended-box oracle agrees; {dt:.2f}s (< 5s)")
    assert ok


def test_criterion_03_two_planes():
    t0 = time.perf_counter()
    t = lyubeznik_table(TWO_PLANES)
    ok = t.d == 2 and table_only(t.entries, 2, {(0, 1): 1, (2, 2): 2})
    h3 = local_cohomology_dims(TWO_PLANES)[3]
    full = to_mask([1, 2, 3, 4])
    ok &= [s for s, v in enumerate(h3) if v] == [full] and h3[full] == 1
    mv = mayer_vietoris(SqfIdeal.from_supports(4, [[1], [2]]), SqfIdeal.from_supports(4, [[3], [4]]))
    ok &= mv.exact and mv.matches_intersection and mv.dims["intersection"][3] == h3
    dt = time.perf_counter() - t0
    ok &= dt < 60.0
    record(3, ok, f"two planes: lambda[0][1]=1, lambda[2][2]=2, H^3 = E at [4]; {dt:.2f}s (< 60s)")
    assert ok


def test_criterion_04_mayer_vietoris_suite():
    bad = []
    for k, (i, j) in enumerate(ideal_pairs(7, 50)):
        rep = mayer_vietoris(i, j)
        if not (rep.exact and rep.matches_intersection):
            bad.append((k, rep.failures[:2]))
    record(4, not bad, f"Mayer-Vietoris on 50 random pairs: {50 - len(bad)}/50 exact and matching")
    assert not bad, bad


def test_criterion_05_clamp_suite():
    ideals = ideal_suite(11, 25)
    bad = [k for k, i in enumerate(ideals) if not box_matches_oracle(i, (-2, 1))]
    record(5, not bad, f"clamp stabilization on 25 random ideals: {25 - len(bad)}/25 agree on {{-2..1}}^n")
    assert not bad, bad


def test_criterion_06_stratification_suite():
    bad = []
    for k, i in enumerate(ideal_suite(11, 25)):
        s = skeleton_stratification(i)
        if not cellular_check(s).cellular:
            bad.append((k, "not cellular"))
            continue
        rep = strat_complex(s)
        direct = local_cohomology_dims(i)
        if not rep.matches or any(rep.dims.get(d, (0,) * (1 << i.n)) != direct[d] for d in direct):
            bad.append((k, "dims differ"))
    coarse = Stratification(3, (SqfIdeal.unit(3), SqfIdeal.from_supports(3, [[1], [2]]), PLANE_LINE))
    coarse_fails = not cellular_check(coarse).cellular
    ok = not bad and coarse_fails
    record(6, ok, f"skeleton strata cellular with matching dims {25 - len(bad)}/25; coarse plane+line rejected: {coarse_fails}")
    assert ok, bad


def test_criterion_07_nori_engine():
    rng = random.Random(1234)
    bad = []
    for k in range(100):
        r = rand_representation(rng, max_vertices=6, max_dim=5)
        msg = check_random_diagram(r, rng)
        if msg:
            bad.append((k, msg))
    record(7, not bad, f"random diagrams: {100 - len(bad)}/100 match dense commutant, triangles commute, Hom monotone")
    assert not bad, bad


def test_criterion_08_algebra_engine():
    nil = Matrix.from_rows([[0, 1], [0, 0]])
    jordan = FDAlgebra.from_matrices([nil])
    j = radical_elements(jordan)
    ok = len(j) == 1 and nilpotency_index(jordan, j) == 2
    full = FDAlgebra.from_matrices([Matrix.from_entries(2, 2, {(a, b): 1}) for a in range(2) for b in range(2)])
    zero = AModule(0, tuple(Matrix(0, 0) for _ in jordan.basis))
    ok &= composition_length(zero, jordan).length == 0
    ok &= composition_length(AModule(2, tuple(b[0] for b in full.basis)), full).length == 1
    ok &= composition_length(AModule(2, tuple(b[0] for b in jordan.basis)), jordan).length == 2
    a = triangular_product_algebra()
    pool = known_modules(a)
    rng = random.Random(20)
    pairs = 0
    for _ in range(20):
        m1, l1 = random_known_module(rng, a, pool)
        m2, l2 = random_known_module(rng, a, pool)
        if composition_length(direct_sum(m1, m2), a).length == l1 + l2:
            pairs += 1
    ok &= pairs == 20
    record(8, ok, f"Jordan radical 1-dim nilpotent; lengths 0/1/2; additivity {pairs}/20")
    assert ok


def test_criterion_09_motivic_bound():
    ideals = [SqfIdeal.maximal(n) for n in (1, 2, 3, 4)] + [SqfIdeal.from_supports(3, [[1]]), TWO_PLANES]
    bad, count = [], 0
    for i in ideals:
        # lifted_cohomology raises if any differential fails End(T)-equivariance
        for e in motive_sweep(i):
            count += 1
            if e.motivic_length > e.lam or (e.lam == 1 and e.motivic_length != 1):
                bad.append((str(i), e.r, e.i))
    record(9, not bad, f"motivic length <= lambda on {count} entries, equality at lambda=1, equivariance verified")
    assert not bad, bad


def test_criterion_10_height_bump():
    i, j = SqfIdeal.from_supports(2, [[1]]), SqfIdeal.maximal(2)
    rep = prop3_run(i, j)
    ok = rep.candidate == j
    exact, _ = five_term_check(i, j, rep.h)
    ok &= exact
    record(10, ok, f"(x1) in (x1,x2): a = {rep.candidate}, five-term sequence exact: {exact}")
    assert ok


def test_criterion_11_comodule_round_trip():
    results = []
    triv = FDAlgebra.from_span((1,), [(Matrix.identity(1),)])
    qq = FDAlgebra.from_span((1, 1), [(Matrix.identity(1), Matrix(1, 1)), (Matrix(1, 1), Matrix.identity(1))])
    jordan = FDAlgebra.from_matrices([Matrix.from_rows([[0, 1], [0, 0]])])
    cases = [
        (triv, AModule(3, (Matrix.identity(3),))),
        (qq, AModule(1, (Matrix.identity(1), Matrix(1, 1)))),
        (jordan, AModule(2, tuple(b[0] for b in jordan.basis))),
    ]
    for a, m in cases:
        co = dual_comodule(m, a)
        co.check()  # coassociativity and counit, exactly
        back, _ = dualize_back(co)
        f = round_trip_isomorphism(m, a)
        results.append(rank(f) == m.dim and is_module_map(f, m, back))
    ok = all(results)
    record(11, ok, f"comodule round trips: {sum(results)}/3")
    assert ok


CLI_INPUTS = {
    "lc": {"n": 4, "gens": [[1, 3], [1, 4], [2, 3], [2, 4]]},
    "lyu": {"n": 4, "gens": [[1, 3], [1, 4], [2, 3], [2, 4]]},
    "mv": {"i": {"n": 3, "gens": [[1], [2]]}, "j": {"n": 3, "gens": [[2, 3]]}},
    "relc": {"y": {"n": 2, "gens": [[2]]}, "z": {"n": 2, "gens": [[1], [2]]}},
    "strat": {"n": 3, "gens": [[1, 3], [2, 3]]},
    "prop3": {"i": {"n": 2, "gens": [[1]]}, "j": {"n": 2, "gens": [[1], [2]]}},
    "nori-end": {"vertices": [{"id": "u", "dim": 2}, {"id": "v", "dim": 2}],
                 "edges": [{"id": "n", "src": "u", "dst": "v", "matrix": [["0", "1"], ["0", "0"]]},
                           {"id": "i", "src": "v", "dst": "u", "matrix": [["1", "0"], ["0", "1"]]}]},
    "nori-length": {"diagram": {"vertices": [{"id": "v", "dim": 3}],
                                "edges": [{"id": "n", "src": "v", "dst": "v",
                                           "matrix": [["0", "1", "0"], ["0", "0", "0"], ["0", "0", "2"]]}]},
                    "vertex": "v"},
    "motive": {"n": 4, "gens": [[1, 3], [1, 4], [2, 3], [2, 4]]},
}


def _cli(cmd, path, fmt, jobs):
    p = subprocess.run([sys.executable, "-m", "norilc", cmd, "--input", path, "--format", fmt, "--box",
                        "--seed", "7", "--jobs", str(jobs)], capture_output=True, check=False)
    return p.returncode, p.stdout


def test_criterion_12_determinism(tmp_path):
    bad = []
    for cmd, obj in CLI_INPUTS.items():
        path = tmp_path / f"{cmd}.json"
        path.write_text(json.dumps(obj))
        for fmt in ("json", "tsv"):
            outs = [_cli(cmd, str(path), fmt, 1) for _ in range(3)] + [_cli(cmd, str(path), fmt, 4)]
            if outs[0][0] != 0 or any(o != outs[0] for o in outs):
                bad.append((cmd, fmt))
    record(12, not bad, f"byte-identical CLI output over 3 runs and jobs 1/4: {2 * len(CLI_INPUTS) - len(bad)}/{2 * len(CLI_INPUTS)}")
    assert not bad, bad


if __name__ == "__main__":
    import pytest

    sys.exit(pytest.main([__file__, "-q"]))
