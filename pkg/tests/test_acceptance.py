"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v -s`` (or just ``pytest``; the lines
are printed with capture disabled) to see the summary.
"""

import json
import time

import numpy as np
import pytest

from fpgroups import (
    EnumLimits,
    compose_tables,
    data_path,
    delta_orders,
    enumerate_cosets,
    free_group_oracle,
    load_presentation,
    membership_level,
    parse_presentation,
    parse_schedule,
    parse_subgroup,
    schreier_transversal,
    subgroup_presentation,
    tietze_simplify,
)
from fpgroups.omega import BranchState, branch_step, divergence_check, run_omega
from fpgroups.pseries import Ladder, words_up_to
from fpgroups.triangle import (
    TriangleGroupSpec,
    build_reflections,
    element_order,
    quasigeodesic_fit,
    relation_residuals,
    subword_distances,
    torsion_profile,
    triangle_ball,
)
from fpgroups.wiegold import FAIL, PASS, commutator_generators, free_product_A, run_pipeline

from oracles import cyclic_delta_exponents, free_rank_oracle, trivial_in_Z2_Z4


@pytest.fixture
def report_line(capsys):
    def emit(n, ok, detail, elapsed):
        with capsys.disabled():
            print(f"\nCRITERION {n}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s) {detail}")

    return emit


def finish(report_line, n, problems, detail, start, budget):
    elapsed = time.perf_counter() - start
    if elapsed >= budget:
        problems.append(f"runtime {elapsed:.1f}s exceeds {budget}s")
    report_line(n, not problems, "; ".join(problems) if problems else detail, elapsed)
    assert not problems, problems


def test_criterion_1_pipeline_exact_values(report_line):
    start = time.perf_counter()
    rep = run_pipeline()
    problems = []
    want = {
        1: "1",
        2: {"index": 8, "generators_in_kernel": True},
        3: {"generators": 3, "relators": 0},
        4: 8,
        6: {"index": 64, "generators": 17, "relators": 0},
        7: 8,
        9: 64,
    }
    for n, value in want.items():
        if rep.check(n).computed != value:
            problems.append(f"check {n}: {rep.check(n).computed!r} != {value!r}")
    m = rep.check(5).computed
    if not (m["(xy)^4 in B\\C"] and m["(xy)^8 in C"]):
        problems.append(f"membership: {m}")
    e = rep.check(8).computed
    if not (e["generators"] == 17 and e["relators"] <= 8):
        problems.append(f"E: {e}")
    if rep.verdict != "pass":
        problems.append(f"verdict {rep.verdict}")
    # independent check of the identity: (xy)^4 ([x,y][x,y^2]^-1[x,y^3])^-1 dies under x^2, y^4
    A = free_product_A()
    x, y = A.gens()
    b = commutator_generators(A)
    lhs = (x * y) ** 4 * (b[0] * b[1].inverse() * b[2]).inverse()
    if not trivial_in_Z2_Z4(lhs.letters):
        problems.append("identity fails in the deletion oracle")
    finish(report_line, 1, problems, f"|A:B|=8 |B:C|=8 |A:<xy>C|=8 rank C=17 E=17/{e['relators']} |G:C|=64",
           start, 5)


def test_criterion_2_pseries_oracles(report_line):
    start = time.perf_counter()
    problems = []
    F2 = load_presentation("F2.pres")
    rep = delta_orders(F2, 2, 2)
    if rep.orders() != [1, 4, 128]:
        problems.append(f"orders {rep.orders()}")
    if rep.levels[1][2] != 5:
        problems.append(f"rank of level 1 is {rep.levels[1][2]}")
    if rep.exponents != free_rank_oracle(2, 2, 2) or rep.exponents != free_group_oracle(2, 2, 2):
        problems.append("free-group oracle mismatch")
    for p in (2, 3):
        for k in (1, 2, 3):
            cyc = parse_presentation(f"gens: x\nrels: x^{p**k}")
            got = delta_orders(cyc, p, k + 2).exponents
            if got != cyclic_delta_exponents(p**k, p, k + 2):
                problems.append(f"Z_{p}^{k}: {got}")
    finish(report_line, 2, problems, "F2 p=2 orders (1,4,128), layer rank 5, cyclic p in {2,3} k<=3", start, 10)


def test_criterion_3_residual_finiteness(report_line):
    start = time.perf_counter()
    F2 = load_presentation("F2.pres")
    ladder = Ladder(F2, 2)
    counts = {}
    problems = []
    n = 0
    for w in words_up_to(2, 8):
        n += 1
        m = membership_level(F2, 2, w, ladder=ladder)
        if m.level is None:
            problems.append(f"{w}: no level ({m.reason})")
            break
        counts[m.level] = counts.get(m.level, 0) + 1
    if n != 2 * (3**8 - 1):
        problems.append(f"enumerated {n} words")
    finish(report_line, 3, problems, f"{n} words, levels {dict(sorted(counts.items()))}", start, 60)


def test_criterion_4_omega_divergence(report_line):
    start = time.perf_counter()
    limits = EnumLimits(max_cosets=5000)
    F2 = load_presentation("F2.pres")
    gens = parse_subgroup(data_path("F2_whole.sub").read_text(), F2.alphabet)
    schedule = parse_schedule(data_path("F2_demo.schedule").read_text(), F2.alphabet)
    problems = []
    seen = []
    prefixes = {0: [BranchState(F2, tuple(gens))]}
    prefixes[1] = [branch_step(prefixes[0][0], bit, schedule[0], 2, limits) for bit in (0, 1)]
    for step in (0, 1):
        for st in prefixes[step]:
            s0 = branch_step(st, 0, schedule[step], 2, limits)
            s1 = branch_step(st, 1, schedule[step], 2, limits)
            d = divergence_check(s0, s1, 2, limits)
            seen.append(f"{st.bits or '-'}:v={d.level} {d.e0}<{d.e1}")
            if not (d.conclusive and d.strict and d.level == s0.history[-1].v):
                problems.append(f"prefix {st.bits!r}: {d.to_dict()}")
    for bits in ("00", "01", "10", "11"):
        a = json.dumps(run_omega(F2, gens, 2, bits, schedule, limits).audit(), sort_keys=True)
        b = json.dumps(run_omega(F2, gens, 2, bits, schedule, limits).audit(), sort_keys=True)
        if a != b:
            problems.append(f"audit for {bits} not byte-identical")
    finish(report_line, 4, problems, "siblings strict at v: " + ", ".join(seen), start, 120)


def test_criterion_5_triangle_geometry(report_line):
    start = time.perf_counter()
    spec = TriangleGroupSpec(2, 4, 8)
    problems = []
    res = relation_residuals(spec)
    if max(res.values()) > 1e-9:
        problems.append(f"residual {max(res.values()):.3g}")
    a, b, c = build_reflections(spec)
    orders = [element_order(u.matrix @ v.matrix) for u, v in ((a, b), (b, c), (a, c))]
    if orders != [2, 4, 8]:
        problems.append(f"orders {orders}")
    prof = torsion_profile(triangle_ball(spec, 8))
    finite = prof.finite_orders()
    if not all(8 % k == 0 for k in finite):
        problems.append(f"torsion orders {finite}")
    finish(report_line, 5, problems,
           f"max residual {max(res.values()):.1e}, orders ab,bc,ac = {orders}, torsion orders {finite}", start, 60)


def _prefix_closed(reps):
    keys = {w.letters for w in reps}
    return all(w.letters[:k] in keys for w in reps for k in range(len(w.letters)))


def test_criterion_6_invariant_suites(report_line):
    start = time.perf_counter()
    problems = []
    A, G, F2 = (load_presentation(n) for n in ("A.pres", "G.pres", "F2.pres"))
    B_sub = parse_subgroup(data_path("B.sub").read_text(), A.alphabet)
    whole = parse_subgroup(data_path("F2_whole.sub").read_text(), F2.alphabet)

    tB = enumerate_cosets(A, B_sub)
    spB = tietze_simplify(subgroup_presentation(A, tB))
    lev1 = Ladder(spB.presentation, 2).level(1)
    tC = compose_tables(tB, spB, lev1.table)
    spC = tietze_simplify(subgroup_presentation(A, tC))
    instances = {
        "A/B": (tB, A, B_sub),
        "G/B": (enumerate_cosets(G, B_sub), G, B_sub),
        "F2/F2": (enumerate_cosets(F2, whole), F2, whole),
        "B/C": (lev1.table, spB.presentation, ()),
        "A/C": (tC, A, spC.gen_words),
        "G/C": (enumerate_cosets(G, spC.gen_words), G, spC.gen_words),
    }
    n_tables = 0
    for name, (t, pr, gens) in instances.items():
        try:
            t.validate(pr, gens)
        except AssertionError as exc:
            problems.append(f"{name}: {exc}")
        if not _prefix_closed(schreier_transversal(t)):
            problems.append(f"{name}: transversal not prefix-closed")
        n_tables += 1

    direct = enumerate_cosets(A, spC.gen_words)
    if not (tB.index() * lev1.table.index() == tC.index() == direct.index() == 64):
        problems.append("index multiplicativity")

    limits = EnumLimits(max_cosets=5000)
    for pr in (A, G, F2):
        for p in (2, 3):
            es = delta_orders(pr, p, 3, limits).exponents
            if any(u > v for u, v in zip(es, es[1:])):
                problems.append(f"p-series not monotone: {es}")

    ball = triangle_ball(TriangleGroupSpec(2, 4, 8), 12)
    for text in ("x*y", "x*y^2", "x*y*x*y^-1"):
        B = ball.parse(text)
        fit = quasigeodesic_fit(ball, B, 16)
        if not all(fit.holds_for(subword_distances(ball, B, m)) for m in range(1, fit.effective_m + 1)):
            problems.append(f"quasifit of {text} not nested")

    x, y = A.gens()
    b = commutator_generators(A)
    neg1 = run_pipeline(relator_exponent=7)
    neg2 = run_pipeline(b_generators=[b[0], b[1], x * y])
    if not (neg1.verdict == "fail" and neg1.check(1).status == PASS and neg1.check(9).status == FAIL):
        problems.append("negative control (xy)^7 did not fail check 9")
    if not (neg2.verdict == "fail" and neg2.check(2).status == FAIL):
        problems.append("negative control b3 = xy did not fail check 2")
    finish(report_line, 6, problems,
           f"{n_tables} tables valid and prefix-closed, 8*8=64, monotone series, nested fits, 2 controls fail",
           start, 60)
