"""Acceptance suite: the nine end-to-end criteria, each printing one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (the lines are printed past
pytest's capture) or directly with ``python3 tests/test_acceptance.py``.
"""

import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

import test_properties as props  # noqa: E402
from conftest import CORPUS, perturbed_t2, random_invertible  # noqa: E402
from oracles import chi_coeffs, skew_rank_oracle  # noqa: E402
from pencilalg.algebra import change_basis, check_associativity, registry  # noqa: E402
from pencilalg.bialg import assemble, build_index1, check_identities, from_dual_pair, split  # noqa: E402
from pencilalg.classify import L1, L2, T2_UPPER_TRIANGULAR, canon_dim2, canon_dim3_unital  # noqa: E402
from pencilalg.errors import DegeneratePencil  # noqa: E402
from pencilalg.exact import BinaryForm, Matrix  # noqa: E402
from pencilalg.jordan import (  # noqa: E402
    block_charpoly_check,
    decompose,
    jordan_space,
    pencil_operator,
    phi_ideal_check,
    u_operator,
    verify_vn,
)
from pencilalg.pencil import charpoly, draw_functional, lie_index, sample_generic  # noqa: E402

SEEDS = 100


def _show(m):
    return "[" + "; ".join(" ".join(str(x) for x in row) for row in m.tolist()) + "]"


def _lam_mu(c0, c1):
    return BinaryForm.from_coeffs([c0, c1])


# each criterion returns (passed, detail)


def criterion_1():
    worst = 0.0
    failures = []
    for name, label in (("L1", L1), ("L2", L2)):
        reg = registry(name)
        for seed in range(SEEDS):
            a = change_basis(reg, random_invertible(2, seed))
            t0 = time.perf_counter()
            c = canon_dim2(a, seed=seed)
            elapsed = time.perf_counter() - t0
            worst = max(worst, elapsed)
            if c.label != label or change_basis(a, c.transform).table != reg.table or elapsed >= 1.0:
                failures.append((name, seed, c.label, round(elapsed, 3)))
    return not failures, f"200 presentations, worst {worst:.3f}s, failures {failures[:3]}"


def criterion_2():
    worst = 0.0
    failures = []
    reg = registry("T2")
    for seed in range(SEEDS):
        a = change_basis(reg, random_invertible(3, seed))
        t0 = time.perf_counter()
        c = canon_dim3_unital(a, seed=seed)
        elapsed = time.perf_counter() - t0
        worst = max(worst, elapsed)
        if c.label != T2_UPPER_TRIANGULAR or change_basis(a, c.transform).table != reg.table or elapsed >= 2.0:
            failures.append((seed, c.label, round(elapsed, 3)))
    return not failures, f"100 presentations, worst {worst:.3f}s, failures {failures[:3]}"


def criterion_3():
    expected = {
        ("T2", (1, 2, 4)): BinaryForm.constant(-25) * BinaryForm.lam() * BinaryForm.mu() * _lam_mu(1, 1),
        ("L1", (1, 1)): BinaryForm.constant(-1) * BinaryForm.lam() * BinaryForm.mu(),
        ("D", (0, 1)): BinaryForm.constant(-1) * _lam_mu(1, 1) ** 2,
        ("M2", (1, 0, 0, 2)): BinaryForm.constant(-2) * _lam_mu(1, 1) ** 2 * _lam_mu(2, 1) * _lam_mu(1, 2),
    }
    bad = []
    for (name, f), form in expected.items():
        a = registry(name)
        chi = charpoly(a, f)
        if chi != form or chi.coeffs != chi_coeffs(a.table, f):
            bad.append(name)
    return not bad, f"4 exact forms vs cofactor oracle, mismatches {bad}"


def criterion_4():
    got = {name: lie_index(registry(name)) for name in ("L1", "L2", "T2", "M2")}
    ok = got == {"L1": 0, "L2": 0, "T2": 1, "M2": 2}
    m2 = registry("M2")
    oracle = min(4 - skew_rank_oracle(m2.table, draw_functional(4, s, 0)) for s in range(8))
    ok &= oracle == 2
    comm = {}
    for name in ("D", "C2", "Z2", "Dn(3)"):
        a = registry(name)
        comm[name] = lie_index(a) == a.dim
    ok &= all(comm.values())
    return ok, f"index {got}, M2 oracle {oracle}, commutative = dim {comm}"


VN_SET = ("T2", "M2", "D", "C2", "T3", "dsum(L1,L1)", "dsum(T2,D)")


def criterion_5():
    t0 = time.perf_counter()
    failures = []
    for name in VN_SET:
        a = registry(name)
        for seed in range(8):
            f, _ = sample_generic(a, seed)
            rep = verify_vn(a, f)
            if not rep.passed or len(rep.checks) < 8:
                failures.append((name, seed, rep.failures()))
    elapsed = time.perf_counter() - t0
    asym = []
    for name in CORPUS:
        a = registry(name)
        for seed in range(8):
            chi = charpoly(a, draw_functional(a.dim, seed, 0))
            if chi != chi.swap():
                asym.append((name, seed))
    ok = not failures and not asym and elapsed < 10.0
    return ok, f"56 runs in {elapsed:.2f}s, failures {failures[:2]}, asymmetric {asym[:2]}"


def criterion_6():
    a, f = registry("M2"), (1, 0, 0, 2)
    u2, uh = u_operator(a, f, 2), u_operator(a, f, Fraction(1, 2))
    ok = u2.matrix == Matrix([[2]]) and uh.matrix == Matrix([[Fraction(1, 2)]])
    ok &= u2.nilpotent and uh.nilpotent
    bc = block_charpoly_check(a, f)
    ok &= bc.passed
    return ok, f"U(2) = {_show(u2.matrix)}, U(1/2) = {_show(uh.matrix)}, block form {bc.passed}"


def criterion_7():
    t2 = registry("T2")
    s = split(t2, (1, 0, 0))
    rebuilt = build_index1(s.h_table, s.hprime_table, s.pairing)
    ok = rebuilt == t2 and assemble(s).table == t2.table
    ok &= check_identities(s).passed
    witnesses = []
    # x^2 = x with y^2 = 0, and the zero pair; both keep the pairing <x, y> = 1
    for h_table, hp_table in (([[[1]]], [[[0]]]), ([[[0]]], [[[0]]])):
        r = check_identities(from_dual_pair(h_table, hp_table, [[1]]))["rank1_eqn"]
        witnesses.append((r.passed, r.witness, r.lhs, r.rhs))
    ok &= all(not p and wt == ("x", "y", "x", "y") and (lhs, rhs) == (1, 0) for p, wt, lhs, rhs in witnesses)
    shown = [f"rank1_eqn at {wt}: lhs {lhs}, rhs {rhs}" for _, wt, lhs, rhs in witnesses]
    return ok, f"round trip {rebuilt == t2}, broken pairs {shown}"


def criterion_8():
    v = check_associativity(perturbed_t2())
    a = perturbed_t2()
    ok = v is not None and v.label() == ("y", "x", "x") and a.format_element(v.difference) in ("-x", "−x")
    entry_points = [
        lambda a, f: pencil_operator(a, f),
        lambda a, f: jordan_space(a, f, 1, 0),
        lambda a, f: decompose(a, f),
        lambda a, f: verify_vn(a, f),
        lambda a, f: u_operator(a, f, 2),
        lambda a, f: block_charpoly_check(a, f),
        lambda a, f: phi_ideal_check(a, f, 1),
        lambda a, f: sample_generic(a, 0),
    ]
    raised = 0
    for call in entry_points:
        try:
            call(registry("Z2"), (3, 5))
        except DegeneratePencil:
            raised += 1
    ok &= raised == len(entry_points)
    label = v.label() if v else None
    return ok, f"violation {label} {a.format_element(v.difference) if v else ''}, DegeneratePencil {raised}/{len(entry_points)}"


PROPERTY_CHECKS = (
    props.test_stabilizers_meet_in_nil,
    props.test_stabilizer_reciprocal_dims,
    props.test_stabilizer_products,
    props.test_factor_divisibility_matches_stabilizers,
    props.test_transpose_symmetry,
    props.test_chains_increase_and_stabilize,
    props.test_level_products,
    props.test_block_products_and_direct_sum,
    props.test_unital_kernel,
)


def criterion_9():
    runs, skipped, witnesses = 0, 0, []
    for check in PROPERTY_CHECKS:
        body = check.hypothesis.inner_test
        for name in CORPUS:
            for seed in range(6):
                try:
                    body(name, seed)
                    runs += 1
                except props.Degenerate:
                    skipped += 1
                except AssertionError as e:
                    witnesses.append((check.__name__, name, seed, str(e).splitlines()[0]))
    for name in CORPUS:
        for seed in range(3):
            try:
                props.test_stab_one_commutative_at_generic_f(name, seed)
                runs += 1
            except AssertionError as e:
                witnesses.append(("stab_one_commutative", name, seed, str(e).splitlines()[0]))
    return not witnesses, f"{runs} exact checks ({skipped} degenerate skipped), witnesses {witnesses[:3]}"


CRITERIA = (
    ("1", "classification dim 2", criterion_1),
    ("2", "classification dim 3 unital", criterion_2),
    ("3", "exact pencil values", criterion_3),
    ("4", "index values", criterion_4),
    ("5", "spectral decomposition suite", criterion_5),
    ("6", "duality and U operator", criterion_6),
    ("7", "index-one round trip", criterion_7),
    ("8", "negative controls", criterion_8),
    ("9", "property suite", criterion_9),
)


def report(number, title, fn):
    passed, detail = fn()
    return passed, f"ACCEPTANCE {number} [{title}]: {'PASS' if passed else 'FAIL'} - {detail}"


@pytest.mark.parametrize("number, title, fn", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_acceptance(number, title, fn, capsys):
    passed, line = report(number, title, fn)
    with capsys.disabled():
        print("\n" + line)
    assert passed, line


if __name__ == "__main__":
    results = [report(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(p for p, _ in results) else 1)
