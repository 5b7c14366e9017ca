"""The acceptance suite, shared by ``cgaverma selftest`` and the test-suite."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb
from typing import Callable

from .combinatorics import Partition, count_no_ones, partitions_of
from .polyring import OMEGA, Eisenstein, MultiPoly
from .solver import (
    brute_force_kernel,
    closed_kernel_basis,
    monomials_of_grade,
    product_expansion,
    s_poly,
    same_span,
    shapovalov_inner,
    xu_kernel_basis,
)
from .symfunc import PExpr, cauchy_check, reduce_p_closed, reduce_p_mod_p1
from .verma import char_F, char_M, counterexample_check, singular_vectors, verify_singular
from .weyl import basis, check_homomorphism, fourier, pi, pi_hat, sl2_triple, t1_operator

__all__ = ["CriterionResult", "CRITERIA", "run_all"]

GRID = [Fraction(-1, 2), Fraction(1, 3), Fraction(2)]
PARTITION_NUMBERS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]


@dataclass
class CriterionResult:
    number: int
    name: str
    ok: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"[{status}] {self.number:2d}. {self.name}: {self.detail} ({self.seconds:.2f}s)"


def homomorphism(max_grade: int = 8, seed: int = 0):
    bad = []
    n = 0
    for ell in range(1, 5):
        for delta, p in product(GRID, GRID):
            for rep in ("pi", "pi_hat"):
                r = check_homomorphism(ell, delta, p, rep)
                n += r.checked
                if not r.ok:
                    bad.append(f"{rep} ell={ell} delta={delta} p={p}")
    return not bad, f"{n} bracket identities" + (f", failing: {bad[:3]}" if bad else "")


def fourier_consistency(max_grade: int = 8, seed: int = 0):
    bad = []
    for ell in range(1, 5):
        for a in basis(ell):
            if fourier(pi(ell, Fraction(1, 3), 2, a)) != pi_hat(ell, Fraction(1, 3), 2, a):
                bad.append(f"ell={ell} {a}")
    return not bad, "F(pi(a)) = pi_hat(a) for ell <= 4" + (f", failing: {bad}" if bad else "")


def sl2_relations(max_grade: int = 8, seed: int = 0):
    bad = []
    for ell in range(1, 7):
        for c in (Fraction(0), Fraction(1), Fraction(-2, 3)):
            t1, t0, tm = sl2_triple(c, ell)
            checks = {
                "[T0,T1]=-T1": (t0.commutator(t1), -t1),
                "[T1,T-1]=2T0": (t1.commutator(tm), t0.scale(2)),
                "[T0,T-1]=T-1": (t0.commutator(tm), tm),
            }
            for name, (lhs, rhs) in checks.items():
                if lhs.restrict(ell) != rhs.restrict(ell):
                    bad.append(f"{name} ell={ell} c={c}")
    return not bad, "three relations on F_ell, ell <= 6" + (f", failing: {bad}" if bad else "")


def kernel_dimensions(max_grade: int = 8, seed: int = 0):
    want_c = [1, 0] + [count_no_ones(j) for j in range(2, 9)]
    want_0 = [1, 1] + [count_no_ones(j) for j in range(2, 9)]
    frozen_c = [1, 0, 1, 1, 2, 2, 4, 4, 7]
    frozen_0 = [1, 1, 1, 1, 2, 2, 4, 4, 7]
    top = min(max_grade, 8)
    got_c = [len(brute_force_kernel(max(j, 1), 1, j)) for j in range(top + 1)]
    got_m = [len(brute_force_kernel(max(j, 1), Fraction(-2, 3), j)) for j in range(top + 1)]
    got_0 = [len(brute_force_kernel(max(j, 1), 0, j)) for j in range(top + 1)]
    ok = (
        got_c == got_m == frozen_c[: top + 1] == want_c[: top + 1]
        and got_0 == frozen_0[: top + 1] == want_0[: top + 1]
    )
    return ok, f"c!=0: {got_c}; c=0: {got_0}"


def basis_completeness(max_grade: int = 8, seed: int = 0):
    bad = []
    for j in range(min(max_grade, 8) + 1):
        ell = max(j, 1)
        for c in (Fraction(1), Fraction(-2, 3), Fraction(0)):
            closed = [f for _, f in closed_kernel_basis(ell, c, j)]
            if not same_span(closed, brute_force_kernel(ell, c, j)):
                bad.append(f"grade={j} c={c}")
    return not bad, "closed forms span the brute-force kernels" + (f", failing: {bad}" if bad else "")


def _printed_s2(a: int) -> MultiPoly:
    out = MultiPoly("z")
    for i in range(2 * a + 1):
        j = 2 * a - i
        out = out + (MultiPoly.var("z", i) * MultiPoly.var("z", j)).scale((-1) ** i)
    return out.scale(Fraction(1, 2**a))


def _printed_s3_cubic(a: int) -> MultiPoly:
    out = MultiPoly("z")
    for i in range(3 * a + 1):
        for j in range(3 * a + 1 - i):
            k = 3 * a - i - j
            m = MultiPoly.var("z", i) * MultiPoly.var("z", j) * MultiPoly.var("z", k)
            out = out + m.scale(OMEGA ** (i + 2 * j))
    return out.scale(Fraction(1, 3**a))


def printed_examples(max_grade: int = 8, seed: int = 0):
    bad = []
    z0 = MultiPoly.var("z", 0)
    for r in range(6):
        if s_poly(r, Partition()) != z0**r:
            bad.append(f"s^{r}_()")
    for a in range(3):
        lam = Partition([2] * a)
        if s_poly(2, lam) != _printed_s2(a):
            bad.append(f"s^2_(2^{a})")
        if s_poly(3, lam) != z0 * _printed_s2(a):
            bad.append(f"s^3_(2^{a})")
        printed = _printed_s3_cubic(a)
        if not printed.is_rational() or s_poly(3, Partition([3] * a)) != printed.rationalize():
            bad.append(f"s^3_(3^{a}) printed form")
    w6 = product_expansion(0, [OMEGA, OMEGA**2, Eisenstein(1)], 6)[6]
    if not w6.is_rational() or w6.rationalize() != s_poly(3, Partition([3])).scale(3):
        bad.append("s^3_(3) via roots of unity")
    return not bad, "printed s-polynomials reproduced" + (f", failing: {bad}" if bad else "")


def counterexample(max_grade: int = 8, seed: int = 0):
    r = counterexample_check()
    return r["ok"], (
        f"max indices {r['s3_222_max_index']}, {r['s3_33_max_index']}; "
        f"combination {r['combination_max_index']}, annihilated={r['combination_annihilated']}"
    )


def characters(max_grade: int = 8, seed: int = 0):
    bad = []
    for c in (0, 1):
        f, m = char_F(c, 12), char_M(c, 12)
        if not (f.coeffs == m.coeffs == PARTITION_NUMBERS):
            bad.append(f"c={c}")
    return not bad, "char F = char M = 1/phi(q) to q^12" + (f", failing: {bad}" if bad else "")


def xu_equivalence(max_grade: int = 8, seed: int = 0):
    bad = []
    for ell in range(1, 5):
        for c in (Fraction(1), Fraction(3, 2)):
            t1 = t1_operator(c, ell)
            for j in range(min(max_grade, 6) + 1):
                sols = [f for _, f in xu_kernel_basis(ell, c, j)]
                if any(t1.apply(f) for f in sols):
                    bad.append(f"not annihilated ell={ell} c={c} grade={j}")
                if not same_span(sols, brute_force_kernel(ell, c, j)):
                    bad.append(f"span ell={ell} c={c} grade={j}")
    return not bad, "flag-type solutions span the kernels" + (f", failing: {bad}" if bad else "")


def end_to_end(max_grade: int = 8, seed: int = 0):
    bad = []
    count = 0
    for ell, delta, p in [(2, 0, 1), (3, Fraction(1, 3), 2), (4, -1, 1)]:
        for v in singular_vectors(ell, delta, p, max_grade, include_lowest=True):
            count += 1
            r = verify_singular(ell, delta, p, v.z_form)
            if not r.ok or (r.epsilon, r.q) != v.character or r.epsilon != v.delta + 2 * v.grade:
                bad.append(f"ell={ell} grade={v.grade} {v.label}")
    control = verify_singular(2, 0, 1, MultiPoly.var("z", 0))
    if control.ok or control.failed != "C":
        bad.append("negative control z0 did not fail at C")
    return not bad, f"{count} vectors verified, control fails at C" + (f"; failing: {bad}" if bad else "")


def symmetric_function_identities(max_grade: int = 8, seed: int = 0):
    bad = []
    for nx in range(1, 4):
        for ny in range(1, 4):
            if not cauchy_check(nx, ny, 6):
                bad.append(f"cauchy {nx}x{ny}")
    for k in range(1, 11):
        if not reduce_p_mod_p1(k, 1).is_zero():
            bad.append(f"n=1 k={k}")
        want2 = PExpr({(2,) * (k // 2): Fraction(2) ** (1 - k // 2)}) if k % 2 == 0 else PExpr()
        if reduce_p_mod_p1(k, 2) != want2:
            bad.append(f"n=2 k={k}")
        terms = {}
        for r3 in range(k // 3 + 1):
            if (k - 3 * r3) % 2:
                continue
            r2 = (k - 3 * r3) // 2
            terms[(3,) * r3 + (2,) * r2] = (
                Fraction(k, r2 + r3) * comb(r2 + r3, r2) / (Fraction(2) ** r2 * Fraction(3) ** r3)
            )
        if reduce_p_mod_p1(k, 3) != PExpr(terms):
            bad.append(f"n=3 k={k}")
    for n in range(1, 9):
        if reduce_p_closed(n, n) != PExpr.gen(n):
            bad.append(f"newton n={n}")
    return not bad, "Cauchy kernel, few-variable reductions, Newton round-trips" + (
        f"; failing: {bad}" if bad else ""
    )


def random_graded_poly(rng: random.Random, grade: int, nvars: int) -> MultiPoly:
    monos = monomials_of_grade(grade, nvars)
    return MultiPoly(
        "z", {m: Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for m in monos}
    )


def contravariance(max_grade: int = 8, seed: int = 0):
    rng = random.Random(seed)
    nv = 8
    bad = []
    pairs = 0
    for c in (Fraction(0), Fraction(1)):
        t1, t0, tm = sl2_triple(c, nv, extended=False)
        ops = {1: t1, 0: t0, -1: tm}
        for _ in range(50):
            pairs += 1
            k = rng.choice((-1, 0, 1))
            a = rng.randint(max(0, k), min(6, 6 + k))
            g1 = random_graded_poly(rng, a, 7)
            g2 = random_graded_poly(rng, a - k, 7)
            lhs = shapovalov_inner(ops[k].apply(g1), g2)
            rhs = shapovalov_inner(g1, ops[-k].apply(g2))
            if lhs != rhs:
                bad.append(f"c={c} k={k} grade={a}")
    return not bad, f"{pairs} seeded pairs (seed={seed})" + (f"; failing: {bad}" if bad else "")


CRITERIA: list[tuple[int, str, Callable]] = [
    (1, "homomorphism certification", homomorphism),
    (2, "Fourier consistency", fourier_consistency),
    (3, "sl(2) relations", sl2_relations),
    (4, "kernel dimensions", kernel_dimensions),
    (5, "basis completeness", basis_completeness),
    (6, "printed examples", printed_examples),
    (7, "p = 0 counterexample", counterexample),
    (8, "character identity", characters),
    (9, "flag-type solver equivalence", xu_equivalence),
    (10, "end-to-end singular vectors", end_to_end),
    (11, "symmetric-function identities", symmetric_function_identities),
    (12, "contravariance", contravariance),
]


def run_one(number: int, max_grade: int = 8, seed: int = 0) -> CriterionResult:
    for num, name, fn in CRITERIA:
        if num == number:
            start = time.perf_counter()
            try:
                ok, detail = fn(max_grade=max_grade, seed=seed)
            except Exception as exc:  # a crash is a failure, reported as data
                ok, detail = False, f"raised {type(exc).__name__}: {exc}"
            return CriterionResult(num, name, ok, detail, time.perf_counter() - start)
    raise KeyError(number)


def run_all(max_grade: int = 8, seed: int = 0) -> list[CriterionResult]:
    return [run_one(num, max_grade, seed) for num, _, _ in CRITERIA]
