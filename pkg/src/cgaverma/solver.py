"""The kernel of T_1^c on F = C[z_0, z_1, ...], computed three ways.

* closed forms: t^c_lambda for c != 0 and s^r_lambda for c = 0;
* brute force: exact nullspace of T_1^c between monomial bases of each grade;
* the flag-type iteration sum_j (-T_1^- T_2)^j v for c != 0.

Grades are weighted: deg z_n = n + 1.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial, prod
from typing import Iterable, Sequence

from .combinatorics import Partition, partitions_of
from .linalg import nullspace, rank, rref
from .polyring import MultiPoly, conj, format_scalar, to_scalar
from .symfunc import a_coeffs, u_poly
from .weyl import DiffOp, sl2_triple, t1_operator

__all__ = [
    "TruncatedSeries",
    "generating_series",
    "product_expansion",
    "t_poly",
    "t_lambda",
    "t0_poly",
    "s_poly",
    "monomials_of_grade",
    "coefficient_matrix",
    "span_rank",
    "same_span",
    "brute_force_kernel",
    "closed_kernel_basis",
    "xu_solve",
    "xu_kernel_basis",
    "shapovalov_inner",
    "weight_of",
    "basis_to_json",
]


class TruncatedSeries:
    """sum_k coeffs[k] w^k modulo w^(order+1), coefficients in the z family."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Sequence[MultiPoly], order: int):
        if order < 0:
            raise ValueError("order must be non-negative")
        cs = list(coeffs[: order + 1])
        cs += [MultiPoly("z")] * (order + 1 - len(cs))
        self.coeffs = cs
        self.order = order

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls([MultiPoly.const("z", 1)], order)

    def __getitem__(self, k: int) -> MultiPoly:
        return self.coeffs[k]

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs, other.coeffs)][: n + 1], n)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        out = [MultiPoly("z") for _ in range(n + 1)]
        for i in range(n + 1):
            if self.coeffs[i].is_zero():
                continue
            for j in range(n + 1 - i):
                if other.coeffs[j]:
                    out[i + j] = out[i + j] + self.coeffs[i] * other.coeffs[j]
        return TruncatedSeries(out, n)

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedSeries)
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def map(self, fn) -> "TruncatedSeries":
        return TruncatedSeries([fn(c) for c in self.coeffs], self.order)

    def shift(self) -> "TruncatedSeries":
        """Multiply by w."""
        return TruncatedSeries([MultiPoly("z")] + self.coeffs[:-1], self.order)


def generating_series(c, alpha, order: int) -> TruncatedSeries:
    """a_c(alpha w) = -c + sum_n z_n (alpha w)^(n+1)."""
    c, alpha = to_scalar(c), to_scalar(alpha)
    cs = [MultiPoly.const("z", -c)]
    for k in range(1, order + 1):
        cs.append(MultiPoly.var("z", k - 1, alpha**k))
    return TruncatedSeries(cs, order)


def product_expansion(c, alphas: Iterable, order: int) -> TruncatedSeries:
    out = TruncatedSeries.one(order)
    for a in alphas:
        out = out * generating_series(c, a, order)
    return out


def t_poly(k: int, c) -> MultiPoly:
    """t^c_k = (-1)^k c^k u_k(-z_0/c, ..., -z_{k-1}/c), with the c-powers cancelled."""
    if k < 1:
        raise ValueError("k must be positive")
    c = to_scalar(c)
    terms = {}
    for r, a in u_poly(k).terms.items():
        total = sum(r)
        # (-1)^k * (-1)^total * c^(k - total); k >= total always
        sign = -1 if (k + total) % 2 else 1
        cp = c ** (k - total) if k > total else Fraction(1)
        if cp:
            terms[r] = sign * a * cp
    return MultiPoly("z", terms)


def t_lambda(lam: Partition, c) -> MultiPoly:
    out = MultiPoly.const("z", 1)
    for k in Partition(lam):
        out = out * t_poly(k, c)
    return out


def t0_poly(k: int) -> MultiPoly:
    """t_k = z_0^k u_k(z_1/z_0, ..., z_k/z_0)."""
    if k < 1:
        raise ValueError("k must be positive")
    terms = {}
    for r, a in u_poly(k).terms.items():
        terms[(k - sum(r),) + tuple(r)] = a
    return MultiPoly("z", terms)


def s_poly(r: int, lam: Partition) -> MultiPoly:
    """s^r_lambda for lambda with parts <= r (s^r_empty = z_0^r)."""
    lam = Partition(lam)
    if r < 0:
        raise ValueError("r must be non-negative")
    if lam and lam[0] > r:
        raise ValueError(f"parts of {list(lam)} must be at most r={r}")
    n = lam.size
    a = a_coeffs(n, r) if r else {}
    total = MultiPoly("z")
    for mu in partitions_of(n):
        coeff = a.get((mu, lam), 0) if n else 1
        if not coeff:
            continue
        t_mu = MultiPoly.const("z", 1)
        for k in mu:
            t_mu = t_mu * t0_poly(k)
        total = total + t_mu.scale(Fraction(mu.epsilon, mu.z) * coeff)
    if r >= n:
        return total * MultiPoly.monomial("z", [r - n])
    return total.exact_divide(MultiPoly.monomial("z", [n - r]))


# --------------------------------------------------------------------------
# linear algebra on graded pieces


def monomials_of_grade(grade: int, nvars: int) -> list[tuple[int, ...]]:
    """Exponent vectors of weighted grade ``grade`` in z_0..z_{nvars-1}, canonical order."""
    out = []
    for lam in partitions_of(grade, max_part=nvars) if nvars else ([Partition()] if grade == 0 else []):
        e = [0] * nvars
        for part in lam:
            e[part - 1] += 1
        while e and e[-1] == 0:
            e.pop()
        out.append(tuple(e))
    probe = MultiPoly("z", {e: 1 for e in out})
    return [e for e, _ in probe.sorted_terms()]


def coefficient_matrix(polys: Sequence[MultiPoly], monos: Sequence[tuple]) -> list[list[Fraction]]:
    """Row i holds the coefficients of polys[i] on ``monos``; off-basis terms are an error."""
    index = set(monos)
    rows = []
    for f in polys:
        extra = set(f.terms) - index
        if extra:
            raise ValueError(f"polynomial has terms outside the monomial basis: {sorted(extra)}")
        rows.append([f.coefficient(m) for m in monos])
    return rows


def _support(polys: Sequence[MultiPoly]) -> list[tuple]:
    probe = MultiPoly("z", {e: 1 for f in polys for e in f.terms})
    return [e for e, _ in probe.sorted_terms()]


def span_rank(polys: Sequence[MultiPoly]) -> int:
    polys = [f.rationalize() for f in polys]
    monos = _support(polys)
    if not monos:
        return 0
    return rank(coefficient_matrix(polys, monos))


def same_span(a: Sequence[MultiPoly], b: Sequence[MultiPoly]) -> bool:
    ra, rb = span_rank(a), span_rank(b)
    return ra == rb == span_rank(list(a) + list(b))


def _echelon_polys(rows: list[list[Fraction]], monos: Sequence[tuple]) -> list[MultiPoly]:
    if not rows:
        return []
    red, _ = rref(rows)
    return [MultiPoly("z", dict(zip(monos, row))) for row in red]


def brute_force_kernel(ell: int, c, grade: int) -> list[MultiPoly]:
    """Echelon basis of ker T_1^c on the grade-``grade`` part of F_ell."""
    if ell < 1:
        raise ValueError("ell must be positive")
    if grade < 0:
        raise ValueError("grade must be non-negative")
    src = monomials_of_grade(grade, ell)
    if not src:
        return []
    op = t1_operator(c, ell)
    dst = monomials_of_grade(grade - 1, ell) if grade else []
    if not dst:
        return _echelon_polys([[Fraction(int(i == j)) for i in range(len(src))] for j in range(len(src))], src)
    images = [op.apply(MultiPoly("z", {m: 1})) for m in src]
    # columns = source monomials
    cols = coefficient_matrix(images, dst)
    matrix = [[cols[j][i] for j in range(len(src))] for i in range(len(dst))]
    return _echelon_polys(nullspace(matrix, ncols=len(src)), src)


def _restrict_span_to(polys: Sequence[MultiPoly], ell: int) -> list[MultiPoly]:
    """Echelon basis of span(polys) intersected with F_ell."""
    if not polys:
        return []
    monos = _support(polys)
    outside = [i for i, m in enumerate(monos) if len(m) > ell]
    rows = coefficient_matrix(polys, monos)
    if not outside:
        return _echelon_polys(rows, monos)
    # combinations x with sum_i x_i rows[i][outside] = 0
    sub = [[rows[i][j] for i in range(len(polys))] for j in outside]
    combos = nullspace(sub, ncols=len(polys))
    vecs = [
        [sum((x[i] * rows[i][j] for i in range(len(polys))), Fraction(0)) for j in range(len(monos))]
        for x in combos
    ]
    vecs = [v for v in vecs if any(v)]
    return _echelon_polys(vecs, monos) if vecs else []


def closed_kernel_basis(ell: int, c, grade: int) -> list[tuple[tuple, MultiPoly]]:
    """Closed-form kernel vectors of the given grade, each with its label.

    For c != 0 these are t^c_lambda, lambda in P_grade(ell) with no part 1.
    For c = 0 they are s^r_lambda with r + |lambda| = grade and no part 1;
    when some of them leave F_ell the labels cannot be kept and the result is
    the echelon basis of their span intersected with F_ell (label ``None``).
    """
    c = to_scalar(c)
    if c:
        return [
            ((lam,), t_lambda(lam, c))
            for lam in partitions_of(grade, max_part=ell)
            if lam.multiplicity(1) == 0
        ]
    family = []
    for r in range(grade + 1):
        for lam in partitions_of(grade - r, max_part=r):
            if lam.multiplicity(1) == 0:
                family.append(((r, lam), s_poly(r, lam)))
    if all(f.nvars() <= ell for _, f in family):
        return family
    return [(None, f) for f in _restrict_span_to([f for _, f in family], ell)]


# --------------------------------------------------------------------------
# flag-type iteration


def _degree_outside_z0(f: MultiPoly) -> int:
    return max((sum(e[1:]) for e in f.terms), default=0)


def xu_solve(ell: int, c, v: MultiPoly) -> MultiPoly:
    """sum_j (-T_1^- T_2)^j v, with T_1 = -c d_0 and T_2 = sum z_n d_{n+1}."""
    c = to_scalar(c)
    if not c:
        raise ValueError("the right inverse of -c d_0 needs c != 0")
    if v.family != "z":
        raise ValueError("v must be a z-family polynomial")
    if any(e and e[0] for e in v.terms):
        raise ValueError("v must not involve z_0")
    if v.nvars() > ell:
        raise ValueError(f"v uses variables outside z_0..z_{ell - 1}")
    t2 = DiffOp("z", ell)
    for n in range(ell - 1):
        t2 += DiffOp.term("z", ell, 1, {n: 1}, {n + 1: 1})
    cap = (ell - 1) * _degree_outside_z0(v) + 1
    total = v
    term = v
    for _ in range(cap):
        term = t2.apply(term).integrate_from_zero(0).scale(1 / c)
        if term.is_zero():
            return total
        total = total + term
    raise RuntimeError("flag-type iteration did not terminate within its bound")


def xu_kernel_basis(ell: int, c, grade: int) -> list[tuple[tuple, MultiPoly]]:
    """xu_solve applied to every z_0-free monomial of the given grade."""
    out = []
    for m in monomials_of_grade(grade, ell):
        if m and m[0]:
            continue
        out.append((m, xu_solve(ell, c, MultiPoly("z", {m: 1}))))
    return out


# --------------------------------------------------------------------------
# inner product and weights


def shapovalov_inner(g1: MultiPoly, g2: MultiPoly):
    """<g1, g2> = g1*(d~) g2 at z = 0, d~_n = d_{z_n} / (n! (n+1)!)."""
    if g1.family != g2.family:
        raise ValueError("polynomials from different families")
    total = Fraction(0)
    for e, c1 in g1.terms.items():
        c2 = g2.terms.get(e)
        if c2 is None:
            continue
        w = Fraction(1)
        for n, k in enumerate(e):
            if k:
                w *= Fraction(factorial(k), (factorial(n) * factorial(n + 1)) ** k)
        total = total + conj(c1) * c2 * w
    return total


def weight_of(f: MultiPoly, c, ell: int) -> Fraction:
    """Eigenvalue of -2 T_0^c on a homogeneous f, i.e. -(2 grade + c^2)."""
    c = to_scalar(c)
    if f.is_zero():
        raise ValueError("zero polynomial has no weight")
    if not f.is_homogeneous():
        raise ValueError("polynomial is not weighted-homogeneous")
    n = max(ell, f.nvars())
    _, t0, _ = sl2_triple(c, n, extended=False)
    image = t0.apply(f).scale(-2)
    e, coeff = next(iter(f.terms.items()))
    lam = image.coefficient(e) / coeff
    if image != f.scale(lam):
        raise ValueError("polynomial is not an eigenvector of T_0")
    return lam


def basis_to_json(polys: Sequence[MultiPoly], c, grade: int, method: str, nvars: int | None = None) -> dict:
    return {
        "c": format_scalar(c),
        "grade": grade,
        "method": method,
        "basis": [f.to_json(nvars) for f in polys],
    }
