"""Singular vectors of the Verma modules M_ell(delta, p) and character checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

from .combinatorics import Partition, count_no_ones, partitions_of
from .polyring import MultiPoly, coord_change_z_to_y, format_scalar, to_scalar
from .solver import brute_force_kernel, s_poly, t_lambda, monomials_of_grade
from .weyl import CgaElement, delta_rho, pi_hat, t1_operator

__all__ = [
    "SingularVector",
    "VerifyReport",
    "z_to_y",
    "to_enveloping",
    "verify_singular",
    "singular_vectors",
    "CharSeries",
    "char_F",
    "char_M",
    "counterexample_check",
]


def z_to_y(f: MultiPoly, ell: int) -> MultiPoly:
    """Rewrite a polynomial in z_0..z_{ell-1} in the coordinates y_0..y_{ell-1}."""
    if f.nvars() > ell:
        raise ValueError(f"polynomial involves variables beyond z_{ell - 1}")
    return f.substitute_linear(coord_change_z_to_y(ell), "y")


def to_enveloping(f: MultiPoly, ell: int) -> MultiPoly:
    """Substitute z_n -> -P_{ell-1-n} / (ell+1+n)! (the P's commute)."""
    if f.family != "z":
        raise ValueError("expected a z-family polynomial")
    if f.nvars() > ell:
        raise ValueError(f"polynomial involves variables beyond z_{ell - 1}")
    mapping = {n: (Fraction(-1, factorial(ell + 1 + n)), ell - 1 - n) for n in range(ell)}
    return f.substitute_linear(mapping, "P")


@dataclass
class VerifyReport:
    ok: bool
    epsilon: Fraction | None = None
    q: Fraction | None = None
    failed: str | None = None
    residual: MultiPoly | None = None

    def to_json(self) -> dict:
        out = {"ok": self.ok}
        if self.ok:
            out["character"] = {"epsilon": format_scalar(self.epsilon), "q": format_scalar(self.q)}
        else:
            out["failed"] = self.failed
            if self.residual is not None:
                out["residual"] = self.residual.to_json()
        return out


def verify_singular(ell: int, delta, p, f: MultiPoly) -> VerifyReport:
    """Check the singular-vector system with the full Fourier-side operators.

    f is moved to the y coordinates and acted on by the realization with
    parameter delta + delta_rho, which is the one isomorphic to M_ell(delta, p)
    (its lowest weight vector 1 has D-eigenvalue delta).  Conditions:
    P_ell v = q v, D v = eps v, C v = 0 and P_n v = 0 for ell < n <= 2 ell.
    """
    delta, p = to_scalar(delta), to_scalar(p)
    if f.is_zero():
        return VerifyReport(False, failed="zero vector")
    if not f.is_homogeneous():
        return VerifyReport(False, failed="not weighted-homogeneous")
    v = z_to_y(f, ell)
    shifted = delta + delta_rho(ell)

    def act(el: CgaElement) -> MultiPoly:
        return pi_hat(ell, shifted, p, el).apply(v)

    lead_exp, lead = next(iter(v.terms.items()))

    def eigen(name: str, el: CgaElement):
        image = act(el)
        lam = image.coefficient(lead_exp) / lead
        res = image - v.scale(lam)
        if res:
            return None, VerifyReport(False, failed=f"{name} eigenvector", residual=res)
        return lam, None

    q, bad = eigen(f"P{ell}", CgaElement(ell, "P", ell))
    if bad:
        return bad
    eps, bad = eigen("D", CgaElement(ell, "D"))
    if bad:
        return bad
    for name, el in [("C", CgaElement(ell, "C"))] + [
        (f"P{n}", CgaElement(ell, "P", n)) for n in range(ell + 1, 2 * ell + 1)
    ]:
        image = act(el)
        if image:
            return VerifyReport(False, failed=name, residual=image)
    return VerifyReport(True, epsilon=eps, q=q)


@dataclass
class SingularVector:
    ell: int
    delta: Fraction
    p: Fraction
    grade: int
    z_form: MultiPoly
    label: dict = field(default_factory=dict)

    @property
    def y_form(self) -> MultiPoly:
        return z_to_y(self.z_form, self.ell)

    @property
    def enveloping_form(self) -> MultiPoly:
        return to_enveloping(self.z_form, self.ell)

    @property
    def character(self) -> tuple[Fraction, Fraction]:
        return self.delta + 2 * self.grade, self.p

    def to_json(self) -> dict:
        eps, q = self.character
        return {
            "ell": self.ell,
            "delta": format_scalar(self.delta),
            "p": format_scalar(self.p),
            "grade": self.grade,
            "character": {"epsilon": format_scalar(eps), "q": format_scalar(q)},
            "label": self.label,
            "z_form": self.z_form.to_json(self.ell),
            "y_form": self.y_form.to_json(self.ell + 1),
            "enveloping": self.enveloping_form.to_json(self.ell),
        }


def _proportional(f: MultiPoly, g: MultiPoly) -> bool:
    if f.is_zero() or g.is_zero() or set(f.terms) != set(g.terms):
        return False
    e, c = next(iter(f.terms.items()))
    return g.scale(c / g.terms[e]) == f


def _s_label(ell: int, grade: int, f: MultiPoly) -> dict | None:
    for r in range(grade + 1):
        for lam in partitions_of(grade - r, max_part=r):
            if lam.multiplicity(1):
                continue
            s = s_poly(r, lam)
            if s.nvars() <= ell and _proportional(f, s):
                return {"kind": "s", "r": r, "partition": lam.to_json()}
    return None


def singular_vectors(
    ell: int, delta, p, max_grade: int, *, include_lowest: bool = False
) -> list[SingularVector]:
    """Singular vectors of M_ell(delta, p) up to the given grade.

    p != 0: t^c_lambda with c = p / ell!, lambda with parts <= ell and no 1.
    p == 0: the echelon basis of ker T_1^0 on F_ell per grade, labelled by
    s^r_lambda where a basis vector is proportional to one.  The lowest
    weight vector (grade 0) is omitted unless ``include_lowest``.
    """
    delta, p = to_scalar(delta), to_scalar(p)
    if ell < 1:
        raise ValueError("ell must be positive")
    start = 0 if include_lowest else 1
    out = []
    if p:
        c = p / factorial(ell)
        for j in range(start, max_grade + 1):
            for lam in partitions_of(j, max_part=ell):
                if lam.multiplicity(1) == 0:
                    out.append(
                        SingularVector(
                            ell, delta, p, j, t_lambda(lam, c),
                            {"kind": "t", "partition": lam.to_json()},
                        )
                    )
        return out
    for j in range(start, max_grade + 1):
        for f in brute_force_kernel(ell, 0, j):
            label = _s_label(ell, j, f) or {"kind": "echelon"}
            out.append(SingularVector(ell, delta, p, j, f, label))
    return out


# --------------------------------------------------------------------------
# characters


class CharSeries:
    """Integer power series in q truncated after q^order."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Sequence[int], order: int):
        cs = [int(x) for x in coeffs[: order + 1]]
        self.coeffs = cs + [0] * (order + 1 - len(cs))
        self.order = order

    def __add__(self, other):
        n = min(self.order, other.order)
        return CharSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], n)

    def __mul__(self, other):
        n = min(self.order, other.order)
        out = [0] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a:
                for j in range(n + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return CharSeries(out, n)

    def over_one_minus(self, k: int) -> "CharSeries":
        """Multiply by 1 / (1 - q^k)."""
        out = list(self.coeffs)
        for i in range(k, self.order + 1):
            out[i] += out[i - k]
        return CharSeries(out, self.order)

    def __eq__(self, other):
        return isinstance(other, CharSeries) and self.coeffs == other.coeffs

    def __str__(self):
        parts = []
        for k, a in enumerate(self.coeffs):
            if not a:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if not mono:
                body = str(abs(a))
            else:
                body = mono if abs(a) == 1 else f"{abs(a)}{mono}"
            sign = "-" if a < 0 else "+"
            parts.append((sign, body))
        if not parts:
            return "0"
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


def char_F(c, order: int) -> CharSeries:
    """sum_j dim F^j q^j by counting monomials; c only shifts both sides."""
    return CharSeries([len(monomials_of_grade(j, max(j, 1))) for j in range(order + 1)], order)


def char_M(c, order: int) -> CharSeries:
    """Character of the Verma decomposition of F (without the common prefactor).

    c != 0: sum_j m(j) q^j / (1 - q).  c = 0: the grade 0 and grade 1
    pieces are L(0) and M(-2w), whose characters add up to that of M(0).
    """
    c = to_scalar(c)
    top = CharSeries([count_no_ones(j) if j >= 2 else 0 for j in range(order + 1)], order)
    if c:
        head = CharSeries([1], order)
        return (head + top).over_one_minus(1)
    trivial = CharSeries([1], order)
    shifted = CharSeries([0, 1], order).over_one_minus(1)
    return trivial + shifted + top.over_one_minus(1)


def counterexample_check() -> dict:
    """s^3_(2,2,2), s^3_(3,3) leave F_5 but 4 s^3_(2,2,2) - 3 s^3_(3,3) stays in it."""
    a = s_poly(3, Partition([2, 2, 2]))
    b = s_poly(3, Partition([3, 3]))
    combo = a.scale(4) - b.scale(3)
    t1 = t1_operator(0, max(combo.nvars(), 1))
    report = {
        "s3_222_max_index": a.max_index(),
        "s3_33_max_index": b.max_index(),
        "combination_max_index": combo.max_index(),
        "combination_annihilated": t1.apply(combo).is_zero(),
        "combination_grade": combo.grade(),
    }
    report["ok"] = (
        report["s3_222_max_index"] >= 5
        and report["s3_33_max_index"] >= 5
        and report["combination_max_index"] <= 4
        and report["combination_annihilated"]
        and not combo.is_zero()
    )
    return report
