"""Symmetric polynomials, Newton identities and the dual Cauchy kernel."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, permutations
from math import factorial, prod
from typing import Iterable, Mapping, Sequence

from .combinatorics import Partition, partitions_of
from .polyring import MultiPoly, format_scalar, parse_scalar, to_scalar

__all__ = [
    "PExpr",
    "expand_basis",
    "e_in_p",
    "u_poly",
    "reduce_p",
    "reduce_p_closed",
    "reduce_p_mod_p1",
    "a_coeffs",
    "cauchy_check",
    "power_sum_system_poly",
]


def _merge(a: Partition, b: Partition) -> Partition:
    return Partition(sorted(a + b, reverse=True))


class PExpr:
    """Polynomial in commuting power sums p_1, p_2, ...; keys are partitions."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Iterable[int], object] | None = None):
        clean: dict[Partition, Fraction] = {}
        for lam, c in (terms or {}).items():
            c = to_scalar(c)
            if not c:
                continue
            key = lam if isinstance(lam, Partition) else Partition(sorted(lam, reverse=True))
            s = clean.get(key, 0) + c
            if s:
                clean[key] = s
            else:
                clean.pop(key, None)
        self.terms = clean

    @classmethod
    def one(cls) -> "PExpr":
        return cls({Partition(): 1})

    @classmethod
    def gen(cls, k: int) -> "PExpr":
        return cls({Partition([k]): 1})

    def __add__(self, other: "PExpr") -> "PExpr":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return PExpr(out)

    def __neg__(self):
        return PExpr({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "PExpr":
        c = to_scalar(c)
        return PExpr({k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, PExpr):
            return self.scale(other)
        out: dict[Partition, Fraction] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = _merge(k1, k2)
                out[key] = out.get(key, 0) + c1 * c2
        return PExpr(out)

    __rmul__ = scale

    def __pow__(self, n: int) -> "PExpr":
        out = PExpr.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, PExpr):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, lam: Iterable[int]) -> Fraction:
        return self.terms.get(Partition(sorted(lam, reverse=True)), Fraction(0))

    def max_generator(self) -> int:
        return max((lam[0] for lam in self.terms if lam), default=0)

    def drop_p1(self) -> "PExpr":
        """Image under p_1 = 0."""
        return PExpr({k: c for k, c in self.terms.items() if 1 not in k})

    def evaluate_powers(self, values: Mapping[int, object]):
        """Substitute numbers for the generators p_k."""
        total = Fraction(0)
        for lam, c in self.terms.items():
            total = total + c * prod((to_scalar(values[k]) for k in lam), start=Fraction(1))
        return total

    def evaluate_at(self, xs: Sequence):
        """Evaluate with p_k = sum_i x_i^k."""
        xs = [to_scalar(x) for x in xs]
        need = {k for lam in self.terms for k in lam}
        vals = {k: sum((x**k for x in xs), Fraction(0)) for k in need}
        return self.evaluate_powers(vals)

    def to_multipoly(self, nvars: int) -> MultiPoly:
        """Expand in x_1..x_nvars."""
        out = MultiPoly("sym")
        cache: dict[int, MultiPoly] = {}
        for lam, c in self.terms.items():
            term = MultiPoly.const("sym", c)
            for k in lam:
                if k not in cache:
                    cache[k] = expand_basis("p", k, nvars)
                term = term * cache[k]
            out = out + term
        return out

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (-kv[0].size, [-x for x in kv[0]]))

    def to_json(self) -> dict:
        return {
            "terms": [
                {"coeff": format_scalar(c), "partition": lam.to_json()}
                for lam, c in self.sorted_terms()
            ]
        }

    @classmethod
    def from_json(cls, data: dict) -> "PExpr":
        return cls(
            {Partition(t["partition"]): parse_scalar(str(t["coeff"])) for t in data["terms"]}
        )

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for lam, c in self.sorted_terms():
            mono = "*".join(
                f"p{k}" + (f"^{m}" if m > 1 else "")
                for k, m in sorted(lam.multiplicities().items())
            )
            neg = c < 0
            a = -c if neg else c
            body = mono if (a == 1 and mono) else (f"{a}*{mono}" if mono else str(a))
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"PExpr({self})"


def _mono(exps: dict[int, int], coeff=1) -> MultiPoly:
    width = max(exps) + 1 if exps else 0
    e = [0] * width
    for i, k in exps.items():
        e[i] = k
    return MultiPoly.monomial("sym", e, coeff)


def expand_basis(kind: str, index, nvars: int) -> MultiPoly:
    """e_k, p_k, h_k or m_lambda as an explicit polynomial in x_1..x_nvars.

    For e, p and h a partition index gives the product over its parts.
    """
    if nvars < 1:
        raise ValueError("nvars must be positive")
    if kind not in ("e", "p", "h", "m"):
        raise ValueError(f"unknown basis kind {kind!r}")
    if kind == "m":
        lam = Partition(index)
        if lam.length > nvars:
            raise ValueError(f"m_{list(lam)} needs at least {lam.length} variables")
        padded = tuple(lam) + (0,) * (nvars - lam.length)
        return MultiPoly("sym", {e: 1 for e in set(permutations(padded))})
    if not isinstance(index, int):
        out = MultiPoly.const("sym", 1)
        for k in Partition(index):
            out = out * expand_basis(kind, k, nvars)
        return out
    k = index
    if k < 0:
        raise ValueError("index must be non-negative")
    if kind == "p":
        if k == 0:
            return MultiPoly.const("sym", nvars)
        return sum((_mono({i: k}) for i in range(nvars)), MultiPoly("sym"))
    if kind == "e":
        out = MultiPoly("sym")
        for idx in combinations(range(nvars), k):
            out = out + _mono({i: 1 for i in idx})
        return out
    out = MultiPoly("sym")
    for idx in combinations_with_replacement(range(nvars), k):
        d: dict[int, int] = {}
        for i in idx:
            d[i] = d.get(i, 0) + 1
        out = out + _mono(d)
    return out


@lru_cache(maxsize=None)
def e_in_p(n: int) -> PExpr:
    """e_n as a combination of power-sum products."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return PExpr({lam: Fraction(lam.epsilon, lam.z) for lam in partitions_of(n)})


def _weighted_compositions(n: int):
    """Exponent vectors (r_1..r_n) with sum i*r_i = n."""
    for lam in partitions_of(n):
        m = lam.multiplicities()
        yield [m.get(i, 0) for i in range(1, n + 1)]


@lru_cache(maxsize=None)
def u_poly(n: int) -> MultiPoly:
    """The polynomial u_n with p_n = u_n(e_1, ..., e_n), in variables y_1..y_n."""
    if n < 1:
        raise ValueError("n must be positive")
    terms = {}
    for r in _weighted_compositions(n):
        total = sum(r)
        c = Fraction(n * factorial(total - 1), prod(factorial(x) for x in r))
        sign = (-1) ** (n + sum(r))
        terms[tuple(r)] = sign * c
    return MultiPoly("arg", terms)


@lru_cache(maxsize=None)
def reduce_p(k: int, r: int) -> PExpr:
    """p_k in r variables, rewritten in p_1..p_r by the Newton recurrence."""
    if k < 1 or r < 1:
        raise ValueError("k and r must be positive")
    if k <= r:
        return PExpr.gen(k)
    out = PExpr()
    for i in range(1, r + 1):
        term = e_in_p(i) * reduce_p(k - i, r)
        out = out + (term if i % 2 else -term)
    return out


def reduce_p_closed(k: int, r: int) -> PExpr:
    """Same as reduce_p, via u_k(e_1, ..., e_r, 0, ...)."""
    out = PExpr()
    for exps, c in u_poly(k).terms.items():
        if any(x for x in exps[r:]):
            continue
        term = PExpr.one().scale(c)
        for i, m in enumerate(exps):
            if m:
                term = term * e_in_p(i + 1) ** m
        out = out + term
    return out


def reduce_p_mod_p1(k: int, r: int) -> PExpr:
    return reduce_p(k, r).drop_p1()


def a_coeffs(n: int, r: int) -> dict[tuple[Partition, Partition], Fraction]:
    """a[(lam, mu)] with p_lam(x_1..x_r) = sum_mu a[(lam, mu)] p_mu, mu in P_n(r)."""
    out = {}
    for lam in partitions_of(n):
        expr = PExpr.one()
        for part in lam:
            expr = expr * reduce_p(part, r)
        for mu, c in expr.terms.items():
            out[(lam, mu)] = c
    return out


def _truncate_x(f: MultiPoly, nx: int, max_deg: int) -> MultiPoly:
    return MultiPoly(f.family, {e: c for e, c in f.terms.items() if sum(e[:nx]) <= max_deg})


def cauchy_check(nx: int, ny: int, max_deg: int) -> bool:
    """Compare the three forms of prod(1 + x_i y_j) up to x-degree max_deg.

    Variables live in the scratch family: x_i is v_{i-1}, y_j is v_{nx+j-1}.
    The degree bound is on |lambda|, which is the degree in x.
    """
    if min(nx, ny, max_deg) < 1:
        raise ValueError("arguments must be positive")

    def xv(i):
        return MultiPoly.var("v", i)

    def yv(j):
        return MultiPoly.var("v", nx + j)

    def move(f: MultiPoly, offset: int) -> MultiPoly:
        return MultiPoly("v", {(0,) * offset + e: c for e, c in f.terms.items()})

    lhs = MultiPoly.const("v", 1)
    for i in range(nx):
        for j in range(ny):
            lhs = _truncate_x(lhs * (xv(i) * yv(j) + 1), nx, max_deg)

    em = MultiPoly("v")
    pp = MultiPoly("v")
    for n in range(max_deg + 1):
        for lam in partitions_of(n):
            if lam.length <= ny:
                ex = move(expand_basis("e", lam, nx), 0)
                my = move(expand_basis("m", lam, ny), nx)
                em = em + ex * my
            px = move(expand_basis("p", lam, nx), 0)
            py = move(expand_basis("p", lam, ny), nx)
            pp = pp + (px * py).scale(Fraction(lam.epsilon, lam.z))
    return lhs == em == pp


def power_sum_system_poly(a: Sequence) -> list[Fraction]:
    """Coefficients of prod(x - alpha_i), highest power first, given p_i(alpha) = a_i."""
    r = len(a)
    if r < 1:
        raise ValueError("need at least one power sum")
    vals = {i + 1: to_scalar(v) for i, v in enumerate(a)}
    out = [Fraction(1)]
    for i in range(1, r + 1):
        e = e_in_p(i).evaluate_powers(vals)
        out.append(e if i % 2 == 0 else -e)
    return out
