"""Weyl-algebra operators and the realizations of cga_ell(1, C).

A DiffOp is a finite sum of terms ``coeff * x^mono * d^deriv`` kept in normal
order (all derivatives to the right).  Variables follow the families of
:mod:`cgaverma.polyring`; for the X and Y families index 0 is t (resp. u)
and index 1 + k is x_k (resp. y_k).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb, factorial
from typing import Callable, Iterable, Mapping

from .combinatorics import bernoulli_number, bernoulli_poly
from .polyring import (
    FamilyMismatch,
    MultiPoly,
    format_scalar,
    parse_scalar,
    to_scalar,
    var_names,
)

__all__ = [
    "CgaElement",
    "basis",
    "bracket",
    "delta_rho",
    "DiffOp",
    "pi",
    "pi_hat",
    "pi_hat_res",
    "fourier",
    "sl2_triple",
    "t1_operator",
    "HomomorphismReport",
    "check_homomorphism",
]


def binom(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def delta_rho(ell: int) -> Fraction:
    return -(1 + Fraction(ell * (ell + 1), 2))


# --------------------------------------------------------------------------
# the Lie algebra


@dataclass(frozen=True, order=True)
class CgaElement:
    """Basis element D, H, C or P_n (0 <= n <= 2 ell) of cga_ell(1, C)."""

    ell: int
    kind: str
    n: int = -1

    def __post_init__(self):
        if self.ell < 1:
            raise ValueError("ell must be positive")
        if self.kind == "P":
            if not 0 <= self.n <= 2 * self.ell:
                raise ValueError(f"P index {self.n} outside 0..{2 * self.ell}")
        elif self.kind in ("D", "H", "C"):
            if self.n != -1:
                raise ValueError(f"{self.kind} takes no index")
        else:
            raise ValueError(f"unknown basis element {self.kind!r}")

    @classmethod
    def parse(cls, ell: int, text: str) -> "CgaElement":
        text = text.strip()
        if text in ("D", "H", "C"):
            return cls(ell, text)
        if text.startswith("P"):
            return cls(ell, "P", int(text[1:]))
        raise ValueError(f"cannot parse basis element {text!r}")

    def __str__(self):
        return f"P{self.n}" if self.kind == "P" else self.kind


def basis(ell: int) -> list[CgaElement]:
    return [CgaElement(ell, k) for k in "DHC"] + [
        CgaElement(ell, "P", n) for n in range(2 * ell + 1)
    ]


def _raw_bracket(a: CgaElement, b: CgaElement) -> dict[CgaElement, Fraction]:
    ell = a.ell
    ka, kb = a.kind, b.kind
    if (ka, kb) == ("D", "H"):
        return {CgaElement(ell, "H"): Fraction(2)}
    if (ka, kb) == ("C", "H"):
        return {CgaElement(ell, "D"): Fraction(1)}
    if (ka, kb) == ("D", "C"):
        return {CgaElement(ell, "C"): Fraction(-2)}
    if kb == "P":
        n = b.n
        if ka == "H" and n > 0:
            return {CgaElement(ell, "P", n - 1): Fraction(-n)}
        if ka == "D" and ell != n:
            return {CgaElement(ell, "P", n): Fraction(2 * (ell - n))}
        if ka == "C" and n < 2 * ell:
            return {CgaElement(ell, "P", n + 1): Fraction(2 * ell - n)}
    return {}


def bracket(a: CgaElement, b: CgaElement) -> dict[CgaElement, Fraction]:
    """[a, b] as a map basis element -> coefficient (zero entries omitted)."""
    if a.ell != b.ell:
        raise ValueError(f"mismatched ell: {a.ell} vs {b.ell}")
    direct = _raw_bracket(a, b)
    if direct:
        return direct
    return {k: -v for k, v in _raw_bracket(b, a).items()}


# --------------------------------------------------------------------------
# differential operators


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _falling(n: int, k: int) -> int:
    return factorial(n) // factorial(n - k)


class DiffOp:
    __slots__ = ("family", "nvars", "terms")

    def __init__(self, family: str, nvars: int, terms=None):
        self.family = family
        self.nvars = nvars
        clean: dict[tuple[tuple[int, ...], tuple[int, ...]], object] = {}
        for (mono, deriv), c in (terms or {}).items():
            c = to_scalar(c)
            if not c:
                continue
            key = (self._pad(mono), self._pad(deriv))
            s = clean.get(key, 0) + c
            if s:
                clean[key] = s
            else:
                clean.pop(key, None)
        self.terms = clean

    def _pad(self, e) -> tuple[int, ...]:
        e = tuple(int(x) for x in e)
        if len(e) > self.nvars:
            if any(e[self.nvars:]):
                raise ValueError(f"exponent {e} exceeds {self.nvars} variables")
            e = e[: self.nvars]
        if any(x < 0 for x in e):
            raise ValueError(f"negative exponent {e}")
        return e + (0,) * (self.nvars - len(e))

    @classmethod
    def _raw(cls, family, nvars, terms):
        obj = object.__new__(cls)
        obj.family, obj.nvars, obj.terms = family, nvars, terms
        return obj

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, family: str, nvars: int, c) -> "DiffOp":
        z = (0,) * nvars
        return cls(family, nvars, {(z, z): c})

    @classmethod
    def term(cls, family: str, nvars: int, coeff, mono=None, deriv=None) -> "DiffOp":
        """``coeff * prod x_i^mono[i] * prod d_i^deriv[i]`` with dict exponents."""
        m = [0] * nvars
        d = [0] * nvars
        for i, k in (mono or {}).items():
            m[i] += k
        for i, k in (deriv or {}).items():
            d[i] += k
        return cls(family, nvars, {(tuple(m), tuple(d)): coeff})

    @classmethod
    def var(cls, family: str, nvars: int, i: int) -> "DiffOp":
        return cls.term(family, nvars, 1, mono={i: 1})

    @classmethod
    def d(cls, family: str, nvars: int, i: int, order: int = 1) -> "DiffOp":
        return cls.term(family, nvars, 1, deriv={i: order})

    # algebra ------------------------------------------------------------
    def _check(self, other: "DiffOp"):
        if self.family != other.family or self.nvars != other.nvars:
            raise FamilyMismatch(
                f"{self.family}[{self.nvars}] vs {other.family}[{other.nvars}]"
            )

    def _lift(self, other):
        if isinstance(other, DiffOp):
            self._check(other)
            return other
        return DiffOp.const(self.family, self.nvars, other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return DiffOp._raw(self.family, self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return DiffOp._raw(self.family, self.nvars, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "DiffOp":
        c = to_scalar(c)
        if not c:
            return DiffOp(self.family, self.nvars)
        return DiffOp._raw(self.family, self.nvars, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        """Composition ``self o other``, normal ordered."""
        if not isinstance(other, DiffOp):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for (a, b), c1 in self.terms.items():
            for (cc, dd), c2 in other.terms.items():
                ranges = [range(min(bi, ci) + 1) for bi, ci in zip(b, cc)]
                for ks in product(*ranges):
                    w = 1
                    for bi, ci, ki in zip(b, cc, ks):
                        if ki:
                            w *= comb(bi, ki) * _falling(ci, ki)
                    key = (_sub(_add(a, cc), ks), _sub(_add(b, dd), ks))
                    s = out.get(key, 0) + c1 * c2 * w
                    if s:
                        out[key] = s
                    else:
                        out.pop(key, None)
        return DiffOp._raw(self.family, self.nvars, out)

    def __rmul__(self, other):
        return self.scale(other)

    def commutator(self, other: "DiffOp") -> "DiffOp":
        return self * other - other * self

    def __eq__(self, other):
        if isinstance(other, DiffOp):
            return (
                self.family == other.family
                and self.nvars == other.nvars
                and self.terms == other.terms
            )
        if isinstance(other, (int, Fraction)):
            return self == DiffOp.const(self.family, self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.family, self.nvars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # action -------------------------------------------------------------
    def apply(self, f: MultiPoly) -> MultiPoly:
        if f.family != self.family:
            raise FamilyMismatch(f"operator on {self.family}, polynomial in {f.family}")
        if f.nvars() > self.nvars:
            raise ValueError("polynomial uses variables outside the operator's range")
        out = MultiPoly(self.family)
        for (mono, deriv), c in self.terms.items():
            g = f
            for i, k in enumerate(deriv):
                if k:
                    g = g.derivative(i, k)
                    if g.is_zero():
                        break
            if g.is_zero():
                continue
            out = out + g * MultiPoly.monomial(self.family, mono, c)
        return out

    def __call__(self, f: MultiPoly) -> MultiPoly:
        return self.apply(f)

    def restrict(self, k: int) -> "DiffOp":
        """Drop terms differentiating in a variable of index >= k.

        The result agrees with ``self`` on polynomials in the first k variables.
        """
        return DiffOp._raw(
            self.family,
            self.nvars,
            {(m, d): c for (m, d), c in self.terms.items() if not any(d[k:])},
        )

    def sorted_terms(self):
        return sorted(
            self.terms.items(),
            key=lambda kv: (
                -(sum(kv[0][0]) + sum(kv[0][1])),
                tuple(-x for x in kv[0][0]),
                tuple(-x for x in kv[0][1]),
            ),
        )

    def to_json(self) -> dict:
        return {
            "vars": var_names(self.family, self.nvars),
            "terms": [
                {"coeff": format_scalar(c), "mono": list(m), "deriv": list(d)}
                for (m, d), c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data: dict, family: str) -> "DiffOp":
        names = data["vars"]
        if names != var_names(family, len(names)):
            raise ValueError(f"variables {names} do not match family {family!r}")
        return cls(
            family,
            len(names),
            {
                (tuple(t["mono"]), tuple(t["deriv"])): parse_scalar(str(t["coeff"]))
                for t in data["terms"]
            },
        )

    def __str__(self):
        if not self.terms:
            return "0"
        names = var_names(self.family, self.nvars)
        parts = []
        for (m, d), c in self.sorted_terms():
            factors = [names[i] + (f"^{k}" if k > 1 else "") for i, k in enumerate(m) if k]
            factors += [
                f"d_{names[i]}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(d) if k
            ]
            body = "*".join(factors)
            neg = c < 0
            a = -c if neg else c
            if not body:
                s = str(a)
            elif a == 1:
                s = body
            else:
                s = f"{a}*{body}"
            if not parts:
                parts.append(("-" if neg else "") + s)
            else:
                parts.append((" - " if neg else " + ") + s)
        return "".join(parts)

    def __repr__(self):
        return f"DiffOp({self.family!r}, {self})"


# --------------------------------------------------------------------------
# realizations


def _coeff_C(ell: int, j: int, reading: str) -> Fraction:
    # the "B_j(ell+1)" factor in pi(C); see check_homomorphism for why the
    # product reading is the default
    if reading == "product":
        return (ell + 1) * bernoulli_number(j)
    if reading == "polynomial":
        return bernoulli_poly(j, ell + 1)
    raise ValueError(f"unknown reading {reading!r}")


def pi(ell: int, delta, p, a: CgaElement, *, bernoulli_reading: str = "product") -> DiffOp:
    """The realization by operators on C[t, x_0, ..., x_{ell-1}]."""
    if a.ell != ell:
        raise ValueError("element belongs to a different ell")
    delta, p = to_scalar(delta), to_scalar(p)
    N = ell + 1
    T = 0

    def X(k):
        return 1 + k

    def term(c, mono=None, deriv=None):
        return DiffOp.term("x", N, c, mono, deriv)

    B = bernoulli_number
    out = DiffOp("x", N)
    if a.kind == "H":
        out = term(-1, deriv={T: 1})
        for j in range(1, ell):
            for k in range(j, ell):
                c = -((-1) ** (j - 1)) * B(j) * binom(k, j)
                out += term(c, {T: j - 1, X(k): 1}, {X(k - j): 1})
        return out
    if a.kind == "D":
        out = term(-2, {T: 1}, {T: 1})
        for j in range(ell):
            out += term(-2 * (ell - j), {X(j): 1}, {X(j): 1})
        return out + (delta + delta_rho(ell))
    if a.kind == "C":
        out = term(-1, {T: 2}, {T: 1})
        for j in range(ell):
            out += term(-(ell - j), {T: 1, X(j): 1}, {X(j): 1})
        for j in range(ell - 1):
            out += term(-(2 * ell - j), {X(j): 1}, {X(j + 1): 1})
        out += term(delta + delta_rho(ell), {T: 1})
        for j in range(1, ell + 1):
            c = _coeff_C(ell, j, bernoulli_reading) * binom(ell, j)
            out += term(c, {T: j, X(ell - 1): 1}, {X(ell - j): 1})
        out += term(p * (ell + 1), {X(ell - 1): 1})
        for j in range(2, ell):
            for k in range(ell - 1):
                if k - j + 1 < 0:
                    continue
                c = Fraction(2 * (ell - 1 - k), k + 1) * B(j) * binom(k + 1, j)
                out += term(c, {T: j, X(k): 1}, {X(k - j + 1): 1})
        return out
    n = a.n
    if n < ell:
        out = term(-1, deriv={X(n): 1})
        for j in range(1, n + 1):
            out += term(-((-1) ** j) * B(j) * binom(n, j), {T: j}, {X(n - j): 1})
        return out
    if n == ell:
        return term(-ell, {T: 1}, {X(ell - 1): 1}) + p
    for j in range(ell):
        for k in range(n - ell + 1, n - j + 1):
            c = -B(j) * binom(n, k) * binom(n - k, j)
            out += term(c, {T: k + j}, {X(n - k - j): 1})
    return out + term(p * binom(n, ell), {T: n - ell})


def pi_hat(ell: int, delta, p, a: CgaElement, *, bernoulli_reading: str = "product") -> DiffOp:
    """The realization by operators on C[u, y_0, ..., y_{ell-1}]."""
    if a.ell != ell:
        raise ValueError("element belongs to a different ell")
    delta, p = to_scalar(delta), to_scalar(p)
    N = ell + 1
    U = 0

    def Y(k):
        return 1 + k

    def term(c, mono=None, deriv=None):
        return DiffOp.term("y", N, c, mono, deriv)

    B = bernoulli_number
    out = DiffOp("y", N)
    if a.kind == "H":
        out = term(-1, {U: 1})
        for j in range(1, ell):
            for k in range(j, ell):
                out += term(B(j) * binom(k, j), {Y(k - j): 1}, {Y(k): 1, U: j - 1})
        return out
    if a.kind == "D":
        out = term(2, {U: 1}, {U: 1})
        for j in range(ell):
            out += term(2 * (ell - j), {Y(j): 1}, {Y(j): 1})
        return out + (delta - delta_rho(ell))
    if a.kind == "C":
        out = term(-1, {U: 1}, {U: 2})
        for j in range(ell):
            out += term(-(ell - j), {Y(j): 1}, {Y(j): 1, U: 1})
        for j in range(ell - 1):
            out += term(2 * ell - j, {Y(j + 1): 1}, {Y(j): 1})
        out += term(-(delta - delta_rho(ell)), deriv={U: 1})
        for j in range(1, ell + 1):
            c = -((-1) ** j) * _coeff_C(ell, j, bernoulli_reading) * binom(ell, j)
            out += term(c, {Y(ell - j): 1}, {Y(ell - 1): 1, U: j})
        out += term(-p * (ell + 1), deriv={Y(ell - 1): 1})
        for j in range(2, ell):
            for k in range(ell - 1):
                if k - j + 1 < 0:
                    continue
                c = -((-1) ** j) * Fraction(2 * (ell - 1 - k), k + 1) * B(j) * binom(k + 1, j)
                out += term(c, {Y(k - j + 1): 1}, {Y(k): 1, U: j})
        return out
    n = a.n
    if n < ell:
        out = term(-1, {Y(n): 1})
        for j in range(1, n + 1):
            out += term(-B(j) * binom(n, j), {Y(n - j): 1}, {U: j})
        return out
    if n == ell:
        return term(ell, {Y(ell - 1): 1}, {U: 1}) + p
    for j in range(ell):
        for k in range(n - ell + 1, n - j + 1):
            c = -((-1) ** (k + j)) * B(j) * binom(n, k) * binom(n - k, j)
            out += term(c, {Y(n - k - j): 1}, {U: k + j})
    return out + term((-1) ** (n - ell) * p * binom(n, ell), deriv={U: n - ell})


def pi_hat_res(ell: int, delta, p, a: CgaElement) -> DiffOp:
    """The residual action of P_ell, D, C on u-free polynomials, in z-coordinates."""
    if a.ell != ell:
        raise ValueError("element belongs to a different ell")
    delta, p = to_scalar(delta), to_scalar(p)
    if a.kind == "P" and a.n == ell:
        return DiffOp.const("z", ell, p)
    if a.kind == "D":
        out = DiffOp.const("z", ell, delta - delta_rho(ell))
        for n in range(ell):
            out += DiffOp.term("z", ell, 2 * (n + 1), {n: 1}, {n: 1})
        return out
    if a.kind == "C":
        out = DiffOp.term("z", ell, -p / factorial(ell), deriv={0: 1})
        for n in range(ell - 1):
            out += DiffOp.term("z", ell, 1, {n: 1}, {n + 1: 1})
        return out
    raise ValueError(f"{a} is not one of P_ell, D, C")


def fourier(op: DiffOp) -> DiffOp:
    """x_i -> -d_{y_i}, d_{x_i} -> y_i (and t -> -d_u, d_t -> u)."""
    if op.family != "x":
        raise FamilyMismatch("fourier expects an X-family operator")
    n = op.nvars
    out: dict = {}
    for (mono, deriv), c in op.terms.items():
        # image of x_i^a d_i^b is (-1)^a d^a y^b; reorder per variable
        per_var = []
        sign = 1
        for a, b in zip(mono, deriv):
            if a % 2:
                sign = -sign
            per_var.append(
                [(comb(a, k) * _falling(b, k), b - k, a - k) for k in range(min(a, b) + 1)]
            )
        for choice in product(*per_var):
            w = sign
            m = []
            d = []
            for coeff, yi, di in choice:
                w *= coeff
                m.append(yi)
                d.append(di)
            key = (tuple(m), tuple(d))
            s = out.get(key, 0) + c * w
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return DiffOp._raw("y", n, out)


def t1_operator(c, nvars: int) -> DiffOp:
    """T_1^c = sum z_n d_{n+1} - c d_0 on z_0..z_{nvars-1}."""
    c = to_scalar(c)
    out = DiffOp.term("z", nvars, -c, deriv={0: 1})
    for n in range(nvars - 1):
        out += DiffOp.term("z", nvars, 1, {n: 1}, {n + 1: 1})
    return out


def sl2_triple(c, ell: int, *, extended: bool = True) -> tuple[DiffOp, DiffOp, DiffOp]:
    """(T_1^c, T_0^c, T_{-1}^c) describing the action on F_ell.

    T_{-1}^c raises the top variable index, so F_ell is not preserved.  With
    ``extended`` the operators live on ell + 1 variables and T_{-1}^c keeps
    the term z_ell d_{ell-1}; restricted to F_ell (see DiffOp.restrict) they
    are the exact operators F_ell -> F_{ell+1}.  Without it every index is
    truncated to 0..ell-1, which breaks [T_1, T_{-1}] = 2 T_0 at z_{ell-1}.
    The scalar c c-bar is taken as c^2 (rational parameters).
    """
    c = to_scalar(c)
    if ell < 1:
        raise ValueError("ell must be positive")
    N = ell + 1 if extended else ell
    t1 = t1_operator(c, N)
    t0 = DiffOp.const("z", N, c * c / 2)
    for n in range(N):
        t0 += DiffOp.term("z", N, n + 1, {n: 1}, {n: 1})
    tm = DiffOp.term("z", N, -c, mono={0: 1})
    for n in range(N - 1):
        tm += DiffOp.term("z", N, (n + 1) * (n + 2), {n + 1: 1}, {n: 1})
    return t1, t0, tm


# --------------------------------------------------------------------------
# homomorphism certification


@dataclass
class HomomorphismReport:
    ell: int
    delta: Fraction
    p: Fraction
    rep: str
    checked: int = 0
    failures: list[tuple[CgaElement, CgaElement, DiffOp]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        head = (
            f"{self.rep} ell={self.ell} delta={format_scalar(self.delta)} "
            f"p={format_scalar(self.p)}: {self.checked} pairs, "
            f"{len(self.failures)} failing"
        )
        lines = [head]
        for a, b, res in self.failures:
            lines.append(f"  [{a},{b}] residual {res}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "ell": self.ell,
            "delta": format_scalar(self.delta),
            "p": format_scalar(self.p),
            "rep": self.rep,
            "pairs_checked": self.checked,
            "ok": self.ok,
            "failures": [
                {"a": str(a), "b": str(b), "residual": r.to_json()} for a, b, r in self.failures
            ],
        }


def check_homomorphism(
    ell: int,
    delta,
    p,
    rep: str = "pi",
    *,
    overrides: Mapping[CgaElement, DiffOp] | None = None,
    bernoulli_reading: str = "product",
) -> HomomorphismReport:
    """Check [rep(a), rep(b)] = rep([a, b]) for every ordered basis pair.

    ``overrides`` replaces the image of selected basis elements (used for
    negative controls).  With ``bernoulli_reading="polynomial"`` the factor
    B_j(ell + 1) in the image of C is read as a Bernoulli polynomial value;
    that reading already fails at ell = 1, which is why it is not the default.
    """
    delta, p = to_scalar(delta), to_scalar(p)
    if rep == "pi":
        fn: Callable = pi
    elif rep == "pi_hat":
        fn = pi_hat
    else:
        raise ValueError(f"unknown representation {rep!r}")
    els = basis(ell)
    images = {a: fn(ell, delta, p, a, bernoulli_reading=bernoulli_reading) for a in els}
    for a, op in (overrides or {}).items():
        images[a] = op
    family = "x" if rep == "pi" else "y"
    report = HomomorphismReport(ell, delta, p, rep)
    for a in els:
        for b in els:
            lhs = images[a].commutator(images[b])
            rhs = DiffOp(family, ell + 1)
            for e, c in bracket(a, b).items():
                rhs += images[e].scale(c)
            report.checked += 1
            if lhs != rhs:
                report.failures.append((a, b, lhs - rhs))
    return report
