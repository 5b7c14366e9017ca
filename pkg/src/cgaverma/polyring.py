"""Exact scalars and sparse multivariate polynomials.

Polynomials live in a named variable family.  Exponent keys are tuples with
trailing zeros stripped, so a family is unbounded and every polynomial has
finite support.  The families used across the package are

    ``z``    z0, z1, ...          (weighted grade: deg z_n = n + 1)
    ``y``    u, y0, y1, ...       (index 0 is u)
    ``x``    t, x0, x1, ...       (index 0 is t)
    ``sym``  x1, x2, ...          (arguments of symmetric polynomials)
    ``arg``  y1, y2, ...          (arguments of the Newton polynomials u_n)
    ``P``    P0, P1, ...          (commuting enveloping-algebra symbols)
    ``v``    v0, v1, ...          (scratch family)
"""

from __future__ import annotations

from fractions import Fraction
from itertools import zip_longest
from math import factorial
from typing import Callable, Iterable, Mapping

__all__ = [
    "Eisenstein",
    "OMEGA",
    "to_scalar",
    "format_scalar",
    "parse_scalar",
    "conj",
    "MultiPoly",
    "FamilyMismatch",
    "NotDivisible",
    "var_name",
    "var_names",
    "coord_change_z_to_y",
    "coord_change_y_to_z",
]


class FamilyMismatch(ValueError):
    pass


class NotDivisible(ArithmeticError):
    pass


class Eisenstein:
    """a + b*w with w^2 + w + 1 = 0, a and b rational."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @staticmethod
    def _coerce(other):
        if isinstance(other, Eisenstein):
            return other
        if isinstance(other, (int, Fraction)):
            return Eisenstein(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Eisenstein(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return Eisenstein(-self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Eisenstein(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.a, self.b, o.a, o.b
        # w^2 = -1 - w
        return Eisenstein(a * c - b * d, a * d + b * c - b * d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def conjugate(self) -> "Eisenstein":
        # w -> w^2 = -1 - w
        return Eisenstein(self.a - self.b, -self.b)

    def inverse(self) -> "Eisenstein":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("Eisenstein zero")
        c = self.conjugate()
        return Eisenstein(c.a / n, c.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return Eisenstein._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Eisenstein(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_rational(self) -> bool:
        return self.b == 0

    def __repr__(self):
        return f"Eisenstein({self.a}, {self.b})"


OMEGA = Eisenstein(0, 1)


def to_scalar(x):
    if isinstance(x, (Fraction, Eisenstein)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def parse_scalar(text: str) -> Fraction:
    """Parse ``"a"`` or ``"a/b"``; floats are rejected."""
    text = text.strip()
    if not text or any(ch in text for ch in ".eE"):
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(text)


def format_scalar(x) -> str:
    x = to_scalar(x)
    if isinstance(x, Eisenstein):
        if not x.is_rational():
            raise ValueError("non-rational coefficient cannot be serialized")
        x = x.a
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def conj(x):
    if isinstance(x, Eisenstein):
        return x.conjugate()
    return x


_NAMERS: dict[str, Callable[[int], str]] = {
    "z": lambda i: f"z{i}",
    "y": lambda i: "u" if i == 0 else f"y{i - 1}",
    "x": lambda i: "t" if i == 0 else f"x{i - 1}",
    "sym": lambda i: f"x{i + 1}",
    "arg": lambda i: f"y{i + 1}",
    "P": lambda i: f"P{i}",
    "v": lambda i: f"v{i}",
}


def var_name(family: str, i: int) -> str:
    return _NAMERS[family](i)


def var_names(family: str, n: int) -> list[str]:
    return [var_name(family, i) for i in range(n)]


def _strip(exps: Iterable[int]) -> tuple[int, ...]:
    e = list(exps)
    while e and e[-1] == 0:
        e.pop()
    if any(x < 0 for x in e):
        raise ValueError(f"negative exponent in {tuple(e)}")
    return tuple(e)


def _grlex_key(exps: tuple[int, ...], width: int):
    padded = exps + (0,) * (width - len(exps))
    return (-sum(exps), tuple(-x for x in padded))


class MultiPoly:
    """Sparse polynomial: map from exponent tuples to nonzero exact scalars."""

    __slots__ = ("family", "terms")

    def __init__(self, family: str, terms: Mapping[tuple, object] | None = None):
        if family not in _NAMERS:
            raise ValueError(f"unknown variable family {family!r}")
        self.family = family
        clean: dict[tuple[int, ...], object] = {}
        for exps, c in (terms or {}).items():
            c = to_scalar(c)
            if not c:
                continue
            key = _strip(exps)
            s = clean.get(key, 0) + c
            if s:
                clean[key] = s
            else:
                clean.pop(key, None)
        self.terms = clean

    # construction -------------------------------------------------------
    @classmethod
    def _raw(cls, family: str, terms: dict) -> "MultiPoly":
        obj = object.__new__(cls)
        obj.family = family
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, family: str = "z") -> "MultiPoly":
        return cls(family)

    @classmethod
    def const(cls, family: str, c) -> "MultiPoly":
        return cls(family, {(): c})

    @classmethod
    def var(cls, family: str, i: int, coeff=1) -> "MultiPoly":
        e = [0] * (i + 1)
        e[i] = 1
        return cls(family, {tuple(e): coeff})

    @classmethod
    def monomial(cls, family: str, exps: Iterable[int], coeff=1) -> "MultiPoly":
        return cls(family, {tuple(exps): coeff})

    # basic queries ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def nvars(self) -> int:
        """One more than the largest variable index that occurs."""
        return max((len(e) for e in self.terms), default=0)

    def max_index(self) -> int:
        return self.nvars() - 1

    def coefficient(self, exps: Iterable[int]):
        return self.terms.get(_strip(exps), Fraction(0))

    def sorted_terms(self, width: int | None = None):
        w = max(self.nvars(), width or 0)
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0], w))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def grade_of(self, exps: tuple[int, ...], ell: int | None = None) -> int:
        if self.family == "y":
            if ell is None:
                raise ValueError("Y-family grading needs ell")
            return sum(
                e * (1 if i == 0 else ell - (i - 1)) for i, e in enumerate(exps)
            )
        return sum((i + 1) * e for i, e in enumerate(exps))

    def grades(self, ell: int | None = None) -> set[int]:
        return {self.grade_of(e, ell) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.grades()) <= 1

    def grade(self) -> int:
        """Weighted grade of a homogeneous polynomial (deg z_n = n + 1)."""
        g = self.grades()
        if len(g) > 1:
            raise ValueError("polynomial is not weighted-homogeneous")
        return g.pop() if g else 0

    def is_rational(self) -> bool:
        return all(
            not isinstance(c, Eisenstein) or c.is_rational() for c in self.terms.values()
        )

    def rationalize(self) -> "MultiPoly":
        """Drop the Eisenstein wrapper; fails if any w-part survives."""
        out = {}
        for e, c in self.terms.items():
            if isinstance(c, Eisenstein):
                if not c.is_rational():
                    raise ValueError("polynomial has non-rational coefficients")
                c = c.a
            out[e] = c
        return MultiPoly._raw(self.family, out)

    # arithmetic ---------------------------------------------------------
    def _check(self, other: "MultiPoly"):
        if self.family != other.family:
            raise FamilyMismatch(f"{self.family!r} vs {other.family!r}")

    def _lift(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.const(self.family, other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.family, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.family, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "MultiPoly":
        c = to_scalar(c)
        if not c:
            return MultiPoly(self.family)
        return MultiPoly._raw(self.family, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check(other)
        out: dict[tuple[int, ...], object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(
                    a + b for a, b in zip_longest(e1, e2, fillvalue=0)
                )
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MultiPoly._raw(self.family, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = MultiPoly.const(self.family, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.family == other.family and self.terms == other.terms
        if isinstance(other, (int, Fraction, Eisenstein)):
            return self == MultiPoly.const(self.family, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.family, frozenset(self.terms.items())))

    # named operations ---------------------------------------------------
    def graded_components(self) -> dict[int, "MultiPoly"]:
        """Split into weighted-homogeneous pieces, keyed by grade."""
        pieces: dict[int, dict] = {}
        for e, c in self.terms.items():
            pieces.setdefault(self.grade_of(e), {})[e] = c
        return {g: MultiPoly._raw(self.family, t) for g, t in sorted(pieces.items())}

    def exact_divide(self, d: "MultiPoly") -> "MultiPoly":
        """Divide by a monic monomial; raises NotDivisible otherwise."""
        self._check(d)
        if len(d.terms) != 1:
            raise ValueError("divisor must be a single monomial")
        (de, dc), = d.terms.items()
        if dc != 1:
            raise ValueError("divisor monomial must have coefficient 1")
        out = {}
        for e, c in self.terms.items():
            padded = e + (0,) * max(0, len(de) - len(e))
            q = [a - b for a, b in zip_longest(padded, de, fillvalue=0)]
            if any(x < 0 for x in q):
                raise NotDivisible(f"term {e} is not divisible by {de}")
            out[_strip(q)] = c
        return MultiPoly._raw(self.family, out)

    def substitute_linear(
        self, mapping: Mapping[int, tuple[object, int]], target_family: str
    ) -> "MultiPoly":
        """Replace variable i by ``scalar * target_var`` per ``mapping[i]``."""
        out = MultiPoly(target_family)
        for e, c in self.terms.items():
            coeff = c
            new = {}
            for i, k in enumerate(e):
                if not k:
                    continue
                if i not in mapping:
                    raise KeyError(f"unmapped variable {var_name(self.family, i)}")
                s, j = mapping[i]
                coeff = coeff * to_scalar(s) ** k
                new[j] = new.get(j, 0) + k
            exps = [0] * (max(new) + 1 if new else 0)
            for j, k in new.items():
                exps[j] = k
            out = out + MultiPoly(target_family, {tuple(exps): coeff})
        return out

    def substitute(self, values: Mapping[int, "MultiPoly"], target_family: str) -> "MultiPoly":
        """Replace variable i by the polynomial ``values[i]`` (in ``target_family``)."""
        out = MultiPoly(target_family)
        cache: dict[tuple[int, int], MultiPoly] = {}
        for e, c in self.terms.items():
            term = MultiPoly.const(target_family, c)
            for i, k in enumerate(e):
                if not k:
                    continue
                if i not in values:
                    raise KeyError(f"unmapped variable {var_name(self.family, i)}")
                if (i, k) not in cache:
                    cache[(i, k)] = values[i] ** k
                term = term * cache[(i, k)]
            out = out + term
        return out

    def evaluate(self, point: Mapping[int, object]):
        """Exact value at ``point`` (index -> scalar)."""
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if not k:
                    continue
                if i not in point:
                    raise KeyError(f"missing coordinate {var_name(self.family, i)}")
                v = v * to_scalar(point[i]) ** k
            total = total + v
        return total

    def derivative(self, i: int, order: int = 1) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            k = e[i] if i < len(e) else 0
            if k < order:
                continue
            f = factorial(k) // factorial(k - order)
            ne = list(e)
            ne[i] = k - order
            out[_strip(ne)] = c * f
        return MultiPoly._raw(self.family, out)

    def integrate_from_zero(self, i: int) -> "MultiPoly":
        """Definite integral in variable ``i`` from 0."""
        out = {}
        for e, c in self.terms.items():
            ne = list(e) + [0] * max(0, i + 1 - len(e))
            ne[i] += 1
            out[tuple(ne)] = c / ne[i]
        return MultiPoly._raw(self.family, out)

    # serialization ------------------------------------------------------
    def to_json(self, nvars: int | None = None) -> dict:
        n = max(self.nvars(), nvars or 0)
        return {
            "vars": var_names(self.family, n),
            "terms": [
                {"coeff": format_scalar(c), "exps": list(e) + [0] * (n - len(e))}
                for e, c in self.sorted_terms(n)
            ],
        }

    @classmethod
    def from_json(cls, data: dict, family: str | None = None) -> "MultiPoly":
        names = list(data.get("vars", []))
        if family is None:
            family = _guess_family(names)
        expected = var_names(family, len(names))
        if names != expected:
            raise ValueError(f"variables {names} do not match family {family!r}")
        terms = {}
        for t in data.get("terms", []):
            exps = tuple(int(x) for x in t["exps"])
            if len(exps) != len(names):
                raise ValueError("exponent vector length does not match vars")
            c = parse_scalar(str(t["coeff"]))
            key = _strip(exps)
            terms[key] = terms.get(key, 0) + c
        return cls(family, terms)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                var_name(self.family, i) + (f"^{k}" if k > 1 else "")
                for i, k in enumerate(e)
                if k
            )
            if isinstance(c, Eisenstein):
                cs = f"({c.a} + {c.b}*w)"
                pieces.append((cs + "*" + mono) if mono else cs)
                continue
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            pieces.append(("-" if neg else "+", body))
        out = ""
        for i, p in enumerate(pieces):
            if isinstance(p, str):
                out += (" + " if i else "") + p
                continue
            sign, body = p
            if i == 0:
                out += ("-" if sign == "-" else "") + body
            else:
                out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"MultiPoly({self.family!r}, {self})"


def _guess_family(names: list[str]) -> str:
    if not names:
        return "z"
    for fam in ("z", "y", "x", "P", "v"):
        if var_names(fam, len(names)) == names:
            return fam
    raise ValueError(f"cannot infer variable family from {names}")


def coord_change_z_to_y(ell: int) -> dict[int, tuple[Fraction, int]]:
    """z_n = y_{ell-1-n} / (ell+1+n)!  as a substitution map z-index -> (scale, y-index)."""
    return {
        n: (Fraction(1, factorial(ell + 1 + n)), 1 + (ell - 1 - n)) for n in range(ell)
    }


def coord_change_y_to_z(ell: int) -> dict[int, tuple[Fraction, int]]:
    """y_n = (2 ell - n)! z_{ell-1-n}  as a map y-family index -> (scale, z-index)."""
    return {1 + n: (Fraction(factorial(2 * ell - n)), ell - 1 - n) for n in range(ell)}
