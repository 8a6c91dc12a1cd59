"""Exact rational polynomials in one and two variables.

Coefficients are :class:`fractions.Fraction`; integral flow polynomials
have genuinely non-integer coefficients, so nothing here rounds.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Sequence, Union

from .errors import DomainError

Number = Union[int, Fraction]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact coefficient")


def frac_to_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


class Poly:
    """Dense univariate polynomial, coefficients in ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def constant(cls, c: Number) -> "Poly":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c: Number = 1) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def t(cls) -> "Poly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = "t" if k == 1 else f"t^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __add__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self.coeff(k) + other.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return Poly([other]) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self.coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise DomainError("negative polynomial power")
        out = Poly([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c: Number) -> "Poly":
        return self * _frac(c)

    def __call__(self, x: Number) -> Fraction:
        # Horner
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    evaluate = __call__

    def compose(self, inner: "Poly") -> "Poly":
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def compose_affine(self, a: Number, b: Number) -> "Poly":
        """Return p(a*t + b)."""
        return self.compose(Poly([b, a]))

    def to_json(self, var: str = "t") -> dict:
        return {"var": var, "coeffs": [frac_to_str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "Poly":
        return cls(Fraction(s) for s in obj["coeffs"])


class BiPoly:
    """Sparse bivariate polynomial: ``{(i, j): c}`` is ``c * x**i * y**j``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], Number] | None = None):
        self.terms: dict[tuple[int, int], Fraction] = {}
        for key, c in (terms or {}).items():
            c = _frac(c)
            if c != 0:
                self.terms[(int(key[0]), int(key[1]))] = c

    @classmethod
    def one(cls) -> "BiPoly":
        return cls({(0, 0): 1})

    @classmethod
    def x(cls) -> "BiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BiPoly":
        return cls({(0, 1): 1})

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "BiPoly") -> "BiPoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return BiPoly(out)

    def __mul__(self, other) -> "BiPoly":
        if isinstance(other, (int, Fraction)):
            return BiPoly({k: c * other for k, c in self.terms.items()})
        out: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, Fraction(0)) + a * b
        return BiPoly(out)

    __rmul__ = __mul__

    def shift(self, di: int, dj: int) -> "BiPoly":
        """Multiply by x**di * y**dj."""
        return BiPoly({(i + di, j + dj): c for (i, j), c in self.terms.items()})

    def __call__(self, x: Number, y: Number) -> Fraction:
        return sum((c * Fraction(x) ** i * Fraction(y) ** j
                    for (i, j), c in self.terms.items()), Fraction(0))

    def substitute(self, x: Poly, y: Poly) -> Poly:
        """Evaluate at polynomial arguments in a common variable."""
        acc = Poly()
        for (i, j), c in self.terms.items():
            acc = acc + (x ** i) * (y ** j) * c
        return acc

    def __repr__(self) -> str:
        if not self.terms:
            return "BiPoly(0)"
        body = " + ".join(f"{c}*x^{i}*y^{j}" for (i, j), c in sorted(self.terms.items()))
        return f"BiPoly({body})"

    def to_json(self) -> dict:
        return {
            "vars": ["x", "y"],
            "terms": [{"i": i, "j": j, "c": frac_to_str(c)}
                      for (i, j), c in sorted(self.terms.items())],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "BiPoly":
        return cls({(t["i"], t["j"]): Fraction(t["c"]) for t in obj["terms"]})


@lru_cache(maxsize=256)
def _lagrange_basis(xs: tuple[Fraction, ...]) -> tuple[tuple[Fraction, ...], ...]:
    """Coefficient rows of the Lagrange basis polynomials for abscissas ``xs``."""
    rows = []
    for i, xi in enumerate(xs):
        basis = Poly([1])
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * Poly([-xj, 1])
                denom *= xi - xj
        coeffs = [c / denom for c in basis.coeffs]
        rows.append(tuple(coeffs + [Fraction(0)] * (len(xs) - len(coeffs))))
    return tuple(rows)


def lagrange_interpolate(points: Sequence[tuple[Number, Number]], degree: int) -> Poly:
    """Unique polynomial of degree <= ``degree`` through exactly ``degree + 1`` points."""
    if len(points) != degree + 1:
        raise DomainError(f"need exactly {degree + 1} points, got {len(points)}")
    xs = tuple(_frac(x) for x, _ in points)
    if len(set(xs)) != len(xs):
        raise DomainError("interpolation abscissas must be distinct")
    out = [Fraction(0)] * len(xs)
    for row, (_, yi) in zip(_lagrange_basis(xs), points):
        if yi:
            y = _frac(yi)
            for k, c in enumerate(row):
                out[k] += y * c
    return Poly(out)


def reciprocity_transform(p: Poly, n: int) -> Poly:
    """(-1)**n * p(-t)."""
    return Poly([c if (n + k) % 2 == 0 else -c for k, c in enumerate(p.coeffs)])


def binomial(n: int, k: int) -> int:
    """Binomial coefficient, extended to negative ``n`` by the falling factorial."""
    if k < 0:
        return 0
    if n >= 0:
        return comb(n, k) if k <= n else 0
    num = 1
    for i in range(k):
        num *= n - i
    den = 1
    for i in range(2, k + 1):
        den *= i
    return num // den


def binomial_poly(p: Poly, k: int) -> Poly:
    """C(p(t), k) as a polynomial in t via the falling factorial."""
    if k < 0:
        return Poly()
    out = Poly([1])
    for i in range(k):
        out = out * (p - i)
    fact = 1
    for i in range(2, k + 1):
        fact *= i
    return out * Fraction(1, fact)


def multichoose(n: int, r: int) -> int:
    """Number of nonnegative integer solutions of y_1 + ... + y_n = r."""
    if r < 0 or n < 0:
        return 0
    if n == 0:
        return 1 if r == 0 else 0
    return binomial(n + r - 1, r)
