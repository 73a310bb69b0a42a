"""Small exact polynomial types over the rationals."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

_SCALARS = (int, Fraction)


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class UniPoly:
    """Univariate polynomial, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def x(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "UniPoly":
        return cls((c,))

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, v):
        acc = Fraction(0) if not isinstance(v, UniPoly) else UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def derivative(self, k: int = 1) -> "UniPoly":
        p = self
        for _ in range(k):
            p = UniPoly(i * c for i, c in enumerate(p.coeffs) if i)
        return p

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, _SCALARS):
            return UniPoly((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return UniPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            return UniPoly(c * other for c in self.coeffs)
        if not isinstance(other, UniPoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = UniPoly((1,))
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other: "UniPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - other.degree, 0)
        for i in range(len(q) - 1, -1, -1):
            c = rem[i + other.degree] / other.leading
            q[i] = c
            for j, b in enumerate(other.coeffs):
                rem[i + j] -= c * b
        return UniPoly(q), UniPoly(rem)

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def __eq__(self, other):
        if isinstance(other, _SCALARS):
            other = UniPoly((other,))
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({[str(c) for c in self.coeffs]})"

    def to_str(self, var: str = "s") -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            terms.append(("-" if c < 0 else "+", body))
        sign, body = terms[0]
        text = ("-" if sign == "-" else "") + body
        return text + "".join(f" {s} {b}" for s, b in terms[1:])


class BiPoly:
    """Bivariate polynomial ``sum c[i, j] * u^i * v^j`` with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        self.terms: dict[tuple[int, int], Fraction] = {
            k: _frac(c) for k, c in (terms or {}).items() if c != 0
        }

    @classmethod
    def u(cls) -> "BiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def v(cls) -> "BiPoly":
        return cls({(0, 1): 1})

    @classmethod
    def const(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def from_u(cls, p: UniPoly) -> "BiPoly":
        return cls({(i, 0): c for i, c in enumerate(p.coeffs)})

    @classmethod
    def from_v(cls, p: UniPoly) -> "BiPoly":
        return cls({(0, j): c for j, c in enumerate(p.coeffs)})

    def degree_u(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    def degree_v(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def _coerce(self, other):
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, _SCALARS):
            return BiPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            return BiPoly({k: c * other for k, c in self.terms.items()})
        if not isinstance(other, BiPoly):
            return NotImplemented
        out: dict = {}
        for (i, j), a in self.terms.items():
            for (k, l), b in other.terms.items():
                key = (i + k, j + l)
                out[key] = out.get(key, 0) + a * b
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = BiPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, u, v):
        return sum((c * u ** i * v ** j for (i, j), c in self.terms.items()), Fraction(0))

    def coeff_v(self, j: int) -> UniPoly:
        """Coefficient of ``v^j`` as a polynomial in ``u``."""
        deg = self.degree_u()
        return UniPoly(self.terms.get((i, j), 0) for i in range(deg + 1))

    def coeff_u(self, i: int) -> UniPoly:
        """Coefficient of ``u^i`` as a polynomial in ``v``."""
        deg = self.degree_v()
        return UniPoly(self.terms.get((i, j), 0) for j in range(deg + 1))

    def at_u(self, value) -> UniPoly:
        """Substitute a number for ``u``; result is a polynomial in ``v``."""
        return sum((self.coeff_u(i) * (_frac(value) ** i)
                    for i in range(self.degree_u() + 1)), UniPoly())

    def at_v(self, value) -> UniPoly:
        """Substitute a number or a polynomial in ``u`` for ``v``."""
        out = UniPoly()
        for j in range(self.degree_v() + 1):
            out = out + self.coeff_v(j) * (value ** j if isinstance(value, UniPoly)
                                           else _frac(value) ** j)
        return out

    def derivative_u(self, k: int = 1) -> "BiPoly":
        out = self
        for _ in range(k):
            out = BiPoly({(i - 1, j): i * c for (i, j), c in out.terms.items() if i})
        return out

    def __eq__(self, other):
        if isinstance(other, _SCALARS):
            other = BiPoly.const(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        items = sorted(self.terms.items())
        return "BiPoly({" + ", ".join(f"{k}: {c}" for k, c in items) + "})"
