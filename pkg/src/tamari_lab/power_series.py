"""Exact truncated power series with rational coefficients.

Each series remembers the order up to which its coefficients are known.
Products use valuations to keep every coefficient that is still
determined: if ``f`` is exact through ``y^a`` with valuation ``v_f`` and
``g`` through ``y^b`` with valuation ``v_g``, then ``f*g`` is exact
through ``y^min(a + v_g, b + v_f)``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Iterable, Tuple, Union

Number = Union[int, Fraction]
INF = math.inf


class YSeries:
    """Univariate series ``sum c_k y^k`` exact through ``y^order``."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable[Number], order: int):
        cs = [Fraction(c) for c in coeffs]
        cs = cs[: order + 1] + [Fraction(0)] * (order + 1 - len(cs))
        self.coeffs = tuple(cs)
        self.order = order

    @classmethod
    def zero(cls, order: int) -> "YSeries":
        return cls([], order)

    @classmethod
    def monomial(cls, k: int, order: int, c: Number = 1) -> "YSeries":
        return cls([0] * k + [c], order)

    @classmethod
    def poly(cls, coeffs: Iterable[Number], order: int) -> "YSeries":
        return cls(coeffs, order)

    def __getitem__(self, k: int) -> Fraction:
        if k > self.order:
            raise IndexError(f"coefficient y^{k} not known (order {self.order})")
        return self.coeffs[k] if k >= 0 else Fraction(0)

    def valuation(self) -> int:
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return self.order + 1

    def truncate(self, order: int) -> "YSeries":
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        return YSeries(self.coeffs, order)

    def _coerce(self, other) -> "YSeries":
        if isinstance(other, YSeries):
            return other
        return YSeries([other], self.order)

    def __add__(self, other):
        other = self._coerce(other)
        order = min(self.order, other.order)
        return YSeries(
            [self.coeffs[k] + other.coeffs[k] for k in range(order + 1)], order
        )

    __radd__ = __add__

    def __neg__(self):
        return YSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, YSeries):
            c = Fraction(other)
            return YSeries([c * a for a in self.coeffs], self.order)
        order = min(self.order + other.valuation(), other.order + self.valuation())
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * (order + 1)
        for i, ai in enumerate(a):
            if not ai or i > order:
                continue
            for j in range(min(len(b), order - i + 1)):
                if b[j]:
                    out[i + j] += ai * b[j]
        return YSeries(out, order)

    __rmul__ = __mul__

    def __truediv__(self, c: Number):
        c = Fraction(c)
        return YSeries([a / c for a in self.coeffs], self.order)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers not supported")
        out = YSeries([1], self.order)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k: int) -> "YSeries":
        """Multiply by ``y^k``."""
        return YSeries([0] * k + list(self.coeffs), self.order + k)

    def derivative(self) -> "YSeries":
        return YSeries(
            [k * self.coeffs[k] for k in range(1, self.order + 1)], self.order - 1
        )

    def inverse(self) -> "YSeries":
        """Multiplicative inverse; the constant term must be nonzero."""
        a0 = self.coeffs[0]
        if not a0:
            raise ZeroDivisionError("series has zero constant term")
        out = [Fraction(0)] * (self.order + 1)
        out[0] = 1 / a0
        for n in range(1, self.order + 1):
            s = sum(self.coeffs[k] * out[n - k] for k in range(1, n + 1))
            out[n] = -s / a0
        return YSeries(out, self.order)

    def sqrt(self) -> "YSeries":
        """Square root of a series with constant term 1, by Newton iteration."""
        if self.coeffs[0] != 1:
            raise ValueError("sqrt needs constant term 1")
        s = YSeries([1], 0)
        prec = 0
        while prec < self.order:
            prec = min(2 * prec + 1, self.order)
            s = YSeries(s.coeffs, prec)
            a = self.truncate(prec)
            s = (s + a * s.inverse()) / 2
        return s.truncate(self.order)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, YSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.order))

    def agrees_with(self, other: "YSeries") -> bool:
        """Equal on every coefficient both series know."""
        order = min(self.order, other.order)
        return self.coeffs[: order + 1] == other.coeffs[: order + 1]

    def with_coeff(self, k: int, c: Number) -> "YSeries":
        cs = list(self.coeffs)
        cs[k] = Fraction(c)
        return YSeries(cs, self.order)

    def __repr__(self):
        terms = [f"{c}*y^{k}" for k, c in enumerate(self.coeffs) if c]
        return f"YSeries({' + '.join(terms) or '0'}, order={self.order})"


Key = Tuple[int, int]


class Poly2:
    """Bivariate series ``sum c[i, j] u^i v^j`` with exact rational coefficients.

    ``order_u``/``order_v`` bound the degrees known exactly; ``INF`` means
    that variable is not truncated.  Used with ``u = x, v = y`` for the
    refined interval series and with ``u = y, v = z`` for the two-variable
    series built from the alpha recurrence.
    """

    __slots__ = ("terms", "order_u", "order_v")

    def __init__(self, terms: Dict[Key, Number], order_u=INF, order_v=INF):
        self.order_u = order_u
        self.order_v = order_v
        self.terms: Dict[Key, Fraction] = {
            k: Fraction(c)
            for k, c in terms.items()
            if c and k[0] <= order_u and k[1] <= order_v
        }

    @classmethod
    def constant(cls, c: Number, order_u=INF, order_v=INF) -> "Poly2":
        return cls({(0, 0): c}, order_u, order_v)

    @classmethod
    def from_v_series(cls, s: YSeries, order_u=INF) -> "Poly2":
        """Embed a univariate series as a series in ``v`` alone."""
        return cls({(0, j): c for j, c in enumerate(s.coeffs)}, order_u, s.order)

    @classmethod
    def from_u_series(cls, s: YSeries, order_v=INF) -> "Poly2":
        return cls({(i, 0): c for i, c in enumerate(s.coeffs)}, s.order, order_v)

    def coeff(self, i: int, j: int) -> Fraction:
        return self.terms.get((i, j), Fraction(0))

    def valuation_u(self):
        return min((i for i, _ in self.terms), default=self.order_u + 1)

    def valuation_v(self):
        return min((j for _, j in self.terms), default=self.order_v + 1)

    def _coerce(self, other) -> "Poly2":
        if isinstance(other, Poly2):
            return other
        return Poly2.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return Poly2(
            terms, min(self.order_u, other.order_u), min(self.order_v, other.order_v)
        )

    __radd__ = __add__

    def __neg__(self):
        return Poly2({k: -c for k, c in self.terms.items()}, self.order_u, self.order_v)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly2):
            c = Fraction(other)
            return Poly2(
                {k: c * a for k, a in self.terms.items()}, self.order_u, self.order_v
            )
        ou = min(self.order_u + other.valuation_u(), other.order_u + self.valuation_u())
        ov = min(self.order_v + other.valuation_v(), other.order_v + self.valuation_v())
        out: Dict[Key, Fraction] = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                i, j = i1 + i2, j1 + j2
                if i <= ou and j <= ov:
                    out[(i, j)] = out.get((i, j), 0) + a * b
        return Poly2(out, ou, ov)

    __rmul__ = __mul__

    def __truediv__(self, c: Number):
        c = Fraction(c)
        return Poly2({k: a / c for k, a in self.terms.items()}, self.order_u, self.order_v)

    def __pow__(self, k: int):
        out = Poly2.constant(1, self.order_u, self.order_v)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, du: int = 0, dv: int = 0) -> "Poly2":
        """Multiply by ``u^du v^dv``; negative shifts require exact divisibility."""
        if any(i + du < 0 or j + dv < 0 for i, j in self.terms):
            raise ArithmeticError("monomial division is not exact")
        return Poly2(
            {(i + du, j + dv): c for (i, j), c in self.terms.items()},
            self.order_u + du,
            self.order_v + dv,
        )

    def d_u(self) -> "Poly2":
        return Poly2(
            {(i - 1, j): i * c for (i, j), c in self.terms.items() if i},
            self.order_u - 1,
            self.order_v,
        )

    def d_v(self) -> "Poly2":
        return Poly2(
            {(i, j - 1): j * c for (i, j), c in self.terms.items() if j},
            self.order_u,
            self.order_v - 1,
        )

    def at_u(self, value: Number) -> "Poly2":
        """Substitute ``u := value``; needs ``u`` untruncated."""
        if self.order_u != INF:
            raise ValueError("cannot evaluate a truncated variable")
        value = Fraction(value)
        out: Dict[Key, Fraction] = {}
        for (i, j), c in self.terms.items():
            out[(0, j)] = out.get((0, j), 0) + c * value**i
        return Poly2(out, INF, self.order_v)

    def at_v(self, value: Number) -> "Poly2":
        if self.order_v != INF:
            raise ValueError("cannot evaluate a truncated variable")
        value = Fraction(value)
        out: Dict[Key, Fraction] = {}
        for (i, j), c in self.terms.items():
            out[(i, 0)] = out.get((i, 0), 0) + c * value**j
        return Poly2(out, self.order_u, INF)

    def v_coefficient(self, j: int) -> Dict[int, Fraction]:
        """The polynomial in ``u`` multiplying ``v^j``, as ``{i: c}``."""
        return {i: c for (i, jj), c in self.terms.items() if jj == j}

    def div_u_minus_one(self) -> "Poly2":
        """Exact division by ``(u - 1)``; raises ``ArithmeticError`` otherwise.

        Needs ``u`` untruncated so every ``v``-slice is a polynomial.
        """
        if self.order_u != INF:
            raise ValueError("division by (u - 1) needs u untruncated")
        out: Dict[Key, Fraction] = {}
        for j in sorted({j for _, j in self.terms}):
            poly = self.v_coefficient(j)
            top = max(poly)
            # synthetic division by (u - 1), from the top degree down
            carry = Fraction(0)
            for i in range(top, 0, -1):
                carry += poly.get(i, 0)
                if carry:
                    out[(i - 1, j)] = carry
            if carry + poly.get(0, 0) != 0:
                raise ArithmeticError(f"v^{j} slice not divisible by (u - 1)")
        return Poly2(out, INF, self.order_v)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, Poly2):
            return NotImplemented
        return (self.terms, self.order_u, self.order_v) == (
            other.terms,
            other.order_u,
            other.order_v,
        )

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.order_u, self.order_v))

    def with_coeff(self, i: int, j: int, c: Number) -> "Poly2":
        terms = dict(self.terms)
        terms[(i, j)] = Fraction(c)
        return Poly2(terms, self.order_u, self.order_v)

    def v_series(self, i: int = 0) -> YSeries:
        """The coefficient of ``u^i`` as a series in ``v``."""
        if self.order_v == INF:
            top = max((j for _, j in self.terms), default=0)
        else:
            top = int(self.order_v)
        cs = [self.coeff(i, j) for j in range(top + 1)]
        return YSeries(cs, top)

    def __repr__(self):
        items = sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0]))
        body = " + ".join(f"{c}*u^{i}*v^{j}" for (i, j), c in items) or "0"
        return f"Poly2({body}, order_u={self.order_u}, order_v={self.order_v})"

