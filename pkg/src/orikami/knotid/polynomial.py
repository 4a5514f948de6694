from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping


@dataclass(frozen=True)
class LaurentPolynomial:
    """Integer Laurent polynomial in one variable, stored as sorted ``(exponent, coeff)`` pairs."""

    terms: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, d: Mapping[int, int]) -> "LaurentPolynomial":
        return cls(tuple(sorted((int(e), int(c)) for e, c in d.items() if c != 0)))

    @classmethod
    def constant(cls, c: int) -> "LaurentPolynomial":
        return cls.from_dict({0: c})

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPolynomial":
        return cls.from_dict({exp: coeff})

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], low: int = 0) -> "LaurentPolynomial":
        return cls.from_dict({low + k: c for k, c in enumerate(coeffs)})

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def min_exp(self) -> int:
        return self.terms[0][0]

    @property
    def max_exp(self) -> int:
        return self.terms[-1][0]

    def coeffs(self) -> list[int]:
        """Dense coefficient list from the lowest to the highest exponent."""
        if not self.terms:
            return []
        d = self.as_dict()
        return [d.get(e, 0) for e in range(self.min_exp, self.max_exp + 1)]

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        d = self.as_dict()
        for e, c in other.terms:
            d[e] = d.get(e, 0) + c
        return LaurentPolynomial.from_dict(d)

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPolynomial":
        if isinstance(other, int):
            return LaurentPolynomial.from_dict({e: c * other for e, c in self.terms})
        d: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                d[e1 + e2] = d.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial.from_dict(d)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPolynomial":
        if k < 0:
            if len(self.terms) != 1 or abs(self.terms[0][1]) != 1:
                raise ValueError("only units can be inverted")
            e, c = self.terms[0]
            return LaurentPolynomial.monomial(-e * -k, c ** (-k))
        out = LaurentPolynomial.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x):
        if isinstance(x, int):
            x = Fraction(x)
        return sum(c * x**e for e, c in self.terms)

    def shift(self, k: int) -> "LaurentPolynomial":
        return LaurentPolynomial(tuple((e + k, c) for e, c in self.terms))

    def substitute_power(self, k: int) -> "LaurentPolynomial":
        """Replace the variable ``x`` by ``x**k``."""
        return LaurentPolynomial.from_dict({e * k: c for e, c in self.terms})

    def divide_exponents(self, k: int) -> "LaurentPolynomial":
        if any(e % k for e, _ in self.terms):
            raise ValueError(f"exponents not divisible by {k}")
        return LaurentPolynomial(tuple((e // k, c) for e, c in self.terms))

    def mirror(self) -> "LaurentPolynomial":
        return self.substitute_power(-1)

    def normalized(self) -> "LaurentPolynomial":
        """Representative with lowest exponent 0 and positive leading coefficient."""
        if not self.terms:
            return self
        p = self.shift(-self.min_exp)
        return -p if p.terms[-1][1] < 0 else p

    def symmetric(self) -> "LaurentPolynomial":
        """Representative centred on exponent 0 (only exact for even spans)."""
        p = self.normalized()
        if not p.terms:
            return p
        return p.shift(-(p.max_exp // 2))

    def equal_up_to_units(self, other: "LaurentPolynomial") -> bool:
        return self.normalized() == other.normalized()

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in reversed(self.terms):
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "t" if e == 1 else f"t^{e}"
                body = var if mag == 1 else f"{mag}*{var}"
            parts.append(("-" if c < 0 else "+") + " " + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def to_json(self) -> list[list[int]]:
        return [[e, c] for e, c in self.terms]

    @classmethod
    def from_json(cls, data) -> "LaurentPolynomial":
        return cls.from_dict({int(e): int(c) for e, c in data})


ONE = LaurentPolynomial.constant(1)
