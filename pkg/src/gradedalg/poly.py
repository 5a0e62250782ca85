"""Univariate polynomials over Q and F_p.

Coefficients are stored lowest degree first.  Factorisation is delegated to
sympy; everything else (division, gcd, CRT) is done here so callers never
leave exact field arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import sympy

from .linalg import Field, PrimeField


@dataclass(frozen=True)
class Polynomial:
    field: Field
    coeffs: tuple

    def __post_init__(self):
        F = self.field
        c = [F(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def x(cls, F: Field) -> "Polynomial":
        return cls(F, (0, 1))

    @classmethod
    def const(cls, F: Field, c) -> "Polynomial":
        return cls(F, (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        return self.coeffs[-1]

    def monic(self) -> "Polynomial":
        inv = self.field.inv(self.lc)
        return Polynomial(self.field, tuple(self.field.norm(c * inv) for c in self.coeffs))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (F.zero,) * (n - len(self.coeffs))
        b = other.coeffs + (F.zero,) * (n - len(other.coeffs))
        return Polynomial(F, tuple(F.norm(x + y) for x, y in zip(a, b)))

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.field, tuple(self.field.norm(-c) for c in self.coeffs))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        F = self.field
        if not isinstance(other, Polynomial):
            return Polynomial(F, tuple(F.norm(c * other) for c in self.coeffs))
        if self.is_zero or other.is_zero:
            return Polynomial(F, ())
        out = [F.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = F.norm(out[i + j] + a * b)
        return Polynomial(F, tuple(out))

    def __pow__(self, k: int) -> "Polynomial":
        out = Polynomial.const(self.field, 1)
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other: "Polynomial"):
        F = self.field
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        q = [F.zero] * max(len(r) - other.degree, 1)
        inv = F.inv(other.lc)
        while len(r) - 1 >= other.degree and r:
            shift = len(r) - 1 - other.degree
            f = F.norm(r[-1] * inv)
            q[shift] = f
            for i, b in enumerate(other.coeffs):
                r[i + shift] = F.norm(r[i + shift] - f * b)
            while r and r[-1] == 0:
                r.pop()
        return Polynomial(F, tuple(q)), Polynomial(F, tuple(r))

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __call__(self, x):
        F = self.field
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.norm(acc * x + c)
        return acc

    def __repr__(self):
        terms = [f"{c}*x^{i}" for i, c in enumerate(self.coeffs) if c != 0]
        return " + ".join(terms) or "0"


def xgcd(a: Polynomial, b: Polynomial):
    """``(g, s, t)`` with ``s a + t b = g`` and g monic."""
    F = a.field
    r0, r1 = a, b
    s0, s1 = Polynomial.const(F, 1), Polynomial(F, ())
    t0, t1 = Polynomial(F, ()), Polynomial.const(F, 1)
    while not r1.is_zero:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = F.inv(r0.lc)
    return r0 * inv, s0 * inv, t0 * inv


def gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    return xgcd(a, b)[0]


def _to_sympy(p: Polynomial):
    x = sympy.Symbol("x")
    F = p.field
    if isinstance(F, PrimeField):
        return sympy.Poly([int(c) for c in reversed(p.coeffs)], x, modulus=F.p)
    return sympy.Poly([sympy.Rational(int(c.numerator), int(c.denominator)) for c in reversed(p.coeffs)], x, domain="QQ")


def _from_sympy(F: Field, sp) -> Polynomial:
    coeffs = sp.all_coeffs()
    if isinstance(F, PrimeField):
        return Polynomial(F, tuple(int(c) % F.p for c in reversed(coeffs)))
    return Polynomial(F, tuple(F((int(sympy.Rational(c).p), int(sympy.Rational(c).q))) for c in reversed(coeffs)))


def factor(p: Polynomial) -> tuple[object, list[tuple[Polynomial, int]]]:
    """Monic irreducible factors with multiplicity: ``p = lc * prod f**e``."""
    if p.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    if p.degree == 0:
        return p.lc, []
    _, facs = _to_sympy(p).factor_list()
    out = [(_from_sympy(p.field, f).monic(), int(e)) for f, e in facs]
    out.sort(key=lambda fe: (fe[0].degree, [int(c) if isinstance(p.field, PrimeField) else (c.numerator, c.denominator)
                                             for c in fe[0].coeffs]))
    return p.lc, out


def expand(field: Field, lc, factors: Sequence[tuple[Polynomial, int]]) -> Polynomial:
    out = Polynomial.const(field, lc)
    for f, e in factors:
        out = out * f ** e
    return out
