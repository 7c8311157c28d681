"""Exact sparse bivariate integer polynomials and p-adic valuations.

A polynomial in Z[x,y] is a finite map from exponent pairs (i, j) to nonzero
arbitrary-precision integer coefficients:

    x^3 + y^2 + x*y + 1  ->  {(3, 0): 1, (0, 2): 1, (1, 1): 1, (0, 0): 1}

The zero polynomial is the empty map.  Two polynomials are equal iff their
term maps are equal; the map is always kept canonical (no zero coefficients,
no duplicate exponent pairs).

The text grammar accepted by :func:`parse_polynomial` is a sum of signed
monomials over the variables x and y: integer coefficients with an optional
sign, an optional ``*`` between factors (adjacency also multiplies, so
``2x^2`` and ``x y`` are fine), ``^`` for nonnegative integer exponents, and
whitespace ignored.  No parentheses, no variables besides x and y.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import total_ordering
from typing import Iterator, Mapping

import numpy as np
import sympy

__all__ = [
    "ParseError",
    "UnsupportedVariableError",
    "NegativeExponentError",
    "Polynomial",
    "parse_polynomial",
    "PrimeModulus",
    "Valuation",
    "INFINITE",
    "valuation",
    "KERNEL_MAX_MODULUS",
]

# Largest modulus whose products stay below 2**63 in int64 kernel arithmetic:
# floor(sqrt(2**63 - 1)).  Moduli above this take the big-int Python path.
KERNEL_MAX_MODULUS = 3_037_000_499


class ParseError(ValueError):
    """Malformed polynomial text; ``position`` is the offending index."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnsupportedVariableError(ParseError):
    """An identifier other than x or y appeared in the input."""


class NegativeExponentError(ParseError):
    """An exponent with a minus sign appeared in the input."""


@dataclass(frozen=True)
class Polynomial:
    """Canonical sparse polynomial in Z[x,y]."""

    terms: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        clean: dict[tuple[int, int], int] = {}
        for (i, j), c in self.terms.items():
            if not (isinstance(i, int) and isinstance(j, int) and i >= 0 and j >= 0):
                raise ValueError(f"bad exponent pair {(i, j)!r}")
            c = int(c)
            if c != 0:
                clean[(int(i), int(j))] = c
        object.__setattr__(self, "terms", clean)

    # -- construction ------------------------------------------------------

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls({})

    @classmethod
    def parse(cls, text: str) -> "Polynomial":
        return parse_polynomial(text)

    # -- ring-ish helpers (enough for tests and derivatives) ---------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        out: dict[tuple[int, int], int] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                e = (i1 + i2, j1 + j2)
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(out)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __iter__(self) -> Iterator[tuple[tuple[int, int], int]]:
        return iter(sorted(self.terms.items(), reverse=True))

    # -- calculus ----------------------------------------------------------

    def derivative(self, var: str) -> "Polynomial":
        """Exact formal partial derivative with respect to ``var`` (x or y)."""
        if var not in ("x", "y"):
            raise ValueError(f"unknown variable {var!r}")
        out: dict[tuple[int, int], int] = {}
        for (i, j), c in self.terms.items():
            if var == "x" and i > 0:
                out[(i - 1, j)] = c * i
            elif var == "y" and j > 0:
                out[(i, j - 1)] = c * j
        return Polynomial(out)

    # -- evaluation --------------------------------------------------------

    @property
    def degree_x(self) -> int:
        return max((i for i, _ in self.terms), default=0)

    @property
    def degree_y(self) -> int:
        return max((j for _, j in self.terms), default=0)

    @property
    def constant_term(self) -> int:
        return self.terms.get((0, 0), 0)

    def eval_exact(self, x: int, y: int) -> int:
        """Exact integer value of P(x, y) (arbitrary precision)."""
        xp = _power_table(x, self.degree_x)
        yp = _power_table(y, self.degree_y)
        return sum(c * xp[i] * yp[j] for (i, j), c in self.terms.items())

    def eval_mod(self, x: int, y: int, modulus: int) -> int:
        """P(x, y) reduced into [0, modulus).

        Coefficients are reduced first and powers come from per-call tables,
        so cost is O(#terms + degree) fixed-width multiplications.
        """
        if modulus < 2:
            raise ValueError("modulus must be >= 2")
        xp = _power_table(x % modulus, self.degree_x, modulus)
        yp = _power_table(y % modulus, self.degree_y, modulus)
        acc = 0
        for (i, j), c in self.terms.items():
            acc = (acc + (c % modulus) * xp[i] % modulus * yp[j]) % modulus
        return acc

    def term_arrays(self, modulus: int | None = None):
        """(i, j, coeff) int64 arrays for the kernel backends.

        With ``modulus`` the coefficients are reduced into [0, modulus); the
        modulus must not exceed KERNEL_MAX_MODULUS so that products fit int64.
        """
        n = len(self.terms)
        ie = np.empty(n, dtype=np.int64)
        je = np.empty(n, dtype=np.int64)
        ce = np.empty(n, dtype=np.int64)
        for t, ((i, j), c) in enumerate(sorted(self.terms.items())):
            if modulus is not None:
                if modulus > KERNEL_MAX_MODULUS:
                    raise ValueError(
                        f"modulus {modulus} exceeds the int64 kernel bound "
                        f"{KERNEL_MAX_MODULUS}")
                c %= modulus
            elif abs(c) > KERNEL_MAX_MODULUS:
                raise ValueError("coefficient too large for kernel arrays")
            ie[t], je[t], ce[t] = i, j, c
        return ie, je, ce

    # -- canonical printer -------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for (i, j), c in self:  # descending (i, j) lexicographic
            mag = _format_monomial(abs(c), i, j)
            if not parts:
                parts.append(mag if c > 0 else f"-{mag}")
            else:
                parts.append(f"{'+' if c > 0 else '-'} {mag}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def _format_monomial(c: int, i: int, j: int) -> str:
    factors: list[str] = []
    if c != 1 or (i == 0 and j == 0):
        factors.append(str(c))
    if i == 1:
        factors.append("x")
    elif i > 1:
        factors.append(f"x^{i}")
    if j == 1:
        factors.append("y")
    elif j > 1:
        factors.append(f"y^{j}")
    return "*".join(factors)


def _power_table(base: int, maxexp: int, modulus: int | None = None) -> list[int]:
    powers = [1] * (maxexp + 1)
    for k in range(1, maxexp + 1):
        powers[k] = powers[k - 1] * base
        if modulus is not None:
            powers[k] %= modulus
    return powers


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def parse_polynomial(text: str) -> Polynomial:
    """Parse the monomial-sum grammar into a canonical Polynomial."""
    return _Parser(text).parse()


class _Parser:
    """Recursive-descent parser over single-character tokens.

    poly   := [sign] term (sign term)*
    term   := factor (["*"] factor)*
    factor := NUMBER | VAR ["^" NUMBER]
    """

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def parse(self) -> Polynomial:
        terms: dict[tuple[int, int], int] = {}
        self._skip_ws()
        if self._at_end():
            raise ParseError("empty polynomial", self.pos)
        sign = self._read_sign(optional=True)
        while True:
            coeff, i, j = self._read_term()
            e = (i, j)
            terms[e] = terms.get(e, 0) + sign * coeff
            self._skip_ws()
            if self._at_end():
                break
            sign = self._read_sign(optional=False)
        return Polynomial(terms)

    # -- low-level ---------------------------------------------------------

    def _at_end(self) -> bool:
        return self.pos >= len(self.text)

    def _peek(self) -> str:
        return "" if self._at_end() else self.text[self.pos]

    def _skip_ws(self):
        while not self._at_end() and self.text[self.pos].isspace():
            self.pos += 1

    def _read_sign(self, optional: bool) -> int:
        self._skip_ws()
        ch = self._peek()
        if ch == "+":
            self.pos += 1
            return 1
        if ch == "-":
            self.pos += 1
            return -1
        if optional:
            return 1
        raise ParseError(f"expected '+' or '-', found {ch!r}", self.pos)

    def _read_number(self) -> int:
        self._skip_ws()
        start = self.pos
        while not self._at_end() and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected a number", start)
        return int(self.text[start:self.pos])

    def _read_term(self) -> tuple[int, int, int]:
        """One monomial: returns (coefficient, exponent of x, exponent of y)."""
        coeff, i, j = 1, 0, 0
        saw_factor = False
        while True:
            self._skip_ws()
            ch = self._peek()
            if ch.isdigit():
                coeff *= self._read_number()
                if self._peek() == "^":
                    raise ParseError("'^' may only follow a variable", self.pos)
                saw_factor = True
            elif ch.isalpha():
                if ch not in ("x", "y"):
                    raise UnsupportedVariableError(
                        f"unsupported variable {ch!r}", self.pos)
                self.pos += 1
                exp = 1
                self._skip_ws()
                if self._peek() == "^":
                    self.pos += 1
                    self._skip_ws()
                    if self._peek() == "-":
                        raise NegativeExponentError(
                            "negative exponent", self.pos)
                    exp = self._read_number()
                if ch == "x":
                    i += exp
                else:
                    j += exp
                saw_factor = True
            elif ch == "*":
                if not saw_factor:
                    raise ParseError("'*' without a preceding factor", self.pos)
                self.pos += 1
                self._skip_ws()
                if self._at_end() or self._peek() in "+-*^":
                    raise ParseError("expected a factor after '*'", self.pos)
                continue
            else:
                break
            # adjacency is implicit multiplication; loop for the next factor
        if not saw_factor:
            raise ParseError(f"expected a monomial, found {self._peek()!r}",
                             self.pos)
        return coeff, i, j


# ---------------------------------------------------------------------------
# Primes and valuations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PrimeModulus:
    """An odd prime p together with its square.

    Primality is checked deterministically (sympy.isprime is deterministic
    for 64-bit inputs); p_squared is a Python int, so it never overflows.
    """

    p: int

    def __post_init__(self):
        p = self.p
        if not isinstance(p, int) or p < 3:
            raise ValueError(f"p must be an odd prime >= 3, got {p!r}")
        if p % 2 == 0 or not sympy.isprime(p):
            raise ValueError(f"p must be an odd prime, got {p}")

    @property
    def p_squared(self) -> int:
        return self.p * self.p

    def __int__(self) -> int:
        return self.p


@total_ordering
@dataclass(frozen=True)
class Valuation:
    """A p-adic valuation: a nonnegative integer, saturated '>= value', or
    infinite (the evaluated integer was exactly zero).

    Infinite compares greater than every finite valuation; a saturated
    valuation compares by its lower bound ``value``.
    """

    value: int | None  # None encodes the infinite valuation
    saturated: bool = False

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __lt__(self, other) -> bool:
        o = other.value if isinstance(other, Valuation) else other
        if self.value is None:
            return False
        if o is None:
            return True
        return self.value < o

    def __eq__(self, other) -> bool:
        if isinstance(other, Valuation):
            return self.value == other.value and self.saturated == other.saturated
        if isinstance(other, int):
            return not self.saturated and self.value == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.saturated))

    def __repr__(self) -> str:
        if self.value is None:
            return "Valuation(inf)"
        return f"Valuation(>={self.value})" if self.saturated else f"Valuation({self.value})"


INFINITE = Valuation(None)


def valuation(f: Polynomial, x: int, y: int, pm: PrimeModulus,
              cap: int = 4, exact: bool = False) -> Valuation:
    """nu_p(f(x, y)): the largest e with p^e dividing the exact value.

    Values are probed modulo p^cap first, so the common cases stay in
    fixed-width words.  When p^cap divides the value the computation
    escalates to arbitrary precision: the result is then Infinite for an
    exact zero, the exact valuation if ``exact`` is set, and the saturated
    marker ``>= cap`` otherwise.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    p = pm.p
    probe = f.eval_mod(x, y, p ** cap)
    if probe != 0:
        e = 0
        while probe % p == 0:
            probe //= p
            e += 1
        return Valuation(e)
    value = f.eval_exact(x, y)
    if value == 0:
        return INFINITE
    if not exact:
        return Valuation(cap, saturated=True)
    e = 0
    while value % p == 0:
        value //= p
        e += 1
    return Valuation(e)
