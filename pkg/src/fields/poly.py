"""
Polynomials over GF(2) stored as integer bit masks.

Bit i of a mask is the coefficient of x^i, so 0b1011 is x^3 + x + 1.
"""

from functools import lru_cache
from typing import Tuple

from ..errors import DivisionByZero

MAX_DEGREE = 16


def degree(p: int) -> int:
    """Degree of p; the zero polynomial has degree -1."""
    return p.bit_length() - 1


def mul(a: int, b: int) -> int:
    """Carry-less product of two polynomials."""
    result = 0
    while b:
        if b & 1:
            result ^= a
        a <<= 1
        b >>= 1
    return result


def poly_divmod(a: int, b: int) -> Tuple[int, int]:
    """
    Long division in GF(2)[x].

    Args:
        a: Dividend
        b: Divisor (nonzero)

    Returns:
        Tuple of (quotient, remainder)

    Raises:
        DivisionByZero: If b is the zero polynomial
    """
    if b == 0:
        raise DivisionByZero("Polynomial division by zero")
    db = degree(b)
    q = 0
    while a and degree(a) >= db:
        shift = degree(a) - db
        q ^= 1 << shift
        a ^= b << shift
    return q, a


def mod(a: int, b: int) -> int:
    return poly_divmod(a, b)[1]


def gcd(a: int, b: int) -> int:
    while b:
        a, b = b, mod(a, b)
    return a


def mulmod(a: int, b: int, m: int) -> int:
    return mod(mul(a, b), m)


def powmod(a: int, e: int, m: int) -> int:
    """a^e reduced modulo m by square-and-multiply."""
    result = mod(1, m)
    a = mod(a, m)
    while e:
        if e & 1:
            result = mulmod(result, a, m)
        a = mulmod(a, a, m)
        e >>= 1
    return result


def is_irreducible(p: int) -> bool:
    """
    Ben-Or irreducibility test.

    p of degree n is irreducible iff gcd(x^(2^i) - x, p) = 1 for i <= n/2.
    """
    n = degree(p)
    if n < 1:
        return False
    if n == 1:
        return True
    x_power = 0b10
    for _ in range(n // 2):
        x_power = mulmod(x_power, x_power, p)
        if gcd(x_power ^ 0b10, p) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def least_irreducible(k: int) -> int:
    """Numerically least irreducible polynomial of degree k."""
    if not 1 <= k <= MAX_DEGREE:
        raise ValueError(f"Degree must be in 1..{MAX_DEGREE}, got {k}")
    for candidate in range(1 << k, 1 << (k + 1)):
        if is_irreducible(candidate):
            return candidate
    raise RuntimeError(f"No irreducible polynomial of degree {k}")


def to_hex(p: int) -> str:
    return format(p, "x")


def from_hex(text: str) -> int:
    return int(text, 16)


def pretty(p: int, var: str = "x") -> str:
    """Human-readable form, e.g. 'x^3 + x + 1'."""
    if p == 0:
        return "0"
    terms = []
    for i in range(degree(p), -1, -1):
        if p >> i & 1:
            if i == 0:
                terms.append("1")
            elif i == 1:
                terms.append(var)
            else:
                terms.append(f"{var}^{i}")
    return " + ".join(terms)
