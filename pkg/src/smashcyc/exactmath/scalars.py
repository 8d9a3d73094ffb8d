"""Exact scalars: rationals and elements of cyclotomic fields.

Rationals are plain ``int`` or ``fractions.Fraction`` values (integral
fractions are demoted to ``int`` so that the common +-1 entries stay cheap).
An element of Q(zeta_N) that is not rational is a :class:`Cyclotomic`;
arithmetic that lands back in Q returns a rational, so N = 2 (zeta = -1)
never produces a Cyclotomic at all.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
import re

MAX_ORDER = 24


def _clean(x):
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


def rational(x) -> int | Fraction:
    """Coerce an int/Fraction/str into a normalized rational."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return _clean(x)
    if isinstance(x, str):
        return _clean(Fraction(x.strip()))
    raise TypeError(f"not a rational scalar: {x!r}")


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("order must be positive")
    # x^n - 1 divided by Phi_d for every proper divisor d
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_exact_div(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _poly_exact_div(num, den):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1] // den[-1]
        out[k] = c
        for i, dc in enumerate(den):
            num[k + i] -= c * dc
    assert not any(num), "inexact polynomial division"
    return out


@lru_cache(maxsize=None)
def _reduction_table(n: int):
    """Power-basis vectors of x^k mod Phi_n for 0 <= k < 2*phi(n) - 1."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    table = []
    for k in range(max(2 * deg - 1, 1)):
        if k < deg:
            v = [0] * deg
            v[k] = 1
        else:
            prev = table[k - 1]
            # x * prev, then replace x^deg by -(phi_0 + ... + phi_{deg-1} x^{deg-1})
            top = prev[-1]
            v = [0] + prev[:-1]
            if top:
                for i in range(deg):
                    v[i] -= top * phi[i]
        table.append(v)
    return tuple(tuple(v) for v in table)


class Cyclotomic:
    """An irrational element of Q(zeta_N) in the power basis of zeta_N.

    Instances are only created through :func:`cyclotomic`, which demotes
    rational values to ``int``/``Fraction``.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: tuple):
        self.order = order
        self.coeffs = coeffs

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                raise ValueError(
                    f"mixed cyclotomic fields Q(zeta_{self.order}) and "
                    f"Q(zeta_{other.order}) are not supported")
            return other.coeffs
        if isinstance(other, (int, Fraction)):
            return (other,) + (0,) * (len(self.coeffs) - 1)
        return None

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return cyclotomic(self.order, [a + b for a, b in zip(self.coeffs, c)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return cyclotomic(self.order, [a - b for a, b in zip(self.coeffs, c)])

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return cyclotomic(self.order, [b - a for a, b in zip(self.coeffs, c)])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return 0
            return Cyclotomic(self.order, tuple(_clean(a * other) for a in self.coeffs))
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        deg = len(self.coeffs)
        prod = [0] * (2 * deg - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(c):
                    if b:
                        prod[i + j] += a * b
        table = _reduction_table(self.order)
        out = [0] * deg
        for k, v in enumerate(prod):
            if v:
                for i, t in enumerate(table[k]):
                    if t:
                        out[i] += v * t
        return cyclotomic(self.order, out)

    __rmul__ = __mul__

    def inverse(self):
        # solve (multiplication-by-self matrix) y = e_0 over Q
        deg = len(self.coeffs)
        basis = [cyclotomic(self.order, [1 if i == k else 0 for i in range(deg)])
                 for k in range(deg)]
        cols = [_vec(self * e, deg) for e in basis]
        rows = [[Fraction(cols[j][i]) for j in range(deg)] + [Fraction(int(i == 0))]
                for i in range(deg)]
        for c in range(deg):
            piv = next(r for r in range(c, deg) if rows[r][c] != 0)
            rows[c], rows[piv] = rows[piv], rows[c]
            lead = rows[c][c]
            rows[c] = [x / lead for x in rows[c]]
            for r in range(deg):
                if r != c and rows[r][c] != 0:
                    f = rows[r][c]
                    rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
        return cyclotomic(self.order, [rows[i][deg] for i in range(deg)])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        if isinstance(other, Cyclotomic):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = 1, self
        while k:
            if k & 1:
                result = base * result
            base = base * base
            k >>= 1
        return result

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            return self.order == other.order and self.coeffs == other.coeffs
        return False  # irrational by construction

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __bool__(self):
        return True

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"({c})*z{self.order}^{k}")
        return " + ".join(terms)


def _vec(x, deg):
    if isinstance(x, Cyclotomic):
        return list(x.coeffs)
    return [x] + [0] * (deg - 1)


def cyclotomic(order: int, coeffs) -> int | Fraction | Cyclotomic:
    """Build an element of Q(zeta_order) from power-basis coefficients.

    Coefficients beyond phi(order) are reduced modulo the cyclotomic
    polynomial.  A rational result is returned as int/Fraction.
    """
    if not 1 <= order <= MAX_ORDER:
        raise ValueError(f"cyclotomic order {order} outside supported range 1..{MAX_ORDER}")
    deg = len(cyclotomic_polynomial(order)) - 1
    coeffs = [rational(c) for c in coeffs]
    if len(coeffs) > deg:
        # reduce via the power table, extended on demand
        out = [0] * deg
        table = list(_reduction_table(order))
        phi = cyclotomic_polynomial(order)
        while len(table) < len(coeffs):
            prev = list(table[-1])
            top = prev[-1]
            v = [0] + prev[:-1]
            for i in range(deg):
                v[i] -= top * phi[i]
            table.append(tuple(v))
        for k, c in enumerate(coeffs):
            if c:
                for i, t in enumerate(table[k]):
                    out[i] += c * t
        coeffs = out
    else:
        coeffs = coeffs + [0] * (deg - len(coeffs))
    coeffs = tuple(_clean(c) if isinstance(c, Fraction) else c for c in coeffs)
    if not any(coeffs[1:]):
        return coeffs[0]
    return Cyclotomic(order, coeffs)


def zeta(order: int):
    """The primitive root of unity zeta_order = exp(2 pi i / order)."""
    return cyclotomic(order, [0, 1])


def field_order(x) -> int:
    """1 for rationals, N for an element of Q(zeta_N)."""
    return x.order if isinstance(x, Cyclotomic) else 1


def is_zero(x) -> bool:
    return not x if not isinstance(x, Cyclotomic) else False


def div(a, b):
    """Exact quotient a / b in the ambient field."""
    if isinstance(b, Cyclotomic):
        return a * b.inverse()
    if isinstance(a, Cyclotomic):
        return a / b
    return _clean(Fraction(a) / b)


def q_integer(n: int, q):
    """(n)_q = 1 + q + ... + q^(n-1)."""
    total, power = 0, 1
    for _ in range(n):
        total = total + power
        power = power * q
    return total


def q_binomial(n: int, k: int, q):
    """Gaussian binomial coefficient [n choose k]_q."""
    if k < 0 or k > n:
        return 0
    num, den = 1, 1
    for i in range(k):
        num = num * q_integer(n - i, q)
        den = den * q_integer(i + 1, q)
    return div(num, den)


_RAT_RE = re.compile(r"^\s*-?\d+(\s*/\s*\d+)?\s*$")


def format_scalar(x):
    """Serialize: rationals as "p/q" ("p" when q = 1), cyclotomics as dicts."""
    if isinstance(x, Cyclotomic):
        return {"order": x.order, "coeffs": [format_scalar(c) for c in x.coeffs]}
    x = rational(x)
    if isinstance(x, int):
        return str(x)
    return f"{x.numerator}/{x.denominator}"


def parse_scalar(data):
    """Inverse of :func:`format_scalar`; also accepts bare ints."""
    if isinstance(data, dict):
        return cyclotomic(int(data["order"]), [parse_scalar(c) for c in data["coeffs"]])
    if isinstance(data, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(data, int):
        return data
    if isinstance(data, str):
        if not _RAT_RE.match(data):
            raise ValueError(f"malformed rational scalar {data!r}")
        return rational(data.replace(" ", ""))
    raise TypeError(f"cannot parse scalar from {data!r}")
