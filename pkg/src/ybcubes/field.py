"""Exact arithmetic in GF(q^2) through Zech logarithms.

Elements of GF(p^n) are polynomials over GF(p) reduced modulo an irreducible
polynomial of degree n.  Internally an element is encoded as the integer
``c0 + c1*p + ... + c_{n-1}*p^(n-1)``.  Once a generator ``delta`` of the
multiplicative group is fixed, every nonzero element is ``delta**t`` and
addition reduces to the Zech table ``t -> log(1 + delta**t)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property

__all__ = [
    "FieldError",
    "FieldSpec",
    "GF",
    "ZechTable",
    "NEG_INF",
    "build_field",
    "default_modulus",
    "is_prime",
    "kl_pair",
    "prime_power",
]

# sentinel for log(0)
NEG_INF = None


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e``; raise if q is not a prime power."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, e


# -- polynomials over GF(p), coefficient lists low degree first ---------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    m = _trim(list(m))
    inv_lead = pow(m[-1], -1, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _polymul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _monic_polys(p: int, degree: int):
    # lexicographic in (c0, c1, ..., c_{d-1}) read from the top coefficient down
    for coeffs in itertools.product(range(p), repeat=degree):
        yield list(reversed(coeffs)) + [1]


def is_irreducible(modulus: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    f = _trim([c % p for c in modulus])
    n = len(f) - 1
    if n < 1:
        return False
    for d in range(1, n // 2 + 1):
        for g in _monic_polys(p, d):
            if not _polymod(f, g, p):
                return False
    return True


def default_modulus(p: int, n: int) -> list[int]:
    """Smallest monic irreducible polynomial of degree ``n`` over GF(p).

    Candidates are ordered by their coefficient vector read from the
    second-highest coefficient down, i.e. ``x^2, x^2+1, ..., x^2+x, ...``.
    """
    for f in _monic_polys(p, n):
        if is_irreducible(f, p):
            return f
    raise FieldError(f"no irreducible polynomial of degree {n} over GF({p})")  # pragma: no cover


class GF:
    """The finite field GF(p^n) realised as GF(p)[x]/(modulus)."""

    def __init__(self, p: int, modulus: list[int]):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        modulus = _trim([c % p for c in modulus])
        if len(modulus) < 2 or modulus[-1] != 1:
            raise FieldError("modulus must be monic of positive degree")
        if not is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.modulus = modulus
        self.degree = len(modulus) - 1
        self.order = p ** self.degree

    def encode(self, coeffs: list[int]) -> int:
        coeffs = _polymod(coeffs, self.modulus, self.p)
        return sum(c * self.p ** i for i, c in enumerate(coeffs))

    def decode(self, a: int) -> list[int]:
        out = []
        for _ in range(self.degree):
            a, c = divmod(a, self.p)
            out.append(c)
        return out

    def add(self, a: int, b: int) -> int:
        return self.encode([x + y for x, y in zip(self.decode(a), self.decode(b))])

    def mul(self, a: int, b: int) -> int:
        return self.encode(_polymul(self.decode(a), self.decode(b), self.p))

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            raise FieldError("negative exponents need a nonzero base; use pow(inverse)")
        result, base = 1, a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise FieldError("0 has no multiplicative order")
        n = self.order - 1
        order = n
        for r in _prime_factors(n):
            while order % r == 0 and self.pow(a, order // r) == 1:
                order //= r
        return order

    @cached_property
    def primitive_root(self) -> int:
        """Smallest encoded element generating the multiplicative group."""
        return next(a for a in range(1, self.order) if self.mult_order(a) == self.order - 1)


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class FieldSpec:
    """Data selecting ``GF(q^2)`` and a generator ``delta`` of its unit group.

    ``delta = g ** delta_exponent`` where ``g`` is the smallest primitive
    element for ``modulus``.  ``modulus=None`` picks :func:`default_modulus`.
    """

    p: int
    e: int = 1
    modulus: tuple[int, ...] | None = None
    delta_exponent: int = 1

    @property
    def q(self) -> int:
        return self.p ** self.e

    @classmethod
    def for_q(cls, q: int, delta_exponent: int = 1, modulus=None) -> "FieldSpec":
        p, e = prime_power(q)
        return cls(p, e, tuple(modulus) if modulus is not None else None, delta_exponent)

    def resolved_modulus(self) -> list[int]:
        if self.modulus is None:
            return default_modulus(self.p, 2 * self.e)
        return list(self.modulus)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "e": self.e,
            "modulus": self.resolved_modulus(),
            "delta_exponent": self.delta_exponent,
        }

    @classmethod
    def from_json(cls, data: dict) -> "FieldSpec":
        modulus = data.get("modulus")
        return cls(
            int(data["p"]),
            int(data.get("e", 1)),
            tuple(modulus) if modulus is not None else None,
            int(data.get("delta_exponent", 1)),
        )


@dataclass(frozen=True)
class ZechTable:
    """Zech logarithms of GF(q^2) with respect to ``delta``.

    ``z[t]`` is the exponent with ``delta**z[t] == 1 + delta**t``, or
    :data:`NEG_INF` when ``1 + delta**t == 0``.
    """

    q: int
    spec: FieldSpec
    gf: GF = field(repr=False, compare=False)
    delta: int
    z: tuple[int | None, ...] = field(repr=False)
    exp: tuple[int, ...] = field(repr=False, compare=False)

    @property
    def n(self) -> int:
        """Order of the multiplicative group, ``q^2 - 1``."""
        return self.q * self.q - 1

    def zech(self, t: int) -> int | None:
        return self.z[t % self.n]

    def power(self, t: int) -> int:
        """Encoded field element ``delta**t``."""
        return self.exp[t % self.n]

    def check(self) -> list[str]:
        """Recompute each entry by polynomial arithmetic; return violations."""
        gf, n = self.gf, self.n
        minus_one = gf.encode([-1])
        problems = []
        for t in range(n):
            lhs = gf.add(1, gf.pow(self.delta, t))
            zt = self.z[t]
            if zt is NEG_INF:
                if gf.pow(self.delta, t) != minus_one:
                    problems.append(f"z({t}) = -inf but delta^{t} != -1")
            elif gf.pow(self.delta, zt) != lhs:
                problems.append(f"delta^z({t}) != 1 + delta^{t}")
        return problems


def build_field(spec: FieldSpec) -> ZechTable:
    if not is_prime(spec.p):
        raise FieldError(f"p = {spec.p} is not prime")
    if spec.e < 1:
        raise FieldError("exponent e must be >= 1")
    gf = GF(spec.p, spec.resolved_modulus())
    if gf.degree != 2 * spec.e:
        raise FieldError(f"modulus must have degree {2 * spec.e}, got {gf.degree}")
    q = spec.q
    n = q * q - 1
    if math.gcd(spec.delta_exponent, n) != 1:
        raise FieldError(
            f"delta_exponent {spec.delta_exponent} is not coprime to {n}; "
            "delta would not generate the multiplicative group"
        )
    delta = gf.pow(gf.primitive_root, spec.delta_exponent % n)

    exp = [1] * n
    for t in range(1, n):
        exp[t] = gf.mul(exp[t - 1], delta)
    log = {a: t for t, a in enumerate(exp)}
    if len(log) != n:  # pragma: no cover - guarded by the gcd test above
        raise FieldError("delta is not a generator")

    z = tuple(log.get(gf.add(1, exp[t]), NEG_INF) for t in range(n))
    return ZechTable(q=q, spec=spec, gf=gf, delta=delta, z=z, exp=tuple(exp))


def kl_pair(table: ZechTable, i: int, j: int) -> tuple[int, int]:
    """Exponents ``(k, l)`` of the relation ``a_i a_j = a_k a_l``.

    With ``x = log(1 + delta^(j-i))`` and ``y = x + i - j`` this returns
    ``k = j - y(q-1)`` and ``l = i - x(q-1)`` modulo ``q^2 - 1``.
    """
    q, n = table.q, table.n
    if (i - j) % (q - 1) == 0:
        raise FieldError(f"i = {i} and j = {j} are congruent mod q-1; no square relation")
    x = table.zech(j - i)
    if x is NEG_INF:  # pragma: no cover - excluded by the congruence test
        raise FieldError("1 + delta^(j-i) vanished")
    y = x + i - j
    return (j - y * (q - 1)) % n, (i - x * (q - 1)) % n
