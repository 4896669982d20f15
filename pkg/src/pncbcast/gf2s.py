"""Arithmetic in GF(2^s), 1 <= s <= 16.

Field elements are plain ints in [0, 2^s): the bit pattern of a binary
polynomial.  Addition is XOR.  Multiplication is table-driven (exp/log over
a generator of the multiplicative group), which keeps the per-slot coding
work in the simulator cheap; vector variants operate on numpy uint32 arrays.

The reduction polynomial defaults to the lexicographically smallest
irreducible polynomial of degree s, so that a bare width fully determines
the field and traces stay reproducible.  Note that x itself need not be
primitive for these moduli (it is not for s=8 or s=16), so table
construction searches for a generator instead of assuming x.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_S = 16

#: Lexicographically smallest irreducible polynomial of each degree,
#: leading term included (e.g. 0x13 = x^4 + x + 1).
SMALLEST_IRREDUCIBLE = {
    1: 0x2, 2: 0x7, 3: 0xB, 4: 0x13, 5: 0x25, 6: 0x43, 7: 0x83,
    8: 0x11B, 9: 0x203, 10: 0x409, 11: 0x805, 12: 0x1009, 13: 0x201B,
    14: 0x4021, 15: 0x8003, 16: 0x1002B,
}


def _poly_mul_mod(a: int, b: int, poly: int) -> int:
    """Carry-less product of a and b reduced modulo poly."""
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        a <<= 1
        b >>= 1
    deg = poly.bit_length() - 1
    while acc and acc.bit_length() - 1 >= deg:
        acc ^= poly << (acc.bit_length() - 1 - deg)
    return acc


def _poly_divides(d: int, p: int) -> bool:
    dd = d.bit_length() - 1
    while p and p.bit_length() - 1 >= dd:
        p ^= d << (p.bit_length() - 1 - dd)
    return p == 0


def _is_irreducible(poly: int) -> bool:
    """Exhaustive trial division; fine for degrees up to 16."""
    deg = poly.bit_length() - 1
    if deg < 1:
        return False
    for d in range(2, 1 << (deg // 2 + 1)):
        if _poly_divides(d, poly):
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
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
    """Serializable description of a field: width and reduction polynomial."""

    s: int
    reduction_poly: int

    def to_json(self) -> str:
        return json.dumps({"s": self.s, "reduction_poly": hex(self.reduction_poly)})

    @classmethod
    def from_json(cls, blob: str) -> "FieldSpec":
        d = json.loads(blob)
        return cls(s=int(d["s"]), reduction_poly=int(d["reduction_poly"], 16))


class Field:
    """GF(2^s) with exp/log multiplication tables."""

    def __init__(self, s: int, reduction_poly: int | None = None):
        if not 1 <= s <= MAX_S:
            raise ValueError(f"s must be in 1..{MAX_S}, got {s}")
        if reduction_poly is None:
            reduction_poly = SMALLEST_IRREDUCIBLE[s]
        if reduction_poly.bit_length() - 1 != s:
            raise ValueError(
                f"reduction polynomial {reduction_poly:#x} has degree "
                f"{reduction_poly.bit_length() - 1}, expected {s}"
            )
        if not _is_irreducible(reduction_poly):
            raise ValueError(f"reduction polynomial {reduction_poly:#x} is reducible")
        self.s = s
        self.reduction_poly = reduction_poly
        self.size = 1 << s
        self.order = self.size - 1  # size of the multiplicative group
        self._build_tables()

    # -- construction -------------------------------------------------

    def _pow_mod(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = _poly_mul_mod(r, a, self.reduction_poly)
            a = _poly_mul_mod(a, a, self.reduction_poly)
            e >>= 1
        return r

    def _find_generator(self) -> int:
        primes = _prime_factors(self.order) if self.order > 1 else []
        for g in range(1 if self.order == 1 else 2, self.size):
            if all(self._pow_mod(g, self.order // p) != 1 for p in primes):
                return g
        raise RuntimeError("no generator found; reduction polynomial not irreducible?")

    def _build_tables(self) -> None:
        g = self._find_generator()
        exp = np.zeros(2 * max(self.order, 1), dtype=np.uint32)
        log = np.zeros(self.size, dtype=np.uint32)
        cur = 1
        for i in range(self.order):
            exp[i] = cur
            log[cur] = i
            cur = _poly_mul_mod(cur, g, self.reduction_poly)
        exp[self.order : 2 * self.order] = exp[: self.order]
        self.generator = g
        self._exp = exp
        self._log = log

    # -- scalar ops ----------------------------------------------------

    def _check(self, a: int) -> None:
        if not 0 <= a < self.size:
            raise ValueError(f"{a} out of range for GF(2^{self.s})")

    def add(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        if a == 0 or b == 0:
            return 0
        return int(self._exp[int(self._log[a]) + int(self._log[b])])

    def pow(self, a: int, e: int) -> int:
        self._check(a)
        if e < 0:
            raise ValueError("negative exponent")
        if a == 0:
            return 0 if e else 1
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        """Multiplicative inverse via Fermat: a^(2^s - 2)."""
        self._check(a)
        if a == 0:
            raise ValueError("zero has no multiplicative inverse")
        return self.pow(a, self.size - 2)

    def sample_nonzero(self, rng: np.random.Generator) -> int:
        """Uniform draw from the nonzero elements."""
        return int(rng.integers(1, self.size))

    # -- vector ops (coefficient vectors as numpy uint32) ---------------

    def vec_zeros(self, n: int) -> np.ndarray:
        return np.zeros(n, dtype=np.uint32)

    def vec_add(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        return np.bitwise_xor(u, v)

    def vec_scale(self, u: np.ndarray, alpha: int) -> np.ndarray:
        self._check(alpha)
        if alpha == 0:
            return np.zeros_like(u)
        if alpha == 1:
            return u.copy()
        out = np.zeros_like(u)
        nz = u != 0
        out[nz] = self._exp[self._log[u[nz]] + int(self._log[alpha])]
        return out

    # -- plumbing --------------------------------------------------------

    @property
    def spec(self) -> FieldSpec:
        return FieldSpec(s=self.s, reduction_poly=self.reduction_poly)

    @classmethod
    def from_spec(cls, spec: FieldSpec) -> "Field":
        return cls(spec.s, spec.reduction_poly)

    def __repr__(self) -> str:  # pragma: no cover
        return f"Field(s={self.s}, reduction_poly={self.reduction_poly:#x})"


@lru_cache(maxsize=None)
def default_field(s: int) -> Field:
    """Cached field with the default reduction polynomial."""
    return Field(s)
