"""Arithmetic in GF(p^r).

Elements are stored as integers ``sum(c_i * p**i)`` where ``c_i`` is the
coefficient of ``x**i`` in the polynomial representation modulo the field's
defining polynomial.  Prime-field elements are therefore the integers
``0 .. p-1``.  For ``q <= TABLE_LIMIT`` log/antilog tables back every
multiplicative operation; above that, plain polynomial arithmetic is used.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

TABLE_LIMIT = 2**16
MAX_EXPONENT = 20


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
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


# --- polynomials over GF(p), coefficient lists low -> high -----------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], f: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(base: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(base, f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        e >>= 1
    return result


def _psub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def is_irreducible(f: list[int], p: int) -> bool:
    """Irreducibility of ``f`` (low -> high coefficients) over GF(p).

    Degrees up to 3 are settled by the absence of a root; higher degrees use
    Rabin's test (gcd with Frobenius powers of x).
    """
    f = _trim(list(f))
    r = len(f) - 1
    if r < 1:
        return False
    if r == 1:
        return True
    if r <= 3:
        for x in range(p):
            if sum(c * pow(x, i, p) for i, c in enumerate(f)) % p == 0:
                return False
        return True
    x = [0, 1]
    if _psub(_ppowmod(x, p**r, f, p), x, p):
        return False
    for s in prime_factors(r):
        h = _psub(_ppowmod(x, p ** (r // s), f, p), x, p)
        if len(_pgcd(f, h, p)) != 1:
            return False
    return True


def _int_to_poly(v: int, p: int) -> list[int]:
    out = []
    while v:
        out.append(v % p)
        v //= p
    return out


def _poly_to_int(c: list[int], p: int) -> int:
    v = 0
    for x in reversed(c):
        v = v * p + x
    return v


class GF:
    """The field GF(p^r) with a fixed modulus and primitive generator."""

    def __init__(self, p: int, r: int, modulus: list[int], generator: int | None = None):
        if not is_prime(p):
            raise FieldError(f"p={p} is not prime")
        if not 1 <= r <= MAX_EXPONENT:
            raise FieldError(f"r={r} out of range [1, {MAX_EXPONENT}]")
        modulus = [int(c) % p for c in modulus]
        if len(modulus) != r + 1 or modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree r")
        if not is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.r = r
        self.q = p**r
        self.modulus = tuple(modulus)
        self._pw = [p**i for i in range(r)]
        self.exp_table = None
        self.log_table = None
        if generator is None:
            generator = self._smallest_generator()
        elif self.order(generator) != self.q - 1:
            raise FieldError(f"{generator} is not a primitive element")
        self.generator = int(generator)
        if self.q <= TABLE_LIMIT:
            self._build_tables()

    # --- construction helpers ---
    def _smallest_generator(self) -> int:
        for g in range(1, self.q):
            if self.order(g) == self.q - 1:
                return g
        raise FieldError("no primitive element found")

    def _build_tables(self) -> None:
        n = self.q - 1
        exp = np.zeros(2 * n + 1, dtype=np.int64)
        x = 1
        for i in range(n):
            exp[i] = x
            x = self._polymul(x, self.generator)
        exp[n:2 * n] = exp[:n]
        exp[2 * n] = exp[0]
        log = np.zeros(self.q, dtype=np.int64)
        log[exp[:n]] = np.arange(n)
        self.exp_table = exp
        self.log_table = log

    def _polymul(self, a: int, b: int) -> int:
        prod = _pmul(_int_to_poly(a, self.p), _int_to_poly(b, self.p), self.p)
        return _poly_to_int(_pmod(prod, list(self.modulus), self.p), self.p)

    # --- scalar arithmetic on integer encodings ---
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.r == 1:
            return (a + b) % self.p
        p, out, pw = self.p, 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * pw
            a //= p
            b //= p
            pw *= p
        return out

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        p, out, pw = self.p, 0, 1
        while a:
            out += ((-(a % p)) % p) * pw
            a //= p
            pw *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.exp_table is not None:
            return int(self.exp_table[self.log_table[a] + self.log_table[b]])
        return self._polymul(a, b)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 1 if e == 0 else 0
        if self.exp_table is not None:
            return int(self.exp_table[(int(self.log_table[a]) * e) % (self.q - 1)])
        result = 1
        while e:
            if e & 1:
                result = self._polymul(result, a)
            a = self._polymul(a, a)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.q)
        if self.exp_table is not None:
            return int(self.exp_table[(self.q - 1 - self.log_table[a]) % (self.q - 1)])
        return self.pow(a, self.q - 2)

    def order(self, a: int) -> int:
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        n = self.q - 1
        order = n
        for f in prime_factors(n):
            while order % f == 0 and self.pow(a, order // f) == 1:
                order //= f
        return order

    def frobenius(self, a: int, times: int = 1) -> int:
        return self.pow(a, self.p**times)

    def partial_trace(self, a: int, i: int) -> int:
        """``a + a^p + ... + a^(p^(i-1))``."""
        if not 1 <= i <= self.r:
            raise FieldError(f"partial trace length {i} outside [1, {self.r}]")
        total, x = 0, a
        for _ in range(i):
            total = self.add(total, x)
            x = self.pow(x, self.p)
        return total

    def trace(self, a: int) -> int:
        return self.partial_trace(a, self.r)

    def subgroup_generator(self, n: int) -> int:
        """Element of multiplicative order exactly ``n``."""
        if n < 1 or (self.q - 1) % n:
            raise FieldError(f"{n} does not divide q-1 = {self.q - 1}")
        return self.pow(self.generator, (self.q - 1) // n)

    def digits(self, a: int) -> list[int]:
        return [(a // w) % self.p for w in self._pw]

    def from_digits(self, d) -> int:
        return int(sum(int(c) * w for c, w in zip(d, self._pw)))

    def is_prime_field_element(self, a: int) -> bool:
        return 0 <= a < self.p

    # --- vectorised arithmetic on integer arrays ---
    def digits_array(self, a: np.ndarray) -> np.ndarray:
        """Shape ``a.shape + (r,)`` array of base-p digits."""
        a = np.asarray(a, dtype=np.int64)
        return np.stack([(a // w) % self.p for w in self._pw], axis=-1)

    def from_digits_array(self, d: np.ndarray) -> np.ndarray:
        d = np.asarray(d, dtype=np.int64)
        return (d * np.array(self._pw, dtype=np.int64)).sum(axis=-1)

    def add_arr(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self.r == 1:
            return (a + b) % self.p
        out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.int64)
        for w in self._pw:
            out += (((a // w) + (b // w)) % self.p) * w
        return out

    def neg_arr(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a.copy()
        if self.r == 1:
            return (-a) % self.p
        out = np.zeros_like(a)
        for w in self._pw:
            out += ((-(a // w)) % self.p) * w
        return out

    def sub_arr(self, a, b) -> np.ndarray:
        return self.add_arr(a, self.neg_arr(b))

    def mul_arr(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.r == 1:
            return (a * b) % self.p
        if self.exp_table is None:
            fn = np.frompyfunc(self.mul, 2, 1)
            return fn(a, b).astype(np.int64)
        res = self.exp_table[self.log_table[a] + self.log_table[b]]
        return np.where((a == 0) | (b == 0), 0, res)

    def inv_arr(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        if self.exp_table is None:
            return np.frompyfunc(self.inv, 1, 1)(a).astype(np.int64)
        return self.exp_table[(self.q - 1 - self.log_table[a]) % (self.q - 1)]

    def exp_arr(self, logs) -> np.ndarray:
        """``generator ** logs`` elementwise."""
        logs = np.asarray(logs, dtype=np.int64) % (self.q - 1)
        if self.exp_table is not None:
            return self.exp_table[logs]
        fn = np.frompyfunc(lambda e: self.pow(self.generator, int(e)), 1, 1)
        return fn(logs).astype(np.int64)

    def log_arr(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise FieldError("log of zero")
        if self.log_table is not None:
            return self.log_table[a]
        raise FieldError("discrete logs need tables (q <= %d)" % TABLE_LIMIT)

    @lru_cache(maxsize=None)
    def partial_trace_table(self, i: int) -> np.ndarray:
        """``T[l]`` = partial trace of ``generator**l`` over ``i`` terms."""
        if self.exp_table is None:
            raise FieldError("trace tables need q <= %d" % TABLE_LIMIT)
        n = self.q - 1
        logs = np.arange(n, dtype=np.int64)
        total = np.zeros(n, dtype=np.int64)
        for k in range(i):
            total = self.add_arr(total, self.exp_table[(logs * self.p**k) % n])
        return total

    # --- elements and serialisation ---
    def __call__(self, value) -> "FieldElement":
        if isinstance(value, str):
            return FieldElement(self, self.parse(value))
        value = int(value)
        if not 0 <= value < self.q:
            raise FieldError(f"{value} is not an element encoding of GF({self.q})")
        return FieldElement(self, value)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def alpha(self) -> "FieldElement":
        return FieldElement(self, self.generator)

    def format(self, a: int) -> str:
        """Base-p digit string, most significant coefficient first."""
        return "".join(str(d) for d in reversed(self.digits(a)))

    def parse(self, s: str) -> int:
        s = s.strip()
        if len(s) != self.r or any(not c.isdigit() or int(c) >= self.p for c in s):
            raise FieldError(f"bad GF({self.p}^{self.r}) digit string {s!r}")
        return self.from_digits([int(c) for c in reversed(s)])

    def to_dict(self) -> dict:
        return {"p": self.p, "r": self.r,
                "modulus": "".join(str(c) for c in reversed(self.modulus))}

    @classmethod
    def from_dict(cls, d: dict) -> "GF":
        mod = [int(c) for c in reversed(d["modulus"])]
        return cls(int(d["p"]), int(d["r"]), mod)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GF) and self.p == other.p and self.r == other.r
                and self.modulus == other.modulus and self.generator == other.generator)

    def __hash__(self) -> int:
        return hash((self.p, self.r, self.modulus, self.generator))

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.r})"

    def __reduce__(self):
        if self == build_field(self.p, self.r):
            return (build_field, (self.p, self.r))
        return (GF, (self.p, self.r, list(self.modulus), self.generator))


@dataclass(frozen=True)
class FieldElement:
    field: GF
    value: int

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError("elements belong to different fields")
            return other.value
        if isinstance(other, int):
            return self.field.from_digits([other % self.field.p])
        return NotImplemented

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._coerce(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._coerce(other), self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self.field.inv(self._coerce(other))))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def trace(self) -> "FieldElement":
        return FieldElement(self.field, self.field.trace(self.value))

    def partial_trace(self, i: int) -> "FieldElement":
        return FieldElement(self.field, self.field.partial_trace(self.value, i))

    def order(self) -> int:
        return self.field.order(self.value)

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return self.field.format(self.value)

    def __repr__(self) -> str:
        return f"{self.field!r}({self.field.format(self.value)})"


@lru_cache(maxsize=None)
def build_field(p: int, r: int) -> GF:
    """GF(p^r) with the smallest irreducible modulus and smallest primitive element.

    Polynomials are ordered by their base-p integer encoding, i.e.
    lexicographically on the coefficient list read from the leading term.
    """
    if not is_prime(p):
        raise FieldError(f"p={p} is not prime")
    if not 1 <= r <= MAX_EXPONENT:
        raise FieldError(f"r={r} out of range [1, {MAX_EXPONENT}]")
    for tail in range(p**r):
        f = _int_to_poly(tail, p) + [0] * r
        f = f[:r] + [1]
        if is_irreducible(f, p):
            return GF(p, r, f)
    raise FieldError("no irreducible polynomial found")  # unreachable


def trace_to_prime(x: FieldElement) -> FieldElement:
    return x.trace()


def partial_trace(x: FieldElement, i: int) -> FieldElement:
    return x.partial_trace(i)


def subgroup_generator(spec: GF, n: int) -> FieldElement:
    return FieldElement(spec, spec.subgroup_generator(n))
