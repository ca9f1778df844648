"""Exact arithmetic in the rational group ring Q[Z/N] and in cyclotomic fields.

Elements of Q[Z/N] are stored as length-N vectors of exact rationals
(coefficient of t^k at index k); all products are cyclic convolutions, so
exponents reduce mod N automatically.  For N a prime power p^m the ring
splits as

    Q[Z/N]  ~  Q  (+)  Q(zeta_p)  (+)  ...  (+)  Q(zeta_{p^m}),

one field summand per divisor of N.  The same splitting (indexed by
divisors) works for any cyclic N and is what the divisor-level functions
implement; the level-indexed API specialises it to prime powers, where
level j means conductor p^j.

No floating point is used anywhere: coefficients are `fractions.Fraction`
over arbitrary-precision integers.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


# ---------------------------------------------------------------------------
# Integer polynomial helpers (dense lists, index = degree)
# ---------------------------------------------------------------------------

def _poly_trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul_int(p: Sequence[int], q: Sequence[int]) -> list:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _poly_trim(out)


def _poly_divmod_int(num: Sequence[int], den: Sequence[int]) -> tuple[list, list]:
    """Exact division of integer polynomials (raises if not exact at a step
    where the denominator leading coefficient does not divide)."""
    num = list(num)
    den = _poly_trim(list(den))
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    q = [0] * max(0, len(num) - len(den) + 1)
    lead = den[-1]
    while len(_poly_trim(num)) >= len(den):
        num = _poly_trim(num)
        shift = len(num) - len(den)
        c, rem = divmod(num[-1], lead)
        if rem:
            raise ArithmeticError("non-exact integer polynomial division")
        q[shift] = c
        for i, b in enumerate(den):
            num[shift + i] -= c * b
    return _poly_trim(q), _poly_trim(num)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError("conductor must be positive")
    if m == 1:
        return (-1, 1)
    num = [0] * m + [1]
    num[0] = -1  # x^m - 1
    den = [1]
    for d in range(1, m):
        if m % d == 0:
            den = _poly_mul_int(den, list(cyclotomic_polynomial(d)))
    q, r = _poly_divmod_int(num, den)
    if r:
        raise ArithmeticError("cyclotomic division left a remainder")
    return tuple(q)


def euler_phi(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


@lru_cache(maxsize=None)
def _power_basis_table(m: int) -> tuple[tuple[Fraction, ...], ...]:
    """Row e (0 <= e < m) is x^e reduced mod Phi_m, in the power basis."""
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    cur = [Fraction(0)] * deg
    cur[0] = Fraction(1)
    rows = [tuple(cur)]
    for _ in range(m - 1):
        carry = cur[deg - 1]
        cur = [Fraction(0)] + cur[:deg - 1]
        if carry:
            # Phi is monic: x^deg = -(phi[0] + phi[1] x + ... + phi[deg-1] x^{deg-1})
            for i in range(deg):
                cur[i] -= carry * phi[i]
        rows.append(tuple(cur))
    return tuple(rows)


# ---------------------------------------------------------------------------
# Cyclotomic numbers
# ---------------------------------------------------------------------------

class CyclotomicNumber:
    """An element of Q(zeta_m), stored in the power basis mod Phi_m.

    Conductor 1 is a bare rational (Phi_1 = x - 1, degree 1).  Nonzero
    elements are invertible; inversion runs the extended Euclidean
    algorithm against Phi_m.
    """

    __slots__ = ("conductor", "coords")

    def __init__(self, conductor: int, coords: Iterable):
        self.conductor = conductor
        coords = tuple(_as_fraction(c) for c in coords)
        deg = euler_phi(conductor)
        if len(coords) != deg:
            raise ValueError(
                f"conductor {conductor} needs {deg} coordinates, got {len(coords)}")
        self.coords = coords

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, m: int) -> "CyclotomicNumber":
        return cls(m, [0] * euler_phi(m))

    @classmethod
    def one(cls, m: int) -> "CyclotomicNumber":
        c = [Fraction(0)] * euler_phi(m)
        c[0] = Fraction(1)
        return cls(m, c)

    @classmethod
    def from_rational(cls, m: int, x) -> "CyclotomicNumber":
        c = [Fraction(0)] * euler_phi(m)
        c[0] = _as_fraction(x)
        return cls(m, c)

    @classmethod
    def zeta_power(cls, m: int, e: int) -> "CyclotomicNumber":
        """zeta_m^e as a power-basis element."""
        return cls(m, _power_basis_table(m)[e % m])

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational element")
        return self.coords[0]

    def _check(self, other: "CyclotomicNumber") -> None:
        if self.conductor != other.conductor:
            raise ValueError(
                f"conductor mismatch: {self.conductor} vs {other.conductor}")

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "CyclotomicNumber") -> "CyclotomicNumber":
        self._check(other)
        return CyclotomicNumber(
            self.conductor, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "CyclotomicNumber") -> "CyclotomicNumber":
        self._check(other)
        return CyclotomicNumber(
            self.conductor, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "CyclotomicNumber":
        return CyclotomicNumber(self.conductor, [-a for a in self.coords])

    def scale(self, r) -> "CyclotomicNumber":
        r = _as_fraction(r)
        return CyclotomicNumber(self.conductor, [r * a for a in self.coords])

    def __mul__(self, other: "CyclotomicNumber") -> "CyclotomicNumber":
        self._check(other)
        deg = len(self.coords)
        prod = [Fraction(0)] * (2 * deg - 1 if deg else 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    if b:
                        prod[i + j] += a * b
        return CyclotomicNumber(self.conductor, _reduce_mod_phi(prod, self.conductor))

    def inv(self) -> "CyclotomicNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.conductor)]
        a = list(self.coords)
        # extended gcd of a and Phi over Q[x]; gcd is a nonzero constant
        r0, r1 = phi, _qtrim(list(a))
        s0, s1 = [], [Fraction(1)]
        while _qdeg(r1) > 0:
            q, r = _qdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _qsub(s0, _qmul(q, s1))
        if not r1:
            raise ZeroDivisionError("element is a zero divisor mod Phi (impossible in a field)")
        c = r1[0]
        inv_coords = [x / c for x in s1]
        inv_coords += [Fraction(0)] * (len(self.coords) - len(inv_coords))
        return CyclotomicNumber(self.conductor, _reduce_mod_phi(inv_coords, self.conductor))

    def __eq__(self, other) -> bool:
        return (isinstance(other, CyclotomicNumber)
                and self.conductor == other.conductor
                and self.coords == other.coords)

    def __hash__(self) -> int:
        return hash((self.conductor, self.coords))

    def __repr__(self) -> str:
        return f"CyclotomicNumber({self.conductor}, {[str(c) for c in self.coords]})"


def _reduce_mod_phi(coords: Sequence[Fraction], m: int) -> list[Fraction]:
    deg = euler_phi(m)
    phi = cyclotomic_polynomial(m)
    out = [Fraction(x) for x in coords]
    for i in range(len(out) - 1, deg - 1, -1):
        c = out[i]
        if c:
            for j in range(deg + 1):
                out[i - deg + j] -= c * phi[j]
    out = out[:deg]
    out += [Fraction(0)] * (deg - len(out))
    return out


# rational polynomial helpers for the extended Euclid above
def _qtrim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _qdeg(p: list) -> int:
    return len(p) - 1


def _qsub(p: list, q: list) -> list:
    n = max(len(p), len(q))
    out = [(p[i] if i < len(p) else Fraction(0)) - (q[i] if i < len(q) else Fraction(0))
           for i in range(n)]
    return _qtrim(out)


def _qmul(p: list, q: list) -> list:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _qtrim(out)


def _qdivmod(num: list, den: list) -> tuple[list, list]:
    num = list(num)
    q = [Fraction(0)] * max(0, len(num) - len(den) + 1)
    while _qtrim(num) and len(num) >= len(den):
        shift = len(num) - len(den)
        c = num[-1] / den[-1]
        q[shift] = c
        for i, b in enumerate(den):
            num[shift + i] -= c * b
        num = _qtrim(num)
    return _qtrim(q), _qtrim(num)


# ---------------------------------------------------------------------------
# Group ring elements
# ---------------------------------------------------------------------------

class GroupRingElem:
    """An element of Q[Z/N]: coefficient of t^k sits at index k."""

    __slots__ = ("modulus", "coeffs")

    def __init__(self, modulus: int, coeffs: Iterable):
        if modulus < 1:
            raise ValueError("modulus must be a positive integer")
        coeffs = tuple(_as_fraction(c) for c in coeffs)
        if len(coeffs) != modulus:
            raise ValueError(f"need {modulus} coefficients, got {len(coeffs)}")
        self.modulus = modulus
        self.coeffs = coeffs

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "GroupRingElem":
        return cls(n, [0] * n)

    @classmethod
    def one(cls, n: int) -> "GroupRingElem":
        return cls.t_power(n, 0)

    @classmethod
    def t_power(cls, n: int, k: int, coeff=1) -> "GroupRingElem":
        c = [Fraction(0)] * n
        c[k % n] = _as_fraction(coeff)
        return cls(n, c)

    @classmethod
    def from_terms(cls, n: int, terms: Iterable[tuple[int, object]]) -> "GroupRingElem":
        """terms: iterable of (exponent, coefficient); exponents reduce mod n."""
        c = [Fraction(0)] * n
        for k, a in terms:
            c[k % n] += _as_fraction(a)
        return cls(n, c)

    @classmethod
    def averaging_idempotent(cls, n: int) -> "GroupRingElem":
        """(1/N) * sum of all group elements; the identity of the trivial
        character summand."""
        return cls(n, [Fraction(1, n)] * n)

    # -- queries -------------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def coefficient_sum(self) -> Fraction:
        return sum(self.coeffs, Fraction(0))

    def _check(self, other: "GroupRingElem") -> None:
        if self.modulus != other.modulus:
            raise ValueError(f"modulus mismatch: {self.modulus} vs {other.modulus}")

    # -- ring operations ------------------------------------------------------

    def __add__(self, other: "GroupRingElem") -> "GroupRingElem":
        self._check(other)
        return GroupRingElem(self.modulus,
                             [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "GroupRingElem") -> "GroupRingElem":
        self._check(other)
        return GroupRingElem(self.modulus,
                             [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "GroupRingElem":
        return GroupRingElem(self.modulus, [-a for a in self.coeffs])

    def scale(self, r) -> "GroupRingElem":
        r = _as_fraction(r)
        return GroupRingElem(self.modulus, [r * a for a in self.coeffs])

    def __mul__(self, other: "GroupRingElem") -> "GroupRingElem":
        self._check(other)
        n = self.modulus
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % n] += a * b
        return GroupRingElem(n, out)

    def shift(self, k: int) -> "GroupRingElem":
        """Multiplication by t^k."""
        n = self.modulus
        return GroupRingElem(n, [self.coeffs[(i - k) % n] for i in range(n)])

    def __eq__(self, other) -> bool:
        return (isinstance(other, GroupRingElem)
                and self.modulus == other.modulus
                and self.coeffs == other.coeffs)

    def __hash__(self) -> int:
        return hash((self.modulus, self.coeffs))

    # -- presentation ----------------------------------------------------------

    def __repr__(self) -> str:
        return f"GroupRingElem({self.modulus}, {self.to_string()!r})"

    def to_string(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "1" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if c == 1 and k > 0:
                terms.append(mono)
            elif c == -1 and k > 0:
                terms.append(f"-{mono}")
            elif k == 0:
                terms.append(str(c))
            else:
                terms.append(f"{c}*{mono}")
        if not terms:
            return "0"
        out = terms[0]
        for term in terms[1:]:
            out += " - " + term[1:] if term.startswith("-") else " + " + term
        return out

    def to_json_dict(self) -> dict:
        return {"modulus": self.modulus, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json_dict(cls, d: dict) -> "GroupRingElem":
        return cls(int(d["modulus"]), [Fraction(s) for s in d["coeffs"]])


# ---------------------------------------------------------------------------
# The character-component maps phi
# ---------------------------------------------------------------------------

def divisor_levels(n: int) -> list[int]:
    """All divisors of n in increasing order: the component index set of the
    splitting Q[Z/n] ~ (+)_{d|n} Q(zeta_d)."""
    return [d for d in range(1, n + 1) if n % d == 0]


def prime_power_decompose(n: int) -> tuple[int, int]:
    """Return (p, m) with n = p^m, or raise ValueError."""
    if n < 2:
        raise ValueError("need n >= 2 for a prime-power decomposition")
    p = 2
    while p * p <= n:
        if n % p == 0:
            break
        p += 1
    else:
        return n, 1
    m = 0
    rest = n
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1:
        raise ValueError(f"{n} is not a prime power")
    return p, m


def phi_at_divisor(x: GroupRingElem, d: int) -> CyclotomicNumber:
    """Ring homomorphism Q[Z/N] -> Q(zeta_d) sending t to zeta_d (d | N)."""
    n = x.modulus
    if n % d != 0:
        raise ValueError(f"{d} does not divide the modulus {n}")
    table = _power_basis_table(d)
    deg = euler_phi(d)
    out = [Fraction(0)] * deg
    for k, c in enumerate(x.coeffs):
        if c:
            row = table[k % d]
            for i in range(deg):
                if row[i]:
                    out[i] += c * row[i]
    return CyclotomicNumber(d, out)


def phi_component(x: GroupRingElem, j: int) -> CyclotomicNumber:
    """Level-j component for a prime-power modulus N = p^m: substitute
    t -> zeta_{p^j} and reduce mod Phi_{p^j}.  Level 0 is the rational
    obtained by evaluating at t = 1."""
    p, m = prime_power_decompose(x.modulus) if x.modulus > 1 else (1, 0)
    if x.modulus == 1:
        if j != 0:
            raise ValueError("modulus 1 only has level 0")
        return phi_at_divisor(x, 1)
    if not (0 <= j <= m):
        raise ValueError(f"level {j} exceeds the maximal level {m} for N = {p}^{m}")
    return phi_at_divisor(x, p ** j)


@lru_cache(maxsize=None)
def _decomposition_matrix_inverse(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Inverse of the Q-linear map Q^n -> (+)_{d|n} Q(zeta_d) written in the
    monomial basis t^k and the power bases of the components."""
    divisors = divisor_levels(n)
    rows_per = [euler_phi(d) for d in divisors]
    size = sum(rows_per)
    if size != n:
        raise AssertionError("divisor degree sum must equal n")
    # column k = stacked components of t^k
    mat = [[Fraction(0)] * n for _ in range(n)]
    for k in range(n):
        base = 0
        for d, deg in zip(divisors, rows_per):
            row = _power_basis_table(d)[k % d]
            for i in range(deg):
                mat[base + i][k] = row[i]
            base += deg
    inv = _invert_rational_matrix(mat)
    return tuple(tuple(r) for r in inv)


def _invert_rational_matrix(mat: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(mat)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(mat)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ArithmeticError("singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def phi_decompose(x: GroupRingElem) -> dict[int, CyclotomicNumber]:
    """All divisor components of x."""
    return {d: phi_at_divisor(x, d) for d in divisor_levels(x.modulus)}


def phi_reconstruct_divisors(components: dict[int, CyclotomicNumber],
                             n: int) -> GroupRingElem:
    """Inverse of phi_decompose: the unique x in Q[Z/n] with the given
    divisor components."""
    divisors = divisor_levels(n)
    if sorted(components) != divisors:
        raise ValueError(f"need one component per divisor of {n}")
    stacked: list[Fraction] = []
    for d in divisors:
        c = components[d]
        if not isinstance(c, CyclotomicNumber):
            c = CyclotomicNumber.from_rational(d, c)
        if c.conductor != d:
            raise ValueError(f"component for divisor {d} has conductor {c.conductor}")
        stacked.extend(c.coords)
    inv = _decomposition_matrix_inverse(n)
    coeffs = [sum((inv[i][j] * stacked[j] for j in range(n)), Fraction(0))
              for i in range(n)]
    return GroupRingElem(n, coeffs)


def phi_reconstruct(c0, c1: CyclotomicNumber, c2: CyclotomicNumber,
                    n: int = 25) -> GroupRingElem:
    """Prime-power convenience wrapper for N = p^2 (the default 25): build the
    unique x with level components (c0, c1, c2)."""
    p, m = prime_power_decompose(n)
    if m != 2:
        raise ValueError("three-component reconstruction needs N = p^2")
    comps = {
        1: CyclotomicNumber.from_rational(1, c0) if not isinstance(c0, CyclotomicNumber) else c0,
        p: c1,
        p * p: c2,
    }
    return phi_reconstruct_divisors(comps, n)
