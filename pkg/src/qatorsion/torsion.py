"""Torsion vectors of rational homology spheres with finite cyclic H_1,
their growth along the twist family, and correction terms.

The torsion lives in Q[H], H = Z/N, normalised so the coefficient sum
(the trivial-character component) vanishes.  It is computed from a single
abelianized Fox minor D via its character components:

    phi_d(tau) = eps_d * (zeta_d^{g} - 1)^-1 (zeta_d^{h} - 1)^-1 * phi_d(D)

for every divisor d > 1 of N, where g and h are the homology classes of
the distinguished dual curves.  The units eps_d are not determined by this
computation; every reported vector carries a machine-readable record of
the convention used, and the headline conclusions (affine growth in the
twist parameter, divergence of the minimum) are invariant under the whole
unit action tau -> +-t^k tau.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .covers import (BranchedCoverPresentation, abelianized_minor,
                     kanenobu_presentation, lens_presentation)
from .groupring import (CyclotomicNumber, GroupRingElem, divisor_levels,
                        phi_at_divisor, phi_reconstruct_divisors)

DEFAULT_EPSILON = "default"


class TorsionPreconditionError(ValueError):
    """A character component of a dual-curve class equals 1 where the
    torsion formula needs it invertible."""


@dataclass(frozen=True)
class TorsionVector:
    """tau as a zero-sum vector of exact rationals indexed by Z/N.

    values[k] is the coefficient of t^k, i.e. the torsion at the Spin^c
    structure labelled t^k under the fixed identification with H.
    unit_ambiguity records the epsilon convention the vector was computed
    with; all values are only pinned up to the global unit action.
    """

    modulus: int
    values: tuple[Fraction, ...]
    unit_ambiguity: str = DEFAULT_EPSILON

    def __post_init__(self):
        if len(self.values) != self.modulus:
            raise ValueError("value vector length must equal the modulus")
        if sum(self.values, Fraction(0)) != 0:
            raise ValueError("torsion vectors must have zero coefficient sum")

    @classmethod
    def from_group_ring(cls, x: GroupRingElem,
                        unit_ambiguity: str = DEFAULT_EPSILON) -> "TorsionVector":
        return cls(x.modulus, x.coeffs, unit_ambiguity)

    def as_group_ring(self) -> GroupRingElem:
        return GroupRingElem(self.modulus, self.values)

    def min_value(self) -> Fraction:
        return min(self.values)

    def apply_unit(self, sign: int, shift: int) -> "TorsionVector":
        """The global unit action tau -> sign * t^shift * tau."""
        if sign not in (1, -1):
            raise ValueError("unit sign must be +-1")
        n = self.modulus
        vals = tuple(sign * self.values[(k - shift) % n] for k in range(n))
        return TorsionVector(n, vals, f"{self.unit_ambiguity}*({sign:+d})t^{shift % n}")

    def __sub__(self, other: "TorsionVector") -> "TorsionVector":
        if self.modulus != other.modulus:
            raise ValueError("modulus mismatch")
        return TorsionVector(self.modulus,
                             tuple(a - b for a, b in zip(self.values, other.values)),
                             self.unit_ambiguity)

    def scale_int(self, c: int) -> "TorsionVector":
        return TorsionVector(self.modulus, tuple(c * v for v in self.values),
                             self.unit_ambiguity)

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    def to_json_dict(self) -> dict:
        return {
            "N": self.modulus,
            "tau": {str(k): str(v) for k, v in enumerate(self.values)},
            "epsilon": self.unit_ambiguity,
            "note": "defined up to unit",
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=None, sort_keys=False)


# ---------------------------------------------------------------------------
# Epsilon conventions
# ---------------------------------------------------------------------------

def parse_epsilon(text: str) -> tuple[int, int]:
    """Parse the unit override '-t^3', '+t^0', 't^12', '-1', or 'default'.

    Returns (sign, shift); 'default' means (+1, 0).  The override acts as
    the global unit +-t^k, i.e. component d is multiplied by
    sign * zeta_d^k.
    """
    s = text.strip()
    if s in (DEFAULT_EPSILON, "", "+1", "1"):
        return (1, 0)
    if s == "-1":
        return (-1, 0)
    sign = 1
    if s.startswith(("+", "-")):
        sign = -1 if s[0] == "-" else 1
        s = s[1:]
    if s == "1":
        return (sign, 0)
    if not s.startswith("t"):
        raise ValueError(f"cannot parse unit override {text!r}")
    s = s[1:]
    if s == "":
        return (sign, 1)
    if not s.startswith("^"):
        raise ValueError(f"cannot parse unit override {text!r}")
    return (sign, int(s[1:]))


# ---------------------------------------------------------------------------
# Torsion from a minor
# ---------------------------------------------------------------------------

def torsion_from_minor(minor: GroupRingElem, g_class: int, h_class: int,
                       epsilon: str = DEFAULT_EPSILON) -> TorsionVector:
    """Build the torsion vector from one abelianized Fox minor.

    g_class and h_class are the exponents of the dual-curve homology
    classes (elements of Z/N written as powers of t).  Component d of the
    result is eps_d (zeta_d^g - 1)^-1 (zeta_d^h - 1)^-1 phi_d(minor) for
    every divisor d > 1 of N; the trivial component is 0.
    """
    n = minor.modulus
    sign, shift = parse_epsilon(epsilon)
    components: dict[int, CyclotomicNumber] = {}
    for d in divisor_levels(n):
        if d == 1:
            components[1] = CyclotomicNumber.zero(1)
            continue
        if g_class % d == 0:
            raise TorsionPreconditionError(
                f"dual class g = t^{g_class} is trivial at conductor {d}")
        if h_class % d == 0:
            raise TorsionPreconditionError(
                f"dual class h = t^{h_class} is trivial at conductor {d}")
        one = CyclotomicNumber.one(d)
        fg = CyclotomicNumber.zeta_power(d, g_class) - one
        fh = CyclotomicNumber.zeta_power(d, h_class) - one
        val = fg.inv() * fh.inv() * phi_at_divisor(minor, d)
        unit = CyclotomicNumber.zeta_power(d, shift).scale(sign)
        components[d] = unit * val
    x = phi_reconstruct_divisors(components, n)
    label = DEFAULT_EPSILON if (sign, shift % n) == (1, 0) else f"({sign:+d})t^{shift % n}"
    return TorsionVector.from_group_ring(x, label)


def torsion_of_cover(cover: BranchedCoverPresentation, r: int, s: int,
                     epsilon: str = DEFAULT_EPSILON) -> TorsionVector:
    """Torsion from the (r, s) minor of a branched-cover presentation."""
    if cover.g_classes is None or cover.h_classes is None:
        raise ValueError("presentation lacks dual-curve class data")
    minor = abelianized_minor(cover, r, s)
    return torsion_from_minor(minor, cover.g_classes[r - 1],
                              cover.h_classes[s - 1], epsilon)


def torsion_kanenobu(n: int, epsilon: str = DEFAULT_EPSILON) -> TorsionVector:
    """Torsion of the branched double cover of K_{-10n,10n+3} via the (4,4)
    minor, with g = h = t."""
    if n < 0:
        raise ValueError("need n >= 0")
    cover = kanenobu_presentation(-10 * n, 10 * n + 3)
    return torsion_of_cover(cover, 4, 4, epsilon)


def torsion_lens(p: int, q: int, epsilon: str = DEFAULT_EPSILON) -> TorsionVector:
    """Torsion of the lens space L(p, q) from its genus-one presentation:
    the minor is the empty determinant 1 and the dual classes are t, t^q."""
    cover = lens_presentation(p, q)
    minor = abelianized_minor(cover, 1, 1)
    return torsion_from_minor(minor, 1, q, epsilon)


# ---------------------------------------------------------------------------
# Growth along the twist family
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TorsionGrowthReport:
    n_max: int
    epsilon: str
    min_values: tuple[Fraction, ...]     # min coefficient of tau_n, n = 0..n_max
    delta: TorsionVector                 # tau_{n+1} - tau_n (constant in n)
    affine: bool                         # tau_n == tau_0 + n*delta exactly
    delta_min: Fraction
    decreasing_from: Optional[int]       # min is strictly decreasing for n >= this

    def to_json_dict(self) -> dict:
        return {
            "n_max": self.n_max,
            "epsilon": self.epsilon,
            "min_tau": [str(v) for v in self.min_values],
            "delta": {str(k): str(v) for k, v in enumerate(self.delta.values)},
            "affine": self.affine,
            "delta_min": str(self.delta_min),
            "strictly_decreasing_from": self.decreasing_from,
        }


def torsion_growth(n_max: int, epsilon: str = DEFAULT_EPSILON) -> TorsionGrowthReport:
    """Check tau_n = tau_0 + n * delta exactly and report the minimum
    coefficients; delta has zero sum and a negative minimum, so the minimum
    of tau_n eventually decreases without bound."""
    if n_max < 2:
        raise ValueError("need n_max >= 2 to see the growth")
    taus = [torsion_kanenobu(n, epsilon) for n in range(n_max + 1)]
    delta = taus[1] - taus[0]
    affine = all(
        taus[n].values == tuple(t0 + n * d for t0, d in zip(taus[0].values, delta.values))
        for n in range(n_max + 1))
    mins = tuple(t.min_value() for t in taus)
    decreasing_from = None
    for start in range(n_max):
        if all(mins[m + 1] < mins[m] for m in range(start, n_max)):
            decreasing_from = start
            break
    return TorsionGrowthReport(
        n_max=n_max, epsilon=epsilon, min_values=mins, delta=delta,
        affine=affine, delta_min=delta.min_value(),
        decreasing_from=decreasing_from)


# ---------------------------------------------------------------------------
# Correction terms
# ---------------------------------------------------------------------------

def d_invariants(tau: TorsionVector, casson_walker: Fraction) -> dict[int, Fraction]:
    """Pointwise d(t^k) = 2 tau(t^k) - lambda for an L-space with the given
    Casson-Walker invariant."""
    lam = Fraction(casson_walker)
    return {k: 2 * v - lam for k, v in enumerate(tau.values)}


def d_lens_oracle(p: int, q: int) -> list[Fraction]:
    """Correction terms of the lens space L(p, q) by the standard recursion

        d(p, q, i) = ((2i + 1 - p - q)^2 - p*q) / (4*p*q) - d(q, p mod q, i mod q)

    with d(1, 0, 0) = 0; returns the p values indexed by i = 0..p-1.
    Implemented independently of the torsion pipeline so the two can be
    played against each other.
    """
    if p < 1:
        raise ValueError("need p >= 1")
    if p == 1:
        return [Fraction(0)]
    if not (0 < q < p):
        raise ValueError("need 0 < q < p")
    if _gcd(p, q) != 1:
        raise ValueError("need gcd(p, q) = 1")

    def rec(p_: int, q_: int, i: int) -> Fraction:
        if p_ == 1:
            return Fraction(0)
        base = Fraction((2 * i + 1 - p_ - q_) ** 2 - p_ * q_, 4 * p_ * q_)
        return base - rec(q_, p_ % q_, i % q_)

    return [rec(p, q, i) for i in range(p)]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def lens_casson_walker(p: int, q: int) -> Fraction:
    """Casson-Walker invariant of L(p, q), from the zero-sum normalisation
    of the torsion: summing d = 2 tau - lambda over all Spin^c structures
    kills the torsion term, so lambda = -(sum of d) / p."""
    vals = d_lens_oracle(p, q)
    return -sum(vals, Fraction(0)) / p


def multiset_matches_up_to_unit(tau: TorsionVector, casson_walker: Fraction,
                                target: Sequence[Fraction]) -> Optional[int]:
    """Does {2 s tau(t^k) - lambda} equal the target multiset for some
    global unit sign s?  Returns the sign that works, else None.  (The t^k
    part of the unit action only permutes the multiset.)"""
    want = sorted(Fraction(x) for x in target)
    for sign in (1, -1):
        got = sorted(2 * sign * v - casson_walker for v in tau.values)
        if got == want:
            return sign
    return None
