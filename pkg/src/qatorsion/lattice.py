"""Negative-definite integral lattices: characteristic covector cosets,
the per-coset square maxima, the invariant

    m(L) = min over cosets of max { (chi^2 + rank) / 4 },

complete enumeration of definite lattices of small rank and given
discriminant, the lower-bound constant C(D), and the
not-quasi-alternating verdict record.

Everything is exact; the coset maxima are found by enumerating all
characteristic vectors inside an ellipsoid with a provable radius (every
coset's optimum beats its seed, and every seed lies inside the ellipsoid).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Optional, Sequence

from .intmat import det_bareiss, invert_rational, smith_normal_form


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class GramLattice:
    """A negative-definite symmetric integer bilinear form."""

    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        g = self.gram
        r = len(g)
        for row in g:
            if len(row) != r:
                raise LatticeError("Gram matrix must be square")
        for i in range(r):
            for j in range(r):
                if g[i][j] != g[j][i]:
                    raise LatticeError("Gram matrix must be symmetric")
        # negative definite: leading principal minors alternate in sign
        for k in range(1, r + 1):
            minor = det_bareiss([list(row[:k]) for row in g[:k]])
            if minor * (-1) ** k <= 0:
                raise LatticeError("Gram matrix is not negative definite")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "GramLattice":
        return cls(tuple(tuple(int(x) for x in row) for row in rows))

    @classmethod
    def rank_zero(cls) -> "GramLattice":
        return cls(())

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> "GramLattice":
        r = len(entries)
        return cls.from_rows([[entries[i] if i == j else 0 for j in range(r)]
                              for i in range(r)])

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def disc(self) -> int:
        return abs(det_bareiss([list(r) for r in self.gram]))

    def inverse(self) -> list[list[Fraction]]:
        return invert_rational([list(r) for r in self.gram])

    def to_json_dict(self) -> dict:
        return {"rank": self.rank, "gram": [list(r) for r in self.gram]}

    @classmethod
    def from_json_dict(cls, d: dict) -> "GramLattice":
        rows = d["gram"] if isinstance(d, dict) else d
        if isinstance(d, dict) and "rank" in d and int(d["rank"]) != len(rows):
            raise LatticeError("rank field disagrees with the Gram matrix")
        return cls.from_rows(rows)


@dataclass(frozen=True)
class CharCoset:
    """A characteristic covector coset rep, in dual-basis coordinates:
    <chi, e_i> = chi[i], with chi[i] = G[i][i] mod 2."""

    representative: tuple[int, ...]
    coset_id: tuple[int, ...]


# ---------------------------------------------------------------------------
# Characteristic cosets
# ---------------------------------------------------------------------------

def _coset_labeller(lattice: GramLattice):
    """Return a function Z^r -> canonical label of the class mod 2*G*Z^r."""
    r = lattice.rank
    if r == 0:
        return lambda chi: ()
    two_g = [[2 * x for x in row] for row in lattice.gram]
    diag, u, _v = smith_normal_form(two_g)

    def label(chi: Sequence[int]) -> tuple[int, ...]:
        out = []
        for i in range(r):
            s = sum(u[i][j] * chi[j] for j in range(r))
            d = diag[i]
            out.append(s % d if d else s)
        return tuple(out)

    return label


def char_cosets(lattice: GramLattice) -> list[CharCoset]:
    """Exactly disc(L) pairwise-inequivalent characteristic cosets mod 2L."""
    r = lattice.rank
    if r == 0:
        return [CharCoset((), ())]
    two_g = [[2 * x for x in row] for row in lattice.gram]
    diag, u, _v = smith_normal_form(two_g)
    u_inv = invert_rational(u)
    parity = [lattice.gram[i][i] % 2 for i in range(r)]
    label = _coset_labeller(lattice)
    reps: dict[tuple[int, ...], tuple[int, ...]] = {}
    # enumerate Z^r / 2G Z^r as the box over the Smith factors
    def walk(i: int, digits: list[int]):
        if i == r:
            vec = []
            for row in u_inv:
                val = sum(row[j] * digits[j] for j in range(r))
                if val.denominator != 1:
                    raise AssertionError("U inverse must be integral")
                vec.append(int(val))
            if all(vec[k] % 2 == parity[k] for k in range(r)):
                key = label(vec)
                reps.setdefault(key, tuple(vec))
            return
        for x in range(diag[i]):
            digits.append(x)
            walk(i + 1, digits)
            digits.pop()

    walk(0, [])
    expected = lattice.disc
    if len(reps) != expected:
        raise AssertionError(
            f"found {len(reps)} characteristic cosets, expected {expected}")
    return [CharCoset(rep, key) for key, rep in sorted(reps.items())]


# ---------------------------------------------------------------------------
# Exact ellipsoid enumeration (positive definite rational forms)
# ---------------------------------------------------------------------------

def _ldl(a: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[Fraction]]:
    """A = L D L^T with L unit lower-triangular, D positive diagonal."""
    r = len(a)
    l = [[Fraction(int(i == j)) for j in range(r)] for i in range(r)]
    d = [Fraction(0)] * r
    a = [row[:] for row in a]
    for k in range(r):
        d[k] = a[k][k] - sum(d[j] * l[k][j] * l[k][j] for j in range(k))
        if d[k] <= 0:
            raise LatticeError("form is not positive definite")
        for i in range(k + 1, r):
            l[i][k] = (a[i][k] - sum(d[j] * l[i][j] * l[k][j] for j in range(k))) / d[k]
    return l, d


def _floor_sqrt(x: Fraction) -> int:
    """floor(sqrt(x)) for x >= 0, exact."""
    if x < 0:
        raise ValueError("negative radicand")
    num, den = x.numerator, x.denominator
    return isqrt(num * den) // den


def enumerate_in_ellipsoid(form: Sequence[Sequence[Fraction]], radius: Fraction,
                           parity: Optional[Sequence[int]] = None
                           ) -> Iterable[tuple[int, ...]]:
    """All integer vectors x (including 0 when parity allows) with
    x^T A x <= radius, A positive definite; optionally restricted to
    x = parity mod 2.  Exact rational arithmetic throughout."""
    r = len(form)
    if r == 0:
        yield ()
        return
    a = [[Fraction(x) for x in row] for row in form]
    l, d = _ldl(a)
    radius = Fraction(radius)
    # Q(x) = sum_k d_k (x_k + sum_{i>k} l_ik x_i)^2, processed from k = r-1 down
    x = [0] * r

    def rec(k: int, remaining: Fraction):
        if k < 0:
            yield tuple(x)
            return
        shift = sum(l[i][k] * x[i] for i in range(k + 1, r))
        # d_k (x_k + shift)^2 <= remaining
        bound = remaining / d[k]
        root = _floor_sqrt(bound)
        lo_f = -shift - root - 1
        hi_f = -shift + root + 1
        lo = int(lo_f) - 2
        hi = int(hi_f) + 2
        for cand in range(lo, hi + 1):
            if parity is not None and (cand - parity[k]) % 2:
                continue
            val = d[k] * (cand + shift) ** 2
            if val <= remaining:
                x[k] = cand
                yield from rec(k - 1, remaining - val)
        x[k] = 0

    yield from rec(r - 1, radius)


# ---------------------------------------------------------------------------
# Characteristic square maxima and m
# ---------------------------------------------------------------------------

def _chi_square(lattice: GramLattice, chi: Sequence[int],
                inv: list[list[Fraction]]) -> Fraction:
    """chi^2 = chi^T G^{-1} chi (negative for a negative-definite form)."""
    r = lattice.rank
    total = Fraction(0)
    for i in range(r):
        if chi[i]:
            row = inv[i]
            for j in range(r):
                if chi[j]:
                    total += chi[i] * row[j] * chi[j]
    return total


def _improve_seed(lattice: GramLattice, chi: Sequence[int],
                  inv: list[list[Fraction]]) -> tuple[int, ...]:
    """Greedy descent: add columns of 2G while chi^2 moves toward zero."""
    r = lattice.rank
    cur = list(chi)
    best = _chi_square(lattice, cur, inv)
    improved = True
    while improved:
        improved = False
        for j in range(r):
            for s in (1, -1):
                cand = [cur[i] + 2 * s * lattice.gram[i][j] for i in range(r)]
                val = _chi_square(lattice, cand, inv)
                if val > best:
                    cur, best = cand, val
                    improved = True
    return tuple(cur)


def coset_square_maxima(lattice: GramLattice) -> dict[tuple[int, ...], Fraction]:
    """For every characteristic coset, the maximum of chi^2 over the coset
    (a negative rational, or 0 for the empty lattice)."""
    r = lattice.rank
    if r == 0:
        return {(): Fraction(0)}
    inv = lattice.inverse()
    cosets = char_cosets(lattice)
    label = _coset_labeller(lattice)
    seeds = {c.coset_id: _improve_seed(lattice, c.representative, inv)
             for c in cosets}
    seed_vals = {cid: _chi_square(lattice, chi, inv) for cid, chi in seeds.items()}
    radius = max(-v for v in seed_vals.values())  # enumerate chi^T(-G^{-1})chi <= radius
    neg_inv = [[-x for x in row] for row in inv]
    parity = [lattice.gram[i][i] % 2 for i in range(r)]
    best: dict[tuple[int, ...], Fraction] = dict(seed_vals)
    for chi in enumerate_in_ellipsoid(neg_inv, radius, parity):
        sq = _chi_square(lattice, chi, inv)
        cid = label(chi)
        if cid not in best:
            raise AssertionError("enumerated vector in an unknown coset")
        if sq > best[cid]:
            best[cid] = sq
    return best


def m_invariant(lattice: GramLattice) -> Fraction:
    """min over characteristic cosets of max (chi^2 + rank)/4."""
    maxima = coset_square_maxima(lattice)
    return min((sq + lattice.rank) / 4 for sq in maxima.values())


# ---------------------------------------------------------------------------
# Enumeration of definite lattices
# ---------------------------------------------------------------------------

# diagonal-product bounds for Minkowski-reduced positive forms of rank <= 4
_REDUCTION_PRODUCT_BOUND = {0: Fraction(1), 1: Fraction(1), 2: Fraction(4, 3),
                            3: Fraction(2), 4: Fraction(4)}

MAX_COMPLETE_RANK = 4


def enumerate_definite_lattices(rank: int, disc: int) -> list[GramLattice]:
    """All negative-definite integral lattices of the given rank and
    discriminant, up to isomorphism.

    Completeness for rank <= 4 comes from the classical reduction bounds:
    a Minkowski-reduced positive form has sorted diagonal with
    2|a_ij| <= a_ii and diagonal product at most c_r * disc.  The scan
    covers that region and deduplicates by isometry.
    """
    if rank > MAX_COMPLETE_RANK:
        raise LatticeError(
            f"complete enumeration is only implemented for rank <= {MAX_COMPLETE_RANK}")
    if rank < 0 or disc < 1:
        raise LatticeError("need rank >= 0 and disc >= 1")
    if rank == 0:
        return [GramLattice.rank_zero()] if disc == 1 else []
    bound = _REDUCTION_PRODUCT_BOUND[rank] * disc
    found: list[GramLattice] = []

    def diag_scan(i: int, diag: list[int], prod: int):
        if i == rank:
            yield list(diag)
            return
        lo = diag[-1] if diag else 1
        a = lo
        while prod * a ** (rank - i) <= bound:
            diag.append(a)
            yield from diag_scan(i + 1, diag, prod * a)
            diag.pop()
            a += 1

    def offdiag_positions():
        return [(i, j) for i in range(rank) for j in range(i + 1, rank)]

    for diag in diag_scan(0, [], 1):
        positions = offdiag_positions()
        mat = [[diag[i] if i == j else 0 for j in range(rank)] for i in range(rank)]

        def fill(k: int):
            if k == len(positions):
                if det_bareiss(mat) == disc and _is_positive_definite(mat):
                    neg = GramLattice.from_rows([[-x for x in row] for row in mat])
                    if not any(lattices_isometric(neg, other) for other in found):
                        found.append(neg)
                return
            i, j = positions[k]
            half = min(diag[i], diag[j]) // 2
            for v in range(-half, half + 1):
                mat[i][j] = mat[j][i] = v
                fill(k + 1)
            mat[i][j] = mat[j][i] = 0

        fill(0)
    found.sort(key=lambda lat: lat.gram)
    return found


def _is_positive_definite(m: list[list[int]]) -> bool:
    for k in range(1, len(m) + 1):
        if det_bareiss([row[:k] for row in m[:k]]) <= 0:
            return False
    return True


def lattices_isometric(a: GramLattice, b: GramLattice) -> bool:
    """Exact isometry test by matching basis vectors to equal-norm vectors."""
    if a.rank != b.rank or a.disc != b.disc:
        return False
    r = a.rank
    if r == 0:
        return True
    pos_b = [[-x for x in row] for row in b.gram]
    max_norm = max(-a.gram[i][i] for i in range(r))
    candidates = [v for v in enumerate_in_ellipsoid(
        [[Fraction(x) for x in row] for row in pos_b], Fraction(max_norm))
        if any(v)]

    def q_b(u, v) -> int:
        return sum(u[i] * pos_b[i][j] * v[j] for i in range(r) for j in range(r))

    pos_a = [[-x for x in row] for row in a.gram]
    chosen: list[tuple[int, ...]] = []

    def extend(k: int) -> bool:
        if k == r:
            mat = [list(v) for v in chosen]
            return abs(det_bareiss(mat)) == 1
        for v in candidates:
            if q_b(v, v) != pos_a[k][k]:
                continue
            if any(q_b(v, chosen[i]) != pos_a[k][i] for i in range(k)):
                continue
            chosen.append(v)
            if extend(k + 1):
                return True
            chosen.pop()
        return False

    return extend(0)


# ---------------------------------------------------------------------------
# C(D) and the verdict
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CBound:
    """Lower-bound constant over a catalog of definite lattices with
    rank < disc = D.  `complete` is True only when the catalog provably
    covers every rank 0..D-1."""

    disc: int
    value: Fraction
    complete: bool
    catalog_size: int

    def to_json_dict(self) -> dict:
        return {"disc": self.disc, "value": str(self.value),
                "complete": self.complete, "catalog_size": self.catalog_size}


def build_catalog(disc: int, max_rank: Optional[int] = None) -> list[GramLattice]:
    """All definite lattices with disc = D and rank < D, for ranks up to
    min(D-1, max rank the enumeration can certify)."""
    top = min(disc - 1, MAX_COMPLETE_RANK if max_rank is None else max_rank)
    catalog: list[GramLattice] = []
    for r in range(0, top + 1):
        catalog.extend(enumerate_definite_lattices(r, disc))
    return catalog


def c_bound(disc: int, catalog: Sequence[GramLattice]) -> CBound:
    """Minimum m over the catalog; complete only when the catalog can cover
    all ranks 0..D-1 (i.e. D-1 <= the certified enumeration rank)."""
    for lat in catalog:
        if lat.disc != disc:
            raise LatticeError(f"catalog member has disc {lat.disc}, expected {disc}")
        if not lat.rank < disc:
            raise LatticeError(f"catalog member rank {lat.rank} is not < disc {disc}")
    complete = disc - 1 <= MAX_COMPLETE_RANK
    values = [m_invariant(lat) for lat in catalog]
    if disc == 1:
        # the empty lattice is the only candidate
        values.append(Fraction(0))
    if not values:
        raise LatticeError("empty catalog with disc > 1; no lower bound available")
    return CBound(disc=disc, value=min(values), complete=complete,
                  catalog_size=len(catalog))


@dataclass(frozen=True)
class QAVerdict:
    """Outcome of the obstruction check for one manifold."""

    disc: int
    min_d: Fraction
    bound: CBound
    obstruction_fires: bool        # min d < C(D) over the catalog
    unit_pinned: bool              # torsion unit ambiguity resolved?
    verdict: str                   # "not obstructed" | "non-QA certified" |
                                   # "non-QA conditional"
    conditions_unmet: tuple[str, ...]

    def to_json_dict(self) -> dict:
        return {
            "disc": self.disc,
            "min_d": str(self.min_d),
            "c_bound": self.bound.to_json_dict(),
            "obstruction_fires": self.obstruction_fires,
            "unit_pinned": self.unit_pinned,
            "verdict": self.verdict,
            "conditions_unmet": list(self.conditions_unmet),
        }


CATALOG_CONDITION = "lattice catalog incomplete beyond rank 4"
UNIT_CONDITION = "torsion unit unpinned"


def qa_verdict(d_values: Sequence[Fraction], disc: int, bound: CBound,
               unit_pinned: bool = False) -> QAVerdict:
    """Certify non-quasi-alternating when some correction term drops below
    the catalog bound; downgrade to conditional while the catalog is
    incomplete or the torsion unit is unpinned."""
    vals = [Fraction(v) for v in d_values]
    if len(vals) != disc:
        raise LatticeError(
            f"need one correction term per Spin^c structure: got {len(vals)}, "
            f"expected {disc}")
    if bound.disc != disc:
        raise LatticeError("bound was computed for a different determinant")
    min_d = min(vals)
    fires = min_d < bound.value
    conditions = []
    if not bound.complete:
        conditions.append(CATALOG_CONDITION)
    if not unit_pinned:
        conditions.append(UNIT_CONDITION)
    if not fires:
        verdict = "not obstructed"
        conditions = []
    elif conditions:
        verdict = "non-QA conditional"
    else:
        verdict = "non-QA certified"
    return QAVerdict(disc=disc, min_d=min_d, bound=bound,
                     obstruction_fires=fires, unit_pinned=unit_pinned,
                     verdict=verdict, conditions_unmet=tuple(conditions))


# ---------------------------------------------------------------------------
# Catalog files
# ---------------------------------------------------------------------------

def catalog_to_json(catalog: Sequence[GramLattice]) -> str:
    return json.dumps([lat.to_json_dict() for lat in catalog], indent=1)


def catalog_from_json(text: str) -> list[GramLattice]:
    data = json.loads(text)
    return [GramLattice.from_json_dict(d) for d in data]
