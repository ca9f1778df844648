"""End-to-end orchestration: run one twist family through homology,
torsion, correction terms, and the lattice obstruction, with internal
consistency assertions at every step.

Assertion failures raise PipelineAssertionError naming the failed
mathematical check, so drift in any module surfaces with a diagnosable
message (the command line maps these to exit status 2).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .covers import (abelianized_minor, homology_invariants,
                     kanenobu_minor_closed_form, kanenobu_presentation)
from .diagrams import kanenobu_diagram
from .groupring import GroupRingElem
from .lattice import CBound, GramLattice, QAVerdict, c_bound, qa_verdict
from .skein import goeritz_invariants, mullins_lambda
from .torsion import (DEFAULT_EPSILON, TorsionVector, d_invariants,
                      torsion_from_minor)


class PipelineAssertionError(AssertionError):
    pass


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise PipelineAssertionError(message)


@dataclass(frozen=True)
class FamilyRecord:
    """Everything computed for one member of the family."""

    n: int
    p: int
    q: int
    homology_factors: tuple[int, ...]
    homology_images: Optional[tuple[int, ...]]
    minor: Optional[GroupRingElem]
    tau: Optional[TorsionVector]
    min_tau: Optional[Fraction]
    d_values: Optional[dict[int, Fraction]]
    min_d: Optional[Fraction]
    determinant: int
    signature: int
    verdict: Optional[QAVerdict]

    def to_json_dict(self) -> dict:
        return {
            "n": self.n, "p": self.p, "q": self.q,
            "homology": [int(f) for f in self.homology_factors],
            "images": list(self.homology_images) if self.homology_images else None,
            "minor": self.minor.to_json_dict() if self.minor else None,
            "tau": self.tau.to_json_dict() if self.tau else None,
            "min_tau": str(self.min_tau) if self.min_tau is not None else None,
            "d": {str(k): str(v) for k, v in self.d_values.items()} if self.d_values else None,
            "min_d": str(self.min_d) if self.min_d is not None else None,
            "determinant": self.determinant,
            "signature": self.signature,
            "verdict": self.verdict.to_json_dict() if self.verdict else None,
        }


@dataclass(frozen=True)
class PipelineReport:
    offset: int                       # the family K_{-10n-j, 10n+j+3}
    epsilon: str
    casson_walker: Fraction
    records: tuple[FamilyRecord, ...]
    c_bound: Optional[CBound]
    affine: bool
    delta_min: Optional[Fraction]

    def to_json_dict(self) -> dict:
        return {
            "family_offset": self.offset,
            "p_of_n": f"-10n-{self.offset}" if self.offset else "-10n",
            "q_of_n": f"10n+{self.offset + 3}",
            "epsilon": self.epsilon,
            "casson_walker": str(self.casson_walker),
            "c_bound": self.c_bound.to_json_dict() if self.c_bound else None,
            "affine_torsion_growth": self.affine,
            "delta_min": str(self.delta_min) if self.delta_min is not None else None,
            "records": [r.to_json_dict() for r in self.records],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=1, sort_keys=False)


def family_parameters(offset: int, n: int) -> tuple[int, int]:
    return -10 * n - offset, 10 * n + offset + 3


def family_casson_walker(offset: int) -> Fraction:
    """Casson-Walker invariant of the double branched covers in the family,
    computed once on the small member (p, q) = (0, offset + 3).

    Valid for every n because sliding (p, q) -> (p+1, q-1) preserves the
    Jones polynomial (checked exactly on small members by the test suite),
    the signature vanishes for these ribbon knots, and the surgery formula
    only sees V and sigma.
    """
    return mullins_lambda(kanenobu_diagram(0, offset + 3))


def run_family(offset: int, n_values: Sequence[int],
               epsilon: str = DEFAULT_EPSILON,
               catalog: Optional[Sequence[GramLattice]] = None) -> PipelineReport:
    """Compute the full obstruction pipeline for K_{-10n-j, 10n+j+3}.

    For each n: homology (order 25 required), the abelianized (4,4) minor,
    the torsion vector and correction terms (when H_1 is cyclic), the
    diagram determinant and signature (for n small enough that building
    the diagram stays cheap), and the verdict against the lattice bound.
    """
    if not (0 <= offset <= 9):
        raise ValueError("family offset must be in 0..9")
    n_values = sorted(set(int(n) for n in n_values))
    if not n_values or n_values[0] < 0:
        raise ValueError("need a nonempty range of n >= 0")
    lam = family_casson_walker(offset)
    bound = None
    if catalog is not None:
        bound = c_bound(25, catalog)
    records = []
    taus: dict[int, TorsionVector] = {}
    for n in n_values:
        p, q = family_parameters(offset, n)
        cover = kanenobu_presentation(p, q)
        factors, images, modulus = homology_invariants(cover.presentation)
        order = 1
        for f in factors:
            order *= f
        _require(order == 25,
                 f"homology order {order} != 25 for (p, q) = ({p}, {q})")
        minor = abelianized_minor(cover, 4, 4) if images is not None else None
        tau = None
        dvals = None
        verdict = None
        if images is not None:
            _require(modulus == 25, "cyclic homology with unexpected modulus")
            if offset == 0:
                _require(images == (13, 3, 6, 1),
                         "generator images differ from (t^13, t^3, t^6, t)")
                _require(minor == kanenobu_minor_closed_form(n),
                         "abelianized (4,4) minor disagrees with the closed form "
                         "-n*sigma*(1+t+t^3) - 1 + t^2 - ... + t^24")
            tau = torsion_from_minor(minor, cover.g_classes[3], cover.h_classes[3],
                                     epsilon)
            taus[n] = tau
            dvals = d_invariants(tau, lam)
            if bound is not None:
                verdict = qa_verdict(list(dvals.values()), 25, bound,
                                     unit_pinned=False)
        elif offset == 0:
            _require(False, "the base family must have cyclic homology")
        _g, det, sig = goeritz_invariants(kanenobu_diagram(p, q))
        _require(det == 25, f"diagram determinant {det} != 25 at n = {n}")
        _require(sig == 0, f"diagram signature {sig} != 0 at n = {n}")
        records.append(FamilyRecord(
            n=n, p=p, q=q,
            homology_factors=tuple(factors),
            homology_images=images,
            minor=minor, tau=tau,
            min_tau=tau.min_value() if tau else None,
            d_values=dvals,
            min_d=min(dvals.values()) if dvals else None,
            determinant=det, signature=sig, verdict=verdict))
    # affine growth of the torsion in n (only meaningful on a full 0..N run)
    affine = False
    delta_min = None
    computed_ns = sorted(taus)
    if len(computed_ns) >= 2:
        n0, n1 = computed_ns[0], computed_ns[1]
        step = taus[n1] - taus[n0]
        if n1 - n0 != 0:
            delta_vals = tuple(v / (n1 - n0) for v in step.values)
            affine = all(
                taus[m].values == tuple(
                    t0 + (m - n0) * d for t0, d in zip(taus[n0].values, delta_vals))
                for m in computed_ns)
            if affine:
                delta_min = min(delta_vals)
                _require(delta_min < 0,
                         "torsion growth direction: min coefficient of the "
                         "per-step difference must be negative")
        _require(affine, "torsion is not affine in the twist parameter")
    return PipelineReport(offset=offset, epsilon=epsilon, casson_walker=lam,
                          records=tuple(records), c_bound=bound,
                          affine=affine, delta_min=delta_min)
