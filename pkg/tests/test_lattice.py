import json
import random
from fractions import Fraction

import pytest

from qatorsion.intmat import identity, mat_mul, transpose
from qatorsion.lattice import (CATALOG_CONDITION, UNIT_CONDITION, CBound,
                               CharCoset, GramLattice, LatticeError,
                               build_catalog, c_bound, catalog_from_json,
                               catalog_to_json, char_cosets,
                               coset_square_maxima,
                               enumerate_definite_lattices,
                               lattices_isometric, m_invariant, qa_verdict)
from qatorsion.torsion import d_lens_oracle

from oracles import brute_coset_maxima, brute_m_invariant

NEG_E8 = GramLattice.from_rows([
    [-2, 1, 0, 0, 0, 0, 0, 0],
    [1, -2, 1, 0, 0, 0, 0, 0],
    [0, 1, -2, 1, 0, 0, 0, 0],
    [0, 0, 1, -2, 1, 0, 0, 0],
    [0, 0, 0, 1, -2, 1, 0, 1],
    [0, 0, 0, 0, 1, -2, 1, 0],
    [0, 0, 0, 0, 0, 1, -2, 0],
    [0, 0, 0, 0, 1, 0, 0, -2]])


def test_definiteness_validation():
    with pytest.raises(LatticeError):
        GramLattice.diagonal([1])
    with pytest.raises(LatticeError):
        GramLattice.from_rows([[-1, 2], [2, -1]])
    with pytest.raises(LatticeError):
        GramLattice.from_rows([[-1, 0], [1, -1]])


def test_char_coset_counts():
    assert len(char_cosets(GramLattice.diagonal([-1]))) == 1
    assert len(char_cosets(GramLattice.diagonal([-1, -1]))) == 1
    assert len(char_cosets(GramLattice.diagonal([-25]))) == 25
    assert char_cosets(GramLattice.rank_zero()) == [CharCoset((), ())]
    reps = char_cosets(GramLattice.diagonal([-1]))
    assert reps[0].representative[0] % 2 == 1


def test_char_cosets_have_characteristic_parity():
    for lat in [GramLattice.diagonal([-2, -3]), NEG_E8,
                GramLattice.from_rows([[-2, -1], [-1, -13]])]:
        for coset in char_cosets(lat):
            chi = coset.representative
            for i in range(lat.rank):
                assert (chi[i] - lat.gram[i][i]) % 2 == 0


def test_doubling_by_lattice_vectors_stays_in_class():
    rng = random.Random(51)
    from qatorsion.lattice import _coset_labeller
    for lat in [GramLattice.diagonal([-3, -5]),
                GramLattice.from_rows([[-2, -1], [-1, -13]])]:
        label = _coset_labeller(lat)
        for coset in char_cosets(lat):
            chi = list(coset.representative)
            for _ in range(10):
                z = [rng.randint(-2, 2) for _ in range(lat.rank)]
                moved = [chi[i] + 2 * sum(lat.gram[i][j] * z[j]
                                          for j in range(lat.rank))
                         for i in range(lat.rank)]
                assert label(moved) == coset.coset_id


def test_m_of_unit_diagonals_is_zero():
    for k in range(1, 7):
        assert m_invariant(GramLattice.diagonal([-1] * k)) == 0
    assert m_invariant(GramLattice.rank_zero()) == 0


def test_m_of_negative_e8():
    assert m_invariant(NEG_E8) == 2


def test_rank_one_maxima_match_lens_recursion():
    for p in range(2, 13):
        lat = GramLattice.diagonal([-p])
        maxima = sorted((v + 1) / 4 for v in coset_square_maxima(lat).values())
        assert maxima == sorted(d_lens_oracle(p, p - 1))


def test_m_matches_brute_force_spot():
    for lat in [GramLattice.diagonal([-2, -3]), GramLattice.diagonal([-25]),
                GramLattice.from_rows([[-2, -1], [-1, -13]]),
                GramLattice.diagonal([-1, -5, -5])]:
        assert m_invariant(lat) == brute_m_invariant(lat)
        assert coset_square_maxima(lat) == brute_coset_maxima(lat)


def test_m_is_congruence_invariant():
    rng = random.Random(52)
    for lat in [GramLattice.diagonal([-1, -2]), GramLattice.diagonal([-3, -5]),
                GramLattice.from_rows([[-2, -1], [-1, -13]]),
                GramLattice.diagonal([-2, -2, -3])]:
        base = m_invariant(lat)
        for _ in range(50):
            r = lat.rank
            u = identity(r)
            for _ in range(4):
                i, j = rng.randrange(r), rng.randrange(r)
                if i != j:
                    c = rng.randint(-2, 2)
                    for k in range(r):
                        u[i][k] += c * u[j][k]
            cong = mat_mul(mat_mul(u, [list(row) for row in lat.gram]),
                           transpose(u))
            assert m_invariant(GramLattice.from_rows(cong)) == base


def test_orthogonal_unit_summand_preserves_m_on_corpus():
    corpus = [GramLattice.diagonal([-2]), GramLattice.diagonal([-3, -5]),
              GramLattice.from_rows([[-2, -1], [-1, -13]]),
              GramLattice.diagonal([-25])]
    for lat in corpus:
        r = lat.rank
        extended = [[lat.gram[i][j] if i < r and j < r else
                     (-1 if i == j == r else 0)
                     for j in range(r + 1)] for i in range(r + 1)]
        assert m_invariant(GramLattice.from_rows(extended)) == m_invariant(lat)


def test_enumeration_examples():
    assert [l.gram for l in enumerate_definite_lattices(1, 25)] == [((-25,),)]
    assert [l.gram for l in enumerate_definite_lattices(1, 1)] == [((-1,),)]
    assert enumerate_definite_lattices(0, 1) == [GramLattice.rank_zero()]
    assert enumerate_definite_lattices(0, 2) == []
    two_four = enumerate_definite_lattices(2, 4)
    assert sorted(l.gram for l in two_four) == [((-2, 0), (0, -2)),
                                                ((-1, 0), (0, -4))]
    with pytest.raises(LatticeError):
        enumerate_definite_lattices(5, 2)


def test_rank_two_enumeration_complete_against_wide_scan():
    def wide(disc, amax=40):
        found = []
        for a in range(1, amax):
            for c in range(a, amax):
                for b in range(0, a // 2 + 1):
                    if a * c - b * b == disc:
                        g = GramLattice.from_rows([[-a, -b], [-b, -c]])
                        if not any(lattices_isometric(g, h) for h in found):
                            found.append(g)
        return found

    for disc in (1, 2, 3, 4, 5, 11, 25):
        mine = enumerate_definite_lattices(2, disc)
        scan = wide(disc)
        assert len(mine) == len(scan), disc
        for lat in scan:
            assert any(lattices_isometric(lat, h) for h in mine)


def test_isometry_detects_diagonal_reordering():
    a = GramLattice.diagonal([-1, -4])
    b = GramLattice.diagonal([-4, -1])
    assert lattices_isometric(a, b)
    assert not lattices_isometric(a, GramLattice.diagonal([-2, -2]))


def test_c_bound_examples():
    cb1 = c_bound(1, build_catalog(1))
    assert cb1.value == 0 and cb1.complete
    cb2 = c_bound(2, build_catalog(2))
    assert cb2.complete
    assert cb2.value == m_invariant(GramLattice.diagonal([-2]))
    with pytest.raises(LatticeError):
        c_bound(2, [GramLattice.diagonal([-3])])


def test_verdict_unknot_not_obstructed():
    bound = c_bound(1, build_catalog(1))
    v = qa_verdict([Fraction(0)], 1, bound, unit_pinned=True)
    assert v.verdict == "not obstructed"
    assert v.conditions_unmet == ()


def test_verdict_cardinality_check():
    bound = c_bound(1, build_catalog(1))
    with pytest.raises(LatticeError):
        qa_verdict([Fraction(0), Fraction(1)], 1, bound)


def test_verdict_synthetic_obstruction_is_conditional():
    catalog = build_catalog(2)
    bound = CBound(disc=25, value=Fraction(-6), complete=False, catalog_size=0)
    d_values = [Fraction(-100)] + [Fraction(0)] * 24
    v = qa_verdict(d_values, 25, bound, unit_pinned=False)
    assert v.obstruction_fires
    assert v.verdict == "non-QA conditional"
    assert set(v.conditions_unmet) == {CATALOG_CONDITION, UNIT_CONDITION}
    certified = qa_verdict(d_values, 25,
                           CBound(disc=25, value=Fraction(-6), complete=True,
                                  catalog_size=999), unit_pinned=True)
    assert certified.verdict == "non-QA certified"


def test_catalog_json_round_trip():
    catalog = build_catalog(4)
    text = catalog_to_json(catalog)
    back = catalog_from_json(text)
    assert back == catalog
    data = json.loads(text)
    assert all(set(d) == {"rank", "gram"} for d in data)
