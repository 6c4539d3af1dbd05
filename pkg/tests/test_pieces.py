"""Piece indexing: stabilization sequences, closure order, dimensions,
and the contraction/projection operators on the Hecke algebra."""

import random
from collections import Counter

import pytest

from heckepieces.coxeter import coxeter_group
from heckepieces.hecke import HeckeAlgebra
from heckepieces.laurent import Laurent, ONE
from heckepieces.pieces import (
    E_operator,
    bedard_inverse,
    bedard_sequence,
    closure_hasse,
    closure_leq,
    mu_J,
    piece_dimension,
    piece_indices,
    twisted_normalizer,
)

J = frozenset({1, 2})

A3_MATRIX = ((1, 3, 2), (3, 1, 3), (2, 3, 1))


@pytest.fixture(scope="module")
def b4_data(b4):
    delta = b4.automorphism()
    idx = piece_indices(b4, J, delta)
    return delta, idx, {w: bedard_sequence(b4, J, delta, w) for w in idx}


# -- indices and stabilization sequences -------------------------------------

def test_index_census(b4, b4_data):
    delta, idx, datas = b4_data
    assert len(idx) == 48
    assert all(b4.is_left_min(w, delta.on_set(J)) for w in idx)
    assert Counter(d.n0 for d in datas.values()) == {0: 8, 1: 24, 2: 16}
    assert Counter(tuple(sorted(d.J_infinity)) for d in datas.values()) == \
        {(): 24, (1,): 16, (1, 2): 8}


def test_indices_partition_group(b4, b4_data):
    _, idx, _ = b4_data
    WJ = b4.parabolic_elements(J)
    seen = set()
    for w in idx:
        for u in WJ:
            seen.add(b4.product(u, w))
    assert len(seen) == 48 * 8 == len(b4.elements())


def test_stable_pair_properties(b4, b4_data):
    _, _, datas = b4_data
    for w, data in datas.items():
        assert data.w_infinity == w
        assert data.J_at(data.n0 + 5) == data.J_infinity
        assert data.w_at(data.n0 + 5) == w
        # each step stays in the same right coset and shrinks the subset
        for n in range(1, data.n0 + 1):
            Jp, wp = data.steps[n - 1]
            Jn, wn = data.steps[n]
            assert Jn < Jp
            assert b4.in_parabolic(b4.product(b4.inverse(wp), wn), Jp)


def test_sequence_trace_single_generator(b4, b4_data):
    _, _, datas = b4_data
    w = b4.parse_word("3")
    data = datas[w]
    assert [(sorted(Jn), wn) for Jn, wn in data.steps] == \
        [([1, 2], w), ([1], w)]
    assert data.tau_gen_map() == {1: 1}

    w32 = b4.parse_word("32")
    assert [(sorted(Jn), b4.word_str(wn)) for Jn, wn in datas[w32].steps] == \
        [([1, 2], "3"), ([1], "32"), ([], "32")]


def test_invalid_index_rejected(b4):
    delta = b4.automorphism()
    with pytest.raises(ValueError):
        bedard_sequence(b4, J, delta, b4.parse_word("12"))  # left descent in J


def test_sequence_round_trip(b4, b4_data):
    delta, _, datas = b4_data
    for w, data in datas.items():
        assert bedard_inverse(b4, J, delta, data.steps) == w


def test_tampered_sequences_rejected(b4, b4_data):
    delta, _, datas = b4_data
    data = datas[b4.parse_word("32")]  # steps: (J, 3), ({1}, 32), ({}, 32)
    steps = list(data.steps)
    with pytest.raises(ValueError):
        bedard_inverse(b4, J, delta, [])
    with pytest.raises(ValueError):  # wrong starting subset
        bedard_inverse(b4, J, delta, [(frozenset({1}), b4.parse_word("3"))])
    with pytest.raises(ValueError):  # truncated: tail not yet stable
        bedard_inverse(b4, J, delta, steps[:1])
    with pytest.raises(ValueError):  # subset recursion broken
        bad = [steps[0], (frozenset({2}), steps[1][1]), steps[2]]
        bedard_inverse(b4, J, delta, bad)
    with pytest.raises(ValueError):  # representative leaves the right coset
        bad = [steps[0], (steps[1][0], b4.parse_word("4")), steps[2]]
        bedard_inverse(b4, J, delta, bad)
    with pytest.raises(ValueError):  # not a minimal double coset representative
        bad = [(J, b4.parse_word("12"))]
        bedard_inverse(b4, J, delta, bad)


# -- twisted normalizer -------------------------------------------------------

def test_twisted_normalizer_b4(b4):
    N = twisted_normalizer(b4, J, b4.automorphism())
    assert [b4.word_str(z) for z in N] == [
        "∅", "4", "32123", "321234", "432123", "4321234",
        "32123432123", "321234321234",
    ]


def test_twisted_normalizer_matches_brute_force():
    """Independent oracle on a twisted case: enumerate every w conjugating
    the J-generators onto the δ(J)-generators, minimize each double coset by
    exhaustive search, and compare."""
    g = coxeter_group(A3_MATRIX)
    delta = g.automorphism({1: 3, 2: 2, 3: 1})
    expected_words = {
        frozenset({1}): {"2132", "12132"},
        frozenset({2}): {"∅", "12321"},
        frozenset({1, 2}): {"123"},
    }
    for Jsub, words in expected_words.items():
        N = twisted_normalizer(g, Jsub, delta)
        assert {g.word_str(z) for z in N} == words
        dJ = delta.on_set(Jsub)
        gens = {g.generator(k): k for k in g.generators()}
        conjugators = []
        for w in g.elements():
            wi = g.inverse(w)
            image = {
                gens.get(g.product(w, g.generator(j), wi)) for j in Jsub
            }
            if None not in image and image == set(dJ):
                conjugators.append(w)
        mins = set()
        for w in conjugators:
            coset = {
                g.product(a, w, b)
                for a in g.parabolic_elements(dJ)
                for b in g.parabolic_elements(Jsub)
            }
            mins.add(min(coset, key=g.sort_key))
        assert set(N) == mins


# -- closure order -----------------------------------------------------------

def test_closure_order_basics(b4, b4_data):
    delta, idx, _ = b4_data
    e = b4.identity()
    w4 = b4.parse_word("4")
    top = b4.parse_word("321234321234")
    assert closure_leq(b4, J, delta, e, w4)
    assert not closure_leq(b4, J, delta, w4, e)
    for w in idx:
        assert closure_leq(b4, J, delta, w, w)
        assert closure_leq(b4, J, delta, e, w)
        assert closure_leq(b4, J, delta, w, top)
    # a relation that needs a nontrivial conjugator u in W_J: 432 is not
    # Bruhat-below 3243, but u·432·u^{-1} is for some u
    a, b = b4.parse_word("432"), b4.parse_word("3243")
    assert not b4.bruhat_leq(a, b)
    assert closure_leq(b4, J, delta, a, b)


def test_closure_hasse_b4(b4, b4_data):
    delta, idx, _ = b4_data
    covers = closure_hasse(b4, J, delta)
    assert len(covers) == 116
    pos = {w: i for i, w in enumerate(idx)}
    for a, b in covers:
        assert closure_leq(b4, J, delta, a, b)
        assert not closure_leq(b4, J, delta, b, a)
        assert pos[a] != pos[b]


def test_closure_rejects_non_indices(b4):
    delta = b4.automorphism()
    with pytest.raises(ValueError):
        closure_leq(b4, J, delta, b4.parse_word("12"), b4.identity())


# -- dimensions ----------------------------------------------------------------

def test_piece_dimensions_b4(b4):
    assert piece_dimension(b4, J, b4.identity()) == 24
    assert piece_dimension(b4, J, b4.parse_word("4")) == 25
    assert piece_dimension(b4, J, b4.parse_word("321234321234")) == 36


def test_piece_dimensions_b2(b2):
    delta = b2.automorphism()
    dims = {
        b2.word_str(w): piece_dimension(b2, {1}, w)
        for w in piece_indices(b2, {1}, delta)
    }
    assert dims == {"∅": 7, "2": 8, "21": 9, "212": 10}


def test_piece_dimension_rejects_non_type_b():
    g = coxeter_group(A3_MATRIX)
    with pytest.raises(ValueError):
        piece_dimension(g, {1}, g.identity())


# -- Hecke operators -----------------------------------------------------------

def test_mu_fixes_minimal_representatives(b4):
    algebra = HeckeAlgebra(b4)
    delta = b4.automorphism()
    for word in ("", "3", "34", "234", "343"):
        y = b4.parse_word(word)
        assert b4.is_right_min(y, J)
        assert mu_J(algebra.basis(y), J, delta) == algebra.basis(y)


def test_mu_swaps_coset_factors(b4):
    """mu sends T_{y_min·u} to T_{δ^{-1}(u)}·T_{y_min}; the product is taken
    in the swapped order, so it can spread over several basis elements."""
    algebra = HeckeAlgebra(b4)
    delta = b4.automorphism()
    assert mu_J(algebra.basis(b4.parse_word("31")), J, delta) == \
        algebra.basis(b4.parse_word("13"))
    y = b4.product(b4.parse_word("23"), b4.parse_word("212"))
    assert b4.word_str(y) == "23212"
    expected = algebra.element({
        b4.parse_word("213"): Laurent({2: 1}),
        b4.parse_word("2123"): Laurent({0: -1, 2: 1}),
    })
    assert mu_J(algebra.basis(y), J, delta) == expected


def test_mu_is_linear(b4):
    algebra = HeckeAlgebra(b4)
    delta = b4.automorphism()
    h1 = algebra.basis(b4.parse_word("23212")).scale(Laurent({-1: 3}))
    h2 = algebra.basis(b4.parse_word("431"))
    assert mu_J(h1 + h2, J, delta) == \
        mu_J(h1, J, delta) + mu_J(h2, J, delta)


def test_projection_selects_coset(b4, b4_data):
    _, _, datas = b4_data
    algebra = HeckeAlgebra(b4)
    N = twisted_normalizer(b4, J, b4.automorphism())
    WJ = b4.parabolic_elements(J)
    for z in N:
        data = datas[z]
        assert data.n0 == 0
        z_inv = b4.inverse(z)
        for u in WJ:
            assert E_operator(algebra.basis(b4.product(z_inv, u)), data, 0) \
                == algebra.basis(u)
        # anything outside z^{-1} W_J projects to zero at n = 0
        outside = b4.parse_word("34")
        assert not b4.in_parabolic(b4.product(z, outside), J)
        assert not E_operator(algebra.basis(outside), data, 0)


def test_e_operator_shift_identity(b4, b4_data):
    """E_{n+1}(T_y) = tau(E_n(T_y)): advancing the contraction count one
    step past stabilization only twists by the generator permutation."""
    _, idx, datas = b4_data
    algebra = HeckeAlgebra(b4)
    rng = random.Random(71)
    elements = b4.elements()
    for w in idx:
        data = datas[w]
        for y in rng.sample(elements, 24):
            h = algebra.basis(y)
            lhs = E_operator(h, data, data.n0 + 1)
            rhs = data.tau_element(E_operator(h, data, data.n0))
            assert lhs == rhs


def test_e_operator_rejects_unstable_count(b4, b4_data):
    _, _, datas = b4_data
    algebra = HeckeAlgebra(b4)
    data = datas[b4.parse_word("32")]
    assert data.n0 == 2
    with pytest.raises(ValueError):
        E_operator(algebra.unit(), data, 1)


def test_e_operator_lands_in_target(b4, b4_data):
    _, _, datas = b4_data
    algebra = HeckeAlgebra(b4)
    rng = random.Random(9)
    for w in rng.sample(list(datas), 12):
        data = datas[w]
        for y in rng.sample(b4.elements(), 10):
            out = E_operator(algebra.basis(y), data, data.n0)
            for x in out.support():
                assert b4.in_parabolic(x, data.target_parabolic)
