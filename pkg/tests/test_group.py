import itertools

import pytest

from kimura3.group import (
    AUTOMORPHISMS,
    ELEMENTS,
    PARITY_CHARS,
    G,
    GroupAut,
    ParityChar,
    add,
    apply_aut,
    char_value,
    parse_element,
    total,
)

A, B, C = G.ALPHA, G.BETA, G.GAMMA


@pytest.mark.parametrize(
    "a, b, expected",
    [(A, A, G.ZERO), (A, B, C), (G.ZERO, C, C), (A, C, B), (B, C, A)],
)
def test_add_table(a, b, expected):
    assert add(a, b) is expected
    assert a + b is expected


def test_group_axioms():
    for a, b in itertools.product(ELEMENTS, repeat=2):
        assert add(a, b) == add(b, a)
        assert add(a, add(a, b)) == b
        assert add(a, a) == G.ZERO


@pytest.mark.parametrize(
    "phi, g, expected",
    [
        (GroupAut((0, 2, 1, 3)), A, B),
        (GroupAut(), C, C),
        (GroupAut((0, 2, 3, 1)), C, A),  # alpha -> beta -> gamma -> alpha
    ],
)
def test_apply_aut_examples(phi, g, expected):
    assert apply_aut(phi, g) == expected


def test_exactly_six_automorphisms_preserving_addition():
    assert len(set(AUTOMORPHISMS)) == 6
    for phi in AUTOMORPHISMS:
        assert phi(G.ZERO) == G.ZERO
        for a, b in itertools.product(ELEMENTS, repeat=2):
            assert phi(add(a, b)) == add(phi(a), phi(b))


def test_automorphism_group_structure():
    for phi, psi in itertools.product(AUTOMORPHISMS, repeat=2):
        assert phi.then(psi) in AUTOMORPHISMS
        for g in ELEMENTS:
            assert phi.then(psi)(g) == psi(phi(g))
    for phi in AUTOMORPHISMS:
        assert phi.then(phi.inverse()).is_identity()
        assert GroupAut.from_name(phi.name) == phi


@pytest.mark.parametrize("images", [(1, 0, 2, 3), (0, 1, 1, 3), (0, 1, 2)])
def test_rejects_non_automorphisms(images):
    with pytest.raises(ValueError):
        GroupAut(images)


def test_mapping_sends_src_to_dst():
    for s, d in itertools.product((A, B, C), repeat=2):
        assert GroupAut.mapping(s, d)(s) == d


@pytest.mark.parametrize(
    "kernel, g, expected",
    [(A, B, 1), (A, G.ZERO, 0), (C, C, 0), (A, A, 0), (A, C, 1)],
)
def test_char_value_examples(kernel, g, expected):
    assert char_value(ParityChar(kernel), g) == expected


def test_parity_chars_are_homomorphisms():
    for chi in PARITY_CHARS:
        assert sum(chi(g) == 0 for g in ELEMENTS) == 2
        for a, b in itertools.product(ELEMENTS, repeat=2):
            assert chi(add(a, b)) == chi(a) ^ chi(b)


@pytest.mark.parametrize(
    "text, expected",
    [("0", G.ZERO), ("a", A), ("Alpha", A), ("B", B), ("gamma", C), ("G", C)],
)
def test_parse_element(text, expected):
    assert parse_element(text) is expected


def test_parse_element_rejects_garbage():
    with pytest.raises(ValueError):
        parse_element("d")


def test_total():
    assert total([A, B, C]) == G.ZERO
    assert total([A, A, B]) == B
    assert str(total([])) == "0"
