from collections import OrderedDict

import pytest

from thetalf.symplectic import (SymplecticSpace, DimensionError, pairing, transvection, word_matrix,
                                is_symplectic, random_class, random_transvection_word_matrix)
from thetalf.involutions import CycleConfiguration, ConfigurationError, hyperelliptic_word
from thetalf.words import parse_word


def test_gram_matrix():
    J = SymplecticSpace(2).J
    assert (J.T == -J).all()
    assert (J.dot(J) == -SymplecticSpace(2).identity().entries).all()


def test_pairing_basis():
    space = SymplecticSpace(2)
    assert pairing(space.x(1), space.y(1)) == 1
    assert pairing(space.y(1), space.x(1)) == -1
    assert pairing(space.x(1), space.x(2)) == 0
    assert pairing(space.x(2), space.y(2)) == 1


def test_pairing_mismatched_spaces():
    with pytest.raises(DimensionError):
        pairing(SymplecticSpace(1).x(1), SymplecticSpace(2).x(1))


def test_class_length_checked():
    with pytest.raises(DimensionError):
        SymplecticSpace(2).cls([1, 0, 0])


def test_transvection_torus():
    space = SymplecticSpace(1)
    assert transvection(space.x(1)).tolist() == [[1, -1], [0, 1]]
    assert transvection(space.y(1)).tolist() == [[1, 0], [1, 1]]
    assert transvection(space.zero()).is_identity()


def test_transvection_properties(rng):
    space = SymplecticSpace(3)
    for _ in range(20):
        c = random_class(space, rng)
        T = transvection(c)
        assert is_symplectic(T)
        assert T == transvection(-c)
        assert T @ c == c
        assert transvection(c, power=-1) == T.inverse()
        assert transvection(c, power=3) == T ** 3
        u, v = random_class(space, rng), random_class(space, rng)
        assert pairing(T @ u, T @ v) == pairing(u, v)
        assert T @ u == u + pairing(u, c) * c


def test_transvection_fixes_orthogonal_classes():
    space = SymplecticSpace(2)
    c = space.x(1) + space.y(2)
    v = space.x(1)
    assert pairing(v, c) == 0
    assert transvection(c) @ v == v


def _torus_config():
    space = SymplecticSpace(1)
    return CycleConfiguration(space, OrderedDict([('c1', space.x(1)), ('c2', space.y(1))]))


def test_word_matrix_empty_word():
    cfg = _torus_config()
    assert word_matrix(parse_word(''), cfg).is_identity()


def test_word_matrix_order_six():
    cfg = _torus_config()
    assert word_matrix(parse_word('(c1 c2)^3'), cfg).is_minus_identity()
    assert word_matrix(parse_word('(c1 c2)^6'), cfg).is_identity()


def test_word_matrix_hyperelliptic_genus2():
    word = hyperelliptic_word(2)
    assert word_matrix(word.word, word.config).is_minus_identity()


def test_word_matrix_homomorphism(chain2):
    u, v = parse_word('1 2 3^-1 4'), parse_word('5 2 2 1^-1')
    assert word_matrix(u + v, chain2) == word_matrix(u, chain2) @ word_matrix(v, chain2)
    assert word_matrix(u.inverse(), chain2) == word_matrix(u, chain2).inverse()


def test_word_matrix_unbound_symbol(chain2):
    with pytest.raises(ConfigurationError):
        word_matrix(parse_word('c1 b7'), chain2)


def test_is_symplectic():
    assert is_symplectic(SymplecticSpace(3).identity())
    assert not is_symplectic([[1, 1], [0, 2]])
    assert not is_symplectic([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def test_random_words_are_symplectic(rng):
    space = SymplecticSpace(2)
    for _ in range(10):
        M = random_transvection_word_matrix(space, 5, rng)
        assert is_symplectic(M)
        assert (M @ M.inverse()).is_identity()
