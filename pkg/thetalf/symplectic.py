"""
Integer symplectic linear algebra on the first homology of a closed surface.

Coordinates are interleaved (x1, y1, x2, y2, ...) so the Gram matrix J is
block diagonal with blocks [[0, 1], [-1, 0]].  All entries are Python ints
held in numpy object arrays.
"""
import logging
import numpy as np

logger = logging.getLogger(__name__)


class DimensionError(ValueError):
    pass


class SymplecticSpace(object):
    """H_1 of the closed genus-g surface with its intersection pairing."""
    def __init__(self, genus):
        if genus < 1:
            raise DimensionError('genus must be positive: %s' % genus)
        self.genus = int(genus)
        self.dim = 2 * self.genus
        J = np.zeros((self.dim, self.dim), dtype=object)
        for j in range(self.genus):
            J[2 * j, 2 * j + 1] = 1
            J[2 * j + 1, 2 * j] = -1
        self._J = J

    @property
    def J(self):
        return self._J.copy()

    def __eq__(self, other):
        return isinstance(other, SymplecticSpace) and other.genus == self.genus

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(('SymplecticSpace', self.genus))

    def __repr__(self):
        return 'SymplecticSpace(genus={})'.format(self.genus)

    def cls(self, coords):
        return HomologyClass(self, coords)

    def zero(self):
        return HomologyClass(self, [0] * self.dim)

    def x(self, j):
        return self._basis(2 * (j - 1))

    def y(self, j):
        return self._basis(2 * (j - 1) + 1)

    def _basis(self, index):
        if not 0 <= index < self.dim:
            raise DimensionError('no handle %d in genus %d' % (index // 2 + 1, self.genus))
        coords = [0] * self.dim
        coords[index] = 1
        return HomologyClass(self, coords)

    def identity(self):
        return SpMatrix(self, np.identity(self.dim, dtype=int).astype(object))


class HomologyClass(object):
    __slots__ = ('space', 'coords')

    def __init__(self, space, coords):
        coords = tuple(int(v) for v in coords)
        if len(coords) != space.dim:
            raise DimensionError('expected %d coordinates, got %d' % (space.dim, len(coords)))
        self.space = space
        self.coords = coords

    @property
    def vector(self):
        return np.array(self.coords, dtype=object)

    def is_zero(self):
        return not any(self.coords)

    def _check(self, other):
        if not isinstance(other, HomologyClass) or other.space != self.space:
            raise DimensionError('classes live in different spaces')

    def __add__(self, other):
        self._check(other)
        return HomologyClass(self.space, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._check(other)
        return HomologyClass(self.space, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return HomologyClass(self.space, [-a for a in self.coords])

    def __rmul__(self, scalar):
        return HomologyClass(self.space, [scalar * a for a in self.coords])

    def __eq__(self, other):
        return (isinstance(other, HomologyClass) and other.space == self.space
                and other.coords == self.coords)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.space.genus, self.coords))

    def __repr__(self):
        return 'HomologyClass({})'.format(' '.join(str(v) for v in self.coords))

    def __str__(self):
        terms = []
        for index, v in enumerate(self.coords):
            if v == 0:
                continue
            name = '%s%d' % ('xy'[index % 2], index // 2 + 1)
            coef = '' if abs(v) == 1 else str(abs(v))
            terms.append(('-' if v < 0 else '+') + coef + name)
        if not terms:
            return '0'
        text = ' '.join(terms)
        return text[1:] if text.startswith('+') else text


class SpMatrix(object):
    """2g x 2g integer matrix acting on column vectors of a SymplecticSpace."""
    def __init__(self, space, entries):
        entries = np.array(entries, dtype=object)
        if entries.shape != (space.dim, space.dim):
            raise DimensionError('expected a %dx%d matrix, got shape %s'
                                 % (space.dim, space.dim, entries.shape))
        self.space = space
        self.entries = entries

    def __matmul__(self, other):
        if isinstance(other, SpMatrix):
            if other.space != self.space:
                raise DimensionError('matrices live in different spaces')
            return SpMatrix(self.space, self.entries.dot(other.entries))
        if isinstance(other, HomologyClass):
            if other.space != self.space:
                raise DimensionError('class and matrix live in different spaces')
            return HomologyClass(self.space, self.entries.dot(other.vector))
        return NotImplemented

    def __pow__(self, n):
        base = self if n >= 0 else self.inverse()
        result = self.space.identity()
        for _ in range(abs(n)):
            result = result @ base
        return result

    def __neg__(self):
        return SpMatrix(self.space, -self.entries)

    def __sub__(self, other):
        return SpMatrix(self.space, self.entries - other.entries)

    def inverse(self):
        # valid for symplectic matrices only
        J = self.space.J
        return SpMatrix(self.space, -J.dot(self.entries.T).dot(J))

    def is_identity(self):
        return self == self.space.identity()

    def is_minus_identity(self):
        return self == -self.space.identity()

    def tolist(self):
        return [[int(v) for v in row] for row in self.entries]

    def __eq__(self, other):
        return (isinstance(other, SpMatrix) and other.space == self.space
                and np.array_equal(self.entries, other.entries))

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(tuple(tuple(row) for row in self.tolist()))

    def __repr__(self):
        return 'SpMatrix({})'.format(self.tolist())


def pairing(u, v):
    """Algebraic intersection number <u, v> = u^T J v."""
    if u.space != v.space:
        raise DimensionError('classes live in different spaces')
    a, b = u.coords, v.coords
    return sum(a[i] * b[i + 1] - a[i + 1] * b[i] for i in range(0, len(a), 2))


def transvection(c, power=1):
    """Matrix of v -> v + power * <v, c> c, the action of t_c^power."""
    space = c.space
    vec = c.vector
    nilpotent = np.outer(vec, space.J.dot(vec))
    return SpMatrix(space, np.identity(space.dim, dtype=int).astype(object) + power * nilpotent)


def word_matrix(word, cfg):
    """
    Evaluate a twist word on homology. The word is read right to left, so the
    matrix is the product of the symbol matrices in written order.
    """
    result = cfg.space.identity()
    for symbol in word:
        result = result @ transvection(cfg.class_of(symbol), power=symbol.exponent)
    return result


def is_symplectic(M):
    if isinstance(M, SpMatrix):
        space, entries = M.space, M.entries
    else:
        entries = np.array(M, dtype=object)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1] or entries.shape[0] % 2:
            return False
        space = SymplecticSpace(entries.shape[0] // 2)
    J = space.J
    return bool(np.array_equal(entries.T.dot(J).dot(entries), J))


def random_class(space, rng, spread=1):
    while True:
        c = space.cls([rng.randint(-spread, spread) for _ in range(space.dim)])
        if not c.is_zero():
            return c


def random_transvection_word_matrix(space, length, rng, spread=1):
    result = space.identity()
    for _ in range(length):
        result = result @ transvection(random_class(space, rng, spread), rng.choice((1, -1)))
    return result
