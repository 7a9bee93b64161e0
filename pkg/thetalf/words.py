"""
Twist words, legality-checked rewrite moves and derivation-script replay.

Word text: whitespace separated tokens `c3`, `b0^-1`, `s4`, named symbols
such as `t_c`, `( ... )^n` groups, and runs of digits 1-9 standing for
c-family symbols (`12345(1234)^-1`).  Groups are expanded on parse.
"""
import re
import logging
from collections import OrderedDict, namedtuple

from thetalf import Constants
from thetalf.symplectic import word_matrix

logger = logging.getLogger(__name__)


class ParseError(ValueError):
    pass


class IllegalMove(RuntimeError):
    def __init__(self, message, declaration=None, step=None):
        super(IllegalMove, self).__init__(message)
        self.declaration = declaration
        self.step = step

    def __str__(self):
        text = super(IllegalMove, self).__str__()
        if self.step is not None:
            text = 'step {}: {}'.format(self.step, text)
        return text


class DerivationMismatch(RuntimeError):
    def __init__(self, message, expected=None, actual=None, step=None):
        super(DerivationMismatch, self).__init__(message)
        self.expected = expected
        self.actual = actual
        self.step = step


# ------------------------------------------------------------------------------
# Symbols and words.
# ------------------------------------------------------------------------------


class TwistSymbol(namedtuple('TwistSymbol', 'family index exponent name')):
    __slots__ = ()

    def __new__(cls, family, index=0, exponent=1, name=None):
        if exponent not in (1, -1):
            raise ParseError('exponent must be +1 or -1, got %s' % exponent)
        if family not in (Constants.C_FAMILY, Constants.B_FAMILY,
                          Constants.SIGMA_FAMILY, Constants.NAMED_FAMILY):
            raise ParseError('Unsupported symbol family: %s' % family)
        if family == Constants.NAMED_FAMILY:
            if not name:
                raise ParseError('named symbols need a name')
            index = 0
        else:
            if index < 0 or (family != Constants.B_FAMILY and index == 0):
                raise ParseError('index out of range: %s%s' % (family, index))
            name = None
        return super(TwistSymbol, cls).__new__(cls, family, int(index), exponent, name)

    @property
    def label(self):
        if self.family == Constants.NAMED_FAMILY:
            return self.name
        return '%s%d' % (self.family, self.index)

    @property
    def key(self):
        return self.family, self.index, self.name

    def inverse(self):
        return self._replace(exponent=-self.exponent)

    def is_inverse_of(self, other):
        return self.key == other.key and self.exponent == -other.exponent

    def __str__(self):
        return self.label if self.exponent == 1 else self.label + '^-1'


def c(index, exponent=1):
    return TwistSymbol(Constants.C_FAMILY, index, exponent)


def b(index, exponent=1):
    return TwistSymbol(Constants.B_FAMILY, index, exponent)


def sigma(index, exponent=1):
    return TwistSymbol(Constants.SIGMA_FAMILY, index, exponent)


def named(name, exponent=1):
    return TwistSymbol(Constants.NAMED_FAMILY, 0, exponent, name)


class TwistWord(object):
    """Immutable sequence of twist symbols, composed right to left."""
    __slots__ = ('symbols',)

    def __init__(self, symbols=()):
        self.symbols = tuple(symbols)

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return TwistWord(self.symbols[item])
        return self.symbols[item]

    def __add__(self, other):
        return TwistWord(self.symbols + tuple(other))

    def __pow__(self, n):
        base = self if n >= 0 else self.inverse()
        return TwistWord(base.symbols * abs(n))

    def inverse(self):
        return TwistWord(s.inverse() for s in reversed(self.symbols))

    def replace(self, pos, length, new):
        return TwistWord(self.symbols[:pos] + tuple(new) + self.symbols[pos + length:])

    def __eq__(self, other):
        return isinstance(other, TwistWord) and other.symbols == self.symbols

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.symbols)

    def __repr__(self):
        return 'TwistWord({!r})'.format(format_word(self))

    def __str__(self):
        return shorthand(self)


def as_word(w):
    if isinstance(w, TwistWord):
        return w
    if isinstance(w, str):
        return parse_word(w)
    return TwistWord(w)


# ------------------------------------------------------------------------------
# Text format.
# ------------------------------------------------------------------------------

_TOKEN = re.compile(r'''
    (?P<space>[\s.*·]+)
  | (?P<open>\()
  | (?P<close>\))(?:\^(?P<gpow>[-+]?\d+))?
  | (?P<fam>[cbs])(?P<index>\d+)(?:\^(?P<spow>[-+]?\d+))?
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)(?:\^(?P<npow>[-+]?\d+))?
  | (?P<digits>[1-9]+)(?:\^(?P<dpow>[-+]?\d+))?
''', re.VERBOSE)


def _powered(symbols, power):
    word = TwistWord(symbols) ** power
    return list(word.symbols)


def parse_word(text):
    stack = [[]]
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError('cannot parse word at column %d: %r' % (pos, text[pos:pos + 10]))
        pos = m.end()
        if m.group('space'):
            continue
        if m.group('open'):
            stack.append([])
        elif m.group('close') is not None:
            if len(stack) == 1:
                raise ParseError('unbalanced ")" in %r' % text)
            group = stack.pop()
            stack[-1].extend(_powered(group, int(m.group('gpow') or 1)))
        elif m.group('fam'):
            symbol = TwistSymbol(m.group('fam'), int(m.group('index')))
            stack[-1].extend(_powered([symbol], int(m.group('spow') or 1)))
        elif m.group('name'):
            stack[-1].extend(_powered([named(m.group('name'))], int(m.group('npow') or 1)))
        else:
            digits = m.group('digits')
            stack[-1].extend(c(int(d)) for d in digits[:-1])
            stack[-1].extend(_powered([c(int(digits[-1]))], int(m.group('dpow') or 1)))
    if len(stack) != 1:
        raise ParseError('unbalanced "(" in %r' % text)
    return TwistWord(stack[0])


def format_word(w):
    return ' '.join(str(s) for s in w)


def _is_digit_word(w):
    return all(s.family == Constants.C_FAMILY and s.index <= 9 for s in w)


def _compress(digits):
    n = len(digits)
    for period in range(1, n + 1):
        if n % period == 0 and digits[:period] * (n // period) == digits:
            return digits[:period], n // period


def shorthand(w):
    """Digit rendering of c-family words, e.g. 123451234123121(21)^-6."""
    if not len(w):
        return ''
    if not _is_digit_word(w):
        return format_word(w)
    out = []
    run = []
    for s in list(w) + [None]:
        if s is not None and s.exponent == -1:
            run.append(s)
            continue
        if run:
            body = ''.join(str(t.index) for t in TwistWord(run).inverse())
            period, times = _compress(body)
            out.append('(%s)^-%d' % (period, times))
            run = []
        if s is not None:
            out.append(str(s.index))
    return ''.join(out)


# ------------------------------------------------------------------------------
# Curve registry.
# ------------------------------------------------------------------------------


class Meeting(namedtuple('Meeting', 'kind count')):
    __slots__ = ()

    def __str__(self):
        if self.kind == Constants.OTHER:
            return '%s(%d)' % (Constants.OTHER, self.count)
        return self.kind


DISJOINT = Meeting(Constants.DISJOINT, 0)
ONE_POINT = Meeting(Constants.ONE_POINT, 1)


def meeting_from_count(count):
    count = abs(count)
    if count == 0:
        return DISJOINT
    if count == 1:
        return ONE_POINT
    return Meeting(Constants.OTHER, count)


def parse_meeting(text):
    text = text.strip()
    if text == Constants.DISJOINT:
        return DISJOINT
    if text == Constants.ONE_POINT:
        return ONE_POINT
    m = re.match(r'^%s\((\d+)\)$' % Constants.OTHER, text)
    if m is None:
        raise ParseError('Unsupported intersection declaration: %s' % text)
    return Meeting(Constants.OTHER, int(m.group(1)))


Relation = namedtuple('Relation', 'name lhs rhs')


class CurveRegistry(object):
    """
    Declared geometric intersection data for pairs of generators. Pairs inside
    the c-family or the sigma-family default to one-point when the indices are
    adjacent and disjoint otherwise; any other pair must be declared.
    """
    def __init__(self, declarations=None, relations=None):
        self.declarations = OrderedDict()
        self.relations = OrderedDict()
        for (u, v), meeting in (declarations or {}).items():
            self.declare(u, v, meeting)
        for relation in relations or ():
            self.add_relation(relation)

    @staticmethod
    def _label(s):
        return s.label if isinstance(s, TwistSymbol) else str(s)

    def declare(self, u, v, meeting):
        if isinstance(meeting, str):
            meeting = parse_meeting(meeting)
        key = frozenset((self._label(u), self._label(v)))
        self.declarations[key] = meeting

    def add_relation(self, relation):
        self.relations[relation.name] = Relation(relation.name, as_word(relation.lhs),
                                                 as_word(relation.rhs))

    def relation(self, name):
        try:
            return self.relations[name]
        except KeyError:
            raise IllegalMove('Unknown relation: %s' % name)

    def meeting(self, u, v):
        lu, lv = self._label(u), self._label(v)
        if lu == lv:
            return DISJOINT
        declared = self.declarations.get(frozenset((lu, lv)))
        if declared is not None:
            return declared
        if isinstance(u, TwistSymbol) and isinstance(v, TwistSymbol) and u.family == v.family \
                and u.family in (Constants.C_FAMILY, Constants.SIGMA_FAMILY):
            return ONE_POINT if abs(u.index - v.index) == 1 else DISJOINT
        return None

    def pairs(self):
        for key, meeting in self.declarations.items():
            u, v = sorted(key)
            yield u, v, meeting

    def copy(self):
        other = CurveRegistry()
        other.declarations.update(self.declarations)
        other.relations.update(self.relations)
        return other


DEFAULT_REGISTRY = CurveRegistry()


# ------------------------------------------------------------------------------
# Moves. Positions are 0-based.
# ------------------------------------------------------------------------------


def _window(w, pos, size):
    if pos < 0 or pos + size > len(w):
        raise IllegalMove('position %d out of range for a word of length %d' % (pos, len(w)))
    return w.symbols[pos:pos + size]


def free_reduce(w):
    stack = []
    for s in as_word(w):
        if stack and stack[-1].is_inverse_of(s):
            stack.pop()
        else:
            stack.append(s)
    return TwistWord(stack)


def apply_commute(w, pos, registry=DEFAULT_REGISTRY):
    w = as_word(w)
    u, v = _window(w, pos, 2)
    meeting = registry.meeting(u, v)
    if meeting != DISJOINT:
        raise IllegalMove('cannot commute %s and %s: declared %s' % (u, v, meeting or 'nothing'),
                          declaration=meeting)
    return w.replace(pos, 2, (v, u))


def apply_braid(w, pos, registry=DEFAULT_REGISTRY):
    """
    aba -> bab, a'b'a' -> b'a'b', and the conjugated forms a'ba -> bab' and
    aba' -> b'ab (primes are inverses).
    """
    w = as_word(w)
    u, v, t = _window(w, pos, 3)
    if u.key != t.key or u.key == v.key:
        raise IllegalMove('no braid pattern at %d: %s %s %s' % (pos, u, v, t))
    meeting = registry.meeting(u, v)
    if meeting != ONE_POINT:
        raise IllegalMove('cannot braid %s and %s: declared %s' % (u, v, meeting or 'nothing'),
                          declaration=meeting)
    a, b_ = u._replace(exponent=1), v._replace(exponent=1)
    signs = (u.exponent, v.exponent, t.exponent)
    if signs == (1, 1, 1):
        new = (b_, a, b_)
    elif signs == (-1, -1, -1):
        new = (b_.inverse(), a.inverse(), b_.inverse())
    elif signs == (-1, 1, 1):
        new = (b_, a, b_.inverse())
    elif signs == (1, 1, -1):
        new = (b_.inverse(), a, b_)
    else:
        raise IllegalMove('no braid pattern at %d: %s %s %s' % (pos, u, v, t))
    return w.replace(pos, 3, new)


def cancel_pair(w, pos):
    w = as_word(w)
    u, v = _window(w, pos, 2)
    if not u.is_inverse_of(v):
        raise IllegalMove('%s and %s do not cancel' % (u, v))
    return w.replace(pos, 2, ())


def insert_trivial(w, pos, u):
    """Insert u u^-1 before position pos."""
    w, u = as_word(w), as_word(u)
    if not 0 <= pos <= len(w):
        raise IllegalMove('position %d out of range for a word of length %d' % (pos, len(w)))
    return w.replace(pos, 0, (u + u.inverse()).symbols)


def substitute_relation(w, pos, relation, direction='forward', registry=DEFAULT_REGISTRY):
    w = as_word(w)
    if not isinstance(relation, Relation):
        relation = registry.relation(relation)
    if direction == 'forward':
        old, new = relation.lhs, relation.rhs
    elif direction == 'backward':
        old, new = relation.rhs, relation.lhs
    else:
        raise ParseError('Unsupported direction: %s' % direction)
    if w.symbols[pos:pos + len(old)] != old.symbols or pos < 0:
        raise IllegalMove('%s side of relation %s does not occur at %d'
                          % ('left' if direction == 'forward' else 'right', relation.name, pos))
    return w.replace(pos, len(old), new.symbols)


def conjugate_expand(target, f, cfg=None):
    """t_{f(a)} = f t_a f^-1 as a word."""
    f = as_word(f)
    if cfg is not None:
        for s in (target,) + f.symbols:
            cfg.class_of(s)
    return f + TwistWord([target]) + f.inverse()


def homology_shadow_equal(u, v, cfg):
    return word_matrix(as_word(u), cfg) == word_matrix(as_word(v), cfg)


# ------------------------------------------------------------------------------
# Bounded search over length-preserving moves.
# ------------------------------------------------------------------------------

Move = namedtuple('Move', 'kind pos args line')
Move.__new__.__defaults__ = ((), None)


def _neighbours(w, registry):
    for pos in range(len(w) - 1):
        if w[pos] != w[pos + 1]:
            try:
                yield Move('commute', pos), apply_commute(w, pos, registry)
            except IllegalMove:
                pass
        if pos + 2 < len(w):
            try:
                yield Move('braid', pos), apply_braid(w, pos, registry)
            except IllegalMove:
                pass


def _expand(frontier, seen, other, registry):
    nxt = []
    for w in frontier:
        for move, v in _neighbours(w, registry):
            if v in seen:
                continue
            seen[v] = (w, move)
            if v in other:
                return nxt, v
            nxt.append(v)
    return nxt, None


def _trace(meet, fwd, bwd):
    head = []
    w = meet
    while fwd[w] is not None:
        w, move = fwd[w]
        head.append(move)
    head.reverse()
    w = meet
    while bwd[w] is not None:
        # commute and braid undo themselves at the same position
        w, move = bwd[w]
        head.append(move)
    return head


def rewrite_search(start, goal, registry=DEFAULT_REGISTRY, depth=Constants.SEARCH_DEPTH):
    """Bidirectional BFS; returns a list of moves of length <= depth or None."""
    start, goal = as_word(start), as_word(goal)
    if len(start) != len(goal):
        return None
    if start == goal:
        return []
    fwd, bwd = {start: None}, {goal: None}
    fwd_frontier, bwd_frontier = [start], [goal]
    for _ in range(depth):
        if len(fwd_frontier) <= len(bwd_frontier):
            fwd_frontier, meet = _expand(fwd_frontier, fwd, bwd, registry)
        else:
            bwd_frontier, meet = _expand(bwd_frontier, bwd, fwd, registry)
        if meet is not None:
            return _trace(meet, fwd, bwd)
        if not fwd_frontier or not bwd_frontier:
            return None
    return None


# ------------------------------------------------------------------------------
# Derivation scripts.
# ------------------------------------------------------------------------------


class DerivationScript(object):
    """
    Line-oriented derivation:

        start <word>
        relation <name> <lhs> = <rhs>
        cycle <name> <2g integers>
        commute <pos> | braid <pos> | cancel <pos>
        insert <pos> <word>
        subst <pos> <relation> <forward|backward>
        search <word> [; depth]
        check <word>
        expect <word>
    """
    def __init__(self, start, moves, expected, relations=(), cycles=None, name=None):
        self.start = as_word(start)
        self.moves = list(moves)
        self.expected = as_word(expected)
        self.relations = list(relations)
        self.cycles = OrderedDict(cycles or ())
        self.name = name

    @classmethod
    def load(cls, path, depth=Constants.SEARCH_DEPTH):
        with open(path) as f:
            return cls.parse(f.read(), name=path, depth=depth)

    @classmethod
    def parse(cls, text, name=None, depth=Constants.SEARCH_DEPTH):
        start = expected = None
        moves, relations, cycles = [], [], OrderedDict()
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split('#', 1)[0].strip()
            if not line:
                continue
            if expected is not None:
                raise ParseError('%s:%d: nothing may follow expect' % (name, lineno))
            head, _, rest = line.partition(' ')
            rest = rest.strip()
            try:
                if head == 'start':
                    start = parse_word(rest)
                elif head == 'expect':
                    expected = parse_word(rest)
                elif head == 'relation':
                    rel_name, _, body = rest.partition(' ')
                    lhs, sep, rhs = body.partition('=')
                    if not sep:
                        raise ParseError('relation needs "="')
                    relations.append(Relation(rel_name, parse_word(lhs), parse_word(rhs)))
                elif head == 'cycle':
                    fields = rest.split()
                    cycles[fields[0]] = [int(v) for v in fields[1:]]
                elif head in ('commute', 'braid', 'cancel'):
                    moves.append(Move(head, int(rest), (), lineno))
                elif head == 'insert':
                    pos, _, body = rest.partition(' ')
                    moves.append(Move(head, int(pos), (parse_word(body),), lineno))
                elif head == 'subst':
                    pos, rel_name, direction = rest.split()
                    if direction not in ('forward', 'backward'):
                        raise ParseError('Unsupported direction: %s' % direction)
                    moves.append(Move(head, int(pos), (rel_name, direction), lineno))
                elif head == 'check':
                    moves.append(Move(head, None, (parse_word(rest),), lineno))
                elif head == 'search':
                    body, _, limit = rest.partition(';')
                    limit = int(limit) if limit.strip() else depth
                    moves.append(Move(head, None, (parse_word(body), limit), lineno))
                else:
                    raise ParseError('Unsupported directive: %s' % head)
            except ValueError as e:
                raise ParseError('%s:%d: %s' % (name, lineno, e))
        if start is None or expected is None:
            raise ParseError('%s: a script needs a start line and a final expect line' % name)
        return cls(start, moves, expected, relations, cycles, name)

    def words(self):
        yield self.start
        yield self.expected
        for relation in self.relations:
            yield relation.lhs
            yield relation.rhs
        for move in self.moves:
            for arg in move.args:
                if isinstance(arg, TwistWord):
                    yield arg


def _shadow_configuration(script):
    # import here: involutions builds on this module
    from thetalf.involutions import standard_chain_classes
    top = 1
    for w in script.words():
        for s in w:
            if s.family in (Constants.C_FAMILY, Constants.SIGMA_FAMILY):
                top = max(top, s.index)
    cfg = standard_chain_classes(max(1, top // 2))
    for name, coords in script.cycles.items():
        cfg = cfg.with_binding(name, cfg.space.cls(coords))
    return cfg


def replay(script, registry=None, cfg=None, shadow=True):
    """Run every move with legality checks and return the final word."""
    registry = (registry or DEFAULT_REGISTRY).copy()
    for relation in script.relations:
        registry.add_relation(relation)
    if shadow and cfg is None:
        cfg = _shadow_configuration(script)
    w = script.start
    reference = word_matrix(w, cfg) if shadow else None
    for step, move in enumerate(script.moves, 1):
        try:
            if move.kind == 'commute':
                w = apply_commute(w, move.pos, registry)
            elif move.kind == 'braid':
                w = apply_braid(w, move.pos, registry)
            elif move.kind == 'cancel':
                w = cancel_pair(w, move.pos)
            elif move.kind == 'insert':
                w = insert_trivial(w, move.pos, move.args[0])
            elif move.kind == 'subst':
                w = substitute_relation(w, move.pos, move.args[0], move.args[1], registry)
            elif move.kind == 'check':
                if w != move.args[0]:
                    raise DerivationMismatch('step {}: expected {} but reached {}'.format(
                        step, shorthand(move.args[0]), shorthand(w)),
                        expected=move.args[0], actual=w, step=step)
            elif move.kind == 'search':
                path = rewrite_search(w, move.args[0], registry, move.args[1])
                if path is None:
                    raise IllegalMove('no rewrite of length <= %d reaches %s'
                                      % (move.args[1], shorthand(move.args[0])))
                logger.debug('[step {}] search found {} moves'.format(step, len(path)))
                w = move.args[0]
        except IllegalMove as e:
            e.step = step
            raise
        if shadow and word_matrix(w, cfg) != reference:
            raise IllegalMove('{} changed the homology image'.format(move.kind), step=step)
        logger.debug('[step {}] {} {} -> {}'.format(step, move.kind,
                                                    '' if move.pos is None else move.pos,
                                                    shorthand(w)))
    if w != script.expected:
        raise DerivationMismatch('final word {} differs from expected {}'.format(
            shorthand(w), shorthand(script.expected)), expected=script.expected, actual=w)
    logger.info('[replayed {} moves of {}]'.format(len(script.moves), script.name))
    return w
