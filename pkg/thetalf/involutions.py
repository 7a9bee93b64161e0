"""
Involution words in the mapping class group and the homology classes of
their cycles: the hyperelliptic involution, the genus-2 involution s and
the involution theta(l, k, r) whose square gives the fibrations tabulated
by the lefschetz module.
"""
import logging
from collections import OrderedDict, namedtuple

from thetalf import Constants
from thetalf.symplectic import SymplecticSpace, pairing, word_matrix, is_symplectic
from thetalf.words import (TwistWord, TwistSymbol, CurveRegistry, as_word,
                           conjugate_expand, meeting_from_count, parse_meeting, c, b, named)

logger = logging.getLogger(__name__)


class ParameterError(ValueError):
    pass


class ConfigurationError(KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ''


class InvolutionCheckFailed(RuntimeError):
    pass


class ThetaParams(namedtuple('ThetaParams', 'l k r')):
    """Left genus l, vertical genus k and right genus r of theta."""
    __slots__ = ()

    def __new__(cls, l, k, r):
        if l < 1:
            raise ParameterError('l must be at least 1, got %s' % l)
        if r < 1:
            raise ParameterError('r must be at least 1, got %s' % r)
        if k < 2 or k % 2:
            raise ParameterError('k must be even and at least 2, got %s' % k)
        return super(ThetaParams, cls).__new__(cls, int(l), int(k), int(r))

    @property
    def h(self):
        return self.l + self.r

    @property
    def g(self):
        return self.h + self.k

    @property
    def i(self):
        return self.l

    def swapped(self):
        return ThetaParams(self.r, self.k, self.l)

    def __str__(self):
        return '({},{},{})'.format(self.l, self.k, self.r)


class CycleConfiguration(object):
    """Named cycles bound to homology classes, plus declared intersection data."""
    def __init__(self, space, bindings, registry=None, lift_braids=False):
        self.space = space
        self.bindings = OrderedDict(bindings)
        self.registry = registry or CurveRegistry()
        # sigma_i evaluates as the twist about c_i (braids lifted to the double cover)
        self.lift_braids = lift_braids
        for name, cls in self.bindings.items():
            if cls.space != space:
                raise ConfigurationError('cycle %s lives in genus %d, expected %d'
                                         % (name, cls.space.genus, space.genus))

    def class_of(self, symbol):
        if isinstance(symbol, TwistSymbol):
            label = symbol.label
            if label not in self.bindings and self.lift_braids \
                    and symbol.family == Constants.SIGMA_FAMILY:
                label = 'c%d' % symbol.index
        else:
            label = str(symbol)
        try:
            return self.bindings[label]
        except KeyError:
            raise ConfigurationError('Unbound symbol: {}'.format(symbol))

    def __contains__(self, name):
        return name in self.bindings

    def names(self, family=None):
        names = list(self.bindings)
        if family is not None:
            names = [n for n in names if n[0] == family and n[1:].isdigit()]
        return names

    def with_binding(self, name, cls):
        bindings = OrderedDict(self.bindings)
        bindings[name] = cls
        return CycleConfiguration(self.space, bindings, self.registry.copy(), self.lift_braids)

    def chain_problems(self):
        """Violations of the chain pattern and zero classes among c and b cycles."""
        problems = []
        for name in self.names(Constants.C_FAMILY) + self.names(Constants.B_FAMILY):
            if self.bindings[name].is_zero():
                problems.append('%s is bound to the zero class' % name)
        chain = sorted(self.names(Constants.C_FAMILY), key=lambda n: int(n[1:]))
        for p, u in enumerate(chain):
            for v in chain[p + 1:]:
                gap = abs(int(u[1:]) - int(v[1:]))
                value = abs(pairing(self.bindings[u], self.bindings[v]))
                if gap == 1 and value != 1:
                    problems.append('|<%s, %s>| = %d, expected 1' % (u, v, value))
                elif gap > 1 and value != 0:
                    problems.append('|<%s, %s>| = %d, expected 0' % (u, v, value))
        return problems

    def __eq__(self, other):
        return (isinstance(other, CycleConfiguration) and other.space == self.space
                and other.bindings == self.bindings)

    def __ne__(self, other):
        return not self == other


# ------------------------------------------------------------------------------
# Configuration files.
# ------------------------------------------------------------------------------


def parse_configuration(text, name=None):
    space = None
    bindings = OrderedDict()
    registry = CurveRegistry()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        try:
            if fields[0] == 'genus':
                space = SymplecticSpace(int(fields[1]))
            elif fields[0] == 'cycle':
                if space is None:
                    raise ConfigurationError('cycle before genus header')
                bindings[fields[1]] = space.cls([int(v) for v in fields[2:]])
            elif fields[0] == 'pair':
                registry.declare(fields[1], fields[2], parse_meeting(fields[3]))
            else:
                raise ConfigurationError('Unsupported line: %s' % fields[0])
        except (ValueError, IndexError, KeyError) as e:
            raise ConfigurationError('%s:%d: %s' % (name, lineno, e))
    if space is None:
        raise ConfigurationError('%s: missing genus header' % name)
    return CycleConfiguration(space, bindings, registry, lift_braids=True)


def load_configuration(path):
    with open(path) as f:
        return parse_configuration(f.read(), name=path)


def format_configuration(cfg, comment=None):
    lines = []
    if comment:
        lines.append('# %s' % comment)
    lines.append('genus %d' % cfg.space.genus)
    for name, cls in cfg.bindings.items():
        lines.append('cycle %s %s' % (name, ' '.join(str(v) for v in cls.coords)))
    for u, v, meeting in cfg.registry.pairs():
        lines.append('pair %s %s %s' % (u, v, meeting))
    return '\n'.join(lines) + '\n'


def dump_configuration(cfg, path, comment=None):
    with open(path, 'w') as f:
        f.write(format_configuration(cfg, comment))


# ------------------------------------------------------------------------------
# Configurations.
# ------------------------------------------------------------------------------


def standard_chain_classes(g, genus=None):
    """
    Chain c1 ... c(2g+1) on the first g handles: [c1] = y1, [c2j] = xj,
    [c(2j+1)] = yj + y(j+1), [c(2g+1)] = yg.
    """
    if g < 1:
        raise ParameterError('genus must be positive, got %s' % g)
    space = SymplecticSpace(genus or g)
    if space.genus < g:
        raise ParameterError('chain of genus %d does not fit in genus %d' % (g, space.genus))
    bindings = OrderedDict()
    bindings['c1'] = space.y(1)
    for j in range(1, g + 1):
        bindings['c%d' % (2 * j)] = space.x(j)
        if j < g:
            bindings['c%d' % (2 * j + 1)] = space.y(j) + space.y(j + 1)
    bindings['c%d' % (2 * g + 1)] = space.y(g)
    return CycleConfiguration(space, bindings, lift_braids=True)


def theta_prefix(p):
    """c(2i+2) ... c(2h+1) c(2i) ... c1, the word in front of b0."""
    h, i = p.h, p.i
    return TwistWord([c(j) for j in range(2 * i + 2, 2 * h + 2)] + [c(j) for j in range(2 * i, 0, -1)])


def _vertical_classes(p, space):
    """
    Classes e_j on the vertical handles. Top handle q is h+q, bottom handle q is
    h+k/2+q; the pairs e_q, f_q are the differences top minus bottom.
    """
    half = p.k // 2
    e = [space.x(p.h + q) - space.x(p.h + half + q) for q in range(1, half + 1)]
    f = [space.y(p.h + q) - space.y(p.h + half + q) for q in range(1, half + 1)]
    eps = []
    partial = space.zero()
    for q in range(half):
        eps.append(partial + e[q])
        eps.append(partial + e[q] + f[q])
        partial = partial + f[q]
    eps.append(partial)
    return eps


def theta_configuration(p):
    """
    Chain of genus h on the horizontal handles 1..h, vertical genus k on the
    handles h+1..h+k; b1..bk pair to 2 with each other.
    """
    space = SymplecticSpace(p.g)
    chain = standard_chain_classes(p.h, genus=p.g)
    delta = space.y(p.i) - space.y(p.i + 1)
    eps = _vertical_classes(p, space)
    prefix = word_matrix(theta_prefix(p), chain)

    bindings = OrderedDict(chain.bindings)
    bindings['b0'] = eps[0] - prefix.inverse() @ delta
    for j in range(1, p.k + 1):
        bindings['b%d' % j] = eps[j] + delta

    registry = CurveRegistry()
    middle = 'c%d' % (2 * p.i + 1)
    b_names = ['b%d' % j for j in range(p.k + 1)]
    for n, u in enumerate(b_names):
        for v in b_names[n + 1:]:
            registry.declare(u, v, meeting_from_count(pairing(bindings[u], bindings[v])))
        for v in chain.names(Constants.C_FAMILY):
            if v == middle and u != 'b0':
                registry.declare(v, u, meeting_from_count(2))
            else:
                registry.declare(v, u, meeting_from_count(pairing(bindings[u], bindings[v])))
    cfg = CycleConfiguration(space, bindings, registry, lift_braids=True)
    problems = cfg.chain_problems()
    if problems:
        raise ConfigurationError('theta%s configuration: %s' % (p, '; '.join(problems)))
    return cfg


def genus2_configuration():
    """Chain of genus 2 with b0, b1, b2 and the separating curve t_c of s."""
    cfg = standard_chain_classes(2)
    for name, target, f in (('b0', c(5), '1234'), ('b1', c(4), '1123'), ('b2', c(3), '2112')):
        cfg = cfg.with_binding(name, word_matrix(as_word(f), cfg) @ cfg.class_of(target))
    cfg = cfg.with_binding('t_c', cfg.space.zero())
    for u in ('b0', 'b1', 'b2'):
        for v in cfg.names():
            if v != u:
                cfg.registry.declare(u, v, meeting_from_count(pairing(cfg.bindings[u],
                                                                      cfg.bindings[v])))
    return cfg


def b_conjugates_genus2():
    """t_b0 t_b1 t_b2 written through conjugations of chain twists."""
    word = TwistWord()
    for target, f in ((c(5), '1234'), (c(4), '1123'), (c(3), '2112')):
        word = word + conjugate_expand(target, f)
    return word


# ------------------------------------------------------------------------------
# Words.
# ------------------------------------------------------------------------------


class InvolutionWord(namedtuple('InvolutionWord', 'word config kind')):
    __slots__ = ()

    def matrix(self):
        return word_matrix(self.word, self.config)

    def squared(self):
        return self.word + self.word


def theta_word(p):
    h, i = p.h, p.i
    symbols = list(theta_prefix(p))
    symbols.append(b(0))
    symbols.extend(c(j) for j in range(2 * h + 1, 2 * i + 1, -1))
    symbols.extend(c(j) for j in range(1, 2 * i + 1))
    symbols.extend(b(j) for j in range(1, p.k + 1))
    symbols.append(c(2 * i + 1))
    word = TwistWord(symbols)
    assert len(word) == 4 * h + p.k + 2
    return InvolutionWord(word, theta_configuration(p), Constants.THETA)


def hyperelliptic_word(g):
    if g < 2:
        raise ParameterError('the hyperelliptic word needs genus at least 2, got %s' % g)
    down = [c(j) for j in range(2 * g + 1, 0, -1)]
    word = TwistWord(down + down[::-1])
    return InvolutionWord(word, standard_chain_classes(g), Constants.HYPERELLIPTIC)


def s_words_genus2():
    """The two 15-symbol forms of s and the 30-symbol word of s squared."""
    return (as_word('123451234123121'),
            as_word('121321432154321'),
            as_word('(54321)^6'))


def s_involution():
    return InvolutionWord(s_words_genus2()[0], genus2_configuration(), Constants.S_KIND)


def s_product_word():
    return TwistWord([b(0), b(1), b(2), named('t_c')])


# ------------------------------------------------------------------------------
# Validation.
# ------------------------------------------------------------------------------

Check = namedtuple('Check', 'name passed detail')


class InvolutionReport(object):
    def __init__(self, kind, label=None):
        self.kind = kind
        self.label = label or kind
        self.checks = []

    def add(self, name, passed, detail=''):
        self.checks.append(Check(name, bool(passed), detail))

    @property
    def ok(self):
        return all(check.passed for check in self.checks)

    @property
    def failures(self):
        return [check for check in self.checks if not check.passed]

    def lines(self):
        for check in self.checks:
            yield '{} {} {}{}'.format('PASS' if check.passed else 'FAIL', self.label, check.name,
                                      ' ({})'.format(check.detail) if check.detail else '')

    def raise_for_failure(self):
        if not self.ok:
            raise InvolutionCheckFailed('%s: %s' % (self.label, ', '.join(
                '%s (%s)' % (check.name, check.detail) for check in self.failures)))


def validate_involution(w, label=None):
    report = InvolutionReport(w.kind, label)
    zero = [s.label for s in set(w.word) if s.family in (Constants.C_FAMILY, Constants.B_FAMILY)
            and w.config.class_of(s).is_zero()]
    report.add('nonzero-classes', not zero, ', '.join(sorted(zero)))
    M = w.matrix()
    report.add('symplectic', is_symplectic(M))
    report.add('square-is-identity', (M @ M).is_identity())
    if w.kind == Constants.HYPERELLIPTIC:
        report.add('minus-identity', M.is_minus_identity())
    else:
        report.add('not-identity', not M.is_identity())
        report.add('not-minus-identity', not M.is_minus_identity())
    if w.kind == Constants.THETA:
        report.add('squared-word-identity', word_matrix(w.squared(), w.config).is_identity())
    for check in report.failures:
        logger.warning('[{} failed {}]'.format(report.label, check.name))
    return report


ChainImage = namedtuple('ChainImage', 'name image relation')


def chain_action_report(w):
    """Image of each chain class, compared with +-c_j and +-c_(2h+2-j)."""
    M = w.matrix()
    chain = sorted(w.config.names(Constants.C_FAMILY), key=lambda n: int(n[1:]))
    top = len(chain) + 1
    result = []
    for name in chain:
        j = int(name[1:])
        image = M @ w.config.bindings[name]
        mirror = w.config.bindings.get('c%d' % (top - j))
        relation = 'other'
        for label, target in (('c%d' % j, w.config.bindings[name]), ('c%d' % (top - j), mirror)):
            if target is None:
                continue
            if image == target:
                relation = '+' + label
                break
            if image == -target:
                relation = '-' + label
                break
        result.append(ChainImage(name, image, relation))
    return result
