"""
Invariants of Lefschetz fibrations over the sphere given by positive
factorizations of the identity.

The signature is accumulated handle by handle with the Meyer cocycle:
the k-th vanishing cycle contributes EPSILON * tau(P, T), P the product of
the earlier twists and T the k-th twist.
"""
import logging
from fractions import Fraction
from collections import namedtuple

import sympy
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from thetalf import Constants
from thetalf.symplectic import transvection, is_symplectic
from thetalf.involutions import ThetaParams, theta_word

logger = logging.getLogger(__name__)


class ContractError(ValueError):
    pass


class SeparatingCycleUnsupported(RuntimeError):
    pass


class NotAFibrationOverSphere(RuntimeError):
    pass


class Factorization(object):
    """Vanishing cycles in written order; the monodromy is T_1 T_2 ... T_n."""
    def __init__(self, space, cycles=()):
        self.space = space
        self.cycles = tuple(cycles)
        for cycle in self.cycles:
            if cycle.space != space:
                raise ContractError('vanishing cycle outside genus %d' % space.genus)

    @classmethod
    def from_word(cls, word, cfg):
        cycles = []
        for symbol in word:
            if symbol.exponent != 1:
                raise ContractError('a positive factorization has no inverse twists: {}'.format(symbol))
            cycles.append(cfg.class_of(symbol))
        return cls(cfg.space, cycles)

    def __len__(self):
        return len(self.cycles)

    def __iter__(self):
        return iter(self.cycles)

    def product(self):
        result = self.space.identity()
        for cycle in self.cycles:
            result = result @ transvection(cycle)
        return result

    def rotate(self, shift):
        shift %= max(1, len(self.cycles))
        return Factorization(self.space, self.cycles[shift:] + self.cycles[:shift])

    def __eq__(self, other):
        return isinstance(other, Factorization) and other.space == self.space \
            and other.cycles == self.cycles

    def __ne__(self, other):
        return not self == other


def rotate(f, shift):
    return f.rotate(shift)


def hurwitz_move(f, pos):
    """(v_pos, v_pos+1) -> (v_pos+1, T_{v_pos+1}^-1 v_pos), pos counted from 1."""
    if not 1 <= pos < len(f):
        raise IndexError('Hurwitz move position %s out of range 1..%d' % (pos, len(f) - 1))
    cycles = list(f.cycles)
    v, w = cycles[pos - 1], cycles[pos]
    cycles[pos - 1:pos + 1] = [w, transvection(w, power=-1) @ v]
    return Factorization(f.space, cycles)


# ------------------------------------------------------------------------------
# Exact linear algebra over the rationals.
# ------------------------------------------------------------------------------


def _fraction(v):
    if isinstance(v, sympy.Basic):
        v = sympy.Rational(v)
        return Fraction(int(v.p), int(v.q))
    return Fraction(v)


def signature_of_form(Q):
    """Signature of a symmetric rational matrix by congruence diagonalization."""
    M = [[_fraction(v) for v in row] for row in (Q.tolist() if hasattr(Q, 'tolist') else Q)]
    n = len(M)
    if any(len(row) != n for row in M):
        raise ContractError('form is not square')
    if any(M[r][s] != M[s][r] for r in range(n) for s in range(r)):
        raise ContractError('form is not symmetric')
    positive = negative = 0
    for k in range(n):
        pivot = next((r for r in range(k, n) if M[r][r] != 0), None)
        if pivot is None:
            pair = next(((r, s) for r in range(k, n) for s in range(r + 1, n) if M[r][s] != 0), None)
            if pair is None:
                break
            r, s = pair
            # e_r -> e_r + e_s makes the diagonal entry 2 M[r][s]
            for t in range(n):
                M[r][t] += M[s][t]
            for t in range(n):
                M[t][r] += M[t][s]
            pivot = r
        if pivot != k:
            M[k], M[pivot] = M[pivot], M[k]
            for row in M:
                row[k], row[pivot] = row[pivot], row[k]
        p = M[k][k]
        if p > 0:
            positive += 1
        else:
            negative += 1
        for r in range(k + 1, n):
            factor = M[r][k] / p
            if factor == 0:
                continue
            for s in range(k + 1, n):
                M[r][s] -= factor * M[k][s]
        for r in range(k + 1, n):
            M[r][k] = M[k][r] = Fraction(0)
    return positive - negative


def _solve(A, rhs):
    """One solution of A x = rhs over Q with the free variables set to 0, or None."""
    n_cols = len(A[0])
    augmented = DomainMatrix([[QQ(int(v)) for v in row] + [QQ(int(t))] for row, t in zip(A, rhs)],
                             (len(A), n_cols + 1), QQ)
    reduced, pivots = augmented.rref()
    if n_cols in pivots:
        return None
    reduced = reduced.to_Matrix()
    x = [Fraction(0)] * n_cols
    for r, piv_c in enumerate(pivots):
        x[piv_c] = _fraction(reduced[r, n_cols])
    return x


# ------------------------------------------------------------------------------
# Meyer cocycle.
# ------------------------------------------------------------------------------


def _check_symplectic(*matrices):
    for M in matrices:
        if not is_symplectic(M):
            raise ContractError('matrix is not symplectic: %s' % M.tolist())


def meyer_tau(A, B):
    """
    Signature of the form (x+y)^T J (I-B) y' on
    V = {(x, y) : (A^-1 - I) x + (B - I) y = 0}.
    """
    _check_symplectic(A, B)
    if A.space != B.space:
        raise ContractError('matrices live in different spaces')
    space = A.space
    I = space.identity()
    system = sympy.Matrix((A.inverse() - I).tolist()).row_join(sympy.Matrix((B - I).tolist()))
    basis = system.nullspace()
    if not basis:
        return 0
    dim = space.dim
    J = sympy.Matrix(space.J.tolist())
    W = J * sympy.Matrix((I - B).tolist())
    vectors = [(v[:dim, 0], v[dim:, 0]) for v in basis]
    Q = [[((x + y).T * W * y2)[0, 0] for _, y2 in vectors] for x, y in vectors]
    size = len(Q)
    sym = [[(_fraction(Q[r][s]) + _fraction(Q[s][r])) / 2 for s in range(size)] for r in range(size)]
    return signature_of_form(sym)


def transvection_tau(A, cycle):
    """
    tau(A, T_c) in closed form: on V the form has rank at most one and equals
    -(1 - <x0, c>) t t' where (I - A) x0 = A c; it vanishes if no x0 exists.
    """
    space = A.space
    rhs = (A @ cycle).coords
    system = (space.identity() - A).tolist()
    x0 = _solve(system, rhs)
    if x0 is None:
        return 0
    c = cycle.coords
    value = 1 - sum(x0[i] * c[i + 1] - x0[i + 1] * c[i] for i in range(0, len(c), 2))
    return (value < 0) - (value > 0)


def lf_signature(f, epsilon=Constants.EPSILON, method='transvection'):
    """Signature and per-handle contributions of the fibration of f."""
    for index, cycle in enumerate(f.cycles, 1):
        if cycle.is_zero():
            raise SeparatingCycleUnsupported('vanishing cycle %d is separating' % index)
    if not f.product().is_identity():
        raise NotAFibrationOverSphere('monodromy product is not the identity')
    prefix = f.space.identity()
    contributions = []
    for cycle in f.cycles:
        A = transvection(cycle)
        if method == 'transvection':
            tau = transvection_tau(prefix, cycle)
        elif method == 'nullspace':
            tau = meyer_tau(prefix, A)
        else:
            raise RuntimeError('Unsupported signature method: %s' % method)
        contributions.append(epsilon * tau)
        prefix = prefix @ A
    sigma = sum(contributions)
    logger.debug('signature {} from {} handles'.format(sigma, len(contributions)))
    return sigma, contributions


def word_signature(word, cfg, method='transvection'):
    return lf_signature(Factorization.from_word(word, cfg), method=method)


# ------------------------------------------------------------------------------
# Invariants.
# ------------------------------------------------------------------------------


def euler_characteristic(g, n):
    return 2 * (2 - 2 * g) + n


LFInvariants = namedtuple('LFInvariants', 'params g n chi sigma c1sq chi_h contributions')


def invariants_from_signature(g, sigma, contributions, params=None):
    n = len(contributions)
    chi = euler_characteristic(g, n)
    chi_h = Fraction(sigma + chi, 4)
    if chi_h.denominator != 1:
        raise ContractError('chi_h = %s is not an integer' % chi_h)
    return LFInvariants(params, g, n, chi, sigma, 3 * sigma + 2 * chi, int(chi_h), contributions)


def invariants_bundle(p, method='transvection'):
    if not isinstance(p, ThetaParams):
        p = ThetaParams(*p)
    theta = theta_word(p)
    f = Factorization.from_word(theta.squared(), theta.config)
    sigma, contributions = lf_signature(f, method=method)
    inv = invariants_from_signature(p.g, sigma, contributions, params=p)
    if inv.c1sq != -4 * (p.g - 1):
        logger.warning('[{}: c1^2 = {}, closed form {}]'.format(p, inv.c1sq, -4 * (p.g - 1)))
    if inv.chi_h != 1 - p.k // 2:
        logger.warning('[{}: chi_h = {}, closed form {}]'.format(p, inv.chi_h, 1 - p.k // 2))
    logger.debug('[{} sigma {} chi {}]'.format(p, inv.sigma, inv.chi))
    return inv


# ------------------------------------------------------------------------------
# Contribution streams.
# ------------------------------------------------------------------------------


def render_stream(contributions, total=True):
    """Run-on block: 0 +0 -1 ... = sigma"""
    parts = []
    for index, v in enumerate(contributions):
        parts.append(str(v) if index == 0 or v < 0 else '+%d' % v)
    text = ' '.join(parts)
    if total:
        text += ' = %d' % sum(contributions)
    return text


def load_printed_streams(path=Constants.PRINTED_STREAMS):
    """Lines `l,k,r: 0x6 -1x8 ...` in run-length form."""
    streams = {}
    with open(path) as f:
        for raw in f:
            line = raw.split('#', 1)[0].strip()
            if not line:
                continue
            head, _, body = line.partition(':')
            key = tuple(int(v) for v in head.split(','))
            values = []
            for run in body.split():
                value, _, times = run.partition('x')
                values.extend([int(value)] * int(times or 1))
            streams[key] = values
    return streams


StreamComparison = namedtuple('StreamComparison', 'length_match computed_total printed_total '
                                                  'computed_negatives printed_negatives '
                                                  'matching_positions mismatches')


def stream_report(contributions, printed):
    mismatches = [index for index, (u, v) in enumerate(zip(contributions, printed)) if u != v]
    matching = min(len(contributions), len(printed)) - len(mismatches)
    return StreamComparison(len(contributions) == len(printed), sum(contributions), sum(printed),
                            sum(1 for v in contributions if v < 0), sum(1 for v in printed if v < 0),
                            matching, mismatches)


def format_stream_report(report):
    lines = ['stream totals: computed {} printed {}'.format(report.computed_total, report.printed_total),
             'negative entries: computed {} printed {}'.format(report.computed_negatives,
                                                               report.printed_negatives),
             'matching positions: {}{}'.format(report.matching_positions,
                                              '' if report.length_match else ' (lengths differ)')]
    if report.mismatches:
        lines.append('differing positions: {}'.format(' '.join(str(i + 1) for i in report.mismatches)))
    return lines
