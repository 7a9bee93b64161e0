"""Verification suites driven by `twist.py verify` and the table worker."""
import os
import glob
import time
import random
import logging

from thetalf import Constants
from thetalf.symplectic import SymplecticSpace, random_transvection_word_matrix, word_matrix
from thetalf.words import (DerivationScript, as_word, homology_shadow_equal, replay, shorthand,
                           IllegalMove, DerivationMismatch, ParseError)
from thetalf.involutions import (Check, ThetaParams, hyperelliptic_word, s_involution,
                                 s_words_genus2, s_product_word, genus2_configuration,
                                 standard_chain_classes, theta_word, validate_involution)
from thetalf.lefschetz import meyer_tau, invariants_bundle

logger = logging.getLogger(__name__)

SUITES = ('relations', 'involutions', 'derivations', 'cocycle')


def relation_checks(max_genus=4):
    checks = []
    for g in range(1, max_genus + 1):
        cfg = standard_chain_classes(g)
        n = 2 * g + 1
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                if j - i > 1:
                    ok = homology_shadow_equal('c%d c%d' % (i, j), 'c%d c%d' % (j, i), cfg)
                    checks.append(Check('g%d commute c%d c%d' % (g, i, j), ok, ''))
                else:
                    ok = homology_shadow_equal('c%d c%d c%d' % (i, j, i), 'c%d c%d c%d' % (j, i, j), cfg)
                    checks.append(Check('g%d braid c%d c%d' % (g, i, j), ok, ''))
    # (c1 c2)^6 bounds a torus with one boundary component
    cfg = standard_chain_classes(1)
    checks.append(Check('g1 chain (c1c2)^6', word_matrix(as_word('(12)^6'), cfg).is_identity(), ''))
    first, second, square = s_words_genus2()
    cfg = genus2_configuration()
    checks.append(Check('g2 s forms agree', homology_shadow_equal(first, second, cfg), ''))
    checks.append(Check('g2 s as b0 b1 b2 t_c', homology_shadow_equal(s_product_word(), first, cfg), ''))
    checks.append(Check('g2 s squared', word_matrix(first ** 2, cfg) == word_matrix(square, cfg), ''))
    return checks


def involution_checks(max_genus=10, theta_rows=None):
    checks = []
    for g in range(2, max_genus + 1):
        report = validate_involution(hyperelliptic_word(g), 'i(g=%d)' % g)
        checks.extend(Check('%s %s' % (report.label, check.name), check.passed, check.detail)
                      for check in report.checks)
    report = validate_involution(s_involution(), 's')
    checks.extend(Check('s %s' % check.name, check.passed, check.detail) for check in report.checks)
    i_matrix = hyperelliptic_word(2).matrix()
    s_matrix = s_involution().matrix()
    checks.append(Check('s commutes with i', s_matrix @ i_matrix == i_matrix @ s_matrix, ''))
    rows = theta_rows if theta_rows is not None else [(1, k, 1) for k in range(2, 12, 2)]
    for row in rows:
        p = ThetaParams(*row)
        word = theta_word(p)
        report = validate_involution(word, 'theta{}'.format(p))
        checks.extend(Check('%s %s' % (report.label, check.name), check.passed, check.detail)
                      for check in report.checks)
        checks.append(Check('theta{} length'.format(p), len(word.word) == 4 * p.h + p.k + 2, str(len(word.word))))
    return checks


def derivation_checks(directory=Constants.DERIVATION_DIR):
    checks = []
    for path in sorted(glob.glob(os.path.join(directory, '*.drv'))):
        name = os.path.basename(path)
        try:
            final = replay(DerivationScript.load(path))
            checks.append(Check('replay %s' % name, True, shorthand(final)))
        except (IllegalMove, DerivationMismatch, ParseError) as e:
            checks.append(Check('replay %s' % name, False, str(e)))
    return checks


def cocycle_checks(trials=100, seed=2017, genera=(1, 2, 3), length=4):
    """Cocycle identity, conjugation invariance and vanishing on the identity."""
    rng = random.Random(seed)
    checks = []
    for g in genera:
        space = SymplecticSpace(g)
        I = space.identity()
        failures = {'cocycle': 0, 'conjugation': 0, 'identity': 0}
        for _ in range(trials):
            A, B, C = [random_transvection_word_matrix(space, rng.randint(1, length), rng)
                       for _ in range(3)]
            if meyer_tau(A, B) + meyer_tau(A @ B, C) != meyer_tau(A, B @ C) + meyer_tau(B, C):
                failures['cocycle'] += 1
            Ci = C.inverse()
            if meyer_tau(C @ A @ Ci, C @ B @ Ci) != meyer_tau(A, B):
                failures['conjugation'] += 1
            if meyer_tau(I, A) != 0 or meyer_tau(A, I) != 0:
                failures['identity'] += 1
        for name, count in failures.items():
            checks.append(Check('g%d %s' % (g, name), count == 0,
                                '%d of %d triples failed' % (count, trials) if count else ''))
    return checks


def run_suite(name, **kwargs):
    if name == 'relations':
        return relation_checks(**kwargs)
    if name == 'involutions':
        return involution_checks(**kwargs)
    if name == 'derivations':
        return derivation_checks(**kwargs)
    if name == 'cocycle':
        return cocycle_checks(**kwargs)
    raise RuntimeError('Unsupported suite: %s' % name)


# ------------------------------------------------------------------------------
# Table rows.
# ------------------------------------------------------------------------------


def table_tasks(h_min, h_max, k_min, k_max, sweep_l=False):
    tasks = []
    for h in range(h_min, h_max + 1):
        for k in range(k_min, k_max + 1):
            if k % 2:
                continue
            splits = list(range(1, h)) if sweep_l else [1]
            tasks.append((h, k, splits))
    return tasks


def table_row(task):
    """Row (h, k, g, w, sigma); every split of h must give the same signature."""
    h, k, splits = task
    sigmas = set()
    n = None
    for l in splits:
        inv = invariants_bundle(ThetaParams(l, k, h - l))
        sigmas.add(inv.sigma)
        n = inv.n
    if len(sigmas) != 1:
        raise RuntimeError('signature depends on the split of h=%d, k=%d: %s' % (h, k, sorted(sigmas)))
    return h, k, h + k, n, sigmas.pop()


def timed_table_row(task):
    """table_row with its wall time in seconds, for the pool workers."""
    start = time.time()
    row = table_row(task)
    return row, time.time() - start
