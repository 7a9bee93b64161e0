import os
import sys
import argparse
import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime

import pandas as pd

from thetalf import Constants
from thetalf.utils import AverageMeter, setup_logger, str2bool
from thetalf.symplectic import word_matrix, is_symplectic
from thetalf.words import (DerivationScript, IllegalMove, DerivationMismatch, ParseError,
                           as_word, format_word, replay, shorthand)
from thetalf.involutions import (ThetaParams, ParameterError, ConfigurationError,
                                 format_configuration, load_configuration, standard_chain_classes,
                                 theta_configuration)
from thetalf.lefschetz import (Factorization, invariants_bundle, lf_signature, load_printed_streams,
                               render_stream, stream_report, format_stream_report,
                               NotAFibrationOverSphere, SeparatingCycleUnsupported, ContractError)
from thetalf.suites import SUITES, run_suite, table_tasks, timed_table_row

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2

# shared by every command
common = argparse.ArgumentParser(add_help=False)
common.add_argument('--format', choices=('text', 'csv', 'kv'), default='text',
                    help='output format.')
common.add_argument('--stream', choices=('inline', 'csv'), default='inline',
                    help='rendering of the per-handle contribution stream.')
common.add_argument('--out', default=None,
                    help='write output to this path instead of stdout.')
common.add_argument('--log_file', default=None,
                    help='path for log file.')
common.add_argument('--workers', type=int, default=multiprocessing.cpu_count(),
                    help='number of worker processes for table rows.')

parser = argparse.ArgumentParser(
    description='Involution words, derivation replay and Lefschetz fibration invariants.'
)
commands = parser.add_subparsers(dest='command')
commands.required = True

p_inv = commands.add_parser('invariants', parents=[common],
                            help='invariants of the fibration given by theta(l,k,r)^2 = 1.')
p_inv.add_argument('--l', type=int, required=True, help='left genus.')
p_inv.add_argument('--k', type=int, required=True, help='vertical genus (even).')
p_inv.add_argument('--r', type=int, required=True, help='right genus.')
p_inv.add_argument('--method', choices=('transvection', 'nullspace'), default='transvection',
                   help='evaluation of the per-handle cocycle values.')

p_table = commands.add_parser('table', parents=[common],
                              help='signature table over ranges of h and k.')
p_table.add_argument('--h-min', type=int, default=2)
p_table.add_argument('--h-max', type=int, default=4)
p_table.add_argument('--k-min', type=int, default=2)
p_table.add_argument('--k-max', type=int, default=10)
p_table.add_argument('--sweep_l', type=str2bool, nargs='?', const=True, default=False,
                     help='compute every split l + r = h instead of l = 1.')

p_verify = commands.add_parser('verify', parents=[common], help='run a verification suite.')
p_verify.add_argument('suite', choices=SUITES)
p_verify.add_argument('--trials', type=int, default=100,
                      help='random triples per genus for the cocycle suite.')
p_verify.add_argument('--seed', type=int, default=2017,
                      help='random seed for the cocycle suite.')

p_replay = commands.add_parser('replay', parents=[common], help='replay a derivation script.')
p_replay.add_argument('script', help='path to a derivation script.')
p_replay.add_argument('--depth', type=int, default=Constants.SEARCH_DEPTH,
                      help='search depth for search lines that give none.')

p_word = commands.add_parser('word', parents=[common], help='evaluate a twist word on homology.')
p_word.add_argument('word', help='word text or path to a file holding it.')
p_word.add_argument('--config', default=None, help='cycle configuration file.')
p_word.add_argument('--genus', type=int, default=None,
                    help='bind c-family symbols to the standard chain of this genus.')

p_config = commands.add_parser('config', parents=[common],
                               help='write the theta(l,k,r) cycle configuration.')
p_config.add_argument('--l', type=int, required=True)
p_config.add_argument('--k', type=int, required=True)
p_config.add_argument('--r', type=int, required=True)


class UsageError(Exception):
    pass


def emit(args, text):
    if args.out:
        with open(args.out, 'w') as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def render_records(records, fmt, columns=None):
    frame = pd.DataFrame(records, columns=columns)
    if fmt == 'csv':
        return frame.to_csv(index=False)
    if fmt == 'kv':
        return '\n\n'.join('\n'.join('{}: {}'.format(key, value) for key, value in record.items())
                           for record in frame.to_dict('records')) + '\n'
    return frame.to_string(index=False) + '\n'


def stream_text(contributions, style):
    if style == 'csv':
        return ','.join(str(v) for v in contributions)
    return render_stream(contributions)


def cmd_invariants(args, log):
    p = ThetaParams(args.l, args.k, args.r)
    start = datetime.now()
    inv = invariants_bundle(p, method=args.method)
    log.info('[{} computed in {}]'.format(p, datetime.now() - start))
    record = {'l': p.l, 'k': p.k, 'r': p.r, 'h': p.h, 'g': inv.g, 'w': inv.n, 'sigma': inv.sigma,
              'chi': inv.chi, 'c1sq': inv.c1sq, 'chi_h': inv.chi_h,
              'stream': stream_text(inv.contributions, args.stream)}
    if args.format == 'text':
        text = render_records([{k: v for k, v in record.items() if k != 'stream'}], 'text')
        text += 'stream: {}\n'.format(record['stream'])
        printed = load_printed_streams().get(tuple(p))
        if printed is not None:
            text += ''.join(line + '\n' for line in
                            format_stream_report(stream_report(inv.contributions, printed)))
    else:
        text = render_records([record], args.format, columns=list(record))
    emit(args, text)
    return EXIT_OK


def collect_rows(results, timer, log):
    rows = []
    for row, seconds in results:
        timer.update(seconds)
        log.debug('[row h={} k={} done in {:.3f}s]'.format(row[0], row[1], seconds))
        rows.append(row)
    return rows


def cmd_table(args, log):
    if args.h_min < 2 or args.h_min > args.h_max:
        raise UsageError('need 2 <= h-min <= h-max')
    if args.k_min < 2 or args.k_min > args.k_max:
        raise UsageError('need 2 <= k-min <= k-max')
    tasks = table_tasks(args.h_min, args.h_max, args.k_min, args.k_max, args.sweep_l)
    if not tasks:
        raise UsageError('no even k in [{}, {}]'.format(args.k_min, args.k_max))
    log.info('[computing {} rows with {} workers]'.format(len(tasks), args.workers))
    timer = AverageMeter()
    start = datetime.now()
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as executor:
            results = executor.map(timed_table_row, tasks)
            rows = collect_rows(results, timer, log)
    else:
        rows = collect_rows((timed_table_row(task) for task in tasks), timer, log)
    log.info('[table computed in {}; rows: {}]'.format(datetime.now() - start, timer))
    records = [dict(zip(('h', 'k', 'g', 'w', 'sigma'), row)) for row in rows]
    emit(args, render_records(records, args.format, columns=['h', 'k', 'g', 'w', 'sigma']))
    return EXIT_OK


def cmd_verify(args, log):
    kwargs = {'trials': args.trials, 'seed': args.seed} if args.suite == 'cocycle' else {}
    checks = run_suite(args.suite, **kwargs)
    failed = [check for check in checks if not check.passed]
    if args.format == 'text':
        text = ''.join('{} {}{}\n'.format('PASS' if check.passed else 'FAIL', check.name,
                                         ' ({})'.format(check.detail) if check.detail else '')
                       for check in checks)
    else:
        text = render_records([check._asdict() for check in checks], args.format,
                              columns=['name', 'passed', 'detail'])
    emit(args, text)
    log.info('[{}: {} checks, {} failed]'.format(args.suite, len(checks), len(failed)))
    return EXIT_FAILURE if failed else EXIT_OK


def cmd_replay(args, log):
    script = DerivationScript.load(args.script, depth=args.depth)
    final = replay(script)
    record = {'script': args.script, 'moves': len(script.moves), 'length': len(final),
              'final': shorthand(final)}
    emit(args, render_records([record], args.format, columns=list(record)))
    return EXIT_OK


def _word_configuration(args, word):
    if args.config:
        return load_configuration(args.config)
    genus = args.genus
    if genus is None:
        top = max([s.index for s in word if s.family in (Constants.C_FAMILY,
                                                          Constants.SIGMA_FAMILY)] or [1])
        genus = max(1, top // 2)
    return standard_chain_classes(genus)


def cmd_word(args, log):
    text = args.word
    if os.path.isfile(text):
        with open(text) as f:
            text = f.read()
    word = as_word(text)
    cfg = _word_configuration(args, word)
    M = word_matrix(word, cfg)
    record = {'word': format_word(word), 'shorthand': shorthand(word), 'length': len(word),
              'genus': cfg.space.genus, 'symplectic': is_symplectic(M),
              'identity': M.is_identity(), 'minus_identity': M.is_minus_identity(),
              'matrix': ' / '.join(' '.join(str(v) for v in row) for row in M.tolist())}
    if M.is_identity() and all(s.exponent == 1 for s in word) and len(word):
        try:
            sigma, contributions = lf_signature(Factorization.from_word(word, cfg))
            record['sigma'] = sigma
            record['stream'] = stream_text(contributions, args.stream)
        except SeparatingCycleUnsupported as e:
            log.warning('[no signature: {}]'.format(e))
    emit(args, render_records([record], args.format if args.format != 'text' else 'kv',
                              columns=list(record)))
    return EXIT_OK


def cmd_config(args, log):
    p = ThetaParams(args.l, args.k, args.r)
    emit(args, format_configuration(theta_configuration(p), comment='theta{} cycles'.format(p)))
    return EXIT_OK


COMMANDS = {
    'invariants': cmd_invariants,
    'table': cmd_table,
    'verify': cmd_verify,
    'replay': cmd_replay,
    'word': cmd_word,
    'config': cmd_config,
}


def main(argv=None):
    args = parser.parse_args(argv)
    log = setup_logger('twist', args.log_file, also=('thetalf',))
    log.info('[program starts.]')
    try:
        return COMMANDS[args.command](args, log)
    except (UsageError, ParameterError, ParseError, ConfigurationError, IOError) as e:
        sys.stderr.write('error: {}\n'.format(e))
        return EXIT_USAGE
    except (IllegalMove, DerivationMismatch, NotAFibrationOverSphere,
            SeparatingCycleUnsupported, ContractError, RuntimeError) as e:
        sys.stderr.write('failure: {}\n'.format(e))
        return EXIT_FAILURE


if __name__ == '__main__':
    sys.exit(main())
