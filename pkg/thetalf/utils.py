import sys
import logging
import argparse


class AverageMeter(object):
    """Running mean and maximum of per-item timings."""
    def __init__(self):
        self.reset()

    def reset(self):
        self.val = self.avg = self.sum = self.max = 0
        self.count = 0

    def update(self, val, n=1):
        self.val = val
        self.max = max(self.max, val)
        self.sum += val * n
        self.count += n
        self.avg = self.sum / self.count

    def __str__(self):
        return '{:.3f}s mean, {:.3f}s max over {}'.format(self.avg, self.max, self.count)


_TRUE = ('yes', 'true', 't', 'y', '1')
_FALSE = ('no', 'false', 'f', 'n', '0')


def str2bool(v):
    """argparse type for flags such as --sweep_l."""
    if isinstance(v, bool):
        return v
    text = v.strip().lower()
    if text in _TRUE:
        return True
    if text in _FALSE:
        return False
    raise argparse.ArgumentTypeError('Boolean value expected, got {!r}.'.format(v))


def setup_logger(name, log_file=None, stream=sys.stderr, also=()):
    """File handler at DEBUG, console handler at INFO, shared with the `also` loggers."""
    formatter = logging.Formatter(fmt='%(asctime)s %(message)s', datefmt='%m/%d/%Y %I:%M:%S')
    handlers = []
    if log_file:
        fh = logging.FileHandler(log_file)
        fh.setLevel(logging.DEBUG)
        fh.setFormatter(formatter)
        handlers.append(fh)
    ch = logging.StreamHandler(stream)
    ch.setLevel(logging.INFO)
    ch.setFormatter(formatter)
    handlers.append(ch)
    for logger_name in (name,) + tuple(also):
        log = logging.getLogger(logger_name)
        log.setLevel(logging.DEBUG)
        for handler in list(log.handlers):
            log.removeHandler(handler)
            handler.close()
        for handler in handlers:
            log.addHandler(handler)
        log.propagate = False
    return logging.getLogger(name)
