import os

# global calibration of the per-handle signature contributions
EPSILON = 1

# default depth of the bidirectional rewrite search
SEARCH_DEPTH = 6

# symbol families
C_FAMILY = 'c'
B_FAMILY = 'b'
SIGMA_FAMILY = 's'
NAMED_FAMILY = 'named'

# geometric intersection declarations
DISJOINT = 'disjoint'
ONE_POINT = 'one-point'
OTHER = 'other'

# involution kinds
HYPERELLIPTIC = 'hyperelliptic'
S_KIND = 's'
THETA = 'theta'

DATA_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'data')
DERIVATION_DIR = os.path.join(DATA_DIR, 'derivations')
CONFIG_DIR = os.path.join(DATA_DIR, 'configs')
PRINTED_STREAMS = os.path.join(DATA_DIR, 'printed_streams.txt')
