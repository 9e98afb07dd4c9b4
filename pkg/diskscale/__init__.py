import os
import json
import logging

logging.basicConfig(level=logging.INFO)

CONFIGDIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'config')

DEFAULTS_CONFIG_FILE = os.path.join(CONFIGDIR, 'defaults.json')
assert os.path.isfile(DEFAULTS_CONFIG_FILE), "Provide a defaults file"
with open(DEFAULTS_CONFIG_FILE, 'r') as f:
    DEFAULTS = json.load(f)

TMPDIR = DEFAULTS.get('tmpdir', 'tmp')
SAVEDIR = TMPDIR

# Edge tolerance for mixed-radius comparisons and radius bound checks
TAU = float(DEFAULTS['tau'])
EPS_MIN_FACTOR = float(DEFAULTS['eps_min_factor'])
DEFAULT_SEED = int(os.environ.get('DISKSCALE_SEED', DEFAULTS['default_seed']))


def set_verbose(verbose=True):
    """Switch the root logger between INFO and DEBUG"""
    logging.getLogger().setLevel(logging.DEBUG if verbose else logging.INFO)

if not os.path.isdir(TMPDIR):
    os.mkdir(TMPDIR)
