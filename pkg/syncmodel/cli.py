"""
Command line entry point: syncmodel {simulate, sweep, kink, verify, gaudin}
"""

import argparse
import logging
import sys

from . import __version__
from .errors import ConfigError, SyncModelError
from .exp_gaudin import GaudinExperiment
from .exp_kink import KinkExperiment
from .exp_simulate import SimulateExperiment
from .exp_sweep import SweepExperiment
from .exp_verify import SUITES, VerifyExperiment

__all__ = ['main', 'build_parser', 'EXPERIMENTS']

HELP = {
    'simulate': 'integrate one system and record its observables',
    'sweep': 'long time order parameter over a coupling grid',
    'kink': 'single spin flip relaxation or a relaxation rate grid',
    'verify': 'run the property suites and report pass/fail',
    'gaudin': 'ground state search of the semiclassical pairing Hamiltonian',
}

EXPERIMENTS = {
    'simulate': SimulateExperiment,
    'sweep': SweepExperiment,
    'kink': KinkExperiment,
    'verify': VerifyExperiment,
    'gaudin': GaudinExperiment,
}


def _seed(value):
    seed = int(value)
    if not 0 <= seed < 2 ** 64:
        raise argparse.ArgumentTypeError('seed must be an unsigned 64 bit integer')
    return seed


def build_parser():
    parser = argparse.ArgumentParser(prog='syncmodel',
                                     description='Kuramoto and mean field spin synchronization experiments')
    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    commands = parser.add_subparsers(dest='command', required=True)

    for name in EXPERIMENTS:
        sub = commands.add_parser(name, help=HELP[name])
        sub.add_argument('--config', required=name != 'verify', help='YAML experiment config')
        sub.add_argument('--seed', type=_seed, default=None, help='overrides the configured seed')
        sub.add_argument('--out', default=None, help='output path, stdout when omitted')
        sub.add_argument('--format', choices=['csv', 'json'], default=None, help='output format')
        sub.add_argument('--workers', type=int, default=None, help='worker processes for sweeps and suites')
        sub.add_argument('--log-level', default='WARNING',
                         choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'], help='logging level')
        if name == 'verify':
            sub.add_argument('--suite', action='append', choices=list(SUITES), default=None,
                             help='suite to run, repeatable; all suites by default')
    return parser


def main(argv=None):
    """
    :param argv: argument list, sys.argv[1:] by default
    :return: exit status, 0 on success, 1 on failed verification, 2 on bad config or input
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=getattr(logging, args.log_level), format='%(levelname)s %(message)s')

    try:
        kwargs = {'seed': args.seed, 'out': args.out, 'fmt': args.format}
        if args.command == 'verify':
            experiment = VerifyExperiment(args.config, suites=args.suite, **kwargs)
        else:
            experiment = EXPERIMENTS[args.command](args.config, **kwargs)
        if args.workers is not None:
            experiment.workers = args.workers
        text = experiment.execute()
    except ConfigError as e:
        logging.error('config error in %s' % e.field)
        print('syncmodel: config error: %s' % e, file=sys.stderr)
        return 2
    except (SyncModelError, OSError) as e:
        print('syncmodel: %s' % e, file=sys.stderr)
        return 2

    if experiment.out_path is None:
        sys.stdout.write(text)
    if args.command == 'verify' and not experiment.passed:
        return 1
    return 0


if __name__ == '__main__':
    sys.exit(main())
