"""
Command-line front end: `kphi <subcommand> ...`.

JSON goes to standard output only, diagnostics and errors to standard error. Exit codes:
0 success, 1 usage, 2 unreadable or malformed input, 3 precondition violation,
4 internal invariant failure (including failed verify checks).
"""
import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass
from typing import Any, Dict

from .kphi_cnf import brute_force_sat, conflict_pairs, normalize
from .kphi_complex import SimplicialComplex, subcomplex
from .kphi_config import DEFAULT_LOG_FORMAT, DEFAULT_MAX_SAT_VARS, log_level
from .kphi_delprod import check_free_involution, deleted_product
from .kphi_errors import InputError, KphiError, PreconditionError, UsageError
from .kphi_gadgets import (GadgetParams, add_isolated_simplex, build_F, build_gadget, build_reduction,
                           build_torus)
from .kphi_geometry import (PLCycle, check_extension_parity, format_point, lk2, moment_coords, seeded_coords,
                            van_kampen_number)
from .kphi_gf2 import simplicial_betti
from .kphi_io import complex_to_dict, read_complex, read_dimacs_file, write_complex
from .kphi_verify import SUITES, run_suite

logger = logging.getLogger(__name__)


class KphiArgumentParser(argparse.ArgumentParser):
    """Argument errors become UsageError instead of exiting."""

    def error(self, message):
        raise UsageError(f'{self.prog}: {message}')


@dataclass
class RunReport:
    subcommand: str
    parameters: Dict[str, Any]
    results: Dict[str, Any]
    exit_code: int = 0
    duration: float = 0.0

    def to_json(self) -> str:
        """Standard output document; the duration is logged instead so reruns are byte-identical."""
        body = {'subcommand': self.subcommand, 'parameters': self.parameters,
                'results': self.results, 'exit_code': self.exit_code}
        return json.dumps(body, indent=1) + '\n'


def _labels(K: SimplicialComplex, simplex):
    return list(K.labels_of(simplex))


def _write_or_embed(K, output, results):
    if output:
        try:
            results['output'] = write_complex(K, output)
        except OSError as err:
            raise InputError(f'cannot write {output}: {err}') from err
    else:
        results['complex'] = complex_to_dict(K)
    return results


def _resolve_ell(k, ell):
    if ell is None:
        if k % 2:
            raise UsageError(f'k={k} is odd; pass --ell')
        ell = k // 2
    return ell


def cmd_reduce(args):
    ell = _resolve_ell(args.k, args.ell)
    params = GadgetParams(args.k, ell)
    if not params.check_theorem_regime() and args.theorem_regime:
        raise PreconditionError(f'--theorem-regime needs k = 2*ell, got k={args.k}, ell={ell}')
    phi = normalize(read_dimacs_file(args.cnf))
    K = build_reduction(phi, params)
    if args.pad_dim is not None:
        K = add_isolated_simplex(K, args.pad_dim)
    results = {'k': params.k, 'ell': params.ell, 'd': params.d, 'clauses': phi.t,
               'conflicts': len(conflict_pairs(phi)), 'dim': K.dim, 'f_vector': K.f_vector, 'n_faces': len(K)}
    return _write_or_embed(K, args.output, results)


def cmd_gadget(args):
    if args.kind == 'torus':
        if args.ell is None:
            raise UsageError('gadget torus needs --ell')
        K = build_torus(args.ell)
    else:
        if args.k is None:
            raise UsageError(f'gadget {args.kind} needs --k')
        params = GadgetParams(args.k, _resolve_ell(args.k, args.ell))
        K = build_F(params) if args.kind == 'F' else build_gadget(params, args.width)
    results = {'name': K.name, 'dim': K.dim, 'f_vector': K.f_vector, 'marks': sorted(K.marked)}
    return _write_or_embed(K, args.output, results)


def cmd_stats(args):
    K = read_complex(args.file)
    marks = {}
    for mark, simplices in K.marked.items():
        marks[mark] = {'facets': len(simplices), 'dim': max(len(s) for s in simplices) - 1 if simplices else -1}
    return {'name': K.name, 'dim': K.dim, 'f_vector': K.f_vector, 'n_faces': len(K),
            'euler_characteristic': K.euler_characteristic, 'marks': marks}


def cmd_homology(args):
    K = read_complex(args.file)
    if args.subcomplex:
        K = subcomplex(K, args.subcomplex)
    return {'name': K.name, 'betti': simplicial_betti(K)}


def cmd_deleted_product(args):
    K = read_complex(args.file)
    D = deleted_product(K, max_dim=args.max_dim)
    report = check_free_involution(D)
    results = {'cell_counts': D.cell_counts, 'n_cells': D.n_cells, 'truncated': D.truncated,
               'involution': {'free': report.free, 'orbits': report.orbits,
                              'orbits_per_dim': list(report.orbits_per_dim),
                              'commutes_with_boundary': report.commutes_with_boundary}}
    if args.betti:
        results['betti'] = D.betti()
    return results


def _coords(K, d, args):
    if args.seed is not None:
        return seeded_coords(K, d, args.seed)
    return moment_coords(K, d)


def _certificate(coords):
    c = coords.certificate
    return {'method': c.method, 'seed': c.seed, 'sub_seed': c.sub_seed, 'pairs_certified': c.pairs_checked}


def cmd_vk(args):
    K = read_complex(args.complex)
    coords = _coords(K, args.dim, args)
    result = van_kampen_number(K, args.dim, coords)
    results = {'v': result.v, 'pairs_checked': result.pairs_checked, 'crossings': result.crossings,
               'seed': result.seed, 'certificate': _certificate(coords)}
    if args.ledger:
        results['ledger'] = [[_labels(K, s), _labels(K, t)] for s, t in result.ledger]
    return results


def cmd_check_parity(args):
    K = read_complex(args.complex)
    report = check_extension_parity(K, args.dim)
    witness = None
    if report.witness is not None:
        w = report.witness
        witness = {'sigma': _labels(K, w.sigma), 'tau': _labels(K, w.tau),
                   'sigma_extensions': w.sigma_extensions, 'tau_extensions': w.tau_extensions}
    return {'holds': report.holds, 'pairs_checked': report.pairs_checked, 'witness': witness}


def cmd_lk2(args):
    K = read_complex(args.complex)
    coords = _coords(K, args.dim, args)
    A = PLCycle.from_mark(K, args.first, coords)
    B = PLCycle.from_mark(K, args.second, coords)
    result = lk2(A, B, seed=args.apex_seed)
    return {'value': result.value, 'apex': format_point(result.apex), 'attempts': result.attempts,
            'certificate': _certificate(coords)}


def cmd_sat(args):
    phi = read_dimacs_file(args.file)
    result = brute_force_sat(phi, max_vars=args.max_sat_vars)
    return {'verdict': result.verdict, 'satisfiable': result.satisfiable, 'n': phi.n, 't': phi.t,
            'witness': list(result.witness) if result.witness is not None else None}


def cmd_verify(args):
    checks = run_suite(args.suite)
    failed = sum(not c['passed'] for c in checks)
    return {'passed': len(checks) - failed, 'failed': failed, 'checks': checks}


COMMANDS = {
    'reduce': cmd_reduce,
    'gadget': cmd_gadget,
    'stats': cmd_stats,
    'homology': cmd_homology,
    'deleted-product': cmd_deleted_product,
    'vk': cmd_vk,
    'check-parity': cmd_check_parity,
    'lk2': cmd_lk2,
    'sat': cmd_sat,
    'verify': cmd_verify,
}


def _add_coords_source(p):
    group = p.add_mutually_exclusive_group()
    group.add_argument('--seed', type=int, help='seeded generic integer coordinates (default: moment curve)')
    group.add_argument('--moment', action='store_true', help='moment curve coordinates')


def build_parser():
    parser = KphiArgumentParser(prog='kphi', description='3-CNF to simplicial complex reduction and van Kampen tools.')
    parser.add_argument('-v', '--verbose', action='count', default=0, help='-v for INFO, -vv for DEBUG on stderr')
    sub = parser.add_subparsers(dest='subcommand', required=True)

    p = sub.add_parser('reduce', help='build K(phi) from a DIMACS file')
    p.add_argument('--cnf', required=True)
    p.add_argument('--k', type=int, required=True)
    p.add_argument('--ell', type=int, help='default k/2')
    p.add_argument('--theorem-regime', action='store_true', help='refuse parameters with k != 2*ell')
    p.add_argument('--pad-dim', type=int, help='add an isolated simplex of this dimension')
    p.add_argument('-o', '--output')

    p = sub.add_parser('gadget', help='emit F, a clause gadget G or the torus')
    p.add_argument('kind', choices=['F', 'G', 'torus'])
    p.add_argument('--k', type=int)
    p.add_argument('--ell', type=int)
    p.add_argument('--width', type=int, default=3)
    p.add_argument('-o', '--output')

    p = sub.add_parser('stats', help='f-vector, dimension, marks, Euler characteristic')
    p.add_argument('file')

    p = sub.add_parser('homology', help='Betti numbers mod 2')
    p.add_argument('file')
    p.add_argument('--subcomplex', help='restrict to a marked subcomplex')

    p = sub.add_parser('deleted-product', help='cell counts and involution report of the deleted product')
    p.add_argument('file')
    p.add_argument('--betti', action='store_true')
    p.add_argument('--max-dim', type=int)

    p = sub.add_parser('vk', help='van Kampen number of a generic linear map')
    p.add_argument('--complex', required=True)
    p.add_argument('--dim', type=int, required=True)
    _add_coords_source(p)
    p.add_argument('--ledger', action='store_true', help='list the crossing pairs')

    p = sub.add_parser('check-parity', help='extension-parity condition for map independence')
    p.add_argument('--complex', required=True)
    p.add_argument('--dim', type=int, required=True)

    p = sub.add_parser('lk2', help='mod-2 linking number of two marked cycles')
    p.add_argument('--complex', required=True)
    p.add_argument('--first', required=True)
    p.add_argument('--second', required=True)
    p.add_argument('--dim', type=int, required=True)
    _add_coords_source(p)
    p.add_argument('--apex-seed', type=int, default=0)

    p = sub.add_parser('sat', help='brute-force satisfiability')
    p.add_argument('file')
    p.add_argument('--max-sat-vars', type=int, default=DEFAULT_MAX_SAT_VARS)

    p = sub.add_parser('verify', help='run the built-in fixture suites')
    p.add_argument('--suite', choices=list(SUITES) + ['all'], default='all')

    return parser


def configure_logging(verbose=0):
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = getattr(logging, log_level(), logging.WARNING)
    logging.basicConfig(level=level, format=DEFAULT_LOG_FORMAT, stream=sys.stderr, force=True)


def _parameters(args):
    return {key: value for key, value in sorted(vars(args).items()) if key not in ('subcommand', 'verbose')}


def main(argv=None):
    """
    Entry point of the `kphi` console script.

    Returns
    -------
    int
        Process exit code.
    """
    parser = build_parser()
    start = time.perf_counter()
    try:
        args = parser.parse_args(argv)
        configure_logging(args.verbose)
        results = COMMANDS[args.subcommand](args)
    except KphiError as err:
        print(f'kphi: error: {err}', file=sys.stderr)
        return err.exit_code

    exit_code = 4 if args.subcommand == 'verify' and results['failed'] else 0
    report = RunReport(args.subcommand, _parameters(args), results, exit_code, time.perf_counter() - start)
    sys.stdout.write(report.to_json())
    logger.info('%s finished in %.3f s', report.subcommand, report.duration)
    return report.exit_code


if __name__ == '__main__':
    sys.exit(main())
