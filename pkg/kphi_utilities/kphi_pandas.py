"""
Tabular reports on complexes, crossing ledgers and reduction growth, as pandas DataFrames.
"""
import logging
import time

import numpy as np
import pandas as pd

from .kphi_cnf import conflict_pairs, normalize, random_3cnf
from .kphi_gadgets import GadgetParams, build_F, build_reduction, build_torus
from .kphi_geometry import PLCycle, lk2, sphere_crossing_counts

logger = logging.getLogger(__name__)


def f_vector_frame(complexes):
    """
    One row per complex: name, dim, n_faces, euler and f_0, f_1, ...

    Parameters
    ----------
    complexes : iterable[SimplicialComplex]

    Returns
    -------
    f_df : pd.DataFrame
        Missing dimensions are filled with 0.
    """
    rows = []
    for K in complexes:
        row = {'name': K.name, 'dim': K.dim, 'n_faces': len(K), 'euler': K.euler_characteristic}
        row.update({f'f_{i}': n for i, n in enumerate(K.f_vector)})
        rows.append(row)
    f_df = pd.DataFrame(rows, columns=['name', 'dim', 'n_faces', 'euler'] if not rows else None)
    f_cols = [c for c in f_df.columns if c.startswith('f_')]
    if f_cols:
        f_df[f_cols] = f_df[f_cols].fillna(0).astype(int)

    return f_df


def ledger_to_df(result, K):
    """
    Crossing ledger of a van Kampen computation.

    Parameters
    ----------
    result : VanKampenResult
    K : SimplicialComplex
        The complex the ledger refers to, used for labels.

    Returns
    -------
    ledger_df : pd.DataFrame
        Columns sigma, tau (vertex id tuples), sigma_labels, tau_labels, dim_sigma, dim_tau.
    """
    ledger_df = pd.DataFrame({'sigma': [s for s, _ in result.ledger], 'tau': [t for _, t in result.ledger]},
                             columns=['sigma', 'tau'])
    ledger_df['sigma_labels'] = ledger_df['sigma'].map(lambda s: ' '.join(K.labels_of(s)))
    ledger_df['tau_labels'] = ledger_df['tau'].map(lambda s: ' '.join(K.labels_of(s)))
    ledger_df['dim_sigma'] = ledger_df['sigma'].map(len) - 1
    ledger_df['dim_tau'] = ledger_df['tau'].map(len) - 1

    return ledger_df


def sphere_crossing_frame(result, K, coords, seed=0):
    """
    Per sphere S_j of F: crossings of sigma_j with S_j in the ledger, their parity, and
    the mod-2 linking number of dsigma_j with S_j under the same coordinates.

    Returns
    -------
    spheres_df : pd.DataFrame
        Columns j, crossings, parity, lk2, agree.
    """
    counts = sphere_crossing_counts(result, K)
    rows = []
    for j, count in counts.items():
        A = PLCycle.from_mark(K, f'dsigma_{j}', coords)
        B = PLCycle.from_mark(K, f'S_{j}', coords)
        value = lk2(A, B, seed=seed).value
        rows.append({'j': j, 'crossings': count, 'parity': count % 2, 'lk2': value})
    spheres_df = pd.DataFrame(rows, columns=['j', 'crossings', 'parity', 'lk2'])
    spheres_df['agree'] = spheres_df['parity'] == spheres_df['lk2']

    return spheres_df


def reduction_growth(ts=(5, 10, 20, 40), k=2, ell=1, n=10, seed=0):
    """
    Build K(phi) for random 3-CNF formulas with t clauses and record size and timing.

    Parameters
    ----------
    ts : iterable[int], default (5, 10, 20, 40)
    k, ell : int
    n : int, default 10
        Number of variables.
    seed : int
        Formula t uses seed + t.

    Returns
    -------
    growth_df : pd.DataFrame
        Columns t, conflicts, n_vertices, n_faces, seconds.
    """
    params = GadgetParams(k, ell)
    rows = []
    for t in ts:
        phi = normalize(random_3cnf(n, t, seed=seed + t))
        start = time.perf_counter()
        K = build_reduction(phi, params)
        seconds = time.perf_counter() - start
        rows.append({'t': t, 'conflicts': len(conflict_pairs(phi)), 'n_vertices': len(K.vertices),
                     'n_faces': len(K), 'seconds': seconds})
        logger.info('t=%d: %d faces in %.2fs', t, len(K), seconds)

    return pd.DataFrame(rows)


def fit_growth(growth_df, k=2, ell=1):
    """
    Fit the growth of face counts against clause count.

    Parameters
    ----------
    growth_df : pd.DataFrame
        Output of reduction_growth.
    k, ell : int
        Parameters the growth table was built with.

    Returns
    -------
    dict
        exponent: slope of log n_faces against log t;
        c1, c2: the bound n_faces <= c1*t + c2*t^2 with c1 the faces of F and c2 nine times
        the faces of the torus (at most 3t negated and 3t positive occurrences);
        within_bound: every row satisfies the bound.
    """
    params = GadgetParams(k, ell)
    t = growth_df['t'].to_numpy(dtype=float)
    faces = growth_df['n_faces'].to_numpy(dtype=float)
    exponent = float(np.polyfit(np.log(t), np.log(faces), 1)[0]) if len(t) > 1 else float('nan')

    c1 = len(build_F(params))
    c2 = 9 * len(build_torus(ell)) if ell >= 1 else 0
    within = bool(np.all(faces <= c1 * t + c2 * t ** 2))

    return {'exponent': exponent, 'c1': c1, 'c2': c2, 'within_bound': within}
