import numpy as np
import pytest

from kphi_utilities.kphi_geometry import moment_coords, seeded_coords, van_kampen_number
from kphi_utilities.kphi_pandas import f_vector_frame, fit_growth, ledger_to_df, reduction_growth, sphere_crossing_frame


def test_f_vector_frame(F21, T1, path3):
    f_df = f_vector_frame([F21, T1, path3])
    assert list(f_df['n_faces']) == [63, 54, 5]
    assert list(f_df['euler']) == [21, 0, 1]
    assert list(f_df['f_2']) == [35, 18, 0]
    assert list(f_df['dim']) == [2, 2, 1]


def test_f_vector_frame_empty():
    f_df = f_vector_frame([])
    assert f_df.empty
    assert list(f_df.columns) == ['name', 'dim', 'n_faces', 'euler']


def test_ledger_to_df(K5):
    result = van_kampen_number(K5, 2, moment_coords(K5, 2))
    ledger_df = ledger_to_df(result, K5)
    assert len(ledger_df) == result.crossings == 5
    assert (ledger_df['dim_sigma'] == 1).all()
    assert (ledger_df['dim_tau'] == 1).all()
    assert ledger_df.loc[0, 'sigma_labels'] == ' '.join(K5.labels_of(ledger_df.loc[0, 'sigma']))


@pytest.mark.parametrize('seed', [None, 3])
def test_sphere_crossing_frame(F21, seed):
    coords = moment_coords(F21, 4) if seed is None else seeded_coords(F21, 4, seed)
    result = van_kampen_number(F21, 4, coords)
    spheres_df = sphere_crossing_frame(result, F21, coords)
    assert list(spheres_df['j']) == [1, 2, 3]
    assert spheres_df['agree'].all()
    assert (spheres_df['parity'] == spheres_df['crossings'] % 2).all()
    if spheres_df['crossings'].sum() == result.crossings:
        assert result.crossings % 2 == result.v


def test_reduction_growth():
    growth_df = reduction_growth(ts=(2, 4, 8), n=10, seed=1)
    assert list(growth_df.columns) == ['t', 'conflicts', 'n_vertices', 'n_faces', 'seconds']
    assert list(growth_df['t']) == [2, 4, 8]
    assert (growth_df['n_faces'] >= 59 * growth_df['t']).all()

    fit = fit_growth(growth_df)
    assert fit['c1'] == 63
    assert fit['c2'] == 9 * 54
    assert fit['within_bound']
    assert fit['exponent'] < 2.5


def test_fit_single_row():
    growth_df = reduction_growth(ts=(3,), n=5)
    assert np.isnan(fit_growth(growth_df)['exponent'])


def test_reduction_growth_default_sizes():
    growth_df = reduction_growth()
    assert list(growth_df['t']) == [5, 10, 20, 40]
    assert growth_df['seconds'].iloc[-1] < 10
    assert fit_growth(growth_df)['within_bound']
