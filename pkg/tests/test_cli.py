import json

import pytest

from kphi_utilities.kphi_cli import main
from kphi_utilities.kphi_io import write_complex
from kphi_utilities.kphi_verify import complete_graph, path_graph, simplex_boundary
from kphi_utilities.kphi_complex import from_facets


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out else None), err


@pytest.fixture
def F_file(tmp_path, capsys):
    path = str(tmp_path / 'F.json')
    assert main(['gadget', 'F', '--k', '2', '-o', path]) == 0
    capsys.readouterr()
    return path


def test_reduce_then_stats(capsys, phi_neg_file, tmp_path):
    out_file = str(tmp_path / 'phi_neg.json')
    code, report, _ = run(capsys, 'reduce', '--cnf', phi_neg_file, '--k', '2', '-o', out_file)
    assert code == 0
    assert report['subcommand'] == 'reduce'
    assert report['exit_code'] == 0
    assert report['results']['output'] == out_file
    assert report['results']['conflicts'] == 1

    code, report, _ = run(capsys, 'stats', out_file)
    assert code == 0
    assert report['results']['f_vector'] == [17, 63, 86]
    assert report['results']['euler_characteristic'] == 40
    assert report['results']['dim'] == 2


def test_reduce_embeds_complex(capsys, two_conflict_file):
    code, report, _ = run(capsys, 'reduce', '--cnf', two_conflict_file, '--k', '2')
    assert code == 0
    assert report['results']['n_faces'] == 205
    assert len(report['results']['complex']['vertices']) == 21


def test_reduce_pad_dim(capsys, phi_neg_file):
    _, report, _ = run(capsys, 'reduce', '--cnf', phi_neg_file, '--k', '2', '--pad-dim', '3')
    assert report['results']['f_vector'] == [21, 69, 90, 1]


def test_stdout_is_byte_identical(capsys, two_conflict_file):
    main(['reduce', '--cnf', two_conflict_file, '--k', '2'])
    first = capsys.readouterr().out
    main(['reduce', '--cnf', two_conflict_file, '--k', '2'])
    assert capsys.readouterr().out == first


def test_gadget_F_van_kampen(capsys, F_file):
    code, report, _ = run(capsys, 'vk', '--complex', F_file, '--dim', '4')
    assert code == 0
    assert report['results']['v'] == 1
    assert report['results']['certificate']['method'] == 'moment'

    _, report, _ = run(capsys, 'vk', '--complex', F_file, '--dim', '4', '--seed', '5')
    assert report['results']['v'] == 1
    assert report['results']['seed'] == 5
    assert report['results']['certificate']['method'] == 'seeded'


def test_vk_ledger(capsys, tmp_path):
    path = write_complex(complete_graph(5), str(tmp_path / 'K5.json'))
    _, report, _ = run(capsys, 'vk', '--complex', path, '--dim', '2', '--moment', '--ledger')
    assert report['results']['crossings'] == 5
    assert len(report['results']['ledger']) == 5


def test_gadget_kinds(capsys):
    _, report, _ = run(capsys, 'gadget', 'G', '--k', '2', '--width', '3')
    assert report['results']['f_vector'] == [7, 21, 32]
    _, report, _ = run(capsys, 'gadget', 'torus', '--ell', '1')
    assert report['results']['f_vector'] == [9, 27, 18]
    assert report['results']['marks'] == ['a', 'b']


def test_homology_of_sphere(capsys, F_file):
    _, report, _ = run(capsys, 'homology', F_file, '--subcomplex', 'S_1')
    assert report['results']['betti'] == [1, 0, 1]


def test_deleted_product(capsys, tmp_path):
    path = write_complex(simplex_boundary(2), str(tmp_path / 'triangle.json'))
    _, report, _ = run(capsys, 'deleted-product', path, '--betti')
    results = report['results']
    assert results['cell_counts'] == [6, 6]
    assert results['betti'] == [1, 1]
    assert results['involution']['free']
    assert results['involution']['orbits'] == 6


def test_check_parity_witness(capsys, tmp_path):
    path = write_complex(path_graph(3), str(tmp_path / 'path.json'))
    code, report, _ = run(capsys, 'check-parity', '--complex', path, '--dim', '1')
    assert code == 0
    assert not report['results']['holds']
    assert report['results']['witness'] == {'sigma': ['u'], 'tau': ['v'], 'sigma_extensions': 0,
                                             'tau_extensions': 1}


def test_lk2(capsys, tmp_path):
    K = complete_graph(6)
    marked = from_facets(K.labels_of(tuple(range(6))), K.facets,
                         {'A': [(0, 2), (2, 4), (0, 4)], 'B': [(1, 3), (3, 5), (1, 5)]}, name='K6')
    path = write_complex(marked, str(tmp_path / 'K6.json'))
    code, report, _ = run(capsys, 'lk2', '--complex', path, '--first', 'A', '--second', 'B', '--dim', '3')
    assert code == 0
    assert report['results']['value'] == 1
    assert len(report['results']['apex']) == 3


def test_lk2_of_sphere_and_boundary(capsys, F_file):
    _, report, _ = run(capsys, 'lk2', '--complex', F_file, '--first', 'dsigma_1', '--second', 'S_1', '--dim', '4')
    assert report['results']['value'] in (0, 1)


def test_sat(capsys, phi_neg_file, two_conflict_file):
    code, report, _ = run(capsys, 'sat', phi_neg_file)
    assert code == 0
    assert report['results']['verdict'] == 'UNSAT'
    assert report['results']['witness'] is None

    _, report, _ = run(capsys, 'sat', two_conflict_file)
    assert report['results']['verdict'] == 'SAT'
    assert report['results']['witness'] == [1, 0, 0]


def test_sat_cap(capsys, two_conflict_file):
    code, report, err = run(capsys, 'sat', two_conflict_file, '--max-sat-vars', '2')
    assert code == 3
    assert report is None
    assert err.startswith('kphi: error:')


def test_verify_suite(capsys):
    code, report, _ = run(capsys, 'verify', '--suite', 'cnf')
    assert code == 0
    assert report['results']['failed'] == 0
    assert report['results']['passed'] == len(report['results']['checks'])


def test_verbose_logs_to_stderr(capsys):
    code, _, err = run(capsys, '-v', 'verify', '--suite', 'cnf')
    assert code == 0
    assert 'verify finished in' in err


@pytest.mark.parametrize('argv', [
    [],
    ['reduce', '--k', '2'],
    ['gadget', 'torus'],
    ['gadget', 'F'],
    ['verify', '--suite', 'nothing'],
    ['vk', '--complex', 'x.json', '--dim', '2', '--seed', '1', '--moment'],
])
def test_usage_errors(capsys, argv):
    code, report, err = run(capsys, *argv)
    assert code == 1
    assert report is None
    assert 'error' in err


def test_odd_k_needs_ell(capsys, phi_neg_file):
    code, _, _ = run(capsys, 'reduce', '--cnf', phi_neg_file, '--k', '3')
    assert code == 1


def test_input_errors(capsys, tmp_path):
    bad_json = tmp_path / 'bad.json'
    bad_json.write_text('{"vertices": []}')
    bad_cnf = tmp_path / 'bad.cnf'
    bad_cnf.write_text('p cnf 1 1\n2 0\n')
    assert run(capsys, 'stats', str(tmp_path / 'missing.json'))[0] == 2
    assert run(capsys, 'stats', str(bad_json))[0] == 2
    assert run(capsys, 'sat', str(bad_cnf))[0] == 2
    assert run(capsys, 'reduce', '--cnf', str(bad_cnf), '--k', '2')[0] == 2


def test_precondition_errors(capsys, phi_neg_file, F_file):
    assert run(capsys, 'reduce', '--cnf', phi_neg_file, '--k', '3', '--ell', '1', '--theorem-regime')[0] == 3
    assert run(capsys, 'reduce', '--cnf', phi_neg_file, '--k', '2', '--ell', '0')[0] == 3
    assert run(capsys, 'homology', F_file, '--subcomplex', 'nothing')[0] == 3
    assert run(capsys, 'vk', '--complex', F_file, '--dim', '0')[0] == 3


def test_deleted_product_truncated_betti(capsys, tmp_path):
    path = write_complex(simplex_boundary(3), str(tmp_path / 'sphere.json'))
    _, report, _ = run(capsys, 'deleted-product', path, '--betti', '--max-dim', '1')
    assert report['results']['truncated']
    assert report['results']['cell_counts'] == [12, 24]
    assert report['results']['betti'] == [1]

    _, report, _ = run(capsys, 'deleted-product', path, '--betti')
    assert not report['results']['truncated']
    assert report['results']['betti'] == [1, 0, 1]
