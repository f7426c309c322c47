"""
Methods for reading, writing and converting complex and formula files.
"""
import json
import logging
from glob import glob
from os import makedirs
from os.path import basename, exists, join, splitext
from pathlib import Path

from .kphi_cnf import CnfFormula, parse_dimacs, write_dimacs
from .kphi_complex import SimplicialComplex, from_facets
from .kphi_errors import ComplexFormatError, InputError, PreconditionError
from .kphi_gadgets import GadgetParams, reduction_from_cnf

logger = logging.getLogger(__name__)


def complex_to_dict(K: SimplicialComplex):
    """
    JSON-ready dictionary with keys name, vertices, facets, marked.

    Parameters
    ----------
    K : SimplicialComplex

    Returns
    -------
    dict
        Facets and each facet sorted ascending; marks listed by their maximal simplices.
    """
    return {
        'name': K.name,
        'vertices': [{'id': v.id, 'label': v.label} for v in K.vertices],
        'facets': [list(f) for f in K.facets],
        'marked': {mark: [list(s) for s in simplices] for mark, simplices in K.marked.items()},
    }


def _int_list(value, what):
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise ComplexFormatError(f'{what} must be a list of integers, got {value!r}')
    return value


def complex_from_dict(data) -> SimplicialComplex:
    """
    Inverse of complex_to_dict.

    Raises
    ------
    ComplexFormatError
        Missing keys, non-integer ids, ids that are not 0..n-1 in order, or facets and marks
        that do not form a valid complex.
    """
    if not isinstance(data, dict):
        raise ComplexFormatError('complex document must be a JSON object')
    missing = [key for key in ('vertices', 'facets') if key not in data]
    if missing:
        raise ComplexFormatError(f'complex document lacks {missing}')

    labels = []
    for i, vertex in enumerate(data['vertices']):
        if not isinstance(vertex, dict) or vertex.get('id') != i or not isinstance(vertex.get('label'), str):
            raise ComplexFormatError(f'vertex entry {i} must be {{"id": {i}, "label": str}}, got {vertex!r}')
        labels.append(vertex['label'])

    facets = [_int_list(f, 'facet') for f in data['facets']]
    marked = data.get('marked', {})
    if not isinstance(marked, dict):
        raise ComplexFormatError('"marked" must be an object')
    marks = {name: [_int_list(s, f"simplex of mark '{name}'") for s in simplices] for name, simplices in marked.items()}

    try:
        return from_facets(labels, facets, marks, name=str(data.get('name', '')))
    except PreconditionError as err:
        raise ComplexFormatError(str(err)) from err


def dumps_complex(K: SimplicialComplex) -> str:
    """
    Serialize a complex to JSON text.

    Parameters
    ----------
    K : SimplicialComplex

    Returns
    -------
    str
        complex_to_dict(K) with indent 1 and a trailing newline; equal complexes give identical text.
    """
    return json.dumps(complex_to_dict(K), indent=1) + '\n'


def loads_complex(text) -> SimplicialComplex:
    """
    Parse JSON complex text.

    Parameters
    ----------
    text : str or bytes

    Returns
    -------
    SimplicialComplex

    Raises
    ------
    ComplexFormatError
        Invalid JSON or an invalid complex document.
    """
    try:
        data = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as err:
        raise ComplexFormatError(f'not a JSON document: {err}') from err
    return complex_from_dict(data)


def _read_bytes(file):
    try:
        with open(file, 'rb') as f:
            return f.read()
    except OSError as err:
        raise InputError(f'cannot read {file}: {err}') from err


def read_complex(file_json) -> SimplicialComplex:
    """
    Load a complex from a JSON complex file.

    Parameters
    ----------
    file_json : str

    Returns
    -------
    SimplicialComplex
    """
    return loads_complex(_read_bytes(file_json))


def write_complex(K: SimplicialComplex, file_json=None, ext='.json', folder_dest=None):
    """
    Save a complex as a JSON complex file (UTF-8).

    Parameters
    ----------
    K : SimplicialComplex
    file_json : str, optional
        Name of the file to create. If None, the complex name with ext appended.
    ext : str, optional
    folder_dest : str, optional
        Destination folder, created if missing. If None, file_json is used as given.

    Returns
    -------
    file_json : str
    """
    if file_json is None:
        file_json = (K.name or 'complex') + ext
    if folder_dest is not None:
        if not exists(folder_dest):
            makedirs(folder_dest)
        file_json = join(folder_dest, basename(file_json))

    with open(file_json, 'w', encoding='utf-8') as f:
        f.write(dumps_complex(K))
    logger.debug('wrote %s to %s', K.name, file_json)
    return file_json


def read_dimacs_file(file_cnf) -> CnfFormula:
    """
    Parse a DIMACS .cnf file.

    Parameters
    ----------
    file_cnf : str

    Returns
    -------
    CnfFormula
    """
    return parse_dimacs(_read_bytes(file_cnf))


def write_dimacs_file(phi: CnfFormula, file_cnf, comments=()):
    """
    Save a formula as a DIMACS .cnf file.

    Parameters
    ----------
    phi : CnfFormula
    file_cnf : str
        Name of the file to create.
    comments : iterable[str], optional
        Written as "c" lines before the problem line.

    Returns
    -------
    file_cnf : str
    """
    with open(file_cnf, 'w', encoding='utf-8') as f:
        f.write(write_dimacs(phi, comments))
    return file_cnf


def cnf_to_complex(file_cnf, k, ell=None, file_json=None, ext='.json', folder_dest=None):
    """
    Converts a DIMACS .cnf file to the JSON complex K(phi).

    Parameters
    ----------
    file_cnf : str
    k : int
    ell : int, optional
        Default k/2, which needs k even.
    file_json : str, optional
        Name of the .json to be created. If None, the .cnf name with ext in place of '.cnf'.
    ext : str, optional
    folder_dest : str, optional
        Destination folder. If None, saved next to the .cnf file.

    Returns
    -------
    file_json : str
    """
    if ell is None:
        if k % 2:
            raise PreconditionError(f'k={k} is odd; give ell explicitly')
        ell = k // 2
    if file_json is None:
        file_json = splitext(basename(file_cnf))[0] + ext
        if folder_dest is None:
            folder_dest = str(Path(file_cnf).parent)

    K = reduction_from_cnf(read_dimacs_file(file_cnf), GadgetParams(k, ell))
    return write_complex(K, file_json, folder_dest=folder_dest)


def cnf_to_complex_batch(folder_cnf, k, ell=None, pattern_cnf='*.cnf', ext='.json', folder_dest=None):
    """
    Converts every DIMACS file in a folder to a JSON complex.

    Parameters
    ----------
    folder_cnf : str
        Folder containing .cnf files.
    k : int
    ell : int, optional
    pattern_cnf : str, optional
        Pattern used to find formula files.
    ext : str, optional
    folder_dest : str, optional

    Returns
    -------
    list[str]
        Files written, in sorted input order.
    """
    files_cnf = sorted(glob(join(folder_cnf, pattern_cnf)))

    return [cnf_to_complex(file, k, ell, ext=ext, folder_dest=folder_dest) for file in files_cnf]
