"""
CNF formulas: DIMACS reading and writing, normalization, the conflict set that drives torus gluing,
and exhaustive satisfiability checking for small variable counts.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .kphi_config import DEFAULT_MAX_SAT_VARS, DEFAULT_SAT_CHUNK, max_workers
from .kphi_errors import CnfParseError, PreconditionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Literal:
    """
    Literal x_var^sign: sign 1 is x_var, sign 0 is its negation.
    """
    var: int
    sign: int

    def __post_init__(self):
        if self.var < 1:
            raise PreconditionError(f'variable index must be at least 1, got {self.var}')
        if self.sign not in (0, 1):
            raise PreconditionError(f'literal sign must be 0 or 1, got {self.sign}')

    @classmethod
    def from_int(cls, value: int) -> 'Literal':
        return cls(abs(value), 1 if value > 0 else 0)

    def to_int(self) -> int:
        return self.var if self.sign else -self.var

    def negated(self) -> 'Literal':
        return Literal(self.var, 1 - self.sign)

    def __str__(self):
        return f'x{self.var}' if self.sign else f'~x{self.var}'


@dataclass(frozen=True)
class Clause:
    literals: Tuple[Literal, ...]

    @classmethod
    def from_ints(cls, values: Iterable[int]) -> 'Clause':
        return cls(tuple(Literal.from_int(v) for v in values))

    @property
    def width(self) -> int:
        return len(self.literals)

    @property
    def is_tautology(self) -> bool:
        present = set(self.literals)
        return any(lit.negated() in present for lit in present)

    def to_ints(self) -> List[int]:
        return [lit.to_int() for lit in self.literals]

    def __str__(self):
        return '(' + ' v '.join(str(lit) for lit in self.literals) + ')'


@dataclass(frozen=True)
class CnfFormula:
    n: int
    clauses: Tuple[Clause, ...]

    def __post_init__(self):
        if self.n < 0:
            raise PreconditionError(f'variable count must be non-negative, got {self.n}')
        for clause in self.clauses:
            for lit in clause.literals:
                if lit.var > self.n:
                    raise PreconditionError(f'variable {lit.var} out of range 1..{self.n}')

    @classmethod
    def from_ints(cls, n: int, clauses: Iterable[Iterable[int]]) -> 'CnfFormula':
        return cls(n, tuple(Clause.from_ints(c) for c in clauses))

    @property
    def t(self) -> int:
        return len(self.clauses)

    @property
    def widths(self) -> List[int]:
        return [c.width for c in self.clauses]

    def to_ints(self) -> List[List[int]]:
        return [c.to_ints() for c in self.clauses]

    def __str__(self):
        return ' & '.join(str(c) for c in self.clauses)


@dataclass(frozen=True, order=True)
class ConflictPair:
    """
    Literal positions (clause, position), both 1-based. The literal at q is the negated
    occurrence (sign 0) and the literal at r the positive one (sign 1) of the same variable.
    """
    q: Tuple[int, int]
    r: Tuple[int, int]

    @property
    def tag(self) -> str:
        return f'{self.q[0]}.{self.q[1]}-{self.r[0]}.{self.r[1]}'


@dataclass(frozen=True)
class SatResult:
    satisfiable: bool
    witness: Optional[Tuple[int, ...]] = None

    @property
    def verdict(self) -> str:
        return 'SAT' if self.satisfiable else 'UNSAT'


PHI_NEG = CnfFormula.from_ints(1, [[1], [-1]])


def parse_dimacs(text) -> CnfFormula:
    """
    Parse a DIMACS CNF document.

    Parameters
    ----------
    text : str or bytes
        'c' lines are comments, the header is 'p cnf n t', clauses are whitespace separated
        nonzero integers terminated by 0 and may span lines. A '%' line ends the clause section.

    Returns
    -------
    CnfFormula
        Clauses exactly as written; see normalize for deduplication and the width limit.
    """
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode('utf-8')
        except UnicodeDecodeError as err:
            raise CnfParseError(f'DIMACS input is not UTF-8: {err}') from err

    header = None
    clauses = []
    current = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('c'):
            continue
        if line.startswith('%'):
            break
        if line.startswith('p'):
            if header is not None:
                raise CnfParseError(f'line {lineno}: second problem line')
            tokens = line.split()
            if len(tokens) != 4 or tokens[1] != 'cnf':
                raise CnfParseError(f"line {lineno}: malformed header '{line}'")
            try:
                header = (int(tokens[2]), int(tokens[3]))
            except ValueError as err:
                raise CnfParseError(f"line {lineno}: malformed header '{line}'") from err
            if header[0] < 0 or header[1] < 0:
                raise CnfParseError(f"line {lineno}: negative count in header '{line}'")
            continue
        if header is None:
            raise CnfParseError(f'line {lineno}: clause before the problem line')
        for token in line.split():
            try:
                value = int(token)
            except ValueError as err:
                raise CnfParseError(f"line {lineno}: '{token}' is not an integer") from err
            if value == 0:
                clauses.append(current)
                current = []
                continue
            if abs(value) > header[0]:
                raise CnfParseError(f'line {lineno}: variable {abs(value)} out of range 1..{header[0]}')
            current.append(value)

    if header is None:
        raise CnfParseError('missing problem line')
    if current:
        raise CnfParseError(f'clause {current} is not terminated by 0')
    if len(clauses) != header[1]:
        raise CnfParseError(f'header declares {header[1]} clauses, found {len(clauses)}')
    wide = [i for i, c in enumerate(clauses, start=1) if len(set(c)) > 3]
    if wide:
        logger.warning('clauses %s have more than 3 literals', wide)
    return CnfFormula.from_ints(header[0], clauses)


def write_dimacs(phi: CnfFormula, comments: Sequence[str] = ()) -> str:
    """DIMACS text for phi, optional comment lines first."""
    lines = [f'c {comment}' for comment in comments]
    lines.append(f'p cnf {phi.n} {phi.t}')
    lines.extend(' '.join(str(v) for v in clause.to_ints() + [0]) for clause in phi.clauses)
    return '\n'.join(lines) + '\n'


def normalize(phi: CnfFormula, max_width=3) -> CnfFormula:
    """
    Drop clauses containing both x_m and its negation, deduplicate repeated literals,
    and enforce 1 <= width <= max_width. Order is otherwise preserved.
    """
    clauses = []
    for s, clause in enumerate(phi.clauses, start=1):
        literals = tuple(dict.fromkeys(clause.literals))
        reduced = Clause(literals)
        if reduced.is_tautology:
            logger.debug('dropping tautological clause %d %s', s, clause)
            continue
        if reduced.width == 0:
            raise PreconditionError(f'clause {s} is empty')
        if reduced.width > max_width:
            raise PreconditionError(f'clause {s} has width {reduced.width} > {max_width}')
        clauses.append(reduced)
    return CnfFormula(phi.n, tuple(clauses))


def conflict_pairs(phi: CnfFormula) -> List[ConflictPair]:
    """
    Pairs of literal positions (q, r) on the same variable with the negated occurrence at q and
    the positive one at r, in lexicographic order of (q1, q2, r1, r2).
    """
    occurrences = [((s, i), lit) for s, clause in enumerate(phi.clauses, start=1)
                   for i, lit in enumerate(clause.literals, start=1)]
    pairs = [ConflictPair(q, r)
             for q, lq in occurrences if lq.sign == 0
             for r, lr in occurrences if lr.sign == 1 and lr.var == lq.var and r[0] != q[0]]
    return sorted(pairs)


def evaluate(phi: CnfFormula, assignment: Sequence[int]) -> bool:
    """assignment[m - 1] is the value of x_m."""
    return all(any(assignment[lit.var - 1] == lit.sign for lit in clause.literals) for clause in phi.clauses)


def _first_satisfying(clauses, start, stop):
    a = np.arange(start, stop, dtype=np.int64)
    ok = np.ones(a.shape, dtype=bool)
    for clause in clauses:
        sat = np.zeros(a.shape, dtype=bool)
        for lit in clause.literals:
            sat |= ((a >> (lit.var - 1)) & 1) == lit.sign
        ok &= sat
    hits = np.flatnonzero(ok)
    return int(a[hits[0]]) if hits.size else None


def brute_force_sat(phi: CnfFormula, max_vars=DEFAULT_MAX_SAT_VARS, chunk=DEFAULT_SAT_CHUNK, workers=None) -> SatResult:
    """
    Exhaustive satisfiability check over all 2^n assignments.

    Parameters
    ----------
    phi : CnfFormula
    max_vars : int, default 24
        Refuse formulas with more variables.
    chunk : int
        Assignments evaluated per vectorized block.
    workers : int, optional
        Threads evaluating blocks. Default from KPHI_MAX_WORKERS.

    Returns
    -------
    SatResult
        The witness is the satisfying assignment with the smallest integer encoding
        (bit m - 1 holds x_m), independent of the worker count.
    """
    if phi.n > max_vars:
        raise PreconditionError(f'{phi.n} variables exceed the brute-force cap of {max_vars}')
    total = 1 << phi.n
    bounds = [(start, min(start + chunk, total)) for start in range(0, total, chunk)]
    workers = max_workers() if workers is None else workers

    found = None
    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_first_satisfying, phi.clauses, start, stop) for start, stop in bounds]
            for i, future in enumerate(futures):
                found = future.result()
                if found is not None:
                    cancelled = sum(rest.cancel() for rest in futures[i + 1:])
                    logger.debug('witness in block %d; %d pending blocks cancelled', i, cancelled)
                    break
    else:
        for start, stop in bounds:
            found = _first_satisfying(phi.clauses, start, stop)
            if found is not None:
                break

    if found is None:
        return SatResult(False)
    return SatResult(True, tuple((found >> m) & 1 for m in range(phi.n)))


def random_3cnf(n: int, t: int, seed=0) -> CnfFormula:
    """
    Random 3-CNF with t clauses over n >= 3 variables; each clause uses three distinct variables.
    """
    if n < 3:
        raise PreconditionError('random_3cnf needs at least 3 variables')
    rng = np.random.default_rng(seed)
    clauses = []
    for _ in range(t):
        variables = rng.choice(n, size=3, replace=False) + 1
        signs = rng.integers(0, 2, size=3)
        clauses.append(Clause(tuple(Literal(int(v), int(s)) for v, s in zip(variables, signs))))
    return CnfFormula(n, tuple(clauses))
