"""Benchmark problem generators and Matrix Market file I/O.

The Dirichlet benchmark discretizes the 2-D Laplace equation on the unit
square with the 5-point stencil (lexicographic ordering, x fastest); the
Markov benchmark is the reflecting n-state random walk whose stationary
vector solves the homogeneous singular system (I - T^t) x = 0.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import as_matrix
from .errors import MatrixMarketError, UnsupportedFieldError

__all__ = [
    "LaplaceProblem",
    "RandomWalkProblem",
    "make_laplace",
    "make_random_walk",
    "read_matrix_market",
    "write_matrix_market",
    "read_vector",
    "write_vector",
]


@dataclass(frozen=True)
class LaplaceProblem:
    """Dirichlet problem on the unit square with g(x, y) = x + y + xy.

    ``n`` is the number of grid subdivisions (h = 1/n); the system has
    order (n - 1)^2.  ``exact`` is the direct dense solution of A x = b.
    """

    n: int
    A: np.ndarray
    b: np.ndarray
    exact: np.ndarray

    @property
    def order(self) -> int:
        return self.A.shape[0]


@dataclass(frozen=True)
class RandomWalkProblem:
    """Reflecting random walk on ``n`` states; A = I - T^t is a singular M-matrix."""

    n: int
    T: np.ndarray
    A: np.ndarray


def make_laplace(n: int) -> LaplaceProblem:
    """Assemble the order-(n-1)^2 five-point system with its boundary load.

    Interior node (p, q) with x = p h, y = q h (p fastest) owns row
    (q-1)(n-1) + (p-1); each boundary neighbor contributes g evaluated
    there to the right-hand side.
    """
    if n < 2:
        raise ValueError("need at least 2 grid subdivisions")
    m = n - 1
    h = 1.0 / n
    j = (
        4.0 * np.eye(m)
        - np.diag(np.ones(m - 1), 1)
        - np.diag(np.ones(m - 1), -1)
    )
    c = -np.diag(np.ones(m - 1), 1) - np.diag(np.ones(m - 1), -1)
    a = np.kron(np.eye(m), j) + np.kron(c, np.eye(m))

    def g(x, y):
        return x + y + x * y

    b = np.zeros(m * m)
    xs = h * np.arange(1, n)
    for q in range(1, n):
        row = (q - 1) * m
        y = q * h
        b[row] += g(0.0, y)
        b[row + m - 1] += g(1.0, y)
        if q == 1:
            b[row : row + m] += g(xs, 0.0)
        if q == n - 1:
            b[row : row + m] += g(xs, 1.0)
    exact = np.linalg.solve(a, b)
    return LaplaceProblem(n=n, A=a, b=b, exact=exact)


def make_random_walk(n: int) -> RandomWalkProblem:
    """Transition matrix of the reflecting walk and the singular system matrix."""
    if n < 3:
        raise ValueError("need at least 3 states")
    t = np.zeros((n, n))
    t[0, 1] = 1.0
    t[n - 1, n - 2] = 1.0
    for i in range(1, n - 1):
        t[i, i - 1] = 0.5
        t[i, i + 1] = 0.5
    return RandomWalkProblem(n=n, T=t, A=np.eye(n) - t.T)


# ---------------------------------------------------------------------------
# Matrix Market exchange format
# ---------------------------------------------------------------------------

_FORMATS = ("array", "coordinate")
_FIELDS = ("real", "integer")
_SYMMETRIES = ("general", "symmetric")


def read_matrix_market(path) -> np.ndarray:
    """Read a dense matrix from a Matrix Market file.

    Supports the ``array`` and ``coordinate`` formats with field ``real``
    (``integer`` is accepted and widened) and symmetry ``general`` or
    ``symmetric`` (expanded on read).

    Raises
    ------
    MatrixMarketError
        On malformed content, with the offending line number.
    UnsupportedFieldError
        For complex/pattern fields or other symmetry variants.
    """
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise MatrixMarketError("empty file", line=1)
    header = lines[0].split()
    if len(header) != 5 or header[0] != "%%MatrixMarket":
        raise MatrixMarketError(
            "expected header '%%MatrixMarket matrix <format> <field> <symmetry>'",
            line=1,
        )
    _, obj, fmt, fld, sym = (tok.lower() for tok in header)
    if obj != "matrix":
        raise UnsupportedFieldError(f"unsupported object {obj!r}", line=1)
    if fmt not in _FORMATS:
        raise MatrixMarketError(f"unknown format {fmt!r}", line=1)
    if fld not in _FIELDS:
        raise UnsupportedFieldError(f"unsupported field {fld!r}", line=1)
    if sym not in _SYMMETRIES:
        raise UnsupportedFieldError(f"unsupported symmetry {sym!r}", line=1)

    # first non-comment, non-blank line after the header carries the sizes
    body = [
        (i + 1, ln)
        for i, ln in enumerate(lines)
        if i > 0 and ln.strip() and not ln.lstrip().startswith("%")
    ]
    if not body:
        raise MatrixMarketError("missing size line", line=len(lines))
    size_lineno, size_line = body[0]
    entries = body[1:]
    toks = size_line.split()

    def parse_int(tok, lineno):
        try:
            return int(tok)
        except ValueError:
            raise MatrixMarketError(f"expected an integer, got {tok!r}", line=lineno)

    def parse_real(tok, lineno):
        try:
            return float(tok)
        except ValueError:
            raise MatrixMarketError(f"expected a number, got {tok!r}", line=lineno)

    if fmt == "array":
        if len(toks) != 2:
            raise MatrixMarketError("array size line must be 'rows cols'", line=size_lineno)
        rows, cols = (parse_int(t, size_lineno) for t in toks)
        values = []
        for lineno, ln in entries:
            for tok in ln.split():
                values.append(parse_real(tok, lineno))
        if sym == "general":
            if len(values) != rows * cols:
                raise MatrixMarketError(
                    f"expected {rows * cols} values, got {len(values)}",
                    line=entries[-1][0] if entries else size_lineno,
                )
            # array format is column-major
            return np.array(values).reshape((cols, rows)).T
        if rows != cols:
            raise MatrixMarketError("symmetric matrix must be square", line=size_lineno)
        want = rows * (rows + 1) // 2
        if len(values) != want:
            raise MatrixMarketError(
                f"expected {want} lower-triangle values, got {len(values)}",
                line=entries[-1][0] if entries else size_lineno,
            )
        out = np.zeros((rows, cols))
        it = iter(values)
        for jcol in range(cols):
            for irow in range(jcol, rows):
                v = next(it)
                out[irow, jcol] = v
                out[jcol, irow] = v
        return out

    # coordinate
    if len(toks) != 3:
        raise MatrixMarketError(
            "coordinate size line must be 'rows cols nnz'", line=size_lineno
        )
    rows, cols, nnz = (parse_int(t, size_lineno) for t in toks)
    if len(entries) != nnz:
        raise MatrixMarketError(
            f"expected {nnz} entries, got {len(entries)}",
            line=entries[-1][0] if entries else size_lineno,
        )
    out = np.zeros((rows, cols))
    for lineno, ln in entries:
        toks = ln.split()
        if len(toks) != 3:
            raise MatrixMarketError("entry line must be 'i j value'", line=lineno)
        i = parse_int(toks[0], lineno) - 1
        jcol = parse_int(toks[1], lineno) - 1
        v = parse_real(toks[2], lineno)
        if not (0 <= i < rows and 0 <= jcol < cols):
            raise MatrixMarketError("entry index out of range", line=lineno)
        out[i, jcol] = v
        if sym == "symmetric":
            out[jcol, i] = v
    return out


def write_matrix_market(path, m, fmt: str = "array") -> None:
    """Write a dense matrix in Matrix Market ``array`` or ``coordinate`` format.

    Values are printed with %.17g so a read-back reproduces them exactly.
    """
    m = as_matrix(m)
    if fmt not in _FORMATS:
        raise ValueError(f"format must be one of {_FORMATS}")
    rows, cols = m.shape
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"%%MatrixMarket matrix {fmt} real general\n")
        if fmt == "array":
            fh.write(f"{rows} {cols}\n")
            for jcol in range(cols):
                for irow in range(rows):
                    fh.write(f"{m[irow, jcol]:.17g}\n")
        else:
            nz = np.nonzero(m)
            fh.write(f"{rows} {cols} {len(nz[0])}\n")
            for irow, jcol in zip(*nz):
                fh.write(f"{irow + 1} {jcol + 1} {m[irow, jcol]:.17g}\n")


def read_vector(path) -> np.ndarray:
    """Read an n x 1 (or 1 x n) Matrix Market file as a flat vector."""
    m = read_matrix_market(path)
    if 1 not in m.shape:
        raise MatrixMarketError(f"expected a vector file, got shape {m.shape}")
    return m.reshape(-1)


def write_vector(path, v) -> None:
    """Write a vector as an n x 1 array-format Matrix Market file."""
    v = np.asarray(v, dtype=float).reshape(-1, 1)
    write_matrix_market(path, v, fmt="array")
