"""Exact rational linear algebra.

Everything downstream runs on the primitives in this module: arbitrary
precision rationals (``fractions.Fraction``), matrices, exact solving,
kernels, cokernels and Kronecker products.

Conventions, fixed once and used everywhere:

* Vectors are sparse dicts ``{index: Fraction}`` with no zero entries.
* A ``Matrix`` acts on column vectors; it is stored as a list of sparse
  columns (``cols[j]`` is the image of the j-th basis vector).  The
  semantics are those of a dense rows x cols array; the sparse storage is
  purely an implementation detail (several verification targets reach
  ambient dimensions in the thousands, where dense rational storage is
  hopeless).
* Flat indexing of tensor legs is leftmost-leg-slowest (row-major), see
  :class:`LegShape`.
* Serialized rationals are strings ``"p"`` or ``"p/q"`` in lowest terms;
  serialized matrices are flat row-major arrays.

Matrices are immutable by convention once constructed: no public method
mutates entries, so values can be shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class LinAlgError(Exception):
    """Shape mismatch or use of a singular matrix where invertible is required."""


# ---------------------------------------------------------------------------
# rationals

def rat(x) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip().replace("−", "-")  # tolerate unicode minus
        return Fraction(s)
    if isinstance(x, float):
        raise TypeError(f"refusing to coerce float {x!r} to an exact rational")
    raise TypeError(f"cannot interpret {x!r} as a rational")


def rat_str(x: Fraction) -> str:
    """Canonical string form: "p" or "p/q" with q > 0, lowest terms."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# leg bookkeeping

@dataclass(frozen=True)
class LegShape:
    """Mixed-radix index bookkeeping for tensor legs.

    ``dims[0]`` is the slowest (leftmost) leg: the flat index of a
    multi-index (i_0, ..., i_{k-1}) is ``(((i_0*d_1 + i_1)*d_2 + i_2)...)``.
    """

    dims: tuple[int, ...]

    def __post_init__(self):
        if any(d <= 0 for d in self.dims):
            raise LinAlgError(f"leg dimensions must be positive, got {self.dims}")

    @property
    def size(self) -> int:
        p = 1
        for d in self.dims:
            p *= d
        return p

    def index(self, multi) -> int:
        if len(multi) != len(self.dims):
            raise LinAlgError(f"expected {len(self.dims)} legs, got {len(multi)}")
        flat = 0
        for i, d in zip(multi, self.dims):
            if not 0 <= i < d:
                raise LinAlgError(f"leg index {i} out of range for dimension {d}")
            flat = flat * d + i
        return flat

    def unindex(self, flat: int) -> tuple[int, ...]:
        if not 0 <= flat < self.size:
            raise LinAlgError(f"flat index {flat} out of range for {self.dims}")
        out = []
        for d in reversed(self.dims):
            out.append(flat % d)
            flat //= d
        return tuple(reversed(out))


# ---------------------------------------------------------------------------
# sparse vector helpers (dict index -> Fraction, zero entries never stored)

def vec_add_scaled(acc: dict, v: dict, c: Fraction) -> None:
    """acc += c*v, in place, dropping cancellations."""
    if not c:
        return
    for k, x in v.items():
        y = acc.get(k, ZERO) + c * x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)


def vec_scale(v: dict, c: Fraction) -> dict:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def vec_sub(u: dict, v: dict) -> dict:
    out = dict(u)
    vec_add_scaled(out, v, -ONE)
    return out


def _int_rows(v: dict) -> dict:
    """Scale a Fraction vector to a primitive integer vector (same line)."""
    if not v:
        return {}
    den = 1
    for x in v.values():
        den = den * x.denominator // gcd(den, x.denominator)
    ints = {k: x.numerator * (den // x.denominator) for k, x in v.items()}
    g = 0
    for x in ints.values():
        g = gcd(g, x)
    if g > 1:
        ints = {k: x // g for k, x in ints.items()}
    return ints


# ---------------------------------------------------------------------------
# echelon engine
#
# Integer rows with the pivot at the *largest* occupied index. Reducing an
# incoming vector only ever introduces indices below the cancelled pivot, so
# normal forms terminate and are unique (polynomial-division style). All of
# solve/kernel/cokernel/rank are built on this.

class Echelon:
    """A subspace held as integer echelon rows, keyed by pivot index."""

    def __init__(self):
        self.rows: dict[int, dict[int, int]] = {}  # pivot -> integer row

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce_int(self, v: dict[int, int]) -> dict[int, int]:
        while v:
            c = max(v)
            row = self.rows.get(c)
            if row is None:
                return v
            a, b = row[c], v[c]
            g = gcd(a, b)
            ca, cb = b // g, a // g
            out: dict[int, int] = {}
            for k, x in v.items():
                out[k] = x * cb
            for k, x in row.items():
                y = out.get(k, 0) - x * ca
                if y:
                    out[k] = y
                else:
                    out.pop(k, None)
            g = 0
            for x in out.values():
                g = gcd(g, x)
            if g > 1:
                out = {k: x // g for k, x in out.items()}
            v = out
        return v

    def add(self, v: dict) -> bool:
        """Insert the span of v; True if the rank grew."""
        r = self._reduce_int(_int_rows(v))
        if not r:
            return False
        self.rows[max(r)] = r
        return True

    def contains(self, v: dict) -> bool:
        return not self._reduce_int(_int_rows(v))

    def normal_form(self, v: dict) -> dict:
        """The canonical representative of v modulo the span (Fraction vector).

        Linear in v; zero exactly on the span; supported on non-pivot indices.
        """
        v = {k: Fraction(x) for k, x in v.items() if x}
        pivs = self.rows
        while True:
            c = None
            for k in v:
                if k in pivs and (c is None or k > c):
                    c = k
            if c is None:
                return v
            row = pivs[c]
            f = v[c] / row[c]
            for k, x in row.items():
                y = v.get(k, ZERO) - f * x
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)

    def pivot_set(self) -> set[int]:
        return set(self.rows)


def span_basis(vectors) -> list[dict]:
    """An independent subset spanning the same space (echelon-filtered input)."""
    ech = Echelon()
    out = []
    for v in vectors:
        if ech.add(v):
            out.append({k: Fraction(x) for k, x in v.items() if x})
    return out


def spans_equal(us, vs) -> bool:
    """Exact equality of spans by mutual containment."""
    eu, ev = Echelon(), Echelon()
    for u in us:
        eu.add(u)
    for v in vs:
        ev.add(v)
    if eu.rank != ev.rank:
        return False
    return all(eu.contains(v) for v in vs) and all(ev.contains(u) for u in us)


# ---------------------------------------------------------------------------
# linear systems
#
# Equations are sparse rows over unknowns 0..nvars-1. Right hand sides are
# folded in at negative indices (tag t lives at -1-t), which are never
# eligible as pivots, so one elimination serves any number of right hand
# sides simultaneously.

class LinearSystem:
    """Accumulates exact linear equations and solves them."""

    def __init__(self, nvars: int):
        self.nvars = nvars
        self._ech = Echelon()
        self._bad_tags: set[int] = set()

    def add_equation(self, coeffs: dict, rhs=ZERO) -> None:
        """Add sum(coeffs[j]*x_j) = rhs.

        rhs may be a scalar (tag 0) or a dict {tag: value} describing the
        right hand sides of several systems sharing this coefficient row.
        """
        row = {j: Fraction(c) for j, c in coeffs.items() if c}
        if isinstance(rhs, dict):
            for t, val in rhs.items():
                val = Fraction(val)
                if val:
                    row[-1 - t] = -val
        else:
            rhs = Fraction(rhs)
            if rhs:
                row[-1] = -rhs
        r = self._ech._reduce_int(_int_rows(row))
        if not r:
            return
        top = max(r)
        if top < 0:
            # 0 = (combination of right hand sides): those systems have no solution
            self._bad_tags.update(-1 - k for k in r)
            return
        self._ech.rows[top] = r

    def consistent(self, tag: int = 0) -> bool:
        return tag not in self._bad_tags

    @property
    def rank(self) -> int:
        return self._ech.rank

    def free_columns(self) -> list[int]:
        pivs = self._ech.pivot_set()
        return [j for j in range(self.nvars) if j not in pivs]

    def _back_substitute(self, free_values: dict, rhs_key: int | None) -> dict:
        """Solve with the given free-variable assignment.

        Rows have their pivot at the max index, so sweeping unknowns in
        ascending order only ever references already-known values.
        """
        x: dict[int, Fraction] = dict(free_values)
        rows = self._ech.rows
        for c in sorted(rows):
            row = rows[c]
            s = Fraction(row.get(rhs_key, 0)) if rhs_key is not None else ZERO
            for k, a in row.items():
                if k == c or k < 0:
                    continue
                xv = x.get(k)
                if xv is not None:
                    s += a * xv
            val = -s / row[c]
            if val:
                x[c] = val
        return {k: v for k, v in x.items() if v}

    def particular_solution(self, tag: int = 0) -> dict | None:
        if tag in self._bad_tags:
            return None
        return self._back_substitute({}, rhs_key=-1 - tag)

    def kernel_basis(self) -> list[dict]:
        out = []
        for f in self.free_columns():
            out.append(self._back_substitute({f: ONE}, rhs_key=None))
        return out


# ---------------------------------------------------------------------------
# matrices

class Matrix:
    """An exact rows x cols matrix acting on column vectors.

    ``cols[j]`` is the sparse image of the j-th source basis vector.
    """

    __slots__ = ("rows", "cols", "_data", "_rowview")

    def __init__(self, rows: int, cols: int, data: list[dict] | None = None):
        if rows < 0 or cols < 0:
            raise LinAlgError("negative matrix shape")
        self.rows = rows
        self.cols = cols
        if data is None:
            data = [dict() for _ in range(cols)]
        if len(data) != cols:
            raise LinAlgError("column count does not match data")
        self._data = data
        self._rowview = None

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(rows: int, cols: int) -> "Matrix":
        return Matrix(rows, cols)

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(n, n, [{i: ONE} for i in range(n)])

    @staticmethod
    def from_rows(rows_data) -> "Matrix":
        rows_data = [list(r) for r in rows_data]
        m = len(rows_data)
        n = len(rows_data[0]) if m else 0
        cols = [dict() for _ in range(n)]
        for i, r in enumerate(rows_data):
            if len(r) != n:
                raise LinAlgError("ragged row data")
            for j, x in enumerate(r):
                x = rat(x)
                if x:
                    cols[j][i] = x
        return Matrix(m, n, cols)

    @staticmethod
    def from_cols(rows: int, columns) -> "Matrix":
        data = []
        for c in columns:
            data.append({i: rat(x) for i, x in c.items() if rat(x)} if isinstance(c, dict)
                        else {i: rat(x) for i, x in enumerate(c) if rat(x)})
        m = Matrix(rows, len(data), data)
        for c in m._data:
            if c and max(c) >= rows:
                raise LinAlgError("column entry out of range")
        return m

    @staticmethod
    def from_flat(rows: int, cols: int, flat) -> "Matrix":
        flat = list(flat)
        if len(flat) != rows * cols:
            raise LinAlgError(f"expected {rows * cols} entries, got {len(flat)}")
        data = [dict() for _ in range(cols)]
        for idx, x in enumerate(flat):
            x = rat(x)
            if x:
                data[idx % cols][idx // cols] = x
        return Matrix(rows, cols, data)

    # -- access -------------------------------------------------------------

    def entry(self, i: int, j: int) -> Fraction:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise LinAlgError("entry index out of range")
        return self._data[j].get(i, ZERO)

    def col(self, j: int) -> dict:
        return dict(self._data[j])

    def columns(self):
        return self._data

    def row_view(self) -> list[dict]:
        """Rows as sparse dicts (built lazily, cached)."""
        if self._rowview is None:
            rows: list[dict] = [dict() for _ in range(self.rows)]
            for j, c in enumerate(self._data):
                for i, x in c.items():
                    rows[i][j] = x
            self._rowview = rows
        return self._rowview

    def to_flat(self) -> list[Fraction]:
        out = [ZERO] * (self.rows * self.cols)
        for j, c in enumerate(self._data):
            for i, x in c.items():
                out[i * self.cols + j] = x
        return out

    def nnz(self) -> int:
        return sum(len(c) for c in self._data)

    # -- algebra ------------------------------------------------------------

    def apply(self, v: dict) -> dict:
        """Matrix times sparse column vector."""
        out: dict[int, Fraction] = {}
        data = self._data
        for j, x in v.items():
            if j >= self.cols:
                raise LinAlgError("vector index out of range")
            vec_add_scaled(out, data[j], x)
        return out

    def then(self, g: "Matrix") -> "Matrix":
        """Diagrammatic composition: first self, then g."""
        if g.cols != self.rows:
            raise LinAlgError(f"cannot compose {self.rows}x{self.cols} then {g.rows}x{g.cols}")
        return Matrix(g.rows, self.cols, [g.apply(c) for c in self._data])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return other.then(self)  # standard order: self @ other
        c = rat(other)
        return Matrix(self.rows, self.cols, [vec_scale(col, c) for col in self._data])

    __rmul__ = __mul__

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise LinAlgError("shape mismatch in matrix addition")
        data = []
        for a, b in zip(self._data, other._data):
            c = dict(a)
            vec_add_scaled(c, b, ONE)
            data.append(c)
        return Matrix(self.rows, self.cols, data)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-1) * other

    def __neg__(self) -> "Matrix":
        return (-1) * self

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols,
                     tuple(tuple(sorted(c.items())) for c in self._data)))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, nnz={self.nnz()})"

    def is_zero(self) -> bool:
        return all(not c for c in self._data)

    def is_identity(self) -> bool:
        return self.rows == self.cols and all(c == {j: ONE} for j, c in enumerate(self._data))

    def transpose(self) -> "Matrix":
        data: list[dict] = [dict() for _ in range(self.rows)]
        for j, c in enumerate(self._data):
            for i, x in c.items():
                data[i][j] = x
        return Matrix(self.cols, self.rows, data)

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product, leftmost factor slowest on both sides."""
        rr, rc = self.rows * other.rows, self.cols * other.cols
        data = [dict() for _ in range(rc)]
        for j, c in enumerate(self._data):
            for l, d in enumerate(other._data):
                col = data[j * other.cols + l]
                for i, x in c.items():
                    base = i * other.rows
                    for k, y in d.items():
                        col[base + k] = x * y
        return Matrix(rr, rc, data)

    def stack_rows(self, other: "Matrix") -> "Matrix":
        """Block matrix [self; other]."""
        if self.cols != other.cols:
            raise LinAlgError("shape mismatch in row stacking")
        data = []
        for a, b in zip(self._data, other._data):
            c = dict(a)
            for i, x in b.items():
                c[self.rows + i] = x
            data.append(c)
        return Matrix(self.rows + other.rows, self.cols, data)


def kron(a: Matrix, b: Matrix) -> Matrix:
    return a.kron(b)


# ---------------------------------------------------------------------------
# solving

@dataclass
class SolveResult:
    consistent: bool
    solution: dict | None       # one exact solution, None if inconsistent
    kernel: list[dict]          # basis of the null space of A

    def solution_matrix(self, n: int) -> Matrix | None:
        if self.solution is None:
            return None
        return Matrix.from_cols(n, [self.solution])


def solve(a: Matrix, b: Matrix | dict) -> SolveResult:
    """One exact solution of A x = b plus a kernel basis, or inconsistency."""
    if isinstance(b, Matrix):
        if b.cols != 1 or b.rows != a.rows:
            raise LinAlgError(f"rhs must be a {a.rows}-row column, got {b.rows}x{b.cols}")
        bvec = b.col(0)
    else:
        bvec = {k: rat(x) for k, x in b.items() if rat(x)}
        if bvec and max(bvec) >= a.rows:
            raise LinAlgError("rhs index out of range")
    sys = LinearSystem(a.cols)
    for i, row in enumerate(a.row_view()):
        sys.add_equation(row, bvec.get(i, ZERO))
    if not sys.consistent():
        return SolveResult(False, None, [])
    return SolveResult(True, sys.particular_solution(), sys.kernel_basis())


def kernel(a: Matrix) -> list[dict]:
    sys = LinearSystem(a.cols)
    for row in a.row_view():
        sys.add_equation(row)
    return sys.kernel_basis()


def rank(a: Matrix) -> int:
    ech = Echelon()
    for c in a.columns():
        ech.add(c)
    return ech.rank


def column_space(a: Matrix) -> list[dict]:
    return span_basis(a.columns())


def inverse(a: Matrix) -> Matrix:
    """Exact two-sided inverse; raises LinAlgError if singular."""
    if a.rows != a.cols:
        raise LinAlgError("only square matrices can be inverted")
    n = a.rows
    sys = LinearSystem(n)
    for i, row in enumerate(a.row_view()):
        sys.add_equation(row, {i: ONE})
    if sys.rank != n:
        raise LinAlgError("matrix is singular")
    inv_cols = []
    for k in range(n):
        x = sys.particular_solution(tag=k)
        if x is None:
            raise LinAlgError("matrix is singular")
        inv_cols.append(x)
    return Matrix.from_cols(n, inv_cols)


@dataclass
class Cokernel:
    """Quotient of the target of A by its column space.

    ``projection`` maps the ambient space onto the quotient coordinates (the
    non-pivot positions of an echelon basis of im A); ``section`` embeds the
    quotient back, with projection . section = id and projection . A = 0.
    """

    projection: Matrix
    section: Matrix
    ambient_dim: int
    pivots: set[int]

    @property
    def dim(self) -> int:
        return self.projection.rows


def cokernel_of_columns(ambient_dim: int, vectors) -> Cokernel:
    """Cokernel of the subspace spanned by the given sparse vectors."""
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    pivots = ech.pivot_set()
    free = [i for i in range(ambient_dim) if i not in pivots]
    pos = {f: idx for idx, f in enumerate(free)}
    proj_cols = []
    for k in range(ambient_dim):
        nf = ech.normal_form({k: ONE})
        proj_cols.append({pos[i]: x for i, x in nf.items()})
    projection = Matrix(len(free), ambient_dim, proj_cols)
    section = Matrix(ambient_dim, len(free), [{f: ONE} for f in free])
    return Cokernel(projection, section, ambient_dim, pivots)


def cokernel(a: Matrix) -> tuple[Matrix, Matrix]:
    """(projection, section) with projection.A = 0, projection.section = id."""
    ck = cokernel_of_columns(a.rows, a.columns())
    return ck.projection, ck.section
