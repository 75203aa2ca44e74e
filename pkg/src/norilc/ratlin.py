"""Exact rational linear algebra: matrices, row reduction, cochain complexes.

Matrices are immutable and stored as coordinate lists (one dict per row,
nonzero entries only).  Row reduction works on integer rows with content
removal, so no intermediate fractions are formed; pivots are always the first
usable row/column, which keeps every returned basis reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, NamedTuple, Sequence

Rat = Fraction


def fmt_rat(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rat(s) -> Fraction:
    if isinstance(s, bool):
        raise ValueError(f"not a rational: {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise ValueError(f"rationals are written as 'p/q' strings, got {s!r}")
    text = s.strip()
    num, sep, den = text.partition("/")
    try:
        if sep:
            d = int(den)
            if d <= 0:
                raise ValueError
            return Fraction(int(num), d)
        return Fraction(int(num))
    except ValueError:
        raise ValueError(f"not a rational: {s!r}") from None


class Matrix:
    """Immutable rational matrix in coordinate-list form."""

    __slots__ = ("rows", "cols", "_r", "_hash")

    def __init__(self, rows: int, cols: int, data: Sequence[dict] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix shape")
        self.rows = rows
        self.cols = cols
        if data is None:
            self._r = tuple({} for _ in range(rows))
        else:
            if len(data) != rows:
                raise ValueError("row count mismatch")
            self._r = tuple(data)
        self._hash = None

    # construction ------------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [{i: Fraction(1)} for i in range(n)])

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = list(rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        data = []
        for row in rows:
            if len(row) != cols:
                raise ValueError("ragged matrix rows")
            data.append({j: Fraction(v) for j, v in enumerate(row) if v != 0})
        return cls(len(rows), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        data = [dict() for _ in range(rows)]
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise ValueError("column length mismatch")
            for i, v in enumerate(col):
                if v != 0:
                    data[i][j] = Fraction(v)
        return cls(rows, len(columns), data)

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: dict) -> "Matrix":
        data = [dict() for _ in range(rows)]
        for (i, j), v in entries.items():
            if v != 0:
                data[i][j] = Fraction(v)
        return cls(rows, cols, data)

    # access ------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self._r[i].get(j, Fraction(0))

    def row_items(self, i: int) -> dict:
        return self._r[i]

    def entries(self) -> Iterable[tuple[int, int, Fraction]]:
        for i, row in enumerate(self._r):
            for j, v in row.items():
                yield i, j, v

    def to_lists(self) -> list[list[Fraction]]:
        out = []
        for row in self._r:
            dense = [Fraction(0)] * self.cols
            for j, v in row.items():
                dense[j] = v
            out.append(dense)
        return out

    def column(self, j: int) -> list[Fraction]:
        return [row.get(j, Fraction(0)) for row in self._r]

    def nnz(self) -> int:
        return sum(len(r) for r in self._r)

    def is_zero(self) -> bool:
        return all(not r for r in self._r)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._r == other._r

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, tuple(tuple(sorted(r.items())) for r in self._r)))
        return self._hash

    def __repr__(self) -> str:
        if self.rows * self.cols <= 36:
            body = "; ".join(" ".join(fmt_rat(v) for v in row) for row in self.to_lists())
            return f"Matrix({self.rows}x{self.cols}: {body})"
        return f"Matrix({self.rows}x{self.cols}, nnz={self.nnz()})"

    # arithmetic --------------------------------------------------------
    @property
    def T(self) -> "Matrix":
        data = [dict() for _ in range(self.cols)]
        for i, row in enumerate(self._r):
            for j, v in row.items():
                data[j][i] = v
        return Matrix(self.cols, self.rows, data)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        orows = other._r
        data = []
        for row in self._r:
            acc: dict = {}
            for k, a in row.items():
                for j, b in orows[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            data.append({j: v for j, v in acc.items() if v != 0})
        return Matrix(self.rows, other.cols, data)

    def _combine(self, other: "Matrix", sign: int) -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        data = []
        for ra, rb in zip(self._r, other._r):
            acc = dict(ra)
            for j, v in rb.items():
                acc[j] = acc.get(j, 0) + sign * v
            data.append({j: v for j, v in acc.items() if v != 0})
        return Matrix(self.rows, self.cols, data)

    def __add__(self, other: "Matrix") -> "Matrix":
        return self._combine(other, 1)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self._combine(other, -1)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        c = Fraction(c)
        if c == 0:
            return Matrix(self.rows, self.cols)
        return Matrix(self.rows, self.cols, [{j: c * v for j, v in r.items()} for r in self._r])

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        return sum((r.get(i, Fraction(0)) for i, r in enumerate(self._r)), Fraction(0))

    def take_rows(self, idx: Sequence[int]) -> "Matrix":
        return Matrix(len(idx), self.cols, [dict(self._r[i]) for i in idx])

    def take_cols(self, idx: Sequence[int]) -> "Matrix":
        pos = {j: k for k, j in enumerate(idx)}
        data = [{pos[j]: v for j, v in r.items() if j in pos} for r in self._r]
        return Matrix(self.rows, len(idx), data)

    def vec(self) -> list[Fraction]:
        """Row-major flattening."""
        out = [Fraction(0)] * (self.rows * self.cols)
        for i, row in enumerate(self._r):
            for j, v in row.items():
                out[i * self.cols + j] = v
        return out

    @classmethod
    def unvec(cls, values: Sequence, rows: int, cols: int) -> "Matrix":
        data = []
        for i in range(rows):
            data.append({j: Fraction(values[i * cols + j]) for j in range(cols) if values[i * cols + j] != 0})
        return cls(rows, cols, data)


def hstack(mats: Sequence[Matrix], rows: int | None = None) -> Matrix:
    if not mats:
        return Matrix(rows or 0, 0)
    r = mats[0].rows
    data = [dict() for _ in range(r)]
    off = 0
    for m in mats:
        if m.rows != r:
            raise ValueError("hstack row mismatch")
        for i, row in enumerate(m._r):
            for j, v in row.items():
                data[i][off + j] = v
        off += m.cols
    return Matrix(r, off, data)


def vstack(mats: Sequence[Matrix], cols: int | None = None) -> Matrix:
    if not mats:
        return Matrix(0, cols or 0)
    c = mats[0].cols
    data = []
    for m in mats:
        if m.cols != c:
            raise ValueError("vstack column mismatch")
        data.extend(dict(r) for r in m._r)
    return Matrix(len(data), c, data)


def block_diag(mats: Sequence[Matrix]) -> Matrix:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    data = []
    off = 0
    for m in mats:
        for r in m._r:
            data.append({off + j: v for j, v in r.items()})
        off += m.cols
    return Matrix(rows, cols, data)


def block(grid: Sequence[Sequence[Matrix | None]], row_dims: Sequence[int], col_dims: Sequence[int]) -> Matrix:
    """Assemble a block matrix; ``None`` blocks are zero."""
    data = []
    coff = [0]
    for c in col_dims:
        coff.append(coff[-1] + c)
    for bi, rd in enumerate(row_dims):
        rows = [dict() for _ in range(rd)]
        for bj, cd in enumerate(col_dims):
            m = grid[bi][bj]
            if m is None:
                continue
            if m.shape != (rd, cd):
                raise ValueError(f"block ({bi},{bj}) has shape {m.shape}, expected {(rd, cd)}")
            o = coff[bj]
            for i, r in enumerate(m._r):
                for j, v in r.items():
                    rows[i][o + j] = v
        data.extend(rows)
    return Matrix(sum(row_dims), coff[-1], data)


# ----------------------------------------------------------------------
# row reduction


def _integer_rows(m: Matrix) -> list[dict]:
    out = []
    for row in m._r:
        if not row:
            out.append({})
            continue
        den = 1
        for v in row.values():
            d = v.denominator
            if d != 1:
                den = lcm(den, d)
        if den == 1:
            out.append({j: v.numerator for j, v in row.items()})
        else:
            out.append({j: v.numerator * (den // v.denominator) for j, v in row.items()})
    return out


def _content(row: dict) -> int:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return 1
    return g


def _reduce(r: dict, p: dict, c: int) -> dict:
    """Clear column c of r using the row p (p[c] != 0); integer, content-reduced."""
    pv, a = p[c], r[c]
    g = gcd(pv, a)
    mp, ma = pv // g, a // g
    if mp < 0:
        mp, ma = -mp, -ma
    new = {k: mp * v for k, v in r.items()} if mp != 1 else dict(r)
    for k, v in p.items():
        w = new.get(k, 0) - ma * v
        if w:
            new[k] = w
        else:
            new.pop(k, None)
    if new:
        cg = _content(new)
        if cg > 1:
            new = {k: v // cg for k, v in new.items()}
    return new


def _echelon(rows: list[dict], ncols: int, full: bool) -> list[int]:
    """Fraction-free elimination on integer rows, in place.

    Rows are absorbed one at a time against the pivots found so far.  The
    pivot columns are the column rank profile, so they do not depend on the
    order of work; pivot rows end up at the top sorted by pivot column.  With
    ``full`` the entries above pivots are cleared too (reduced form up to
    pivot normalization).
    """
    piv: dict[int, dict] = {}
    for r in rows:
        while r:
            c = min(r)
            p = piv.get(c)
            if p is None:
                piv[c] = r
                break
            r = _reduce(r, p, c)
    cols = sorted(piv)
    if full:
        for c in reversed(cols):
            p = piv[c]
            for c2 in cols:
                if c2 >= c:
                    break
                q = piv[c2]
                if c in q:
                    piv[c2] = _reduce(q, p, c)
    n = len(rows)
    rows[:] = [piv[c] for c in cols] + [{} for _ in range(n - len(cols))]
    return cols


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns."""
    rows = _integer_rows(m)
    pivots = _echelon(rows, m.cols, full=True)
    data = []
    for k, col in enumerate(pivots):
        r = rows[k]
        pv = r[col]
        data.append({j: Fraction(v, pv) for j, v in r.items()})
    data.extend({} for _ in range(m.rows - len(pivots)))
    return Matrix(m.rows, m.cols, data), tuple(pivots)


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    # eliminate along the shorter side
    if m.rows > m.cols:
        m = m.T
    rows = _integer_rows(m)
    return len(_echelon(rows, m.cols, full=False))


def pivot_columns(m: Matrix) -> tuple[int, ...]:
    """Indices of the first maximal independent set of columns."""
    rows = _integer_rows(m)
    return tuple(_echelon(rows, m.cols, full=False))


def independent_rows(m: Matrix) -> tuple[int, ...]:
    return pivot_columns(m.T)


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form a basis of the null space (one per free column)."""
    r, pivots = rref(m)
    pivset = set(pivots)
    free = [j for j in range(m.cols) if j not in pivset]
    data = [dict() for _ in range(m.cols)]
    for k, f in enumerate(free):
        data[f][k] = Fraction(1)
        for i, p in enumerate(pivots):
            v = r._r[i].get(f)
            if v:
                data[p][k] = -v
    return Matrix(m.cols, len(free), data)


def column_space(m: Matrix) -> Matrix:
    """Basis of the column space, chosen among the columns of ``m``."""
    return m.take_cols(pivot_columns(m))


def solve(a: Matrix, b: Matrix) -> Matrix:
    """Particular solution x of a @ x = b; raises ValueError if inconsistent."""
    if a.rows != b.rows:
        raise ValueError("solve: row mismatch")
    aug = hstack([a, b])
    r, pivots = rref(aug)
    for i, p in enumerate(pivots):
        if p >= a.cols:
            raise ValueError("linear system is inconsistent")
    data = [dict() for _ in range(a.cols)]
    for i, p in enumerate(pivots):
        for j, v in r._r[i].items():
            if j >= a.cols:
                data[p][j - a.cols] = v
    return Matrix(a.cols, b.cols, data)


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    r, pivots = rref(hstack([m, Matrix.identity(n)]))
    if pivots[:n] != tuple(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    return r.take_cols(list(range(n, 2 * n)))


def is_invertible(m: Matrix) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


def left_inverse(q: Matrix) -> Matrix:
    """L with L @ q = I for a full-column-rank q (supported on chosen rows)."""
    h = q.cols
    if h == 0:
        return Matrix(0, q.rows)
    rows = independent_rows(q)
    if len(rows) != h:
        raise ValueError("matrix does not have full column rank")
    inv = inverse(q.take_rows(rows))
    data = [dict() for _ in range(h)]
    for i in range(h):
        for k, v in inv._r[i].items():
            data[i][rows[k]] = v
    return Matrix(h, q.rows, data)


def same_span(a: Matrix, b: Matrix) -> bool:
    """Whether the column spans of a and b coincide."""
    ra, rb = rank(a), rank(b)
    return ra == rb and rank(hstack([a, b])) == ra


def in_span(basis: Matrix, vecs: Matrix) -> bool:
    return rank(hstack([basis, vecs])) == rank(basis)


# ----------------------------------------------------------------------
# cochain complexes


@dataclass(frozen=True)
class VectComplex:
    """Cochain complex of finite-dimensional spaces; term k sits at offset+k."""

    offset: int
    dims: tuple[int, ...]
    diffs: tuple[Matrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "diffs", tuple(self.diffs))
        if len(self.dims) and len(self.diffs) != len(self.dims) - 1:
            raise ValueError("a complex with t terms needs t-1 differentials")
        for k, d in enumerate(self.diffs):
            if d.shape != (self.dims[k + 1], self.dims[k]):
                raise ValueError(f"differential {self.offset + k} has shape {d.shape}")

    @property
    def top(self) -> int:
        return self.offset + len(self.dims) - 1

    def dim(self, k: int) -> int:
        i = k - self.offset
        return self.dims[i] if 0 <= i < len(self.dims) else 0

    def d(self, k: int) -> Matrix:
        i = k - self.offset
        if 0 <= i < len(self.diffs):
            return self.diffs[i]
        return Matrix(self.dim(k + 1), self.dim(k))

    def degrees(self) -> range:
        return range(self.offset, self.top + 1)

    def check(self) -> None:
        for k in range(self.offset, self.top - 1):
            if not (self.d(k + 1) @ self.d(k)).is_zero():
                raise ValueError(f"d∘d != 0 at degree {k}")

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * self.dim(k) for k in self.degrees())


def make_complex(terms: dict[int, int], diffs: dict[int, Matrix]) -> VectComplex:
    """Build a complex from sparse degree maps (missing differentials are zero)."""
    degs = [k for k, v in terms.items()]
    if not degs:
        return VectComplex(0, (), ())
    lo, hi = min(degs), max(degs)
    dims = tuple(terms.get(k, 0) for k in range(lo, hi + 1))
    ds = []
    for k in range(lo, hi):
        m = diffs.get(k)
        ds.append(m if m is not None else Matrix(dims[k + 1 - lo], dims[k - lo]))
    return VectComplex(lo, dims, tuple(ds))


class Cohomology(NamedTuple):
    dim: int
    projection: Matrix  # dim x term(k): cycles -> classes
    section: Matrix  # term(k) x dim: class representatives


def cohomology(c: VectComplex, k: int) -> Cohomology:
    n = c.dim(k)
    if n == 0:
        return Cohomology(0, Matrix(0, 0), Matrix(0, 0))
    z = kernel_basis(c.d(k))
    if z.cols == 0:
        return Cohomology(0, Matrix(0, n), Matrix(n, 0))
    b = column_space(c.d(k - 1))
    piv = pivot_columns(hstack([b, z]))
    sect_idx = [j - b.cols for j in piv if j >= b.cols]
    section = z.take_cols(sect_idx)
    h = section.cols
    if h == 0:
        return Cohomology(0, Matrix(0, n), Matrix(n, 0))
    linv = left_inverse(hstack([b, section]))
    proj = linv.take_rows(list(range(b.cols, b.cols + h)))
    return Cohomology(h, proj, section)


def cohomology_dims(c: VectComplex) -> dict[int, int]:
    out = {}
    for k in c.degrees():
        n = c.dim(k)
        r_out = rank(c.d(k)) if n else 0
        r_in = rank(c.d(k - 1)) if n else 0
        out[k] = n - r_out - r_in
    return out


@dataclass(frozen=True)
class ChainMap:
    """Degree-preserving map of complexes; absent degrees are zero."""

    source: VectComplex
    target: VectComplex
    maps: dict

    def at(self, k: int) -> Matrix:
        m = self.maps.get(k)
        if m is None:
            return Matrix(self.target.dim(k), self.source.dim(k))
        return m

    def check(self) -> None:
        lo = min(self.source.offset, self.target.offset)
        hi = max(self.source.top, self.target.top)
        for k in range(lo, hi + 1):
            m = self.at(k)
            if m.shape != (self.target.dim(k), self.source.dim(k)):
                raise ValueError(f"chain map has wrong shape in degree {k}")
        for k in range(lo - 1, hi + 1):
            lhs = self.at(k + 1) @ self.source.d(k)
            rhs = self.target.d(k) @ self.at(k)
            if lhs != rhs:
                raise ValueError(f"not a chain map: square fails in degree {k}")


def shift(c: VectComplex, s: int) -> VectComplex:
    """c[s]: term k is c^{k+s}, differential (-1)^s d."""
    sign = -1 if s % 2 else 1
    return VectComplex(c.offset - s, c.dims, tuple(d.scale(sign) for d in c.diffs))


def cone(f: ChainMap) -> VectComplex:
    """Mapping cone: C^k = A^{k+1} + B^k, d(a, b) = (-d a, f a + d b)."""
    f.check()
    a, b = f.source, f.target
    if not a.dims and not b.dims:
        return VectComplex(0, (), ())
    lo = min(a.offset - 1 if a.dims else b.offset, b.offset if b.dims else a.offset - 1)
    hi = max(a.top - 1 if a.dims else b.top, b.top if b.dims else a.top - 1)
    dims = tuple(a.dim(k + 1) + b.dim(k) for k in range(lo, hi + 1))
    diffs = []
    for k in range(lo, hi):
        diffs.append(
            block(
                [[a.d(k + 1).scale(-1), None], [f.at(k + 1), b.d(k)]],
                [a.dim(k + 2), b.dim(k + 1)],
                [a.dim(k + 1), b.dim(k)],
            )
        )
    return VectComplex(lo, dims, tuple(diffs))


def cone_inclusion(f: ChainMap, c: VectComplex | None = None) -> ChainMap:
    """B -> cone(f), b -> (0, b)."""
    c = c or cone(f)
    a, b = f.source, f.target
    maps = {}
    for k in c.degrees():
        if b.dim(k):
            maps[k] = block([[None], [Matrix.identity(b.dim(k))]], [a.dim(k + 1), b.dim(k)], [b.dim(k)])
    return ChainMap(b, c, maps)


def cone_projection(f: ChainMap, c: VectComplex | None = None) -> ChainMap:
    """cone(f) -> A[1], (a, b) -> a."""
    c = c or cone(f)
    a, b = f.source, f.target
    a1 = shift(a, 1)
    maps = {}
    for k in c.degrees():
        if a.dim(k + 1):
            maps[k] = block([[Matrix.identity(a.dim(k + 1)), None]], [a.dim(k + 1)], [a.dim(k + 1), b.dim(k)])
    return ChainMap(c, a1, maps)


def induced_map(f_k: Matrix, source: Cohomology, target: Cohomology) -> Matrix:
    """Map on cohomology classes induced by a cycle-level map f_k."""
    if source.dim == 0 or target.dim == 0:
        return Matrix(target.dim, source.dim)
    return target.projection @ f_k @ source.section


def exact_at(alpha: Matrix, beta: Matrix, middle: int) -> bool:
    """Exactness of X --alpha--> M --beta--> Y at M (dim M = middle)."""
    if alpha.rows != middle or beta.cols != middle:
        raise ValueError("exact_at: shape mismatch")
    if middle == 0:
        return True
    if not (beta @ alpha).is_zero():
        return False
    return rank(alpha) + rank(beta) == middle


def kron(a: Matrix, b: Matrix) -> Matrix:
    data = []
    for ra in a._r:
        for rb in b._r:
            row = {}
            for j, x in ra.items():
                base = j * b.cols
                for k, y in rb.items():
                    row[base + k] = x * y
            data.append(row)
    return Matrix(a.rows * b.rows, a.cols * b.cols, data)
