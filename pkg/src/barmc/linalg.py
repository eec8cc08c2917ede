"""Exact sparse linear algebra and graded complexes.

Vectors are dicts mapping a basis key (an integer index, a string
label, or a structured tuple label) to a nonzero Scalar.  Matrices are
stored as sparse triplets with a canonical (row, col) ordering; row
reduction switches to a dense working copy below a size threshold.

Over Q the elimination is fraction-free: rows are scaled to integer
content and combined by cross-multiplication with a gcd reduction after
every step, so intermediate numerators stay bounded.  Over F_p ordinary
division-based elimination is used.
"""

from fractions import Fraction
from math import gcd

from .scalars import Field, FieldMismatch, Scalar

DENSE_CUTOFF = 64


# ---------------------------------------------------------------------------
# sparse vectors


def vec_add(dst, src, coeff=None):
    """dst += coeff * src, in place; drops entries that cancel to zero."""
    if coeff is not None and not coeff:
        return dst
    for k, v in src.items():
        w = v if coeff is None else coeff * v
        if k in dst:
            s = dst[k] + w
            if s:
                dst[k] = s
            else:
                del dst[k]
        elif w:
            dst[k] = w
    return dst


def vec_scale(v, coeff):
    if not coeff:
        return {}
    return {k: coeff * c for k, c in v.items()}


def vec_neg(v):
    return {k: -c for k, c in v.items()}


def vec_sub(a, b):
    out = dict(a)
    for k, v in b.items():
        if k in out:
            s = out[k] - v
            if s:
                out[k] = s
            else:
                del out[k]
        else:
            out[k] = -v
    return out


def vec_eq(a, b):
    return vec_is_zero(vec_sub(a, b))


def vec_is_zero(v):
    return all(not c for c in v.values())


def vec_clean(v):
    return {k: c for k, c in v.items() if c}


# ---------------------------------------------------------------------------
# matrices


class Matrix:
    """Sparse matrix over one field, rows and columns indexed from 0."""

    def __init__(self, nrows, ncols, field):
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        self.entries = {}

    def __setitem__(self, key, value):
        i, j = key
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(key)
        if isinstance(value, Scalar) and value.field != self.field:
            raise FieldMismatch("entry field differs from matrix field")
        value = self.field(value)
        if value:
            self.entries[(i, j)] = value
        else:
            self.entries.pop((i, j), None)

    def __getitem__(self, key):
        return self.entries.get(key, self.field.zero)

    @classmethod
    def from_rows(cls, rows, ncols, field):
        m = cls(len(rows), ncols, field)
        for i, row in enumerate(rows):
            for j, c in row.items():
                m[i, j] = c
        return m

    @classmethod
    def from_columns(cls, cols, nrows, field):
        m = cls(nrows, len(cols), field)
        for j, col in enumerate(cols):
            for i, c in col.items():
                m[i, j] = c
        return m

    def column(self, j):
        return {i: c for (i, jj), c in self.entries.items() if jj == j}

    def rows(self):
        out = [dict() for _ in range(self.nrows)]
        for (i, j), c in sorted(self.entries.items()):
            out[i][j] = c
        return out

    def transpose(self):
        t = Matrix(self.ncols, self.nrows, self.field)
        for (i, j), c in self.entries.items():
            t.entries[(j, i)] = c
        return t

    def mul_vec(self, v):
        """Matrix times a sparse column vector (dict j -> Scalar)."""
        out = {}
        cols = {}
        for (i, j), c in self.entries.items():
            cols.setdefault(j, []).append((i, c))
        for j, coeff in v.items():
            if not coeff:
                continue
            for i, c in cols.get(j, ()):
                prod = c * coeff
                if i in out:
                    s = out[i] + prod
                    if s:
                        out[i] = s
                    else:
                        del out[i]
                elif prod:
                    out[i] = prod
        return out

    def is_zero(self):
        return not self.entries

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = Matrix(self.nrows, other.ncols, self.field)
        by_row = {}
        for (i, j), c in self.entries.items():
            by_row.setdefault(i, []).append((j, c))
        other_rows = {}
        for (j, k), c in other.entries.items():
            other_rows.setdefault(j, []).append((k, c))
        for i, terms in by_row.items():
            acc = {}
            for j, c in terms:
                for k, d in other_rows.get(j, ()):
                    prod = c * d
                    if k in acc:
                        s = acc[k] + prod
                        if s:
                            acc[k] = s
                        else:
                            del acc[k]
                    elif prod:
                        acc[k] = prod
            for k, c in acc.items():
                out.entries[(i, k)] = c
        return out

    def row_reduce(self):
        return Elimination(self)


def _integerize(row):
    """Scale a dict row of Fractions to coprime integers; returns int dict."""
    denom = 1
    for c in row.values():
        denom = denom * c.denominator // gcd(denom, c.denominator)
    ints = {j: int(c * denom) for j, c in row.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    if g > 1:
        ints = {j: v // g for j, v in ints.items()}
    return ints


class Elimination:
    """Reduced row-echelon data for one matrix.

    Exposes rank, pivot positions, a kernel basis (columns = domain),
    and the original pivot columns as an image basis.  The reduction is
    Gauss-Jordan: echelon rows are fully reduced and pivot-normalized,
    so kernel vectors read off directly from the free columns.
    """

    def __init__(self, matrix):
        self.matrix = matrix
        self.field = matrix.field
        rows = [r for r in matrix.rows() if r]
        if matrix.nrows < DENSE_CUTOFF and matrix.ncols < DENSE_CUTOFF:
            echelon = self._reduce_dense(rows)
        elif self.field.kind == "Q":
            echelon = self._reduce_rational(rows)
        else:
            echelon = self._reduce_prime(rows)
        echelon.sort(key=lambda r: min(r))
        # back-substitute to reach reduced echelon form
        for a in range(len(echelon) - 1, -1, -1):
            pa = min(echelon[a])
            lead = echelon[a][pa]
            if lead != self.field.one:
                inv = lead.inverse()
                echelon[a] = {j: inv * c for j, c in echelon[a].items()}
            for b in range(a):
                coeff = echelon[b].get(pa)
                if coeff is not None:
                    vec_add(echelon[b], echelon[a], -coeff)
        self.rows = echelon
        self.pivots = [min(r) for r in echelon]
        self.rank = len(echelon)

    # three elimination cores; all return echelon rows over self.field

    def _reduce_dense(self, rows):
        """Working copy as dense lists, ordinary division-based elimination.

        Small matrices dominate the workload and a dense sweep avoids
        the per-row dict churn of the sparse cores.
        """
        ncols = self.matrix.ncols
        zero = self.field.zero
        work = []
        for r in rows:
            row = [zero] * ncols
            for j, c in r.items():
                row[j] = c
            work.append(row)
        rix = 0
        for col in range(ncols):
            piv = None
            for i in range(rix, len(work)):
                if work[i][col]:
                    piv = i
                    break
            if piv is None:
                continue
            work[rix], work[piv] = work[piv], work[rix]
            prow = work[rix]
            pv = prow[col]
            for i in range(rix + 1, len(work)):
                c = work[i][col]
                if c:
                    factor = c / pv
                    row_i = work[i]
                    for j in range(col, ncols):
                        if prow[j]:
                            row_i[j] = row_i[j] - factor * prow[j]
            rix += 1
            if rix == len(work):
                break
        return [
            {j: c for j, c in enumerate(work[i]) if c} for i in range(rix)
        ]

    def _reduce_prime(self, rows):
        work = [dict(r) for r in rows]
        done = []
        while work:
            col = min(min(r) for r in work)
            k = next(i for i, r in enumerate(work) if min(r) == col)
            pivot_row = work.pop(k)
            pv = pivot_row[col]
            rest = []
            for r in work:
                c = r.get(col)
                if c is not None:
                    r = vec_add(dict(r), pivot_row, -(c / pv))
                if r:
                    rest.append(r)
            done.append(pivot_row)
            work = rest
        return done

    def _reduce_rational(self, rows):
        work = [_integerize({j: c.val for j, c in r.items()}) for r in rows]
        done = []
        while work:
            col = min(min(r) for r in work)
            # smallest pivot magnitude keeps the growth down
            cands = [i for i, r in enumerate(work) if min(r) == col]
            k = min(cands, key=lambda i: abs(work[i][col]))
            pivot_row = work.pop(k)
            pv = pivot_row[col]
            rest = []
            for r in work:
                c = r.get(col)
                if c is not None:
                    new = {}
                    for j in set(r) | set(pivot_row):
                        v = r.get(j, 0) * pv - pivot_row.get(j, 0) * c
                        if v:
                            new[j] = v
                    g = 0
                    for v in new.values():
                        g = gcd(g, v)
                    if g > 1:
                        new = {j: v // g for j, v in new.items()}
                    r = new
                if r:
                    rest.append(r)
            done.append(pivot_row)
            work = rest
        F = self.field
        return [{j: F(Fraction(v)) for j, v in r.items()} for r in done]

    def kernel_basis(self):
        """Basis of {x : Mx = 0}, one vector per free column, canonical order."""
        pivot_set = set(self.pivots)
        free = [j for j in range(self.matrix.ncols) if j not in pivot_set]
        basis = []
        for f in free:
            v = {f: self.field.one}
            for row, p in zip(self.rows, self.pivots):
                c = row.get(f)
                if c is not None:
                    v[p] = -c
            basis.append(v)
        return basis

    def image_basis(self):
        """The pivot columns of the original matrix (a basis of the image)."""
        return [self.matrix.column(j) for j in self.pivots]

    def nullity(self):
        return self.matrix.ncols - self.rank


def solve_linear(matrix):
    """Row-reduce and report (rank, kernel basis, image basis, pivots)."""
    e = matrix.row_reduce()
    return e.rank, e.kernel_basis(), e.image_basis(), list(e.pivots)


def solve(matrix, b):
    """One solution x of Mx = b, or None when inconsistent.

    Free coordinates are set to zero, so the answer is canonical given
    the matrix.
    """
    aug = Matrix(matrix.nrows, matrix.ncols + 1, matrix.field)
    for (i, j), c in matrix.entries.items():
        aug.entries[(i, j)] = c
    for i, c in b.items():
        if c:
            aug[i, matrix.ncols] = c
    e = aug.row_reduce()
    x = {}
    for row, p in zip(e.rows, e.pivots):
        if p == matrix.ncols:
            return None
        c = row.get(matrix.ncols)
        if c is not None:
            x[p] = c
    return x


class SpanSolver:
    """Membership and coordinates relative to a fixed list of spanning vectors.

    Built once from sparse vectors keyed by arbitrary labels; answers
    "is v in the span" and "express v in the given spanning set" by one
    augmented elimination per query.
    """

    def __init__(self, vectors, field):
        self.vectors = [vec_clean(v) for v in vectors]
        self.field = field
        keys = []
        seen = set()
        for v in self.vectors:
            for k in v:
                if k not in seen:
                    seen.add(k)
                    keys.append(k)
        self.keys = sorted(keys, key=repr)
        self.key_index = {k: i for i, k in enumerate(self.keys)}

    def _as_matrix_with(self, v):
        extra = [k for k in v if k not in self.key_index]
        idx = dict(self.key_index)
        for k in sorted(extra, key=repr):
            idx[k] = len(idx)
        m = Matrix(len(idx), len(self.vectors), self.field)
        for j, col in enumerate(self.vectors):
            for k, c in col.items():
                m.entries[(idx[k], j)] = c
        b = {idx[k]: c for k, c in v.items() if c}
        return m, b

    def coordinates(self, v):
        """Coefficients expressing v in the spanning set, or None."""
        m, b = self._as_matrix_with(v)
        return solve(m, b)

    def contains(self, v):
        return self.coordinates(v) is not None


class Subspace:
    """Echelonized span of sparse vectors; supports canonical coset reps."""

    def __init__(self, vectors, field):
        self.field = field
        keys = []
        seen = set()
        vecs = []
        for v in vectors:
            v = vec_clean(v)
            if v:
                vecs.append(v)
            for k in v:
                if k not in seen:
                    seen.add(k)
                    keys.append(k)
        self.keys = sorted(keys, key=repr)
        kidx = {k: i for i, k in enumerate(self.keys)}
        m = Matrix.from_rows(
            [{kidx[k]: c for k, c in v.items()} for v in vecs],
            len(self.keys),
            field,
        )
        e = m.row_reduce()
        self.rows = [
            {self.keys[j]: c for j, c in row.items()} for row in e.rows
        ]
        self.pivot_keys = [self.keys[p] for p in e.pivots]
        self.dim = e.rank

    def reduce(self, v):
        """Canonical representative of v modulo this subspace."""
        v = dict(v)
        for row, pk in zip(self.rows, self.pivot_keys):
            c = v.get(pk)
            if c:
                vec_add(v, row, -c)
        return vec_clean(v)

    def contains(self, v):
        return not self.reduce(v)


# ---------------------------------------------------------------------------
# graded spaces and complexes


class GradedSpace:
    """Finite-dimensional Z-graded space with an ordered, labeled basis.

    Labels are hashable (strings for user input, tuples for internal
    tensor constructions); the listed order is canonical and is the
    serialization order.
    """

    def __init__(self, basis):
        labels = []
        degree = {}
        for label, deg in basis:
            if label in degree:
                raise ValueError("duplicate basis label %r" % (label,))
            labels.append(label)
            degree[label] = int(deg)
        self.labels = tuple(labels)
        self.degree = degree
        self.index = {lbl: i for i, lbl in enumerate(self.labels)}

    def dim(self):
        return len(self.labels)

    def degrees_present(self):
        return sorted(set(self.degree.values()))

    def labels_of_degree(self, d):
        return [lbl for lbl in self.labels if self.degree[lbl] == d]

    def dim_of_degree(self, d):
        return sum(1 for lbl in self.labels if self.degree[lbl] == d)

    def slice_dims(self):
        return {d: self.dim_of_degree(d) for d in self.degrees_present()}

    def shifted(self, k):
        """The shift by k: an element of degree d gets degree d - k."""
        return GradedSpace([(lbl, self.degree[lbl] - k) for lbl in self.labels])

    def degree_of_vec(self, v):
        """Degree of a homogeneous vector; None for 0; error if mixed."""
        degs = {self.degree[k] for k, c in v.items() if c}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError("vector is not homogeneous: degrees %s" % degs)
        return degs.pop()

    def homogeneous_parts(self, v):
        parts = {}
        for k, c in v.items():
            if c:
                parts.setdefault(self.degree[k], {})[k] = c
        return dict(sorted(parts.items()))


class Complex:
    """A graded space with a degree +1 differential, d*d = 0.

    The differential is sparse, label -> vector.  Construction checks
    homogeneity of every entry and the exact vanishing of d squared.
    """

    def __init__(self, space, d, field, check=True):
        self.space = space
        self.field = field
        self.d = {k: vec_clean(v) for k, v in d.items() if vec_clean(v)}
        if check:
            self._validate()

    def _validate(self):
        for src, v in self.d.items():
            dsrc = self.space.degree[src]
            for dst in v:
                if self.space.degree[dst] != dsrc + 1:
                    raise ValueError(
                        "differential entry %r -> %r is not of degree +1"
                        % (src, dst)
                    )
        for src in self.d:
            acc = {}
            for mid, c in self.d[src].items():
                vec_add(acc, self.d.get(mid, {}), c)
            if not vec_is_zero(acc):
                raise ValueError(
                    "d*d is nonzero on basis element %r: %r" % (src, acc)
                )

    def apply_d(self, v):
        out = {}
        for k, c in v.items():
            vec_add(out, self.d.get(k, {}), c)
        return out

    def matrix_of_d(self, i):
        """The block d: degree i -> degree i+1, with its label lists."""
        src = self.space.labels_of_degree(i)
        dst = self.space.labels_of_degree(i + 1)
        dst_index = {lbl: r for r, lbl in enumerate(dst)}
        m = Matrix(len(dst), len(src), self.field)
        for j, lbl in enumerate(src):
            for out_lbl, c in self.d.get(lbl, {}).items():
                m.entries[(dst_index[out_lbl], j)] = c
        return m, src, dst

    def cohomology(self, i):
        return Cohomology(self, i)

    def total_cohomology_dims(self):
        degs = self.space.degrees_present()
        out = {}
        for i in range(min(degs, default=0), max(degs, default=-1) + 1):
            h = self.cohomology(i)
            if h.dim:
                out[i] = h.dim
        return out


class Cohomology:
    """H^i of a Complex: dimension, representative cocycles, projection."""

    def __init__(self, cx, i):
        self.cx = cx
        self.i = i
        field = cx.field
        d_i, src, _ = cx.matrix_of_d(i)
        e = d_i.row_reduce()
        kernel = e.kernel_basis()  # vectors over positions in src
        d_prev, src_prev, dst_prev = cx.matrix_of_d(i - 1)
        idx = {lbl: j for j, lbl in enumerate(src)}
        boundaries = []
        ep = d_prev.row_reduce()
        for col in ep.image_basis():
            boundaries.append({dst_prev[r]: c for r, c in col.items()})
        self.boundaries = Subspace(boundaries, field)
        # pick representatives: kernel vectors whose reductions mod the
        # boundary space stay independent
        reps = []
        span = list(boundaries)
        sub = Subspace(span, field)
        for kv in kernel:
            v = {src[j]: c for j, c in kv.items()}
            red = sub.reduce(v)
            if red:
                reps.append(v)
                span.append(v)
                sub = Subspace(span, field)
        self.representatives = reps
        self.dim = len(reps)
        self._n_boundaries = len(boundaries)
        if reps or boundaries:
            self._solver = SpanSolver(boundaries + reps, field)
        else:
            self._solver = None
        self.field = field
        self.labels = src

    def project(self, v):
        """Coordinates of the class of a cocycle v in the representatives.

        Returns a dict position -> Scalar over range(dim); raises if v
        is not in ker + im (i.e. not a cocycle of this degree).
        """
        v = vec_clean(v)
        if not v:
            return {}
        if self._solver is None:
            raise ValueError("vector is not a cocycle representative here")
        coords = self._solver.coordinates(v)
        if coords is None:
            raise ValueError("vector does not represent a class in H^%d" % self.i)
        return {
            j - self._n_boundaries: c
            for j, c in coords.items()
            if j >= self._n_boundaries and c
        }

    def class_is_zero(self, v):
        return self.boundaries.contains(v)

    def classes_equal(self, v, w):
        return self.class_is_zero(vec_sub(v, w))
