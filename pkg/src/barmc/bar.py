"""Bar construction at finite weight and its dual DG algebra.

For an augmented strictly unital algebra A with augmentation ideal
Abar, the tensor coalgebra on Abar[1] carries the coderivation d_bar
assembled from the suspended operations b_n.  Applying b_s shortens a
word by s - 1 letters, so d_bar never raises the word length; cutting
at weight N therefore leaves an honest finite complex, and its linear
dual is a finite DG algebra S_N whose product transposes
deconcatenation.

Everything this module reports about cohomology, Koszulness, or
presentations of H^0 is an order-N certificate about these finite
truncations.  No statement here is a claim about the inverse limit.
"""

import itertools

from .ainfinity import (
    AInfAlgebra,
    CheckReport,
    StructureMaps,
    b_from_m,
    koszul_pass_exponent,
    restrict_to_ideal,
    stasheff_residual,
    tensor_label,
    tensor_with_dg,
)
from .errors import HypothesisNotMet, MathCheckFailure
from .linalg import (
    Complex,
    GradedSpace,
    Matrix,
    SpanSolver,
    Subspace,
    solve_linear,
    vec_add,
    vec_clean,
    vec_is_zero,
)


def bar_words(letters, weight_bound):
    """All words over the letters up to the weight bound.

    Length-lexicographic over the given letter order, so serialized
    bases are reproducible and diffable.
    """
    words = [()]
    layer = [()]
    for _ in range(weight_bound):
        layer = [w + (l,) for w in layer for l in letters]
        words.extend(layer)
    return words


class BarTruncation:
    """Words of weight <= N in Abar[1] with the bar coderivation."""

    def __init__(self, A, N):
        if not A.augmented:
            raise ValueError("bar construction needs an augmented algebra")
        if N < 0:
            raise ValueError("weight bound must be nonnegative")
        needed = min(N, A.arity_bound)
        if not A.op_complete_for(needed):
            raise HypothesisNotMet(
                "weight-%d truncation applies operations up to arity %d, but "
                "the algebra is only complete to arity %d"
                % (N, needed, A.complete_to_arity))
        self.A = A
        self.N = N
        self.field = A.field
        self.letters = A.ideal_labels()
        ideal_space = GradedSpace([(l, A.deg(l)) for l in self.letters])
        bare = AInfAlgebra(ideal_space, A.field, restrict_to_ideal(A),
                           arity_bound=A.arity_bound)
        self.b = b_from_m(bare)
        self.sdeg = {l: A.deg(l) - 1 for l in self.letters}
        self.words = bar_words(self.letters, N)
        self.word_degree = {w: sum(self.sdeg[l] for l in w) for w in self.words}
        self.space = GradedSpace([(w, self.word_degree[w]) for w in self.words])
        self.d = self._assemble()
        # Complex() certifies homogeneity and d_bar^2 = 0 exactly.
        self.complex = Complex(self.space, self.d, self.field)
        self._check_coalgebra()
        self._check_coderivation()

    def _assemble(self):
        d = {}
        for word in self.words:
            acc = {}
            degs = [self.sdeg[l] for l in word]
            for s in range(1, min(len(word), self.A.arity_bound) + 1):
                table = self.b.entries.get(s)
                if not table:
                    continue
                for r in range(len(word) - s + 1):
                    out = table.get(word[r:r + s])
                    if not out:
                        continue
                    sign = self.field.sign(koszul_pass_exponent(1, degs[:r]))
                    for lbl, c in out.items():
                        new = word[:r] + (lbl,) + word[r + s:]
                        if len(new) > len(word):
                            raise MathCheckFailure("bar differential raised weight")
                        vec_add(acc, {new: sign * c})
            acc = vec_clean(acc)
            if acc:
                d[word] = acc
        return d

    def deconcatenations(self, word):
        return [(word[:i], word[i:]) for i in range(len(word) + 1)]

    def weight(self, word):
        return len(word)

    def _check_coalgebra(self):
        for w in self.words:
            splits = self.deconcatenations(w)
            if ((), w) not in splits or (w, ()) not in splits:
                raise MathCheckFailure("deconcatenation lost a counit term")
            left = sorted(((u, v, z) for uv, z in splits
                           for u, v in self.deconcatenations(uv)), key=repr)
            right = sorted(((u, v, z) for u, vz in splits
                            for v, z in self.deconcatenations(vz)), key=repr)
            if left != right:
                raise MathCheckFailure(
                    "deconcatenation fails coassociativity on %r" % (w,))

    def _check_coderivation(self):
        """d_bar is a coderivation: Delta d = (d x 1 + 1 x d) Delta, exactly.

        Together with d_bar^2 = 0 this is what makes the transposed
        product on the dual both associative and Leibniz.
        """
        for w in self.words:
            lhs = {}
            for big, c in self.d.get(w, {}).items():
                for u, v in self.deconcatenations(big):
                    vec_add(lhs, {(u, v): c})
            rhs = {}
            for u, v in self.deconcatenations(w):
                for u2, c in self.d.get(u, {}).items():
                    vec_add(rhs, {(u2, v): c})
                sgn = self.field.sign(self.word_degree[u])
                for v2, c in self.d.get(v, {}).items():
                    vec_add(rhs, {(u, v2): sgn * c})
            if vec_clean(lhs) != vec_clean(rhs):
                raise MathCheckFailure(
                    "bar differential is not a coderivation at %r" % (w,))


def bar_construction(A, N):
    return BarTruncation(A, N)


class DualTruncation:
    """Linear dual of a bar truncation: a finite DG algebra.

    Word functionals multiply by transposed deconcatenation,
    U* V* = (-1)^(|U||V|) (UV)*, vanishing past the weight bound; the
    differential transposes d_bar via (d phi)(w) = -(-1)^|phi| phi(d w).
    The empty-word functional is a strict unit and the longer words
    span a nilpotent DG ideal.
    """

    def __init__(self, bar):
        self.bar = bar
        self.N = bar.N
        self.field = bar.field
        self.words = bar.words
        self.weight = {w: len(w) for w in self.words}
        self.space = GradedSpace([(w, -bar.word_degree[w]) for w in self.words])
        ops = StructureMaps()
        transposed = {}
        for w, img in bar.d.items():
            for big, c in img.items():
                sign = self.field.sign(1 + bar.word_degree[big])
                vec_add(transposed.setdefault(big, {}), {w: sign * c})
        for big, vec in transposed.items():
            ops.set(1, (big,), vec)
        one = self.field.one
        by_len = {}
        for w in self.words:
            by_len.setdefault(len(w), []).append(w)
        for lu in range(self.N + 1):
            for lv in range(self.N + 1 - lu):
                for U in by_len.get(lu, ()):
                    for V in by_len.get(lv, ()):
                        sign = self.field.sign(
                            bar.word_degree[U] * bar.word_degree[V])
                        ops.set(2, (U, V), {U + V: sign * one})
        self.algebra = AInfAlgebra(self.space, self.field, ops, arity_bound=2,
                                   unit=(), aug_label=())
        self.complex = self.algebra.complex()

    def dim_table(self):
        """Dimensions by (degree, weight)."""
        table = {}
        for w in self.words:
            key = (self.space.degree[w], len(w))
            table[key] = table.get(key, 0) + 1
        return table

    def as_artinian(self):
        from .artin import ArtinianDGAlgebra
        return ArtinianDGAlgebra(self.algebra)


def dual_dg_algebra(A, N):
    return DualTruncation(bar_construction(A, N))


def check_tower_surjection(big, small):
    """The quotient S_{N'} -> S_N that kills words longer than N.

    Verified entrywise to commute with the differentials and products;
    surjectivity is by construction (kept words map to themselves).
    """
    if small.N > big.N:
        raise ValueError("tower maps go from finer to coarser truncations")
    keep = set(small.words)

    def trunc(vec):
        return vec_clean({w: c for w, c in vec.items() if w in keep})

    for w in small.words:
        if trunc(dict(big.algebra.m.get(1, (w,)))) != dict(small.algebra.m.get(1, (w,))):
            return CheckReport(False, failure=("differential", w))
    for U in small.words:
        for V in small.words:
            got = trunc(dict(big.algebra.m.get(2, (U, V))))
            want = dict(small.algebra.m.get(2, (U, V)))
            if got != want:
                return CheckReport(False, failure=("product", (U, V)))
    return CheckReport(True, checked_to=small.N)


# ---------------------------------------------------------------------------
# cohomology of the dual, weight-filtered


class SHatCohomology:
    """Cohomology of S_N with its weight filtration.

    The differential never lowers word weight, so functionals on words
    of length >= w form a subcomplex F^w.  The reported weight-w
    dimension of H^i is dim(F^w H^i) - dim(F^{w+1} H^i) where F^w H^i
    is the image of H^i(F^w) in H^i.  Degree-0 representatives are
    chosen adapted to the filtration, top weight first, so each class
    carries a well-defined weight.
    """

    def __init__(self, A, N, dual=None):
        self.S = dual if dual is not None else dual_dg_algebra(A, N)
        self.N = N
        self.field = self.S.field
        self.cx = self.S.complex
        self.total_dims = self.cx.total_cohomology_dims()
        self.h0 = self.cx.cohomology(0)
        self.filtered_dims = {}
        for i in sorted(self.S.space.degrees_present()):
            self.filtered_dims[i] = self._filtered_dims_at(i)
        self.weight_dims = self.filtered_dims.get(0, [0] * (N + 1))
        self.weight_reps = self._adapted_reps()
        basis = list(self.h0.boundaries.rows) + [v for _, v in self.weight_reps]
        self._n_boundaries = len(self.h0.boundaries.rows)
        self._solver = SpanSolver(basis, self.field) if basis else None
        self._check_product_well_defined()

    def _labels_at(self, degree, min_weight=0):
        return [w for w in self.S.space.labels_of_degree(degree)
                if len(w) >= min_weight]

    def _restricted_kernel(self, labels):
        """Basis of ker(d) on the span of the listed labels."""
        if not labels:
            return []
        cols = [self.cx.apply_d({l: self.field.one}) for l in labels]
        outs = sorted({o for c in cols for o in c}, key=repr)
        oidx = {o: r for r, o in enumerate(outs)}
        m = Matrix(max(1, len(outs)), len(labels), self.field)
        for j, col in enumerate(cols):
            for o, val in col.items():
                m.entries[(oidx[o], j)] = val
        _, kernel, _, _ = solve_linear(m)
        return [{labels[j]: c for j, c in kv.items()} for kv in kernel]

    def _filtered_dims_at(self, degree):
        h = self.h0 if degree == 0 else self.cx.cohomology(degree)
        brows = h.boundaries.rows
        bdim = h.boundaries.dim
        ranks = []
        for w in range(self.N + 2):
            kernel = self._restricted_kernel(self._labels_at(degree, w))
            ranks.append(Subspace(brows + kernel, self.field).dim - bdim)
        if ranks[0] != h.dim:
            raise MathCheckFailure("weight filtration does not exhaust H^%d" % degree)
        return [ranks[w] - ranks[w + 1] for w in range(self.N + 1)]

    def _adapted_reps(self):
        per_weight = {w: [] for w in range(self.N + 1)}
        base = list(self.h0.boundaries.rows)
        sub = Subspace(base, self.field)
        for w in range(self.N, -1, -1):
            for v in self._restricted_kernel(self._labels_at(0, w)):
                if not sub.contains(v):
                    per_weight[w].append(v)
                    base.append(v)
                    sub = Subspace(base, self.field)
        for w in range(self.N + 1):
            if len(per_weight[w]) != self.weight_dims[w]:
                raise MathCheckFailure("weight filtration bookkeeping mismatch")
        return [(w, v) for w in range(self.N + 1) for v in per_weight[w]]

    def _check_product_well_defined(self):
        alg = self.S.algebra
        for _, v in self.weight_reps:
            for _, u in self.weight_reps:
                prod = alg.eval_m_vectors([u, v])
                if not vec_is_zero(self.cx.apply_d(prod)):
                    raise MathCheckFailure("product of cocycles is not a cocycle")
        for b in self.h0.boundaries.rows:
            for _, v in self.weight_reps:
                for prod in (alg.eval_m_vectors([b, v]), alg.eval_m_vectors([v, b])):
                    prod = vec_clean(prod)
                    if prod and not self.h0.class_is_zero(prod):
                        raise MathCheckFailure(
                            "H^0 product is not well defined on classes")

    def class_coords(self, vec):
        """Coordinates of a degree-0 cocycle's class in the adapted basis."""
        vec = vec_clean(dict(vec))
        if not vec:
            return {}
        if self._solver is None:
            raise ValueError("vector does not represent a class in H^0")
        coords = self._solver.coordinates(vec)
        if coords is None:
            raise ValueError("vector does not represent a class in H^0")
        return {j - self._n_boundaries: c for j, c in coords.items()
                if j >= self._n_boundaries and c}

    def product_class(self, u, v):
        """Class of u v for degree-0 cocycles u, v, in adapted coordinates."""
        return self.class_coords(self.S.algebra.eval_m_vectors([u, v]))

    def weight_one_reps(self):
        return [v for w, v in self.weight_reps if w == 1]

    def weight1_commutators_vanish(self):
        reps = self.weight_one_reps()
        alg = self.S.algebra
        for i, u in enumerate(reps):
            for v in reps[i + 1:]:
                c = alg.eval_m_vectors([u, v])
                vec_add(c, alg.eval_m_vectors([v, u]), -self.field.one)
                if not self.h0.class_is_zero(vec_clean(c)):
                    return False
        return True

    def product_table(self):
        """Products of adapted representatives, as class coordinates."""
        table = {}
        for i, (_, u) in enumerate(self.weight_reps):
            for j, (_, v) in enumerate(self.weight_reps):
                coords = self.product_class(u, v)
                if coords:
                    table[(i, j)] = coords
        return table

    def h_dim_table(self):
        """Nonzero filtered dimensions by (degree, weight)."""
        table = {}
        for i, dims in self.filtered_dims.items():
            for w, dim in enumerate(dims):
                if dim:
                    table[(i, w)] = dim
        return table


def s_hat_cohomology(A, N):
    return SHatCohomology(A, N)


# ---------------------------------------------------------------------------
# the Koszulness probe


def is_admissible(A):
    """Strictly unital, augmented, augmentation ideal in degrees >= 1.

    This is the degree condition that keeps every dual truncation in
    nonpositive degrees with finite slices, which the probe and the
    universal deformation rely on.
    """
    if A.unit is None or A.aug_label is None:
        return False
    return all(A.deg(l) >= 1 for l in A.ideal_labels())


def weight_raise_bound(A, N):
    """Largest jump the dual differential makes along the weight filtration.

    Transposing an s-fold merge raises word weight by s - 1, and only
    merges that fit inside a weight <= N word can act.
    """
    r = 0
    for s, table in A.m.entries.items():
        if 2 <= s <= N and any(v for v in table.values()):
            r = max(r, s - 1)
    return r


class KoszulVerdict:
    """Order-N certificate: graded H^i vanishes for i != 0 in the window.

    The window is the weight range the truncation computes faithfully.
    Functionals supported near the top weight are cocycles for free
    (their differential raises weight past the cutoff), so the raw
    H^i dims carry truncation-edge classes in negative degrees; dims
    records them as diagnostics and the certificate ignores them.
    Failures are (degree, weight, graded dim) triples inside the window.
    """

    def __init__(self, ok, order, window, failures, dims, h0_weight_dims,
                 cohomology):
        self.ok = ok
        self.order = order
        self.window = window
        self.failures = failures
        self.dims = dims
        self.h0_weight_dims = h0_weight_dims
        self.cohomology = cohomology

    def __bool__(self):
        return self.ok

    @property
    def verdict(self):
        if self.ok:
            return "koszul-at-order-%d" % self.order
        i, _, _ = self.failures[0]
        return "fails at (%d, %d)" % (i, self.order)

    def __repr__(self):
        return "KoszulVerdict(%s, window=%r)" % (self.verdict, (self.window,))


def koszul_probe(A, N, window=None):
    """Whether graded H^i(S_N) vanishes away from degree 0 where faithful.

    The faithful weights are w <= N - r with r the weight raise bound:
    there the cocycle condition on a weight-w functional and all the
    bounding elements it could receive stay inside the truncation, so
    the graded slice gr_w H^i agrees with every deeper truncation.  An
    explicit window overrides the cutoff.  A truncation-level
    certificate only; refuses non-admissible input, where the probe has
    no degree bounds to work with.
    """
    if not is_admissible(A):
        raise HypothesisNotMet(
            "koszul probe needs a strictly unital augmented algebra whose "
            "augmentation ideal sits in degrees >= 1")
    rep = s_hat_cohomology(A, N)
    degrees = sorted(rep.S.space.degrees_present())
    if degrees and max(degrees) > 0:
        raise MathCheckFailure("admissible input produced positive dual degrees")
    w_hi = N - weight_raise_bound(A, N) if window is None else int(window)
    failures = []
    for i in sorted(rep.filtered_dims):
        if i == 0:
            continue
        graded = rep.filtered_dims[i]
        for w in range(0, min(w_hi, N) + 1):
            if graded[w]:
                failures.append((i, w, graded[w]))
    return KoszulVerdict(not failures, N, (0, w_hi), failures,
                         dict(rep.total_dims), list(rep.weight_dims), rep)


def stabilization_report(A, N, extra=2):
    """H^0 weight dimensions at orders N..N+extra, with a consistency flag.

    Consistent means the order-M dims agree with order M+1 in every
    weight M covers, i.e. the claims stabilize along the tower.
    """
    tables = {}
    for order in range(N, N + extra + 1):
        tables[order] = list(s_hat_cohomology(A, order).weight_dims)
    consistent = all(
        tables[order][w] == tables[order + 1][w]
        for order in range(N, N + extra)
        for w in range(order + 1))
    return {"orders": tables, "consistent": consistent}


# ---------------------------------------------------------------------------
# the universal twisting cochain


class TwistingCochain:
    """The projection from bar words onto single letters, as a cochain.

    Vanishes on the empty word and on words of length >= 2; sends a
    length-1 word to its letter.  As a map from words to A it has
    degree 1 because of the shift.
    """

    def __init__(self, A):
        self.A = A

    def evaluate(self, word):
        if len(word) == 1:
            return {word[0]: self.A.field.one}
        return {}

    def element(self, dual):
        """The same data as the degree-1 element sum_a a x (a)* of A x S_N."""
        one = self.A.field.one
        return {tensor_label(a, (a,)): one for a in self.A.ideal_labels()}


def universal_twisting_cochain(A):
    if not A.augmented:
        raise ValueError("twisting cochains need an augmented algebra")
    return TwistingCochain(A)


def convolution_mc_residual(A, dual, tau_elem=None):
    """The generalized MC residual of the universal cochain in A x S_N.

    sum over n of (-1)^(n(n+1)/2) m_n(tau, ..., tau), evaluated in the
    tensor algebra; insertions raise weight so the sum is finite.
    Exactly zero is the defining property of a twisting cochain at this
    truncation.
    """
    T = tensor_with_dg(A, dual.algebra)
    if tau_elem is None:
        tau_elem = universal_twisting_cochain(A).element(dual)
    out = {}
    for n in range(1, min(A.arity_bound, dual.N) + 1):
        term = T.eval_m_vectors([tau_elem] * n)
        if term:
            vec_add(out, term, A.field.sign(n * (n + 1) // 2))
    return vec_clean(out)


# ---------------------------------------------------------------------------
# the one-sided bar complex


class BarComplex:
    """Words of weight <= N with one module slot from A, in A[1] throughout.

    The differential applies b_s inside the word and folds suffixes
    into the module slot with b_{j+1}; both families carry only Koszul
    passage signs because every b has degree +1.
    """

    def __init__(self, A, N):
        if not A.augmented or A.unit is None:
            raise ValueError(
                "the bar complex needs a strictly unital augmented algebra")
        needed = min(N + 1, A.arity_bound)
        if not A.op_complete_for(needed):
            raise HypothesisNotMet(
                "weight-%d bar complex applies operations up to arity %d, but "
                "the algebra is only complete to arity %d"
                % (N, needed, A.complete_to_arity))
        self.A = A
        self.N = N
        self.field = A.field
        self.bar = bar_construction(A, N)
        self.b_full = b_from_m(A)
        basis = []
        for w in self.bar.words:
            for a in A.space.labels:
                basis.append(((w, a), self.bar.word_degree[w] + A.deg(a) - 1))
        self.space = GradedSpace(basis)
        self.d = self._assemble()
        self.complex = Complex(self.space, self.d, self.field)

    def _assemble(self):
        A = self.A
        d = {}
        for w in self.bar.words:
            wdegs = [self.bar.sdeg[l] for l in w]
            for a in A.space.labels:
                acc = {}
                for w2, c in self.bar.d.get(w, {}).items():
                    vec_add(acc, {(w2, a): c})
                for j in range(min(len(w), A.arity_bound - 1) + 1):
                    head, tail = w[:len(w) - j], w[len(w) - j:]
                    out = self.b_full.get(j + 1, tail + (a,))
                    if not out:
                        continue
                    sign = self.field.sign(
                        koszul_pass_exponent(1, wdegs[:len(w) - j]))
                    for a2, c in out.items():
                        vec_add(acc, {(head, a2): sign * c})
                acc = vec_clean(acc)
                if acc:
                    d[(w, a)] = acc
        return d

    def weight_of(self, label):
        """Word length plus one for a module slot outside the unit line."""
        w, a = label
        return len(w) + (0 if a == self.A.unit else 1)

    def hom_from_k_report(self):
        """The empty-word slice is a subcomplex matching (A, -m_1) exactly."""
        A = self.A
        for a in A.space.labels:
            img = self.d.get(((), a), {})
            for w2, _ in img:
                if w2 != ():
                    return CheckReport(False, failure=("slice not closed", a))
            expected = vec_clean({((), l): -c for l, c in A.m.get(1, (a,)).items()})
            if dict(img) != expected:
                return CheckReport(False, failure=("slice differential", a))
        return CheckReport(True, checked_to=self.N)

    def end_k_probe(self):
        """Functionals on the unit-slot lines against the dual algebra.

        A graded A-linear functional into the augmentation module is
        determined by its values on the (word, unit) lines, one per
        word; transporting the bar-complex differential to these
        functionals must reproduce the dual algebra differential up to
        the global sign of the degree shift.  Checked entrywise, which
        exercises the unit and suffix bookkeeping of the assembled
        differential.
        """
        dual = DualTruncation(self.bar)
        unit = self.A.unit
        for w1 in self.bar.words:
            expected = vec_clean(
                {w: -c for w, c in dual.algebra.m.get(1, (w1,)).items()})
            got = {}
            sign = self.field.sign(self.bar.word_degree[w1])
            for w2 in self.bar.words:
                c = self.d.get((w2, unit), {}).get((w1, unit))
                if c:
                    vec_add(got, {w2: sign * c})
            if vec_clean(got) != expected:
                return CheckReport(False, failure=(w1, got, expected))
        return CheckReport(True, checked_to=self.N)


def bar_complex(A, N):
    return BarComplex(A, N)


# ---------------------------------------------------------------------------
# the universal deformation


class UniversalDeformation:
    """A x S_N with the structure maps twisted by the universal cochain.

    The n-th map takes one element of A x S_N and n - 1 elements of A,
    inserting the cochain i times on the left:

        sum over i >= 0 of (-1)^(i(i+1)/2 + n i)
            m_{n+i}(tau, ..., tau, x, a_1 x 1, ..., a_{n-1} x 1).

    Each insertion raises weight, so the sums are finite; killing
    positive weight recovers the operations of A on the nose.
    """

    def __init__(self, A, N):
        if not is_admissible(A):
            raise HypothesisNotMet(
                "the universal deformation needs a strictly unital augmented "
                "algebra whose augmentation ideal sits in degrees >= 1")
        if not A.op_complete_for(A.arity_bound):
            raise HypothesisNotMet(
                "the universal deformation inserts the cochain up to the full "
                "arity bound %d, but the algebra is only complete to arity %d"
                % (A.arity_bound, A.complete_to_arity))
        self.A = A
        self.N = N
        self.field = A.field
        self.S = dual_dg_algebra(A, N)
        self.T = tensor_with_dg(A, self.S.algebra)
        self.tau = universal_twisting_cochain(A).element(self.S)
        self.ops = self._assemble()
        self._shim = self._build_shim()

    def _assemble(self):
        A = self.A
        one = self.field.one
        ops = StructureMaps()
        for n in range(1, A.arity_bound + 1):
            for x in self.T.space.labels:
                xvec = {x: one}
                for rest in itertools.product(A.space.labels, repeat=n - 1):
                    tail = [{tensor_label(a, ()): one} for a in rest]
                    acc = {}
                    for i in range(min(A.arity_bound - n, self.N) + 1):
                        term = self.T.eval_m_vectors([self.tau] * i + [xvec] + tail)
                        if term:
                            vec_add(acc, term,
                                    self.field.sign(i * (i + 1) // 2 + n * i))
                    acc = vec_clean(acc)
                    if acc:
                        ops.set(n, (x,) + rest, acc)
        return ops

    def _build_shim(self):
        """Module and algebra operations merged into one checkable structure.

        Tuples whose first slot is a module label evaluate through the
        twisted maps, pure algebra tuples through A; the Stasheff
        identities on mixed tuples are then exactly the module axioms.
        """
        basis = [(l, self.T.space.degree[l]) for l in self.T.space.labels]
        for a in self.A.space.labels:
            if a in self.T.space.index:
                raise ValueError("module and algebra labels collide at %r" % (a,))
            basis.append((a, self.A.deg(a)))
        space = GradedSpace(basis)
        ops = self.ops.copy()
        for n, table in self.A.m.entries.items():
            for args, vec in table.items():
                ops.set(n, args, dict(vec))
        return AInfAlgebra(space, self.field, ops, arity_bound=self.A.arity_bound)

    def check_module_axioms(self, n_max=None):
        """Stasheff identities on (module element, algebra elements) tuples."""
        cap = n_max if n_max is not None else self.A.arity_bound + 1
        for n in range(1, cap + 1):
            for x in self.T.space.labels:
                for rest in itertools.product(self.A.space.labels, repeat=n - 1):
                    res = stasheff_residual(self._shim, (x,) + rest)
                    if res:
                        return CheckReport(False, failure=(n, (x,) + rest, res),
                                           checked_to=cap)
        return CheckReport(True, checked_to=cap)

    def check_base_change(self):
        """Killing positive weight returns the operations of A exactly."""
        A = self.A
        for n in range(1, A.arity_bound + 1):
            for a0 in A.space.labels:
                for rest in itertools.product(A.space.labels, repeat=n - 1):
                    full = self.ops.get(n, (tensor_label(a0, ()),) + rest)
                    got = vec_clean({a2: c for (a2, w2), c in full.items()
                                     if w2 == ()})
                    want = vec_clean(dict(A.m.get(n, (a0,) + rest)))
                    if got != want:
                        return CheckReport(
                            False, failure=(n, (a0,) + rest, got, want))
        return CheckReport(True, checked_to=A.arity_bound)


def universal_deformation(A, N):
    return UniversalDeformation(A, N)
