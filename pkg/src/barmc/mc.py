"""Maurer-Cartan theory over artinian coefficients.

Everything here happens inside A tensor R for an artinian DG algebra R
with nilpotent augmentation ideal m.  Nilpotency makes every
Maurer-Cartan sum finite, and the engine verifies the truncation
rather than assuming it: the first omitted term is evaluated and must
vanish.

The category structure on MC elements follows the insertion formula

    m_n^{a_0..a_n}(x_n, .., x_1) =
        sum (-1)^eps m(a_n^{i_n}, x_n, a_{n-1}^{i_{n-1}}, .., x_1, a_0^{i_0})

with eps = sum_{k>j} (|x_k| + i_k) i_j + sum_k i_k(i_k+1)/2 + sum_k k i_k.
Its n = 1 case is the differential on morphism complexes, and for a DG
algebra it collapses to d(x) + beta x - (-1)^|x| x alpha.
"""

from itertools import product as iter_product
from random import Random

from .ainfinity import (
    check_ainf_morphism,
    check_strict_unital_morphism,
    tensor_label,
    tensor_with_dg,
)
from .artin import quotient_by_power, small_extension_kernel
from .errors import HypothesisNotMet, MathCheckFailure
from .linalg import (
    Complex,
    GradedSpace,
    Matrix,
    SpanSolver,
    Subspace,
    solve,
    solve_linear,
    vec_add,
    vec_clean,
    vec_scale,
    vec_sub,
)

ENUMERATION_CAP = 1 << 16


def _vec_key(v):
    return tuple(sorted((repr(l), str(c)) for l, c in v.items()))


def _insertion_tuples(slots, budget):
    if budget < 0:
        return
    for counts in iter_product(range(budget + 1), repeat=slots):
        if sum(counts) <= budget:
            yield counts


class DeformationSetup:
    """A with coefficients extended by an artinian base R.

    Holds the tensor algebra on A x R, the ideal part A x m where
    Maurer-Cartan elements live, and the nilpotency index that bounds
    every sum.  All MC operations for the pair (A, R) route through
    one instance.
    """

    def __init__(self, A, R):
        if A.field != R.field:
            raise ValueError("algebra and base live over different fields")
        self.A = A
        self.R = R
        self.field = A.field
        self.nu = R.nu
        needed = min(A.arity_bound, self.nu)
        if not A.op_complete_for(needed):
            raise HypothesisNotMet(
                "Maurer-Cartan sums need operations up to arity %d but the "
                "algebra is only complete to %d" % (needed, A.complete_to_arity))
        self.T = tensor_with_dg(A, R.algebra)
        radical = set(R.ideal_labels)
        self.ideal = [l for l in self.T.space.labels if l[1] in radical]
        self._ideal_set = set(self.ideal)
        self.ideal_space = GradedSpace(
            [(l, self.T.deg(l)) for l in self.ideal])
        self.one_vec = (
            {tensor_label(A.unit, R.unit): self.field.one}
            if A.unit is not None else None)

    def ideal_labels_of_degree(self, k):
        return self.ideal_space.labels_of_degree(k)

    def in_ideal(self, v):
        return all(l in self._ideal_set for l in v)

    def check_mc_input(self, alpha):
        for l, c in alpha.items():
            if not c:
                continue
            if l not in self._ideal_set:
                raise ValueError("element has a component %r outside A x m" % (l,))
            if self.T.deg(l) != 1:
                raise ValueError("element has a component %r of degree %d"
                                 % (l, self.T.deg(l)))

    def mc_residual(self, alpha):
        """Sum (-1)^(n(n+1)/2) m_n(alpha..alpha), truncated and verified.

        Terms with n >= nu vanish because their coefficients land in
        m^nu = 0; when the arity bound reaches that far the first such
        term is computed anyway and checked to be zero.
        """
        self.check_mc_input(alpha)
        acc = {}
        for n in range(1, min(self.A.arity_bound, self.nu) + 1):
            term = self.T.eval_m_vectors([alpha] * n)
            if n >= self.nu:
                if vec_clean(term):
                    raise MathCheckFailure(
                        "nilpotency truncation unsound: arity-%d term "
                        "survives m^%d = 0" % (n, self.nu))
                break
            vec_add(acc, term, self.field.sign(n * (n + 1) // 2))
        return vec_clean(acc)

    def is_mc(self, alpha):
        return not self.mc_residual(alpha)

    def enumerate_mc(self, cap=ENUMERATION_CAP):
        """All MC elements, by exhaustion.  Finite prime fields only."""
        p = self.field.p
        if not p:
            raise HypothesisNotMet("enumeration needs a finite prime field")
        labels = self.ideal_labels_of_degree(1)
        if p ** len(labels) > cap:
            raise HypothesisNotMet(
                "enumeration space %d^%d exceeds the cap %d"
                % (p, len(labels), cap))
        found = []
        for coeffs in iter_product(range(p), repeat=len(labels)):
            alpha = vec_clean({l: self.field(c)
                               for l, c in zip(labels, coeffs)})
            if not self.mc_residual(alpha):
                found.append(alpha)
        return found

    def category_op(self, objects, morphisms, check=True):
        """m_n^{a_0..a_n}(x_n, .., x_1) for x_k: a_{k-1} -> a_k.

        morphisms is [x_1, .., x_n], objects [a_0, .., a_n]; the
        insertion sum is finite by the arity bound and nilpotency.
        """
        n = len(morphisms)
        if len(objects) != n + 1:
            raise ValueError("an n-ary operation needs n+1 objects")
        if check:
            for a in objects:
                if self.mc_residual(a):
                    raise HypothesisNotMet(
                        "category operations are defined on MC objects only")
        out = {}
        parts = [sorted(self.T.space.homogeneous_parts(x).items())
                 for x in morphisms]
        if not all(parts):
            return {}
        for choice in iter_product(*parts):
            degs = [deg for deg, _ in choice]
            vecs = [v for _, v in choice]
            vec_add(out, self._category_term(objects, vecs, degs))
        return vec_clean(out)

    def _category_term(self, objects, xs, degs):
        n = len(xs)
        field = self.field
        out = {}
        for counts in _insertion_tuples(n + 1, self.A.arity_bound - n):
            eps = 0
            for k in range(1, n + 1):
                for j in range(k):
                    eps += (degs[k - 1] + counts[k]) * counts[j]
            for k in range(n + 1):
                eps += counts[k] * (counts[k] + 1) // 2 + k * counts[k]
            args = []
            for k in range(n, 0, -1):
                args.extend([objects[k]] * counts[k])
                args.append(xs[k - 1])
            args.extend([objects[0]] * counts[0])
            term = self.T.eval_m_vectors(args)
            if term:
                vec_add(out, term, field.sign(eps))
        return out

    def hom_differential_of_one(self, alpha, beta):
        """m_1^{alpha,beta}(1); equals beta - alpha under strict unitality."""
        if self.one_vec is None:
            raise HypothesisNotMet("the gauge groupoid needs a strict unit")
        return self.category_op([alpha, beta], [self.one_vec], check=False)


def mc_residual(A, R, alpha):
    return DeformationSetup(A, R).mc_residual(alpha)


def enumerate_mc(A, R, cap=ENUMERATION_CAP):
    return DeformationSetup(A, R).enumerate_mc(cap)


def mc_category_ops(A, R, objects, morphisms):
    return DeformationSetup(A, R).category_op(objects, morphisms)


# ---------------------------------------------------------------------------
# morphism complexes and gauge orbits


class HomComplex:
    """(A x m, m_1^{alpha,beta}) for an MC pair.

    Construction assembles the differential on the ideal part and
    certifies exactly that it squares to zero and never leaves A x m.
    """

    def __init__(self, setup, alpha, beta, check_objects=True):
        if check_objects:
            for a in (alpha, beta):
                if setup.mc_residual(a):
                    raise HypothesisNotMet(
                        "morphism complexes are defined between MC elements")
        self.setup = setup
        self.field = setup.field
        self.alpha = alpha
        self.beta = beta
        one = setup.field.one
        d = {}
        for l in setup.ideal:
            img = setup.category_op([alpha, beta], [{l: one}], check=False)
            for out in img:
                if out not in setup._ideal_set:
                    raise MathCheckFailure(
                        "twisted differential leaves A x m at %r -> %r"
                        % (l, out))
            if img:
                d[l] = img
        self.complex = Complex(setup.ideal_space, d, setup.field)
        self.d_of_one = setup.hom_differential_of_one(alpha, beta)

    def apply(self, v):
        """m_1^{alpha,beta} of any element of A x R written as c*1 + u."""
        unit = None if self.setup.one_vec is None \
            else next(iter(self.setup.one_vec))
        out = {}
        for l, c in v.items():
            if unit is not None and l == unit:
                vec_add(out, self.d_of_one, c)
            else:
                vec_add(out, self.complex.d.get(l, {}), c)
        return vec_clean(out)

    def cohomology_dims(self):
        return self.complex.total_cohomology_dims()

    def gauge_image(self):
        """Image of m_1^{alpha,beta} on the degree -1 part of A x m."""
        one = self.field.one
        vecs = [self.complex.d.get(l, {})
                for l in self.setup.ideal_labels_of_degree(-1)]
        return Subspace([v for v in vecs if v], self.field)


class MCMorphism:
    """A gauge orbit in G(alpha, beta): the class of g = 1 + u.

    u is stored reduced against the image of the gauge action, so two
    orbits are equal exactly when their stored parts are equal.
    """

    def __init__(self, homset, u_reduced):
        self.homset = homset
        self.alpha = homset.alpha
        self.beta = homset.beta
        self.u = u_reduced
        self.key = (_vec_key(homset.alpha), _vec_key(homset.beta),
                    _vec_key(u_reduced))

    def vector(self):
        g = dict(self.homset.setup.one_vec)
        vec_add(g, self.u)
        return vec_clean(g)

    def __eq__(self, other):
        return isinstance(other, MCMorphism) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return "MCMorphism(1 + %r)" % (self.u,)


class HomSet:
    """All morphisms alpha -> beta: gauge orbits of solutions of
    m_1^{alpha,beta}(1 + u) = 0 with u in (A x m)^0.

    The equation is affine-linear, so the solution set is a coset of a
    kernel and the orbit space a coset quotient; no search happens.
    """

    def __init__(self, setup, alpha, beta, check_objects=True):
        self.setup = setup
        self.field = setup.field
        self.alpha = alpha
        self.beta = beta
        self.hom_complex = HomComplex(setup, alpha, beta,
                                      check_objects=check_objects)
        deg0 = setup.ideal_labels_of_degree(0)
        deg1 = setup.ideal_labels_of_degree(1)
        row_index = {l: i for i, l in enumerate(deg1)}
        m = Matrix(max(1, len(deg1)), len(deg0), self.field)
        for j, l in enumerate(deg0):
            for out, c in self.hom_complex.complex.d.get(l, {}).items():
                m.entries[(row_index[out], j)] = c
        for out in self.hom_complex.d_of_one:
            if out not in row_index:
                raise MathCheckFailure(
                    "m_1 of the unit has a component outside (A x m)^1")
        rhs = {row_index[out]: -c
               for out, c in self.hom_complex.d_of_one.items()}
        particular = solve(m, rhs)
        _, kernel, _, _ = solve_linear(m)
        self._deg0 = deg0
        self.image = self.hom_complex.gauge_image()
        self.kernel_vecs = [{deg0[j]: c for j, c in kv.items()}
                            for kv in kernel]
        if particular is None:
            self.particular = None
            self.count = 0
        else:
            self.particular = vec_clean(
                {deg0[j]: c for j, c in particular.items()})
            quotient_dim = len(self.kernel_vecs) - self.image.dim
            if quotient_dim < 0:
                raise MathCheckFailure("gauge image escapes the kernel")
            p = self.field.p
            self.count = p ** quotient_dim if p else (
                1 if quotient_dim == 0 else None)

    def is_empty(self):
        return self.particular is None

    def __len__(self):
        if self.count is None:
            raise HypothesisNotMet("infinite hom-set over this field")
        return self.count

    def orbits(self):
        """Orbit representatives; finite prime fields (or rigid) only."""
        if self.particular is None:
            return []
        quotient = []
        span = Subspace(list(self.image.rows), self.field)
        for v in self.kernel_vecs:
            if not span.contains(v):
                quotient.append(v)
                span = Subspace(list(span.rows) + [v], self.field)
        p = self.field.p
        if not p and quotient:
            raise HypothesisNotMet("infinitely many orbits over this field")
        reps = []
        for coeffs in iter_product(range(p or 1), repeat=len(quotient)):
            u = dict(self.particular)
            for c, q in zip(coeffs, quotient):
                vec_add(u, q, self.field(c))
            reps.append(MCMorphism(self, self.image.reduce(vec_clean(u))))
        if len(reps) != self.count:
            raise MathCheckFailure("orbit enumeration disagrees with the count")
        return reps

    def classify(self, g):
        """The orbit of an explicit morphism vector g = 1 + u."""
        one_lbl = next(iter(self.setup.one_vec))
        g = vec_clean(dict(g))
        if g.get(one_lbl) != self.field.one:
            raise ValueError("a gauge element must have unit coefficient 1")
        u = {l: c for l, c in g.items() if l != one_lbl}
        if not self.setup.in_ideal(u):
            raise ValueError("gauge element has components outside 1 + A x m")
        if any(self.setup.T.deg(l) != 0 for l in u):
            raise ValueError("the ideal part of a gauge element sits in degree 0")
        if vec_clean(self.hom_complex.apply(g)):
            raise MathCheckFailure("classify() got a non-morphism")
        return MCMorphism(self, self.image.reduce(vec_clean(u)))

    def contains_vector(self, g):
        one_lbl = next(iter(self.setup.one_vec))
        g = vec_clean(dict(g))
        if g.get(one_lbl) != self.field.one:
            return False
        u = {l: c for l, c in g.items() if l != one_lbl}
        if not self.setup.in_ideal(u) or \
                any(self.setup.T.deg(l) != 0 for l in u):
            return False
        return not vec_clean(self.hom_complex.apply(g))


class MCGroupoid:
    """The groupoid of MC elements and gauge orbits over one setup."""

    def __init__(self, setup):
        self.setup = setup
        self._homsets = {}

    def hom(self, alpha, beta):
        key = (_vec_key(alpha), _vec_key(beta))
        if key not in self._homsets:
            self._homsets[key] = HomSet(self.setup, alpha, beta)
        return self._homsets[key]

    def identity(self, alpha):
        return self.hom(alpha, alpha).classify(self.setup.one_vec)

    def compose(self, g, h):
        """h after g for g: a -> b, h: b -> c, via m_2^{a,b,c}(h, g)."""
        if g.beta != h.alpha:
            raise ValueError("morphisms do not compose")
        w = self.setup.category_op(
            [g.alpha, g.beta, h.beta], [g.vector(), h.vector()], check=False)
        return self.hom(g.alpha, h.beta).classify(w)

    def invert(self, g):
        """Inverse by successive approximation, then exact certification.

        The defect 1 - m_2(g', g) sinks one level deeper into the
        m-adic filtration on every correction, so nu rounds suffice;
        the result is certified to be a genuine morphism and a
        two-sided inverse.
        """
        setup = self.setup
        gp = dict(setup.one_vec)
        for _ in range(setup.nu + 1):
            w = setup.category_op([g.alpha, g.beta, g.alpha],
                                  [g.vector(), gp], check=False)
            defect = vec_clean(vec_sub(setup.one_vec, w))
            if not defect:
                break
            vec_add(gp, defect)
            gp = vec_clean(gp)
        else:
            raise MathCheckFailure("inverse approximation did not land")
        back = self.hom(g.beta, g.alpha).classify(gp)
        left = self.setup.category_op([g.alpha, g.beta, g.alpha],
                                      [g.vector(), gp], check=False)
        right = self.setup.category_op([g.beta, g.alpha, g.beta],
                                       [gp, g.vector()], check=False)
        if vec_clean(vec_sub(left, setup.one_vec)) or \
                vec_clean(vec_sub(right, setup.one_vec)):
            raise MathCheckFailure("certified inverse is not two-sided")
        return back


def hom_groupoid(A, R, alpha, beta):
    return HomSet(DeformationSetup(A, R), alpha, beta)


class Pi0Report:
    """Isomorphism classes of MC elements with their members."""

    def __init__(self, classes):
        self.classes = classes
        self.representatives = [cls[0] for cls in classes]
        self.count = len(classes)

    def class_index_of(self, alpha):
        key = _vec_key(alpha)
        for i, cls in enumerate(self.classes):
            if any(_vec_key(v) == key for v in cls):
                return i
        return None

    def __repr__(self):
        return "Pi0Report(%d classes, %d elements)" % (
            self.count, sum(len(c) for c in self.classes))


def pi0(A, R, cap=ENUMERATION_CAP):
    """Partition of the MC set by existence of a gauge morphism."""
    setup = DeformationSetup(A, R)
    elements = setup.enumerate_mc(cap)
    groupoid = MCGroupoid(setup)
    classes = []
    for alpha in elements:
        for cls in classes:
            if not groupoid.hom(cls[0], alpha).is_empty():
                cls.append(alpha)
                break
        else:
            classes.append([alpha])
    return Pi0Report(classes)


# ---------------------------------------------------------------------------
# obstruction calculus along a square-zero tower layer


class Tower:
    """R -> Rbar = R/m^n with kernel I = m^n, I m = m I = 0.

    Rbar keeps a subset of R's basis labels, so sections are label
    inclusions and projections reuse the quotient's reduction map.
    """

    def __init__(self, R, n):
        try:
            self.kernel_rows = small_extension_kernel(R, n)
        except ValueError as e:
            raise HypothesisNotMet(str(e))
        self.R = R
        self.n = n
        self.Rbar, self._pi, _ = quotient_by_power(R, n)

    def section(self, vec):
        """A vector over A x Rbar read as one over A x R; exact section."""
        return dict(vec)

    def project(self, vec):
        out = {}
        for (a, r), c in vec.items():
            for rbar, cc in self._pi[r].items():
                vec_add(out, {(a, rbar): c * cc})
        return vec_clean(out)


class KernelComplex:
    """A x I with the untwisted differential m_1 x 1 +- 1 x d.

    On A x I every twisted differential collapses to this one because
    I m = m I = 0 kills all insertion terms, so obstruction classes of
    every flavor live here.
    """

    def __init__(self, A, tower):
        self.A = A
        self.tower = tower
        self.field = A.field
        rows = tower.kernel_rows
        R = tower.R
        degs = []
        for k, row in enumerate(rows):
            d = {R.deg(l) for l in row}
            if len(d) != 1:
                raise MathCheckFailure("kernel layer row %d is not homogeneous" % k)
            degs.append(d.pop())
        self.row_solver = SpanSolver(rows, self.field)
        self.setup = DeformationSetup(A, R)
        labels = [(a, k) for a in A.space.labels for k in range(len(rows))]
        self.space = GradedSpace(
            [((a, k), A.deg(a) + degs[k]) for a, k in labels])
        d = {}
        one = self.field.one
        for a, k in labels:
            img = self.setup.T.eval_m_vectors(
                [self._embed({(a, k): one})])
            coords = self.coordinates(img)
            if coords:
                d[(a, k)] = coords
        self.complex = Complex(self.space, d, self.field)
        self._cohomologies = {}

    def _embed(self, coord_vec):
        out = {}
        for (a, k), c in coord_vec.items():
            for r, cc in self.tower.kernel_rows[k].items():
                vec_add(out, {(a, r): c * cc})
        return vec_clean(out)

    def coordinates(self, vec):
        """Rewrite an A x R vector supported in A x I over the row basis."""
        by_a = {}
        for (a, r), c in vec_clean(vec).items():
            by_a.setdefault(a, {})[r] = c
        out = {}
        for a, rvec in by_a.items():
            coords = self.row_solver.coordinates(rvec)
            if coords is None:
                raise MathCheckFailure(
                    "vector escapes the kernel layer at %r" % (a,))
            for k, c in coords.items():
                out[(a, k)] = c
        return vec_clean(out)

    def cohomology(self, degree):
        if degree not in self._cohomologies:
            self._cohomologies[degree] = self.complex.cohomology(degree)
        return self._cohomologies[degree]


class ObstructionClass:
    """A cohomology class in A x I with its representative."""

    def __init__(self, kernel_complex, vec, degree):
        self.kernel_complex = kernel_complex
        self.vec = vec_clean(vec)
        self.degree = degree
        self.coords = kernel_complex.coordinates(self.vec)
        if vec_clean(kernel_complex.complex.apply_d(self.coords)):
            raise MathCheckFailure("obstruction representative is not a cocycle")
        self._h = kernel_complex.cohomology(degree)

    @property
    def is_zero(self):
        return self._h.class_is_zero(self.coords)

    def same_class_as(self, other):
        return self._h.classes_equal(self.coords, other.coords)

    def __repr__(self):
        return "ObstructionClass(deg %d, %s)" % (
            self.degree, "zero" if self.is_zero else repr(self.vec))


def _second_lift_perturbation(kernel_complex, degree, seed):
    labels = kernel_complex.space.labels_of_degree(degree)
    if not labels:
        return {}
    rng = Random(seed)
    field = kernel_complex.field
    span = field.p if field.p else 7
    vec = {l: field(rng.randrange(1, span)) for l in labels
           if rng.random() < 0.7}
    if not vec:
        vec = {labels[0]: field.one}
    return kernel_complex._embed(vec)


def obstruction_o2(A, tower, alpha_bar, seed=1):
    """The lifting obstruction [sum (-1)^(n(n+1)/2 + 1) m_n(lift..lift)].

    Sits in H^2(A x I); computed from one lift, then recomputed from a
    perturbed second lift to certify independence.
    """
    setup_bar = DeformationSetup(A, tower.Rbar)
    if setup_bar.mc_residual(alpha_bar):
        raise HypothesisNotMet("obstruction is defined on MC elements only")
    kc = KernelComplex(A, tower)
    setup = kc.setup

    def phi(lift):
        return vec_scale(setup.mc_residual(lift), -setup.field.one)

    first = tower.section(alpha_bar)
    cls = ObstructionClass(kc, phi(first), 2)
    eta = _second_lift_perturbation(kc, 1, seed)
    if eta:
        second = dict(first)
        vec_add(second, eta)
        cls2 = ObstructionClass(kc, phi(vec_clean(second)), 2)
        if not cls.same_class_as(cls2):
            raise MathCheckFailure("obstruction class depends on the lift")
    return cls


def obstruction_o1(A, tower, alpha1, alpha2, f_bar):
    """Obstruction to lifting a morphism between chosen MC lifts.

    alpha1, alpha2 are MC over R and project to the endpoints of the
    downstairs morphism f_bar; the class of m_1^{alpha1,alpha2} of any
    set-level lift of f_bar lives in H^1(A x I) and vanishes exactly
    when a morphism lift with these endpoints exists.
    """
    kc = KernelComplex(A, tower)
    setup = kc.setup
    for a in (alpha1, alpha2):
        if setup.mc_residual(a):
            raise HypothesisNotMet("endpoints must be MC over the big base")
    setup_bar = DeformationSetup(A, tower.Rbar)
    down = HomComplex(setup_bar, tower.project(alpha1),
                      tower.project(alpha2), check_objects=False)
    if vec_clean(down.apply(f_bar)):
        raise HypothesisNotMet("f is not a morphism downstairs")
    hc = HomComplex(setup, alpha1, alpha2, check_objects=False)
    return ObstructionClass(kc, hc.apply(tower.section(f_bar)), 1)


class DifferenceClass:
    """o_0 of two lifts of one morphism: zero iff they are gauge equal."""

    def __init__(self, kernel_class, in_gauge_image):
        self.kernel_class = kernel_class
        self.is_zero = in_gauge_image

    def __repr__(self):
        return "DifferenceClass(%s)" % ("zero" if self.is_zero else "nonzero")


def obstruction_o0(A, tower, alpha, beta, f_tilde, f_tilde2):
    """Difference class of two morphism lifts with equal projections.

    The difference is a cocycle in (A x I)^0; its image in H^0 of the
    big morphism complex is the obstruction, so it vanishes exactly
    when the lifts agree as gauge orbits.
    """
    kc = KernelComplex(A, tower)
    setup = kc.setup
    hc = HomComplex(setup, alpha, beta, check_objects=True)
    one_lbl = next(iter(setup.one_vec))
    for g in (f_tilde, f_tilde2):
        u = {l: c for l, c in vec_clean(g).items() if l != one_lbl}
        if g.get(one_lbl) != setup.field.one or \
                any(setup.T.deg(l) != 0 for l in u):
            raise HypothesisNotMet(
                "morphism lifts have the shape 1 + u with u in (A x m)^0")
        if vec_clean(hc.apply(g)):
            raise HypothesisNotMet("both arguments must be lifted morphisms")
    if vec_clean(vec_sub(tower.project(f_tilde), tower.project(f_tilde2))):
        raise ValueError("the two lifts project to different morphisms")
    delta = vec_sub(f_tilde2, f_tilde)
    cls = ObstructionClass(kc, delta, 0)
    return DifferenceClass(cls, hc.gauge_image().contains(delta))


class LiftOutcome:
    def __init__(self, ok, element=None, level=None, obstruction=None,
                 trace=None):
        self.ok = ok
        self.element = element
        self.level = level
        self.obstruction = obstruction
        self.trace = trace or []

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "LiftOutcome(lifted, %r)" % (self.element,)
        return "LiftOutcome(obstructed at level %d)" % self.level


def lift_mc(A, R, alpha0, seed=1):
    """Greedy order-by-order lifting of alpha0 from R/m^2 up to R.

    At each layer the obstruction is computed; when it vanishes the
    correction solves an affine-linear system, deterministically.  On
    failure the outcome carries the level and the obstruction class.
    """
    if R.nu < 2:
        setup = DeformationSetup(A, R)
        if setup.mc_residual(alpha0):
            raise HypothesisNotMet("the seed element must be MC over R/m^2")
        return LiftOutcome(True, element=vec_clean(dict(alpha0)), level=R.nu)
    levels = {n: quotient_by_power(R, n)[0] for n in range(2, R.nu + 1)}
    setup0 = DeformationSetup(A, levels[2])
    if setup0.mc_residual(alpha0):
        raise HypothesisNotMet("the seed element must be MC over R/m^2")
    current = dict(alpha0)
    trace = []
    for n in range(2, R.nu):
        big = levels[n + 1]
        tower = Tower(big, n)
        if set(tower.Rbar.space.labels) != set(levels[n].space.labels):
            raise MathCheckFailure("tower levels disagree on basis labels")
        cls = obstruction_o2(A, tower, current)
        trace.append({"level": n, "obstruction_zero": cls.is_zero})
        if not cls.is_zero:
            return LiftOutcome(False, level=n, obstruction=cls, trace=trace)
        kc = cls.kernel_complex
        setup = kc.setup
        lift = tower.section(current)
        residual = setup.mc_residual(lift)
        target = kc.coordinates(residual)
        m, src, dst = kc.complex.matrix_of_d(1)
        dst_index = {l: i for i, l in enumerate(dst)}
        rhs = {dst_index[l]: c for l, c in target.items()}
        sol = solve(m, rhs)
        if sol is None:
            raise MathCheckFailure(
                "zero obstruction but the correction system is inconsistent")
        eta = kc._embed({src[j]: c for j, c in sol.items()})
        vec_add(lift, eta)
        current = vec_clean(lift)
        if setup.mc_residual(current):
            raise MathCheckFailure("corrected lift fails the MC equation")
    return LiftOutcome(True, element=current, level=R.nu, trace=trace)


# ---------------------------------------------------------------------------
# pushforward along morphisms and the invariance report


def _eval_f_tensor(f, R, vecs):
    """(f_n x mu_R)(v_1, .., v_n) with the tensor Koszul sign.

    Same regrouping exponent as the tensor-algebra operations: moving
    each R-factor past the later A-factors costs deg_A * deg_R.
    """
    n = len(vecs)
    field = f.source.field
    out = {}
    for combo in iter_product(*[sorted(v.items(), key=lambda kv: repr(kv[0]))
                                for v in vecs]):
        labels = [l for l, _ in combo]
        coeff = field.one
        for _, c in combo:
            coeff = coeff * c
        a_args = tuple(a for a, _ in labels)
        r_args = [r for _, r in labels]
        fvec = f.eval_f(a_args)
        if not fvec:
            continue
        rprod = {r_args[0]: field.one}
        for r in r_args[1:]:
            nxt = {}
            for lbl, c in rprod.items():
                vec_add(nxt, R.algebra.m.get(2, (lbl, r)), c)
            rprod = vec_clean(nxt)
            if not rprod:
                break
        if not rprod:
            continue
        exponent = 0
        for i in range(n):
            for j in range(i + 1, n):
                exponent += f.source.deg(a_args[j]) * R.deg(r_args[i])
        sign = field.sign(exponent)
        for out_a, ca in fvec.items():
            for out_r, cr in rprod.items():
                vec_add(out, {(out_a, out_r): sign * coeff * ca * cr})
    return vec_clean(out)


def _require_strictly_unital(f):
    rep = check_strict_unital_morphism(f)
    if not rep.ok:
        raise HypothesisNotMet("pushforward needs a strictly unital morphism")


def pushforward_mc(f, R, alpha, certify=True):
    """f_R^*(alpha) = sum (-1)^(n(n-1)/2) f_n(alpha, .., alpha)."""
    _require_strictly_unital(f)
    src = DeformationSetup(f.source, R)
    if src.mc_residual(alpha):
        raise HypothesisNotMet("pushforward is defined on MC elements")
    field = f.source.field
    out = {}
    for n in range(1, min(f.arity_bound, R.nu - 1) + 1):
        term = _eval_f_tensor(f, R, [alpha] * n)
        vec_add(out, term, field.sign(n * (n - 1) // 2))
    out = vec_clean(out)
    if certify:
        if DeformationSetup(f.target, R).mc_residual(out):
            raise MathCheckFailure("pushforward violates the MC equation")
    return out


def pushforward_morphism(f, R, alpha, beta, g):
    """f_R^* on a morphism vector g: sum of insertions f(beta^i, g, alpha^j).

    The exponent is the morphism-level one, with i(i-1)/2 per slot in
    place of the object-level i(i+1)/2.
    """
    _require_strictly_unital(f)
    setup = DeformationSetup(f.source, R)
    field = setup.field
    out = {}
    for deg, part in sorted(setup.T.space.homogeneous_parts(g).items()):
        for counts in _insertion_tuples(2, f.arity_bound - 1):
            j, i = counts
            eps = (deg + i) * j + i * (i - 1) // 2 + j * (j - 1) // 2 + i
            term = _eval_f_tensor(f, R, [beta] * i + [part] + [alpha] * j)
            if term:
                vec_add(out, term, field.sign(eps))
    return vec_clean(out)


class InvarianceReport:
    def __init__(self, ok, pi0_counts, hom_counts, hom_dims, problems):
        self.ok = ok
        self.pi0_counts = pi0_counts
        self.hom_counts = hom_counts
        self.hom_dims = hom_dims
        self.problems = problems

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "InvarianceReport(ok, pi0=%d)" % self.pi0_counts[0]
        return "InvarianceReport(%d problems)" % len(self.problems)


def _h_iso_check(f):
    """H(f_1) must be an isomorphism in every degree."""
    cx1 = f.source.complex()
    cx2 = f.target.complex()
    degrees = set(f.source.space.degrees_present()) | \
        set(f.target.space.degrees_present())
    for i in sorted(degrees):
        h1 = cx1.cohomology(i)
        h2 = cx2.cohomology(i)
        if h1.dim != h2.dim:
            return "H^%d dims differ: %d vs %d" % (i, h1.dim, h2.dim)
        if h1.dim == 0:
            continue
        m = Matrix(h2.dim, h1.dim, f.source.field)
        for j, rep in enumerate(h1.representatives):
            img = {}
            for l, c in rep.items():
                vec_add(img, f.eval_f((l,)), c)
            coords = h2.project(img)
            for r, c in coords.items():
                m.entries[(r, j)] = c
        rank, _, _, _ = solve_linear(m)
        if rank != h1.dim:
            return "H^%d map is not invertible" % i
    return None


def invariance_check(f, R, cap=ENUMERATION_CAP, morphism_check_arity=3):
    """The finite shadow of gauge-equivalence invariance.

    For a strictly unital quasi-isomorphism f, pushforward must induce
    a bijection on isomorphism classes and preserve hom-set counts and
    morphism-complex cohomology.  Refuses anything that fails the
    hypothesis gates; returns a report of exact count comparisons.
    """
    rep = check_ainf_morphism(f, morphism_check_arity)
    if not rep.ok:
        raise HypothesisNotMet("f fails the morphism identities: %r" % rep)
    _require_strictly_unital(f)
    problem = _h_iso_check(f)
    if problem:
        raise HypothesisNotMet("f is not a quasi-isomorphism: " + problem)
    setup1 = DeformationSetup(f.source, R)
    setup2 = DeformationSetup(f.target, R)
    mc1 = setup1.enumerate_mc(cap)
    mc2 = setup2.enumerate_mc(cap)
    g1 = MCGroupoid(setup1)
    g2 = MCGroupoid(setup2)
    problems = []
    report1 = pi0(f.source, R, cap)
    report2 = pi0(f.target, R, cap)
    if report1.count != report2.count:
        problems.append("pi0 counts differ: %d vs %d"
                        % (report1.count, report2.count))
    images = {i: pushforward_mc(f, R, alpha)
              for i, alpha in enumerate(mc1)}
    class_map = {}
    for i, alpha in enumerate(mc1):
        src_cls = report1.class_index_of(alpha)
        dst_cls = report2.class_index_of(images[i])
        if dst_cls is None:
            problems.append("pushforward left the MC set at element %d" % i)
            continue
        if src_cls in class_map and class_map[src_cls] != dst_cls:
            problems.append("pushforward is not constant on class %d" % src_cls)
        class_map[src_cls] = dst_cls
    if len(set(class_map.values())) != report1.count:
        problems.append("pushforward does not separate isomorphism classes")
    hom_counts = []
    hom_dims = []
    for i, a in enumerate(mc1):
        for j, b in enumerate(mc1):
            h1 = g1.hom(a, b)
            h2 = g2.hom(images[i], images[j])
            hom_counts.append((h1.count, h2.count))
            if h1.count != h2.count:
                problems.append(
                    "hom counts differ at pair (%d, %d): %d vs %d"
                    % (i, j, h1.count, h2.count))
            d1 = h1.hom_complex.cohomology_dims()
            d2 = h2.hom_complex.cohomology_dims()
            hom_dims.append((d1, d2))
            if d1 != d2:
                problems.append(
                    "hom-complex cohomology differs at pair (%d, %d)" % (i, j))
    return InvarianceReport(not problems,
                            (report1.count, report2.count),
                            hom_counts, hom_dims, problems)
