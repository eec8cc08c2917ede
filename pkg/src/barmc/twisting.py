"""Twisting cochains, twisted modules, and the classical comparison.

A Maurer-Cartan element alpha in (A x m)^1 is the same data as a
degree-1 map tau: R* -> A that kills the counit functional: tau(r*)
reads off the A-part of alpha at the base label r.  Pushing tau
through iterated deconcatenation gives a map from the dual word
algebra S_N into R, and the same left-insertion sums that twist the
hom complexes make A x R into an A-infinity module.

Nothing here trusts a dualization sign.  The word-algebra map is
forced by multiplicativity from its weight-one entries and then
certified entrywise to be a unital DG algebra map; the twisted module
certifies that its differential squares to zero and that the module
Stasheff identities hold on every mixed tuple.  The classical
comparison runs both sides by exhaustion: algebra maps out of a
generators-and-relations presentation of H^0(S_N) on one side, gauge
classes on the other, matched through the corepresenting maps.
"""

from itertools import product as iter_product

from .ainfinity import (
    AInfAlgebra,
    CheckReport,
    StructureMaps,
    stasheff_residual,
    tensor_label,
)
from .bar import dual_dg_algebra, koszul_probe, s_hat_cohomology
from .errors import HypothesisNotMet, MathCheckFailure
from .linalg import (
    Complex,
    GradedSpace,
    Matrix,
    Subspace,
    solve_linear,
    vec_add,
    vec_clean,
)
from .mc import ENUMERATION_CAP, DeformationSetup, pi0


def _key(v):
    return tuple(sorted((repr(l), str(c)) for l, c in v.items()))


# ---------------------------------------------------------------------------
# the cochain dictionary


class TwistingCochain:
    """tau: R* -> A, stored as the table of values on ideal functionals.

    table[r] is tau(r*); the unit functional and any label outside the
    table go to zero, so tau passes through the coaugmentation by
    construction.  Each value must sit in the single degree that makes
    tau a degree-1 map, and the generalized Maurer-Cartan equation for
    the corresponding element of A x m is checked at construction:
    a table that fails it is not a twisting cochain and is rejected.
    """

    def __init__(self, setup, table):
        self.setup = setup
        self.A = setup.A
        self.R = setup.R
        self.field = setup.field
        radical = set(self.R.ideal_labels)
        clean = {}
        for r, vec in table.items():
            if r not in radical:
                raise ValueError(
                    "cochain value on %r: not an augmentation-ideal label" % (r,))
            vec = vec_clean(dict(vec))
            want = 1 - self.R.deg(r)
            for a in vec:
                if self.A.deg(a) != want:
                    raise ValueError(
                        "tau(%r*) has a component %r of degree %d, "
                        "but a degree-1 cochain needs %d"
                        % (r, a, self.A.deg(a), want))
            if vec:
                clean[r] = vec
        self.table = clean
        self.admissible = all(self.A.unit not in vec
                              for vec in clean.values())
        self.residual = setup.mc_residual(self.element())
        if self.residual:
            raise ValueError(
                "the table fails the generalized Maurer-Cartan equation "
                "(residual %r)" % (self.residual,))

    @classmethod
    def from_element(cls, setup, alpha):
        setup.check_mc_input(alpha)
        table = {}
        for (a, r), c in vec_clean(dict(alpha)).items():
            table.setdefault(r, {})[a] = c
        return cls(setup, table)

    def value(self, r_label):
        return dict(self.table.get(r_label, {}))

    def element(self):
        """The corresponding alpha = sum of tau(r*) x r in (A x m)^1."""
        out = {}
        for r, vec in self.table.items():
            for a, c in vec.items():
                out[tensor_label(a, r)] = c
        return out

    def rho(self):
        """The transposed table: for each letter a, the element of m
        that pairs tau against a.  This is the weight-one layer of the
        corepresenting map."""
        out = {}
        for r, vec in self.table.items():
            for a, c in vec.items():
                out.setdefault(a, {})[r] = c
        return {a: vec_clean(v) for a, v in out.items()}

    def __repr__(self):
        return "TwistingCochain(%d nonzero values%s)" % (
            len(self.table), "" if self.admissible else ", not admissible")


def cochain_from_mc(A, R, alpha):
    return TwistingCochain.from_element(DeformationSetup(A, R), alpha)


def mc_from_cochain(tau):
    return tau.element()


# ---------------------------------------------------------------------------
# the corepresenting map S_N -> R


class CorepresentingHom:
    """The word-algebra map g*: S_N -> R induced by a twisting cochain.

    Multiplicativity forces the whole map from its weight-one layer: a
    single-letter functional (a)* goes to rho(a), and a longer word to
    the ordered product of its letters' images, times the sign of
    moving the shifted letters past each other,

        (a_1 .. a_k)*  |->  (-1)^(sum_{i<j} s_i s_j) rho(a_1) .. rho(a_k)

    with s_i the shifted degree of a_i.  What makes this THE
    corepresenting map is certified rather than assumed: construction
    checks entrywise that the result is a unital augmented DG algebra
    map and that its weight-one layer returns the cochain.  The
    differential compatibility check is where the Maurer-Cartan
    equation for tau re-enters; it can only trip if the upstream
    validation was unsound.
    """

    def __init__(self, tau, N, dual=None):
        if not tau.admissible:
            raise HypothesisNotMet(
                "the corepresenting map needs an admissible cochain "
                "(values inside the augmentation ideal of A)")
        R = tau.R
        if N < R.nu:
            raise HypothesisNotMet(
                "truncation order %d is below the nilpotency index %d; "
                "the word algebra would truncate products the base still "
                "sees, and multiplicativity would fail" % (N, R.nu))
        self.tau = tau
        self.R = R
        self.N = N
        self.field = tau.field
        self.S = dual if dual is not None else dual_dg_algebra(tau.A, N)
        if self.S.N != N:
            raise ValueError("supplied dual truncation has order %d, not %d"
                             % (self.S.N, N))
        rho = tau.rho()
        sdeg = self.S.bar.sdeg
        entries = {(): {R.unit: self.field.one}}
        for word in self.S.words:
            if not word:
                continue
            acc = {R.unit: self.field.one}
            for letter in word:
                acc = R.multiply(acc, rho.get(letter, {}))
                if not acc:
                    break
            degs = [sdeg[l] for l in word]
            eps = sum(degs[i] * degs[j]
                      for i in range(len(degs)) for j in range(i + 1, len(degs)))
            entries[word] = vec_clean(
                {r: self.field.sign(eps) * c for r, c in acc.items()})
        self._rho = rho
        self.entries = entries
        self._certify()

    def apply(self, vec):
        out = {}
        for w, c in vec.items():
            vec_add(out, self.entries.get(w, {}), c)
        return vec_clean(out)

    def _certify(self):
        R, S = self.R, self.S
        for w, img in self.entries.items():
            for r in img:
                if R.deg(r) != S.space.degree[w]:
                    raise MathCheckFailure(
                        "image of %r lands in the wrong degree" % (w,))
            if w and R.unit in img:
                raise MathCheckFailure(
                    "image of %r escapes the augmentation ideal" % (w,))
        for U in S.words:
            for V in S.words:
                lhs = self.apply(S.algebra.m.get(2, (U, V)))
                rhs = R.multiply(self.entries[U], self.entries[V])
                if lhs != rhs:
                    raise MathCheckFailure(
                        "multiplicativity fails at (%r, %r)" % (U, V))
        for w in S.words:
            lhs = self.apply(S.algebra.m.get(1, (w,)))
            rhs = R.d_of(self.entries[w])
            if lhs != rhs:
                raise MathCheckFailure(
                    "differential compatibility fails at %r; the cochain "
                    "does not satisfy the Maurer-Cartan equation" % (w,))
        for a in self.tau.A.ideal_labels():
            if self.entries.get((a,), {}) != self._rho.get(a, {}):
                raise MathCheckFailure(
                    "weight-one layer does not return the cochain at %r" % (a,))

    def __repr__(self):
        return "CorepresentingHom(order %d, %d words)" % (
            self.N, len(self.entries))


def corepresenting_hom(tau, N, dual=None):
    return CorepresentingHom(tau, N, dual=dual)


def check_tower_compatibility(big, small):
    """The corepresenting maps at two orders agree on shared words."""
    if big.N < small.N:
        raise ValueError("pass the finer truncation first")
    for w in small.S.words:
        if big.entries.get(w, {}) != small.entries.get(w, {}):
            return False
    return True


# ---------------------------------------------------------------------------
# twisted modules


class TwistedModule:
    """A x R carrying the structure maps twisted by alpha.

    The n-th map takes one element of A x R and n - 1 elements of A,
    with the twist inserted on the left:

        m_n(x, a_1, .., a_{n-1}) =
            sum over i >= 0 of (-1)^(i(i+1)/2 + n i)
                m_{n+i}(alpha, .., alpha, x, a_1 x 1, .., a_{n-1} x 1).

    Setting alpha = 0 recovers the tensor algebra operations on the
    nose.  Construction certifies that the differential squares to
    zero, naming a witness basis element when it does not; that is
    exactly how a non-Maurer-Cartan twist surfaces.  The module
    Stasheff identities are checked on every mixed tuple through a
    shim that merges the module maps with the operations of A.
    """

    def __init__(self, setup, alpha, check=True):
        setup.check_mc_input(alpha)
        self.setup = setup
        self.A = setup.A
        self.R = setup.R
        self.T = setup.T
        self.field = setup.field
        self.alpha = vec_clean(dict(alpha))
        self.space = self.T.space
        self.ops = self._assemble()
        self._certify_d_squared()
        d = {l: dict(self.ops.get(1, (l,))) for l in self.space.labels
             if self.ops.get(1, (l,))}
        self.complex = Complex(self.space, d, self.field)
        self._shim = self._build_shim()
        if check:
            rep = self.check_module_axioms()
            if not rep.ok:
                raise MathCheckFailure(
                    "module axioms fail on %r" % (rep.failure,))

    def _assemble(self):
        A, T = self.A, self.T
        one = self.field.one
        nu = self.setup.nu
        ops = StructureMaps()
        for n in range(1, A.arity_bound + 1):
            for x in self.space.labels:
                xvec = {x: one}
                for rest in iter_product(A.space.labels, repeat=n - 1):
                    tail = [{tensor_label(a, self.R.unit): one} for a in rest]
                    acc = {}
                    for i in range(min(A.arity_bound - n, nu) + 1):
                        term = T.eval_m_vectors(
                            [self.alpha] * i + [xvec] + tail)
                        if i >= nu:
                            if vec_clean(term):
                                raise MathCheckFailure(
                                    "nilpotency truncation unsound: %d-fold "
                                    "insertion survives m^%d = 0" % (i, nu))
                            break
                        if term:
                            vec_add(acc, term,
                                    self.field.sign(i * (i + 1) // 2 + n * i))
                    acc = vec_clean(acc)
                    if acc:
                        ops.set(n, (x,) + rest, acc)
        return ops

    def _certify_d_squared(self):
        one = self.field.one
        for l in self.space.labels:
            w = self.differential(self.differential({l: one}))
            if w:
                raise MathCheckFailure(
                    "twisted differential fails to square to zero at %r "
                    "(residue %r); the twist does not satisfy the "
                    "Maurer-Cartan equation" % (l, w))

    def _build_shim(self):
        basis = [(l, self.space.degree[l]) for l in self.space.labels]
        for a in self.A.space.labels:
            if a in self.space.index:
                raise ValueError(
                    "module and algebra labels collide at %r" % (a,))
            basis.append((a, self.A.deg(a)))
        space = GradedSpace(basis)
        ops = self.ops.copy()
        for n, table in self.A.m.entries.items():
            for args, vec in table.items():
                ops.set(n, args, dict(vec))
        return AInfAlgebra(space, self.field, ops,
                           arity_bound=self.A.arity_bound)

    def check_module_axioms(self, n_max=None):
        """Stasheff identities on (module element, algebra elements) tuples."""
        cap = n_max if n_max is not None else self.A.arity_bound + 1
        for n in range(1, cap + 1):
            for x in self.space.labels:
                for rest in iter_product(self.A.space.labels, repeat=n - 1):
                    res = stasheff_residual(self._shim, (x,) + rest)
                    if res:
                        return CheckReport(False, failure=(n, (x,) + rest, res),
                                           checked_to=cap)
        return CheckReport(True, checked_to=cap)

    def differential(self, v):
        out = {}
        for l, c in v.items():
            vec_add(out, self.ops.get(1, (l,)), c)
        return vec_clean(out)

    def op(self, x_vec, a_vecs):
        """m_n(x, a_1, .., a_{n-1}) extended linearly from the tables."""
        n = 1 + len(a_vecs)
        out = {}
        for x, cx in x_vec.items():
            for combo in iter_product(*(sorted(a.items()) for a in a_vecs)):
                coeff = cx
                for _, c in combo:
                    coeff = coeff * c
                args = (x,) + tuple(l for l, _ in combo)
                vec_add(out, self.ops.get(n, args), coeff)
        return vec_clean(out)

    def right_action(self, x_vec, r_vec):
        """x . r through the tensor algebra; needs the strict unit of A."""
        if self.A.unit is None:
            raise HypothesisNotMet("the base action needs a strict unit")
        embed = {tensor_label(self.A.unit, r): c for r, c in r_vec.items()}
        return self.T.eval_m_vectors([x_vec, embed])

    def cohomology_dims(self):
        return self.complex.total_cohomology_dims()


def twisted_module(A, alpha, R, check=True):
    return TwistedModule(DeformationSetup(A, R), alpha, check=check)


class ModuleIsomorphism:
    """Composition with a gauge morphism, between twisted modules.

    For g: alpha -> beta the map x |-> m_2^{0,alpha,beta}(g, x) sends
    the alpha-twist to the beta-twist.  Construction certifies that it
    is a chain map and invertible; when the algebra is honestly DG the
    compatibility with the module action is strict and checked on
    every pair, otherwise the higher components are available but only
    the chain level is asserted.
    """

    def __init__(self, setup, g, check=True):
        self.setup = setup
        self.field = setup.field
        self.g = g
        self.source = TwistedModule(setup, g.alpha, check=False)
        self.target = TwistedModule(setup, g.beta, check=False)
        one = self.field.one
        gvec = g.vector()
        self.phi = {}
        for l in setup.T.space.labels:
            img = setup.category_op([{}, g.alpha, g.beta],
                                    [{l: one}, gvec], check=False)
            if img:
                self.phi[l] = img
        if check:
            self._certify()

    def apply(self, v):
        out = {}
        for l, c in v.items():
            vec_add(out, self.phi.get(l, {}), c)
        return vec_clean(out)

    def component(self, k, x_vec, a_vecs):
        """The k-th higher piece m_{k+1}(g, x, a_1 x 1, .., a_{k-1} x 1)."""
        if len(a_vecs) != k - 1:
            raise ValueError("component %d takes %d algebra slots" % (k, k - 1))
        r_unit = self.setup.R.unit
        embedded = [{tensor_label(a, r_unit): c for a, c in v.items()}
                    for v in a_vecs]
        morphisms = list(reversed(embedded)) + [x_vec, self.g.vector()]
        objects = [{}] * k + [self.g.alpha, self.g.beta]
        return self.setup.category_op(objects, morphisms, check=False)

    def _certify(self):
        labels = self.setup.T.space.labels
        one = self.field.one
        for l in labels:
            lhs = self.apply(self.source.differential({l: one}))
            rhs = self.target.differential(self.apply({l: one}))
            if lhs != rhs:
                raise MathCheckFailure(
                    "gauge transport is not a chain map at %r" % (l,))
        idx = {l: i for i, l in enumerate(labels)}
        m = Matrix(len(labels), len(labels), self.field)
        for j, l in enumerate(labels):
            for out, c in self.phi.get(l, {}).items():
                m.entries[(idx[out], j)] = c
        rank, _, _, _ = solve_linear(m)
        if rank != len(labels):
            raise MathCheckFailure("gauge transport is not invertible")
        if self.setup.A.arity_bound <= 2:
            for l in labels:
                for a in self.setup.A.space.labels:
                    lhs = self.apply(self.source.op({l: one}, [{a: one}]))
                    rhs = self.target.op(self.apply({l: one}), [{a: one}])
                    if lhs != rhs:
                        raise MathCheckFailure(
                            "gauge transport breaks the action at (%r, %r)"
                            % (l, a))


def gauge_module_isomorphism(setup, g, check=True):
    return ModuleIsomorphism(setup, g, check=check)


class TwistedComodule:
    """A x R* for a classical base, twisted through contraction.

    The label (a, r) stands for a x r*.  Each insertion multiplies its
    A-parts on the left exactly as in the twisted module, while the
    base side transposes left multiplication into a contraction of
    functionals.  Classical bases only: their dual carries no
    differential and no Koszul signs, so the transpose introduces no
    second sign convention to trust.  The same certifications run:
    the differential squares to zero with a witness otherwise, and the
    module Stasheff identities hold on every mixed tuple.
    """

    def __init__(self, setup, alpha, check=True):
        if not setup.R.classical:
            raise HypothesisNotMet(
                "the dual-side twist is implemented for bases concentrated "
                "in degree 0")
        setup.check_mc_input(alpha)
        self.setup = setup
        self.A = setup.A
        self.R = setup.R
        self.field = setup.field
        self.alpha = vec_clean(dict(alpha))
        self.space = GradedSpace(
            [(tensor_label(a, r), self.A.deg(a))
             for a in self.A.space.labels for r in self.R.space.labels])
        self.ops = self._assemble()
        self._certify_d_squared()
        d = {l: dict(self.ops.get(1, (l,))) for l in self.space.labels
             if self.ops.get(1, (l,))}
        self.complex = Complex(self.space, d, self.field)
        self._shim = self._build_shim()
        if check:
            rep = self.check_module_axioms()
            if not rep.ok:
                raise MathCheckFailure(
                    "comodule axioms fail on %r" % (rep.failure,))

    def _contract(self, s_vec, r):
        """The functional u |-> r*(s u), as a vector of functionals."""
        out = {}
        for s, cs in s_vec.items():
            for u in self.R.space.labels:
                c = self.R.algebra.m.get(2, (s, u)).get(r)
                if c:
                    vec_add(out, {u: cs * c})
        return vec_clean(out)

    def _insertion(self, i, a, r, rest):
        """i-fold twist of m_n on a x r*, summed over ordered choices."""
        A = self.A
        out = {}
        if i == 0:
            avec = A.eval_m((a,) + rest)
            for a2, c in avec.items():
                vec_add(out, {tensor_label(a2, r): c})
            return out
        comps = sorted(self.alpha.items())
        for combo in iter_product(comps, repeat=i):
            coeff = self.field.one
            for _, c in combo:
                coeff = coeff * c
            xs = tuple(l[0] for l, _ in combo)
            sprod = {combo[0][0][1]: self.field.one}
            for (lbl, _) in combo[1:]:
                sprod = self.R.multiply(sprod, {lbl[1]: self.field.one})
            if not sprod:
                continue
            avec = A.eval_m(xs + (a,) + rest)
            if not avec:
                continue
            dual = self._contract(sprod, r)
            for a2, ca in avec.items():
                for u, cu in dual.items():
                    vec_add(out, {tensor_label(a2, u): coeff * ca * cu})
        return out

    def _assemble(self):
        A = self.A
        nu = self.setup.nu
        ops = StructureMaps()
        for n in range(1, A.arity_bound + 1):
            for a in A.space.labels:
                for r in self.R.space.labels:
                    for rest in iter_product(A.space.labels, repeat=n - 1):
                        acc = {}
                        for i in range(min(A.arity_bound - n, nu) + 1):
                            term = self._insertion(i, a, r, rest)
                            if i >= nu:
                                if vec_clean(term):
                                    raise MathCheckFailure(
                                        "nilpotency truncation unsound in "
                                        "the dual-side twist")
                                break
                            if term:
                                vec_add(acc, term, self.field.sign(
                                    i * (i + 1) // 2 + n * i))
                        acc = vec_clean(acc)
                        if acc:
                            ops.set(n, (tensor_label(a, r),) + rest, acc)
        return ops

    def _certify_d_squared(self):
        one = self.field.one
        for l in self.space.labels:
            w = self.differential(self.differential({l: one}))
            if w:
                raise MathCheckFailure(
                    "dual-side twisted differential fails to square to zero "
                    "at %r (residue %r); the twist does not satisfy the "
                    "Maurer-Cartan equation" % (l, w))

    def _build_shim(self):
        basis = [(l, self.space.degree[l]) for l in self.space.labels]
        for a in self.A.space.labels:
            if a in self.space.index:
                raise ValueError(
                    "comodule and algebra labels collide at %r" % (a,))
            basis.append((a, self.A.deg(a)))
        space = GradedSpace(basis)
        ops = self.ops.copy()
        for n, table in self.A.m.entries.items():
            for args, vec in table.items():
                ops.set(n, args, dict(vec))
        return AInfAlgebra(space, self.field, ops,
                           arity_bound=self.A.arity_bound)

    def check_module_axioms(self, n_max=None):
        cap = n_max if n_max is not None else self.A.arity_bound + 1
        for n in range(1, cap + 1):
            for x in self.space.labels:
                for rest in iter_product(self.A.space.labels, repeat=n - 1):
                    res = stasheff_residual(self._shim, (x,) + rest)
                    if res:
                        return CheckReport(False, failure=(n, (x,) + rest, res),
                                           checked_to=cap)
        return CheckReport(True, checked_to=cap)

    def differential(self, v):
        out = {}
        for l, c in v.items():
            vec_add(out, self.ops.get(1, (l,)), c)
        return vec_clean(out)

    def op(self, x_vec, a_vecs):
        n = 1 + len(a_vecs)
        out = {}
        for x, cx in x_vec.items():
            for combo in iter_product(*(sorted(a.items()) for a in a_vecs)):
                coeff = cx
                for _, c in combo:
                    coeff = coeff * c
                args = (x,) + tuple(l for l, _ in combo)
                vec_add(out, self.ops.get(n, args), coeff)
        return vec_clean(out)

    def cohomology_dims(self):
        return self.complex.total_cohomology_dims()


def twisted_comodule(A, alpha, R, check=True):
    return TwistedComodule(DeformationSetup(A, R), alpha, check=check)


# ---------------------------------------------------------------------------
# the classical comparison


class H0Presentation:
    """Generators and relations for H^0(S_N), at a stated order.

    Generators are the weight-one classes; a monomial is a tuple of
    generator indices whose value is the ordered product of the
    adapted representatives.  Relations span the kernel of the
    evaluation from the free span of monomials of length <= N into
    H^0.  Generation by weight one is a hypothesis of the comparison,
    so it is certified here and refused when not established.
    """

    def __init__(self, A, N, rep=None):
        self.rep = rep if rep is not None else s_hat_cohomology(A, N)
        self.N = N
        self.field = self.rep.field
        self.S = self.rep.S
        self.gens = self.rep.weight_one_reps()
        one = self.field.one
        monomials = [()]
        values = {(): {(): one}}
        layer = [()]
        for _ in range(N):
            nxt = []
            for mono in layer:
                for j in range(len(self.gens)):
                    new = mono + (j,)
                    values[new] = self.S.algebra.eval_m_vectors(
                        [values[mono], self.gens[j]]) if mono else dict(
                        self.gens[j])
                    nxt.append(new)
            layer = nxt
            monomials.extend(layer)
        self.monomials = monomials
        self.values = values
        self.classes = {m: self.rep.class_coords(v)
                        for m, v in values.items()}
        spanned = Subspace([dict(c) for c in self.classes.values() if c],
                           self.field)
        if spanned.dim != self.rep.h0.dim:
            raise HypothesisNotMet(
                "weight-one classes span a %d-dimensional piece of the "
                "%d-dimensional H^0 at order %d; generation by weight one "
                "is not established" % (spanned.dim, self.rep.h0.dim, N))
        m = Matrix(max(1, self.rep.h0.dim), len(monomials), self.field)
        for j, mono in enumerate(monomials):
            for i, c in self.classes[mono].items():
                m.entries[(i, j)] = c
        _, kernel, _, _ = solve_linear(m)
        self.relations = [
            {monomials[j]: c for j, c in kv.items()} for kv in kernel]

    def generator_count(self):
        return len(self.gens)


def _monomial_images(pres, R, images):
    """Value in R of every monomial under generator |-> image."""
    out = {(): {R.unit: R.field.one}}
    for mono in pres.monomials:
        if mono:
            out[mono] = R.multiply(out[mono[:-1]], images[mono[-1]])
    return out


def algebra_maps(pres, R):
    """Augmented algebra maps H^0(S_N) -> R, as generator image tuples.

    Enumerated over the finite field: each generator image ranges over
    the augmentation ideal of R, and a candidate survives when every
    relation evaluates to zero.  The order of enumeration is the
    canonical coefficient order, so reports are reproducible.
    """
    p = R.field.p
    if not p:
        raise HypothesisNotMet("map enumeration needs a finite prime field")
    ideal = R.ideal_labels
    m = pres.generator_count()
    maps = []
    for flat in iter_product(range(p), repeat=len(ideal) * m):
        images = []
        for g in range(m):
            chunk = flat[g * len(ideal):(g + 1) * len(ideal)]
            images.append(vec_clean(
                {l: R.field(c) for l, c in zip(ideal, chunk)}))
        mono_val = _monomial_images(pres, R, images)
        ok = True
        for rel in pres.relations:
            acc = {}
            for mono, c in rel.items():
                vec_add(acc, mono_val[mono], c)
            if vec_clean(acc):
                ok = False
                break
        if ok:
            maps.append(tuple(images))
    return maps


def induced_map(setup, pres, alpha, dual=None):
    """Generator images of g* composed with the adapted section.

    Boundaries die under g* because the base has no differential to
    receive them, so the images do not depend on the chosen cocycle
    representatives; the section-independence tests lean on this.
    """
    tau = TwistingCochain.from_element(setup, alpha)
    gh = CorepresentingHom(tau, pres.N,
                           dual=dual if dual is not None else pres.S)
    return tuple(gh.apply(g) for g in pres.gens)


def enumerate_units(R):
    """All invertible elements of a classical local artinian base."""
    p = R.field.p
    if not p:
        raise HypothesisNotMet("unit enumeration needs a finite prime field")
    units = []
    for c0 in range(1, p):
        for coeffs in iter_product(range(p), repeat=len(R.ideal_labels)):
            u = {R.unit: R.field(c0)}
            for l, c in zip(R.ideal_labels, coeffs):
                if c:
                    u[l] = R.field(c)
            units.append(u)
    return units


def invert_unit(R, u):
    """Inverse through the geometric series, certified two-sided."""
    c0 = u.get(R.unit)
    if not c0:
        raise ValueError("not a unit: no invertible scalar part")
    scale = R.field.one / c0
    n = vec_clean({l: -scale * c for l, c in u.items() if l != R.unit})
    inv = {R.unit: scale}
    power = dict(n)
    for _ in range(R.nu):
        if not power:
            break
        vec_add(inv, {l: scale * c for l, c in power.items()})
        power = R.multiply(power, n)
    inv = vec_clean(inv)
    one = {R.unit: R.field.one}
    if R.multiply(u, inv) != one or R.multiply(inv, u) != one:
        raise MathCheckFailure("unit inversion failed to certify")
    return inv


def conjugation_orbits(R, maps):
    """Orbits of generator-image tuples under conjugation by units."""
    units = [(u, invert_unit(R, u)) for u in enumerate_units(R)]
    index_of = {tuple(_key(w) for w in t): i for i, t in enumerate(maps)}
    seen = set()
    orbits = []
    orbit_of = {}
    for i, t in enumerate(maps):
        if i in seen:
            continue
        frontier = [i]
        orbit = []
        while frontier:
            j = frontier.pop()
            if j in seen:
                continue
            seen.add(j)
            orbit.append(j)
            for u, uinv in units:
                moved = tuple(R.multiply(R.multiply(u, w), uinv)
                              for w in maps[j])
                k = index_of.get(tuple(_key(w) for w in moved))
                if k is None:
                    raise MathCheckFailure(
                        "conjugation left the enumerated map set")
                if k not in seen:
                    frontier.append(k)
        orbit.sort()
        for j in orbit:
            orbit_of[j] = len(orbits)
        orbits.append(orbit)
    return orbits, orbit_of


class ProrepReport:
    """Both enumerations and the matching, for audit."""

    def __init__(self, lhs, rhs, ok, problems, maps, classes, matching,
                 order, presentation, orbits=None):
        self.lhs = lhs
        self.rhs = rhs
        self.ok = ok
        self.problems = problems
        self.maps = maps
        self.classes = classes
        self.matching = matching
        self.order = order
        self.presentation = presentation
        self.orbits = orbits

    def __bool__(self):
        return self.ok

    def __repr__(self):
        tag = "agree" if self.ok else "PROBLEMS: " + "; ".join(self.problems)
        return "ProrepReport(lhs=%d, rhs=%d, %s)" % (self.lhs, self.rhs, tag)


def _comparison_gates(A, R, N, commutative_required):
    if not R.field.p:
        raise HypothesisNotMet(
            "the comparison enumerates both sides; it needs a finite "
            "prime field")
    if not R.classical:
        raise HypothesisNotMet(
            "gate failed: base not concentrated in degree 0")
    if commutative_required and not R.commutative:
        raise HypothesisNotMet(
            "gate failed: base not commutative; use the conjugation-aware "
            "comparison")
    if N < R.nu:
        raise HypothesisNotMet(
            "gate failed: order %d below the nilpotency index %d" % (N, R.nu))
    probe = koszul_probe(A, N)
    if not probe.ok:
        i, w, d = probe.failures[0]
        raise HypothesisNotMet(
            "gate failed: Koszulness at order %d not established (graded "
            "H^%d has dimension %d at weight %d); the comparison is "
            "refused, not refuted" % (N, i, d, w))
    return probe


def prorep_compare(A, R, N, cap=ENUMERATION_CAP):
    """|Hom_alg(H^0(S_N), R)| against |pi_0| with the matching checked.

    Both sides are computed by exhaustion over the finite field, and
    the bridge alpha |-> g* o section is verified to induce a genuine
    bijection: constant on gauge classes, landing in the enumerated
    map set, injective across classes, and exhaustive.
    """
    probe = _comparison_gates(A, R, N, commutative_required=True)
    pres = H0Presentation(A, N, rep=probe.cohomology)
    maps = algebra_maps(pres, R)
    keys = [tuple(_key(w) for w in t) for t in maps]
    index_of = {k: i for i, k in enumerate(keys)}
    setup = DeformationSetup(A, R)
    classes = pi0(A, R, cap)
    problems = []
    matching = {}
    for ci, cls in enumerate(classes.classes):
        images = [induced_map(setup, pres, alpha) for alpha in cls]
        image_keys = {tuple(_key(w) for w in t) for t in images}
        if len(image_keys) != 1:
            problems.append("class %d maps to %d distinct algebra maps"
                            % (ci, len(image_keys)))
            continue
        k = image_keys.pop()
        if k not in index_of:
            problems.append("class %d maps outside the enumerated Hom set"
                            % ci)
            continue
        matching[ci] = index_of[k]
    if len(set(matching.values())) != len(matching):
        problems.append("induced maps collide across gauge classes")
    if len(maps) != classes.count:
        problems.append("counts disagree: %d maps, %d classes"
                        % (len(maps), classes.count))
    ok = not problems and len(matching) == classes.count
    return ProrepReport(len(maps), classes.count, ok, problems, maps,
                        classes, matching, N, pres)


def prorep_compare_noncomm(A, R, N, cap=ENUMERATION_CAP):
    """The comparison over a possibly noncommutative classical base.

    The Hom side is quotiented by conjugation with the units of R;
    over a commutative base every orbit is a singleton and this
    reduces to the plain comparison.
    """
    probe = _comparison_gates(A, R, N, commutative_required=False)
    pres = H0Presentation(A, N, rep=probe.cohomology)
    maps = algebra_maps(pres, R)
    orbits, orbit_of = conjugation_orbits(R, maps)
    keys = [tuple(_key(w) for w in t) for t in maps]
    index_of = {k: i for i, k in enumerate(keys)}
    setup = DeformationSetup(A, R)
    classes = pi0(A, R, cap)
    problems = []
    matching = {}
    for ci, cls in enumerate(classes.classes):
        hit = set()
        for alpha in cls:
            t = induced_map(setup, pres, alpha)
            k = tuple(_key(w) for w in t)
            if k not in index_of:
                problems.append(
                    "class %d maps outside the enumerated Hom set" % ci)
                break
            hit.add(orbit_of[index_of[k]])
        else:
            if len(hit) != 1:
                problems.append("class %d meets %d conjugation orbits"
                                % (ci, len(hit)))
            else:
                matching[ci] = hit.pop()
    if len(set(matching.values())) != len(matching):
        problems.append("induced orbits collide across gauge classes")
    if len(orbits) != classes.count:
        problems.append("counts disagree: %d orbits, %d classes"
                        % (len(orbits), classes.count))
    ok = not problems and len(matching) == classes.count
    return ProrepReport(len(orbits), classes.count, ok, problems, maps,
                        classes, matching, N, pres, orbits=orbits)
