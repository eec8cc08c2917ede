"""Augmented local artinian DG algebras, the coefficient rings of deformations.

An artinian DG algebra here is an associative unital DG algebra R of
finite total dimension whose augmentation ideal m is nilpotent.  The
basis normal form used throughout: one basis label is the unit, the
remaining labels span m, and the augmentation is the unit's dual
functional.  Validation checks the algebra axioms exactly, computes the
nilpotency index, and classifies R as negative (degrees <= 0) or
classical (degree 0 only).
"""

from .ainfinity import AInfAlgebra, StructureMaps, check_ainf_axioms
from .linalg import GradedSpace, Subspace, vec_add, vec_clean

MAX_NILPOTENCY_SCAN = 64


class ArtinianReport:
    def __init__(self, ok, problems, nu=None, classical=False, negative=False,
                 commutative=False):
        self.ok = ok
        self.problems = problems
        self.nu = nu
        self.classical = classical
        self.negative = negative
        self.commutative = commutative

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            tags = [t for t, on in (("classical", self.classical),
                                    ("negative", self.negative),
                                    ("commutative", self.commutative)) if on]
            return "ArtinianReport(ok, nu=%d%s)" % (
                self.nu, (", " + ", ".join(tags)) if tags else "")
        return "ArtinianReport(%d problems: %s)" % (
            len(self.problems), "; ".join(self.problems[:3]))


def validate_artinian(A):
    """Check that an arity <= 2 algebra is augmented local artinian.

    Returns an ArtinianReport; problems carry witness labels.  Nothing
    raises here, so callers can surface all violations at once.
    """
    problems = []
    if A.m.max_arity() > 2:
        return ArtinianReport(False, ["operations above arity 2 present"])
    if A.unit is None or A.aug_label != A.unit:
        return ArtinianReport(
            False, ["normal form requires a unit label carrying the augmentation"])
    rep = check_ainf_axioms(A, 3)
    if not rep.ok:
        n, args, res = rep.failure
        problems.append(
            "algebra axioms fail at n=%d on %r (residual %r)" % (n, args, res))
    one = A.field.one
    e = A.unit
    if A.m.get(1, (e,)):
        problems.append("d does not kill the unit")
    for a in A.space.labels:
        if A.m.get(2, (e, a)) != {a: one} or A.m.get(2, (a, e)) != {a: one}:
            problems.append("unit laws fail on %r" % (a,))
            break
    ideal = A.ideal_labels()
    for x in ideal:
        dv = A.m.get(1, (x,))
        if e in dv:
            problems.append("d(%r) has a unit component" % (x,))
        for y in ideal:
            if e in A.m.get(2, (x, y)):
                problems.append(
                    "product %r * %r leaves the augmentation ideal" % (x, y))
    if problems:
        return ArtinianReport(False, problems)
    nu = _nilpotency_index(A, ideal)
    if nu is None:
        problems.append("augmentation ideal is not nilpotent "
                        "(no vanishing power up to %d)" % MAX_NILPOTENCY_SCAN)
        return ArtinianReport(False, problems)
    degs = set(A.space.degree.values())
    classical = degs == {0} or not ideal and degs <= {0}
    negative = max(degs) <= 0
    commutative = _is_commutative(A)
    return ArtinianReport(True, [], nu=nu, classical=classical,
                          negative=negative, commutative=commutative)


def _nilpotency_index(A, ideal):
    one = A.field.one
    power = [{x: one} for x in ideal]
    n = 1
    while power and n <= MAX_NILPOTENCY_SCAN:
        nxt = []
        for v in power:
            for x in ideal:
                prod = {}
                for lbl, c in v.items():
                    vec_add(prod, A.m.get(2, (lbl, x)), c)
                prod = vec_clean(prod)
                if prod:
                    nxt.append(prod)
        sub = Subspace(nxt, A.field)
        power = sub.rows
        n += 1
    if power:
        return None
    return n


def _is_commutative(A):
    sign = A.field.sign
    for x in A.space.labels:
        for y in A.space.labels:
            xy = A.m.get(2, (x, y))
            yx = A.m.get(2, (y, x))
            s = sign(A.deg(x) * A.deg(y))
            if vec_clean({k: xy.get(k, A.field.zero) - s * yx.get(k, A.field.zero)
                          for k in set(xy) | set(yx)}):
                return False
    return True


class ArtinianDGAlgebra:
    """A validated artinian DG algebra in basis normal form."""

    def __init__(self, algebra):
        report = validate_artinian(algebra)
        if not report.ok:
            raise ValueError("not an artinian DG algebra: " +
                             "; ".join(report.problems))
        self.algebra = algebra
        self.field = algebra.field
        self.space = algebra.space
        self.unit = algebra.unit
        self.nu = report.nu
        self.classical = report.classical
        self.negative = report.negative
        self.commutative = report.commutative
        self.ideal_labels = algebra.ideal_labels()

    def deg(self, label):
        return self.algebra.deg(label)

    def d_of(self, v):
        out = {}
        for lbl, c in v.items():
            vec_add(out, self.algebra.m.get(1, (lbl,)), c)
        return vec_clean(out)

    def multiply(self, u, v):
        out = {}
        for lu, cu in u.items():
            for lv, cv in v.items():
                vec_add(out, self.algebra.m.get(2, (lu, lv)), cu * cv)
        return vec_clean(out)

    def ideal_power(self, n):
        """Spanning vectors of m^n (echelonized); n = 0 gives all of R."""
        one = self.field.one
        if n <= 0:
            return [{x: one} for x in self.space.labels]
        vecs = [{x: one} for x in self.ideal_labels]
        for _ in range(n - 1):
            nxt = []
            for v in vecs:
                for x in self.ideal_labels:
                    prod = self.multiply(v, {x: one})
                    if prod:
                        nxt.append(prod)
            vecs = Subspace(nxt, self.field).rows
        return vecs

    def ideal_power_subspace(self, n):
        return Subspace(self.ideal_power(n), self.field)


def quotient_by_power(R, n):
    """R/m^n together with the projection and a basis of the kernel.

    The quotient keeps the basis labels whose coset representatives
    survive; the projection sends every original label to its canonical
    representative in those labels.  Returns (Rbar, pi, kernel_rows)
    where pi is a dict label -> vector over the quotient labels.
    """
    if not (1 <= n <= R.nu):
        raise ValueError("power %d outside 1..nu=%d" % (n, R.nu))
    ideal_n = R.ideal_power_subspace(n)
    dropped = set(ideal_n.pivot_keys)
    kept = [l for l in R.space.labels if l not in dropped]
    pi = {l: ideal_n.reduce({l: R.field.one}) for l in R.space.labels}
    space = GradedSpace([(l, R.deg(l)) for l in kept])
    ops = StructureMaps()
    for l in kept:
        dv = ideal_n.reduce(R.d_of({l: R.field.one}))
        if dv:
            ops.set(1, (l,), dv)
    for a in kept:
        for b in kept:
            prod = ideal_n.reduce(R.multiply({a: R.field.one}, {b: R.field.one}))
            if prod:
                ops.set(2, (a, b), prod)
    alg = AInfAlgebra(space, R.field, ops, arity_bound=2, unit=R.unit,
                      aug_label=R.unit)
    return ArtinianDGAlgebra(alg), pi, ideal_n.rows


def small_extension_kernel(R, n):
    """Basis of I = m^n checked to satisfy I m = m I = 0.

    The obstruction calculus steps along R -> R/m^n only when the
    kernel multiplies m to zero on both sides; n = nu - 1 always works.
    """
    rows = R.ideal_power_subspace(n).rows
    one = R.field.one
    for v in rows:
        for x in R.ideal_labels:
            if R.multiply(v, {x: one}) or R.multiply({x: one}, v):
                raise ValueError(
                    "m^%d does not square to zero against m; "
                    "not a small extension" % n)
    return rows


# ---------------------------------------------------------------------------
# dual coalgebras


class DualCoalgebra:
    """The graded dual of an artinian algebra, as a counital coalgebra.

    Labels are reused; the element labeled x stands for the dual
    functional x* and carries degree -deg(x).  The comultiplication is
    the transpose of the product under the pairing
    (u* x v*)(x x y) = (-1)^(deg v * deg x) u*(x) v*(y),
    so Delta(z*) carries (-1)^(deg x deg y) times the structure
    constant of x y at z.  The dual differential follows the same
    transpose convention: (d phi)(x) = -(-1)^(deg phi) phi(d x).
    """

    def __init__(self, R):
        self.ring = R
        self.field = R.field
        self.space = GradedSpace([(l, -R.deg(l)) for l in R.space.labels])
        sign = R.field.sign
        delta = {z: [] for z in R.space.labels}
        for (n, table) in R.algebra.m.entries.items():
            if n != 2:
                continue
            for (x, y), vec in table.items():
                s = sign(R.deg(x) * R.deg(y))
                for z, c in vec.items():
                    delta[z].append((x, y, s * c))
        self.delta = {z: sorted(terms, key=lambda t: (repr(t[0]), repr(t[1])))
                      for z, terms in delta.items()}
        d = {}
        for z in R.space.labels:
            row = {}
            for x in R.space.labels:
                dv = R.algebra.m.get(1, (x,))
                c = dv.get(z)
                if c:
                    # phi = z* has degree -deg z; the transpose sign is
                    # -(-1)^(deg phi) = -(-1)^(deg z)
                    row[x] = sign(R.deg(z) + 1) * c
            if row:
                d[z] = row
        self.d = d
        self.counit_label = R.unit

    def comultiply(self, label):
        return list(self.delta.get(label, []))

    def check_coassociative(self):
        """(Delta x 1) Delta = (1 x Delta) Delta on every basis functional."""
        for z in self.space.labels:
            lhs = {}
            rhs = {}
            for (x, y, c) in self.delta[z]:
                for (u, v, c2) in self.delta[x]:
                    key = (u, v, y)
                    lhs[key] = lhs.get(key, self.field.zero) + c * c2
                for (u, v, c2) in self.delta[y]:
                    key = (x, u, v)
                    rhs[key] = rhs.get(key, self.field.zero) + c * c2
            keys = set(lhs) | set(rhs)
            for k in keys:
                if lhs.get(k, self.field.zero) != rhs.get(k, self.field.zero):
                    return False
        return True

    def redualize(self):
        """Structure constants of the double dual, for the involution check."""
        sign = self.field.sign
        ops = {}
        for z, terms in self.delta.items():
            for (x, y, c) in terms:
                ops.setdefault((x, y), {})[z] = sign(
                    self.ring.deg(x) * self.ring.deg(y)) * c
        return {k: vec_clean(v) for k, v in ops.items() if vec_clean(v)}


def dual_coalgebra(R):
    return DualCoalgebra(R)


# ---------------------------------------------------------------------------
# the standard zoo


def truncated_polynomial(field, n, deg=0, var="t"):
    """k[t]/t^n with deg t = deg <= 0; n = 1 gives the ground field."""
    if n < 1:
        raise ValueError("length must be at least 1")
    if deg > 0:
        raise ValueError("artinian bases live in degrees <= 0")
    labels = ["1"] + [var if i == 1 else "%s%d" % (var, i) for i in range(1, n)]
    space = GradedSpace([(labels[i], deg * i) for i in range(n)])
    ops = StructureMaps()
    one = field.one
    for i in range(n):
        for j in range(n):
            if i + j < n:
                ops.set(2, (labels[i], labels[j]), {labels[i + j]: one})
    alg = AInfAlgebra(space, field, ops, arity_bound=2, unit="1", aug_label="1")
    return ArtinianDGAlgebra(alg)


def square_zero(field, gens, d=None):
    """k + M with M^2 = 0; gens is a list of (label, degree <= 0).

    d, if given, maps labels of M to vectors in M and must have degree
    +1 with d of d zero; both are validated downstream.
    """
    space = GradedSpace([("1", 0)] + [(l, int(g)) for l, g in gens])
    ops = StructureMaps()
    one = field.one
    ops.set(2, ("1", "1"), {"1": one})
    for l, _ in gens:
        ops.set(2, ("1", l), {l: one})
        ops.set(2, (l, "1"), {l: one})
    if d:
        for l, vec in d.items():
            ops.set(1, (l,), {k: field(c) for k, c in vec.items()})
    alg = AInfAlgebra(space, field, ops, arity_bound=2, unit="1", aug_label="1")
    return ArtinianDGAlgebra(alg)


def fiber_product(R1, R2):
    """R1 x_k R2: pairs agreeing under the augmentations.

    Basis: the shared unit plus both ideals, labeled a.x and b.y; the
    two ideals multiply to zero against each other.
    """
    if R1.field != R2.field:
        raise ValueError("factors live over different fields")
    field = R1.field
    basis = [("1", 0)]
    basis += [("a.%s" % l, R1.deg(l)) for l in R1.ideal_labels]
    basis += [("b.%s" % l, R2.deg(l)) for l in R2.ideal_labels]
    space = GradedSpace(basis)
    ops = StructureMaps()
    one = field.one
    for l in space.labels:
        ops.set(2, ("1", l), {l: one})
        if l != "1":
            ops.set(2, (l, "1"), {l: one})

    def install(R, prefix):
        for x in R.ideal_labels:
            dv = R.algebra.m.get(1, (x,))
            if dv:
                ops.set(1, ("%s.%s" % (prefix, x),),
                        {"%s.%s" % (prefix, z): c for z, c in dv.items()})
            for y in R.ideal_labels:
                prod = R.algebra.m.get(2, (x, y))
                prod = {z: c for z, c in prod.items() if z != R.unit}
                if prod:
                    ops.set(2, ("%s.%s" % (prefix, x), "%s.%s" % (prefix, y)),
                            {"%s.%s" % (prefix, z): c for z, c in prod.items()})

    install(R1, "a")
    install(R2, "b")
    alg = AInfAlgebra(space, field, ops, arity_bound=2, unit="1", aug_label="1")
    return ArtinianDGAlgebra(alg)
