"""A-infinity algebras and morphisms with exact sign bookkeeping.

An A-infinity algebra is a graded space with multilinear operations
m_n of degree 2 - n obeying the Stasheff identities

    sum_{r+s+t=n} (-1)^(r+st) m_{r+1+t} (1^r x m_s x 1^t) = 0,

where evaluating an operator block inside a tensor power follows the
Koszul rule: sliding an operator of odd degree past an element of odd
degree costs a sign.  Every multilinear evaluation in the engine
routes through the two sign helpers below; nothing else computes
signs from scratch.

Signs are computed as integer parities first and mapped into the
ground field at the very end, so prime fields (including F_2) see the
same bookkeeping as Q.
"""

from .linalg import Complex, GradedSpace, vec_add, vec_clean, vec_is_zero


# ---------------------------------------------------------------------------
# the centralized Koszul sign rule


def koszul_pass_exponent(op_parity, degrees):
    """Parity of the sign for sliding one operator past listed elements.

    For (1^r x op x ...) applied to homogeneous arguments, the operator
    moves past the first r of them and the rule (phi x psi)(x x y) =
    (-1)^(|psi||x|) phi(x) x psi(y) charges |op| * (deg x_1 + ... + deg x_r).
    """
    return (op_parity % 2) * sum(degrees)


def tensor_block_exponent(op_parities, block_degrees):
    """Parity for (phi_1 x ... x phi_s) on argument blocks.

    Iterating the two-factor Koszul rule gives
    sum over u < v of |phi_v| * deg(block_u).
    """
    total = 0
    acc = 0
    for v in range(len(op_parities)):
        total += (op_parities[v] % 2) * acc
        acc += block_degrees[v]
    return total


# ---------------------------------------------------------------------------
# sparse families of multilinear operations


class StructureMaps:
    """Sparse structure constants for a family of multilinear maps.

    entries[n] maps an input label tuple of length n to a sparse output
    vector.  The same container stores m-operations, bar coderivation
    components b_n, or morphism components f_n; degree conventions are
    imposed by the validators, not here.
    """

    def __init__(self, entries=None):
        self.entries = {}
        if entries:
            for n, table in entries.items():
                for args, vec in table.items():
                    self.set(n, tuple(args), vec)

    def set(self, n, args, vec):
        vec = vec_clean(vec)
        if not vec:
            self.entries.get(n, {}).pop(tuple(args), None)
            return
        self.entries.setdefault(n, {})[tuple(args)] = vec

    def add(self, n, args, vec, coeff=None):
        table = self.entries.setdefault(n, {})
        cur = table.setdefault(tuple(args), {})
        vec_add(cur, vec, coeff)
        if not vec_clean(cur):
            del table[tuple(args)]

    def get(self, n, args):
        return self.entries.get(n, {}).get(tuple(args), {})

    def arities(self):
        return sorted(n for n, t in self.entries.items() if t)

    def max_arity(self):
        ar = self.arities()
        return ar[-1] if ar else 0

    def copy(self):
        out = StructureMaps()
        for n, table in self.entries.items():
            for args, vec in table.items():
                out.set(n, args, dict(vec))
        return out

    def support(self, n):
        return sorted(self.entries.get(n, {}).keys(), key=repr)


class AInfAlgebra:
    """Graded space plus structure maps plus unit and augmentation markers.

    arity_bound declares that operations above it vanish identically;
    for algebras defined by explicit tables that is part of the
    definition.  A transfer-produced algebra whose higher operations
    were only computed up to some arity instead carries
    complete_to_arity, and consumers that would need more refuse.
    """

    def __init__(self, space, field, ops, arity_bound=None, unit=None,
                 aug_label=None, complete_to_arity=None):
        self.space = space
        self.field = field
        self.m = ops
        self.arity_bound = arity_bound if arity_bound is not None else max(2, ops.max_arity())
        self.unit = unit
        self.aug_label = aug_label
        self.complete_to_arity = complete_to_arity
        self._check_degrees()
        if unit is not None and space.degree.get(unit) != 0:
            raise ValueError("unit %r must have degree 0" % (unit,))
        if aug_label is not None and aug_label not in space.index:
            raise ValueError("augmentation label %r is not a basis label" % (aug_label,))

    def _check_degrees(self):
        for n, table in self.m.entries.items():
            if n > self.arity_bound:
                raise ValueError("operation of arity %d above the declared bound" % n)
            for args, vec in table.items():
                if len(args) != n:
                    raise ValueError("arity mismatch in stored operation")
                want = sum(self.space.degree[a] for a in args) + 2 - n
                for out in vec:
                    if self.space.degree[out] != want:
                        raise ValueError(
                            "m_%d%r violates the degree 2-%d convention" % (n, args, n)
                        )

    def deg(self, label):
        return self.space.degree[label]

    @property
    def augmented(self):
        return self.aug_label is not None

    def aug_of(self, v):
        """Value of the augmentation functional on a vector."""
        if self.aug_label is None:
            raise ValueError("algebra carries no augmentation")
        return v.get(self.aug_label, self.field.zero)

    def ideal_labels(self):
        """Basis labels of the augmentation ideal (everything but the unit line)."""
        if self.aug_label is None:
            raise ValueError("algebra carries no augmentation")
        return [l for l in self.space.labels if l != self.aug_label]

    def eval_m(self, args):
        """m_n on a tuple of basis labels."""
        n = len(args)
        if n > self.arity_bound:
            return {}
        return self.m.get(n, args)

    def eval_m_vectors(self, vecs):
        """Multilinear extension of m_n to sparse vectors (no extra signs)."""
        out = {}
        if len(vecs) > self.arity_bound:
            return out
        table = self.m.entries.get(len(vecs), {})
        if not table:
            return out
        _expand(vecs, 0, (), self.field.one, table, out)
        return out

    def complex(self):
        d = {args[0]: vec for args, vec in self.m.entries.get(1, {}).items()}
        return Complex(self.space, d, self.field)

    def op_complete_for(self, arity_needed):
        return self.complete_to_arity is None or arity_needed <= self.complete_to_arity


def _expand(vecs, i, args, coeff, table, out):
    if i == len(vecs):
        vec = table.get(args)
        if vec:
            vec_add(out, vec, coeff)
        return
    for lbl, c in vecs[i].items():
        if c:
            _expand(vecs, i + 1, args + (lbl,), coeff * c, table, out)


# ---------------------------------------------------------------------------
# the Stasheff identity checker


class CheckReport:
    def __init__(self, ok, failure=None, checked_to=None, note=None):
        self.ok = ok
        self.failure = failure
        self.checked_to = checked_to
        self.note = note

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "CheckReport(pass, n <= %s)" % (self.checked_to,)
        return "CheckReport(fail at %r)" % (self.failure,)


def stasheff_residual(A, args):
    """The n-th identity evaluated on one basis tuple; zero means it holds."""
    n = len(args)
    degs = [A.deg(a) for a in args]
    out = {}
    for s in range(1, n + 1):
        if s > A.arity_bound and s < n:
            continue
        for r in range(0, n - s + 1):
            t = n - s - r
            if r + 1 + t > A.arity_bound:
                continue
            inner = A.eval_m(tuple(args[r:r + s]))
            if not inner:
                continue
            exponent = r + s * t + koszul_pass_exponent(s, degs[:r])
            sign = A.field.sign(exponent)
            for lbl, c in inner.items():
                outer = A.eval_m(tuple(args[:r]) + (lbl,) + tuple(args[r + s:]))
                if outer:
                    vec_add(out, outer, sign * c)
    return vec_clean(out)


def check_ainf_axioms(A, n_max):
    """Verify the Stasheff identities on all basis tuples of arity <= n_max.

    Returns a CheckReport; on failure it carries the first offending
    (n, basis tuple, residual vector).
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    labels = A.space.labels
    for n in range(1, n_max + 1):
        for args in _tuples(labels, n):
            res = stasheff_residual(A, args)
            if res:
                return CheckReport(False, failure=(n, args, res), checked_to=n_max)
    return CheckReport(True, checked_to=n_max)


def _tuples(labels, n):
    if n == 0:
        yield ()
        return
    for rest in _tuples(labels, n - 1):
        for l in labels:
            yield rest + (l,)


def check_strict_unit(A):
    """The three strict unit conditions, checked entrywise."""
    if A.unit is None:
        return CheckReport(False, note="no unit declared")
    e = A.unit
    if A.m.get(1, (e,)):
        return CheckReport(False, failure=(1, (e,), A.m.get(1, (e,))))
    one = A.field.one
    for a in A.space.labels:
        left = A.m.get(2, (e, a))
        right = A.m.get(2, (a, e))
        if left != {a: one} or right != {a: one}:
            return CheckReport(False, failure=(2, (e, a), (left, right)))
    for n, table in A.m.entries.items():
        if n < 3:
            continue
        for args, vec in table.items():
            if e in args and vec_clean(vec):
                return CheckReport(False, failure=(n, args, vec))
    return CheckReport(True)


# ---------------------------------------------------------------------------
# suspension: m-operations versus bar coderivation components


def suspension_exponent(degrees):
    """Parity relating m_n to b_n on elements of the listed A-degrees.

    b_n = - s . m_n . (s^{-1})^n with the Koszul cost of threading the
    n copies of s^{-1} (degree +1 each) past the shifted arguments:
    applying (s^{-1} x ... x s^{-1}) to (s a_1, ..., s a_n) charges
    sum over u < v of |s^{-1}| * deg(s a_u) = sum_{u<v} (deg a_u - 1),
    and the leading minus sign is the global convention fixed by the
    round-trip requirement with the sign-free b-identities.
    """
    e = 1  # the global minus sign
    acc = 0
    for v in range(len(degrees)):
        e += acc
        acc += degrees[v] - 1
    return e


def b_from_m(A):
    """The coderivation components b_n on A[1] from the operations m_n."""
    out = StructureMaps()
    for n, table in A.m.entries.items():
        for args, vec in table.items():
            degs = [A.deg(a) for a in args]
            sign = A.field.sign(suspension_exponent(degs))
            out.set(n, args, vec_scale_checked(vec, sign))
    return out


def m_from_b(space, field, b):
    """Inverse of b_from_m; labels keep their unshifted degrees in space."""
    out = StructureMaps()
    for n, table in b.entries.items():
        for args, vec in table.items():
            degs = [space.degree[a] for a in args]
            sign = field.sign(suspension_exponent(degs))
            out.set(n, args, vec_scale_checked(vec, sign))
    return out


def vec_scale_checked(vec, coeff):
    return {k: coeff * c for k, c in vec.items() if c}


def b_residual(space_shifted, field, b, args, arity_bound):
    """The sign-free coderivation identity sum b(1^r x b_s x 1^t) on a tuple.

    Degrees are taken in the shifted space; b_n has degree +1 so the
    only signs are Koszul passage signs.
    """
    n = len(args)
    degs = [space_shifted.degree[a] for a in args]
    out = {}
    for s in range(1, n + 1):
        for r in range(0, n - s + 1):
            t = n - s - r
            if r + 1 + t > arity_bound and r + 1 + t != n:
                continue
            inner = b.get(s, tuple(args[r:r + s]))
            if not inner:
                continue
            sign = field.sign(koszul_pass_exponent(1, degs[:r]))
            for lbl, c in inner.items():
                outer = b.get(r + 1 + t, tuple(args[:r]) + (lbl,) + tuple(args[r + s:]))
                if outer:
                    vec_add(out, outer, sign * c)
    return vec_clean(out)


# ---------------------------------------------------------------------------
# morphisms


class AInfMorphism:
    """Components f_n : A1^n -> A2 of degree 1 - n."""

    def __init__(self, source, target, comps, arity_bound=None, strict_unital=False):
        self.source = source
        self.target = target
        self.f = comps
        self.arity_bound = arity_bound if arity_bound is not None else max(1, comps.max_arity())
        self.strict_unital = strict_unital
        for n, table in comps.entries.items():
            for args, vec in table.items():
                want = sum(source.deg(a) for a in args) + 1 - n
                for out in vec:
                    if target.deg(out) != want:
                        raise ValueError(
                            "f_%d%r violates the degree 1-%d convention" % (n, args, n)
                        )

    def eval_f(self, args):
        n = len(args)
        if n > self.arity_bound:
            return {}
        return self.f.get(n, args)


def identity_morphism(A):
    comps = StructureMaps()
    for lbl in A.space.labels:
        comps.set(1, (lbl,), {lbl: A.field.one})
    return AInfMorphism(A, A, comps, arity_bound=A.arity_bound, strict_unital=A.unit is not None)


def _compositions(n, s):
    """All (i_1, ..., i_s) of positive integers summing to n."""
    if s == 1:
        yield (n,)
        return
    for first in range(1, n - s + 2):
        for rest in _compositions(n - first, s - 1):
            yield (first,) + rest


def morphism_residual(f, args):
    """Difference of the two sides of the n-th morphism identity.

    Left side: sum over decompositions of the inputs into s blocks of
    sizes i_1..i_s, with the printed exponent
    (s-1) i_1 + (s-2) i_2 + ... + i_{s-1} + s(s+1)/2
    plus the Koszul cost of evaluating f_{i_1} x ... x f_{i_s}.
    Right side: sum (-1)^(r + st + s) f_{r+1+t} (1^r x m_s x 1^t).
    """
    A1, A2 = f.source, f.target
    n = len(args)
    degs = [A1.deg(a) for a in args]
    out = {}
    for s in range(1, n + 1):
        if s > A2.arity_bound:
            continue
        for blocks in _compositions(n, s):
            printed = sum((s - 1 - j) * blocks[j] for j in range(s - 1)) + s * (s + 1) // 2
            op_parities = [(1 - i) % 2 for i in blocks]
            block_degs = []
            pos = 0
            for i in blocks:
                block_degs.append(sum(degs[pos:pos + i]))
                pos += i
            exponent = printed + tensor_block_exponent(op_parities, block_degs)
            sign = A1.field.sign(exponent)
            pos = 0
            pieces = []
            for i in blocks:
                piece = f.eval_f(tuple(args[pos:pos + i]))
                pos += i
                if not piece:
                    pieces = None
                    break
                pieces.append(piece)
            if pieces is None:
                continue
            vec_add(out, A2.eval_m_vectors(pieces), sign)
    for s in range(1, n + 1):
        if s > A1.arity_bound and s < n:
            continue
        for r in range(0, n - s + 1):
            t = n - s - r
            if r + 1 + t > f.arity_bound:
                continue
            inner = A1.eval_m(tuple(args[r:r + s]))
            if not inner:
                continue
            exponent = r + s * t + s + koszul_pass_exponent(s, degs[:r])
            sign = A1.field.sign(exponent)
            for lbl, c in inner.items():
                piece = f.eval_f(tuple(args[:r]) + (lbl,) + tuple(args[r + s:]))
                if piece:
                    vec_add(out, piece, -sign * c)
    return vec_clean(out)


def check_ainf_morphism(f, n_max):
    """Verify the morphism identities on all basis tuples of arity <= n_max.

    Arities above the component bound of f are reported as unchecked
    rather than failed.
    """
    top = min(n_max, f.arity_bound)
    note = None
    if top < n_max:
        note = "arities %d..%d not checked (component bound %d)" % (
            top + 1, n_max, f.arity_bound)
    for n in range(1, top + 1):
        for args in _tuples(f.source.space.labels, n):
            res = morphism_residual(f, args)
            if res:
                return CheckReport(False, failure=(n, args, res), checked_to=top, note=note)
    if f.strict_unital:
        rep = check_strict_unital_morphism(f)
        if not rep.ok:
            return rep
    return CheckReport(True, checked_to=top, note=note)


def check_strict_unital_morphism(f):
    e1, e2 = f.source.unit, f.target.unit
    if e1 is None or e2 is None:
        return CheckReport(False, note="strict unitality requires units on both sides")
    if f.eval_f((e1,)) != {e2: f.source.field.one}:
        return CheckReport(False, failure=(1, (e1,), f.eval_f((e1,))))
    for n, table in f.f.entries.items():
        if n < 2:
            continue
        for args, vec in table.items():
            if e1 in args and vec_clean(vec):
                return CheckReport(False, failure=(n, args, vec))
    return CheckReport(True)


def compose_morphisms(g, f, arity_bound=None):
    """g after f, with components (g . f)_n = sum g_s (f_{i_1} x ... x f_{i_s}).

    The composite of two A-infinity morphisms; signs are pure Koszul
    block signs since no operations move past arguments.
    """
    if f.target is not g.source:
        raise ValueError("morphisms do not compose")
    bound = arity_bound or min(f.arity_bound, g.arity_bound)
    comps = StructureMaps()
    A1 = f.source
    for n in range(1, bound + 1):
        for args in _tuples(A1.space.labels, n):
            degs = [A1.deg(a) for a in args]
            acc = {}
            for s in range(1, n + 1):
                for blocks in _compositions(n, s):
                    op_parities = [(1 - i) % 2 for i in blocks]
                    block_degs = []
                    pos = 0
                    for i in blocks:
                        block_degs.append(sum(degs[pos:pos + i]))
                        pos += i
                    sign = A1.field.sign(tensor_block_exponent(op_parities, block_degs))
                    pos = 0
                    pieces = []
                    for i in blocks:
                        piece = f.eval_f(tuple(args[pos:pos + i]))
                        pos += i
                        if not piece:
                            pieces = None
                            break
                        pieces.append(piece)
                    if pieces is None:
                        continue
                    gs = g.f.entries.get(s, {})
                    if not gs:
                        continue
                    out = {}
                    _expand(pieces, 0, (), A1.field.one, gs, out)
                    vec_add(acc, out, sign)
            if vec_clean(acc):
                comps.set(n, args, acc)
    return AInfMorphism(f.source, g.target, comps, arity_bound=bound,
                        strict_unital=f.strict_unital and g.strict_unital)


# ---------------------------------------------------------------------------
# unitization and tensor product


def unitize(A, unit_label="e"):
    """Adjoin a strict unit: k 1 + A with the unit laws and nothing else."""
    if unit_label in A.space.index:
        raise ValueError("label %r already used" % (unit_label,))
    basis = [(unit_label, 0)] + [(l, A.space.degree[l]) for l in A.space.labels]
    space = GradedSpace(basis)
    one = A.field.one
    ops = A.m.copy()
    ops.set(2, (unit_label, unit_label), {unit_label: one})
    for l in A.space.labels:
        ops.set(2, (unit_label, l), {l: one})
        ops.set(2, (l, unit_label), {l: one})
    return AInfAlgebra(space, A.field, ops,
                       arity_bound=max(A.arity_bound, 2),
                       unit=unit_label, aug_label=unit_label,
                       complete_to_arity=A.complete_to_arity)


def restrict_to_ideal(A):
    """Structure maps of the augmentation ideal; checks closure under all m_n."""
    ideal = set(A.ideal_labels())
    out = StructureMaps()
    for n, table in A.m.entries.items():
        for args, vec in table.items():
            if all(a in ideal for a in args):
                for lbl in vec:
                    if lbl not in ideal:
                        raise ValueError(
                            "augmentation ideal is not closed: m_%d%r hits %r"
                            % (n, args, lbl))
                out.set(n, args, dict(vec))
    return out


def tensor_label(a, c):
    return (a, c)


def tensor_with_dg(A, C):
    """The A-infinity structure on A x C for a finite DG algebra C.

    m_1 is m_1 x 1 + 1 x d_C; for n >= 2,
    m_n(a_1 x c_1, ..., a_n x c_n) =
        (-1)^(sum_{i<j} deg(a_j) deg(c_i)) m_n(a_1..a_n) x c_1...c_n.
    """
    if C.m.max_arity() > 2:
        raise ValueError("tensor factor must be a DG algebra (arity <= 2)")
    field = A.field
    if C.field != field:
        raise ValueError("tensor factors live over different fields")
    basis = []
    for a in A.space.labels:
        for c in C.space.labels:
            basis.append((tensor_label(a, c), A.deg(a) + C.deg(c)))
    space = GradedSpace(basis)
    ops = StructureMaps()
    one = field.one
    # differential
    for a in A.space.labels:
        for c in C.space.labels:
            vec = {}
            for out_a, coeff in A.m.get(1, (a,)).items():
                vec_add(vec, {tensor_label(out_a, c): coeff})
            dc = C.m.get(1, (c,))
            if dc:
                sgn = field.sign(A.deg(a))
                for out_c, coeff in dc.items():
                    vec_add(vec, {tensor_label(a, out_c): sgn * coeff})
            if vec_clean(vec):
                ops.set(1, (tensor_label(a, c),), vec)
    # higher operations
    c_labels = C.space.labels
    for n, table in A.m.entries.items():
        if n < 2:
            continue
        for a_args, a_vec in table.items():
            for c_args in _tuples(c_labels, n):
                prod = _c_product(C, c_args)
                if not prod:
                    continue
                exponent = 0
                for i in range(n):
                    for j in range(i + 1, n):
                        exponent += A.deg(a_args[j]) * C.deg(c_args[i])
                sign = field.sign(exponent)
                args = tuple(tensor_label(a, c) for a, c in zip(a_args, c_args))
                vec = {}
                for out_a, ca in a_vec.items():
                    for out_c, cc in prod.items():
                        vec_add(vec, {tensor_label(out_a, out_c): sign * ca * cc})
                if vec_clean(vec):
                    ops.add(n, args, vec)
    unit = None
    aug = None
    if A.unit is not None and C.unit is not None:
        unit = tensor_label(A.unit, C.unit)
    if A.aug_label is not None and C.aug_label is not None:
        aug = tensor_label(A.aug_label, C.aug_label)
    return AInfAlgebra(space, field, ops, arity_bound=A.arity_bound,
                       unit=unit, aug_label=aug,
                       complete_to_arity=A.complete_to_arity)


def _c_product(C, c_args):
    """Left-to-right product of basis elements of C."""
    acc = {c_args[0]: C.field.one}
    for c in c_args[1:]:
        nxt = {}
        for lbl, coeff in acc.items():
            vec_add(nxt, C.m.get(2, (lbl, c)), coeff)
        acc = vec_clean(nxt)
        if not acc:
            return {}
    return acc


# ---------------------------------------------------------------------------
# the cohomology algebra


class CohomologyAlgebra:
    """H(A) with the induced product, on chosen representative cocycles."""

    def __init__(self, space, product, reps, cohomologies):
        self.space = space
        self.product = product  # dict (label, label) -> vec
        self.representatives = reps  # dict label -> vec in A
        self.cohomologies = cohomologies

    def multiply(self, x, y):
        out = {}
        for lx, cx in x.items():
            for ly, cy in y.items():
                vec_add(out, self.product.get((lx, ly), {}), cx * cy)
        return vec_clean(out)


def cohomology_algebra(A):
    """The graded algebra H(A) with the product induced by m_2.

    Checks, exactly: products of cocycle representatives are cocycles,
    boundaries multiply to boundaries (so the product is well defined
    on classes), and the induced product is associative whenever A has
    no operations above arity 2.
    """
    cx = A.complex()
    field = A.field
    cohs = {}
    reps = {}
    labels = []
    for d in A.space.degrees_present():
        h = cx.cohomology(d)
        if h.dim:
            cohs[d] = h
            for idx, rep in enumerate(h.representatives):
                lbl = ("h", d, idx)
                labels.append((lbl, d))
                reps[lbl] = rep
    hspace = GradedSpace(labels)
    product = {}
    for lx, vx in reps.items():
        for ly, vy in reps.items():
            prod = A.eval_m_vectors([vx, vy])
            if not vec_is_zero(cx.apply_d(prod)):
                raise ValueError("product of cocycles fails to be a cocycle")
            d = hspace.degree[lx] + hspace.degree[ly]
            vec = {}
            if prod:
                h = cohs.get(d)
                if h is None:
                    if not _class_is_zero_in(cx, d, prod):
                        raise ValueError("product escapes the computed cohomology")
                else:
                    for pos, c in h.project(prod).items():
                        vec[("h", d, pos)] = c
            if vec_clean(vec):
                product[(lx, ly)] = vec
    for d, h in cohs.items():
        for b in h.boundaries.rows:
            for lx, vx in reps.items():
                for prod in (A.eval_m_vectors([b, vx]), A.eval_m_vectors([vx, b])):
                    dd = A.space.degree_of_vec(prod)
                    if dd is None:
                        continue
                    hh = cohs.get(dd)
                    if hh is not None and not hh.class_is_zero(prod):
                        raise ValueError("a boundary multiplies to a nonzero class")
                    if hh is None and not _class_is_zero_in(cx, dd, prod):
                        raise ValueError("a boundary multiplies to a nonzero class")
    return CohomologyAlgebra(hspace, product, reps, cohs)


def _class_is_zero_in(cx, degree, v):
    return cx.cohomology(degree).class_is_zero(v)


def degree_certified_arity_bound(A, cap=64):
    """Largest arity that degree support cannot rule out, or None.

    m_n sends input degrees (d_1..d_n) to sum(d_i) + 2 - n, that is,
    sum(d_i - 1) + 2.  Strict unitality confines units to the binary
    operation, so for n >= 3 the slots range over the augmentation
    ideal; when the shifted slot degrees d - 1 are all of one sign the
    reachable output window slides monotonically out of the degree
    support and the first empty window certifies the bound.  Mixed
    signs certify nothing (returns None).
    """
    space_degs = set(A.space.degree.values())
    out_lo, out_hi = min(space_degs), max(space_degs)
    if A.unit is not None:
        slot_degs = {A.space.degree[l] for l in A.space.labels if l != A.unit}
    else:
        slot_degs = set(space_degs)
    if not slot_degs:
        return 2
    shifted = [d - 1 for d in slot_degs]
    lo, hi = min(shifted), max(shifted)
    if lo == 0 and hi == 0:
        return None if 2 in space_degs else 2
    if lo <= 0 <= hi:
        return None
    for n in range(3, cap + 1):
        if lo > 0 and n * lo + 2 > out_hi:
            return max(2, n - 1)
        if hi < 0 and n * hi + 2 < out_lo:
            return max(2, n - 1)
    return None
