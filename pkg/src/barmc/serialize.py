"""Canonical JSON descriptions of algebras, elements, and reports.

One description format serves inline scenario input, the `emit`
round-trip, and the golden files: UTF-8 JSON with every coefficient an
exact decimal string ("2", "11/3", "-41/9"), basis entries in the
space's own label order, operations sorted by arity and then by the
printed input tuple.  Serializing the same object twice yields the
same bytes; that is what the determinism contract of the command line
rests on, so nothing here may iterate over an unordered container
without sorting.

Labels are strings in user input, but internally produced labels
(tensor factors, named cohomology classes) are nested tuples of
strings and integers.  They serialize as JSON arrays and come back as
tuples, so a round trip is exact on both kinds.
"""

import json
from fractions import Fraction

from .ainfinity import AInfAlgebra, StructureMaps
from .linalg import GradedSpace, vec_clean
from .scalars import Field

SCHEMA = 1


def field_to_json(field):
    if field.kind == "Q":
        return {"kind": "Q"}
    return {"kind": "Fp", "p": field.p}


def field_from_json(doc):
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ValueError("field descriptor must be an object with a 'kind'")
    if doc["kind"] == "Q":
        return Field.rationals()
    if doc["kind"] == "Fp":
        return Field.prime(int(doc["p"]))
    raise ValueError("unknown field kind %r" % (doc["kind"],))


def parse_field_name(text):
    """Command-line field grammar: Q, or F followed by a prime."""
    if text == "Q":
        return Field.rationals()
    if text.startswith("F") and text[1:].isdigit():
        return Field.prime(int(text[1:]))
    raise ValueError("field must be Q or F<p>, got %r" % (text,))


def field_name(field):
    return "Q" if field.kind == "Q" else "F%d" % field.p


def label_to_json(label):
    if isinstance(label, tuple):
        return [label_to_json(part) for part in label]
    return label


def label_from_json(doc):
    if isinstance(doc, list):
        return tuple(label_from_json(part) for part in doc)
    return doc


def scalar_to_str(c):
    return str(c)


def scalar_from_str(field, text):
    frac = Fraction(text)
    if field.kind == "Q":
        return field(frac)
    if frac.denominator == 1:
        return field(frac.numerator)
    return field(frac.numerator) / field(frac.denominator)


def vector_to_json(vec):
    """A sparse vector as a sorted list of [label, coefficient] pairs."""
    return [[label_to_json(l), scalar_to_str(c)]
            for l, c in sorted(vec.items(), key=lambda kv: repr(kv[0]))]


def vector_from_json(field, doc):
    out = {}
    for entry in doc:
        if not isinstance(entry, list) or len(entry) != 2:
            raise ValueError("vector entries are [label, coeff] pairs")
        lbl = label_from_json(entry[0])
        c = scalar_from_str(field, entry[1])
        if lbl in out:
            raise ValueError("duplicate label %r in vector" % (lbl,))
        if c:
            out[lbl] = c
    return out


def element_to_json(alpha):
    """A deformation element: labels are (algebra label, base label)."""
    return vector_to_json(alpha)


def element_from_json(field, doc):
    alpha = vector_from_json(field, doc)
    for lbl in alpha:
        if not isinstance(lbl, tuple) or len(lbl) != 2:
            raise ValueError(
                "element labels are [algebra label, base label] pairs, "
                "got %r" % (lbl,))
    return alpha


def algebra_to_json(A):
    ops = []
    for n in A.m.arities():
        for args in A.m.support(n):
            ops.append({
                "arity": n,
                "in": [label_to_json(a) for a in args],
                "out": [{"label": label_to_json(l), "coeff": scalar_to_str(c)}
                        for l, c in sorted(A.m.get(n, args).items(),
                                           key=lambda kv: repr(kv[0]))],
            })
    doc = {
        "field": field_to_json(A.field),
        "basis": [{"label": label_to_json(l), "degree": A.space.degree[l]}
                  for l in A.space.labels],
        "ops": ops,
        "unit": label_to_json(A.unit) if A.unit is not None else None,
        "aug": label_to_json(A.aug_label) if A.aug_label is not None else None,
        "arity_bound": A.arity_bound,
    }
    if A.complete_to_arity is not None:
        doc["complete_to_arity"] = A.complete_to_arity
    return doc


def algebra_from_json(doc):
    if not isinstance(doc, dict):
        raise ValueError("algebra description must be an object")
    for key in ("field", "basis", "ops"):
        if key not in doc:
            raise ValueError("algebra description misses %r" % (key,))
    field = field_from_json(doc["field"])
    basis = []
    for entry in doc["basis"]:
        basis.append((label_from_json(entry["label"]), int(entry["degree"])))
    space = GradedSpace(basis)
    m = StructureMaps()
    for op in doc["ops"]:
        n = int(op["arity"])
        args = tuple(label_from_json(a) for a in op["in"])
        if len(args) != n:
            raise ValueError("op lists %d inputs but declares arity %d"
                             % (len(args), n))
        vec = {}
        for term in op["out"]:
            lbl = label_from_json(term["label"])
            c = scalar_from_str(field, term["coeff"])
            if lbl in vec:
                raise ValueError("duplicate output label %r" % (lbl,))
            if c:
                vec[lbl] = c
        if m.get(n, args):
            raise ValueError("duplicate operation entry for m_%d%r" % (n, args))
        m.set(n, args, vec_clean(vec))
    unit = doc.get("unit")
    aug = doc.get("aug")
    return AInfAlgebra(
        space, field, m,
        arity_bound=doc.get("arity_bound"),
        unit=label_from_json(unit) if unit is not None else None,
        aug_label=label_from_json(aug) if aug is not None else None,
        complete_to_arity=doc.get("complete_to_arity"),
    )


def dumps_canonical(doc):
    """The one JSON writer: sorted keys, two-space indent, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def emit_algebra(name, field, args=()):
    """Canonical description text of a builtin example, byte-stable."""
    from .examples import builtin_algebra
    return dumps_canonical(algebra_to_json(builtin_algebra(name, field, args)))
