"""Exact capped-precision arithmetic in Q_p and its finite extensions.

Public surface: PrimeConfig / Qp / ExtField field objects, capped elements,
a branch-parameterized logarithm, trace/norm/embeddings along towers, the
toolkit-wide equality contract, and JSON round-trips.
"""

from fractions import Fraction

from ..errors import FieldMismatch
from .element import EXACT, ExtField, ExtNum, Qp, QpNum, solve_linear
from .factor import (
    Embedding,
    embeddings,
    hensel_split,
    make_extension,
    newton_polygon,
    newton_refine,
    norm,
    roots_in_field,
    splitting_roots,
    trace,
)
from .logmap import LogBranch, assert_equal, padic_log, teichmueller

__all__ = [
    "PrimeConfig",
    "Qp",
    "ExtField",
    "QpNum",
    "ExtNum",
    "LogBranch",
    "make_extension",
    "padic_log",
    "teichmueller",
    "assert_equal",
    "trace",
    "norm",
    "embeddings",
    "Embedding",
    "splitting_roots",
    "roots_in_field",
    "newton_polygon",
    "newton_refine",
    "hensel_split",
    "solve_linear",
    "element_to_json",
    "element_from_json",
]


class PrimeConfig:
    """The prime and the default relative precision (base-p digits)."""

    def __init__(self, p, default_rel_prec=32):
        self.p = p
        self.default_rel_prec = default_rel_prec
        self.field = Qp(p, default_rel_prec)  # primality and prec >= 4 checked here

    def __repr__(self):
        return "PrimeConfig(p=%d, default_rel_prec=%d)" % (self.p, self.default_rel_prec)


def element_to_json(x):
    """Serialize as {"val": "a/e", "digits": [...], "prec": N} (N in pi-digits)."""
    if isinstance(x, QpNum):
        if x.is_exact_zero():
            return {"val": "inf", "digits": [], "prec": 0}
        if x.is_zeroish():
            return {"val": str(x.ord), "digits": [], "prec": 0}
        return {"val": str(x.ord), "digits": x.digits(), "prec": x.rel}
    val = x.valuation()
    return {
        "val": "%d/%d" % (val.numerator, val.denominator),
        "digits": [element_to_json(c) for c in x.coeffs],
        "prec": x.rel_prec(),
    }


def element_from_json(field, obj):
    digits = obj["digits"]
    if isinstance(field, Qp):
        if obj["val"] == "inf":
            return field.zero()
        if not digits:
            return field.zeroish(int(Fraction(obj["val"])))
        unit = 0
        for d in reversed(digits):
            unit = unit * field.p + d
        return QpNum(field, int(Fraction(obj["val"])), unit, obj["prec"])
    if not isinstance(field, ExtField):
        raise FieldMismatch("unknown field type for deserialization")
    return ExtNum(field, tuple(element_from_json(field.base, d) for d in digits))


def field_to_json(field):
    """Identify a field by p, precision and the tower of defining polynomials."""
    tower = []
    K = field
    while isinstance(K, ExtField):
        step = {
            "kind": K.kind,
            "modulus": [element_to_json(c) for c in K.mod_tail],
        }
        if K.minimal_poly is not None:
            step["minimal_poly"] = [element_to_json(c) for c in K.minimal_poly]
        tower.append(step)
        K = K.base
    tower.reverse()
    return {"p": K.p, "prec": K.prec, "tower": tower}


def field_from_json(obj):
    K = Qp(obj["p"], obj["prec"])
    for step in obj["tower"]:
        tail = [element_from_json(K, c) for c in step["modulus"]]
        K = ExtField(K, tail, step["kind"])
    return K
