"""JSON encodings for the arithmetic value types.

All payloads are exact: rationals travel as "p/q" strings, prime-field
residues as plain integers, quadratic-extension elements as [x, y] pairs.
Quaternion elements are {"algebra": ..., "coeffs": [x0, x1, x2, x3]}; a
matrix over the 2x2 split realization may also use the "blocks" encoding of
raw 2x2 base-field blocks.
"""

from fractions import Fraction

from .errors import CompAlgError
from .fields import QQ, FieldSpec, PrimeField, QuadExt, RationalField, Scalar
from .quaternion import Mat2Algebra, Mat2Element, QuatAlgebra, QuaternionElement
from .matrices import CompMatrix


def field_to_json(spec: FieldSpec):
    if isinstance(spec, RationalField):
        return {"kind": "Q"}
    if isinstance(spec, PrimeField):
        return {"kind": "Fp", "p": spec.p}
    if isinstance(spec, QuadExt):
        return {
            "kind": "quad",
            "base": field_to_json(spec.base),
            "a": raw_to_json(spec.base, spec.a),
        }
    raise CompAlgError(f"unknown field spec {spec!r}")


def field_from_json(obj) -> FieldSpec:
    kind = obj["kind"]
    if kind == "Q":
        return QQ
    if kind == "Fp":
        return PrimeField(obj["p"])
    if kind == "quad":
        base = field_from_json(obj["base"])
        return QuadExt(base, raw_from_json(base, obj["a"]))
    raise CompAlgError(f"unknown field kind {kind!r}")


def raw_to_json(spec: FieldSpec, raw):
    if isinstance(spec, RationalField):
        f = Fraction(raw)
        return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
    if isinstance(spec, PrimeField):
        return int(raw)
    if isinstance(spec, QuadExt):
        return [raw_to_json(spec.base, raw[0]), raw_to_json(spec.base, raw[1])]
    raise CompAlgError(f"unknown field spec {spec!r}")


def raw_from_json(spec: FieldSpec, obj):
    if isinstance(spec, RationalField):
        return Fraction(obj)
    if isinstance(spec, PrimeField):
        return spec._coerce(int(obj))
    if isinstance(spec, QuadExt):
        return (raw_from_json(spec.base, obj[0]), raw_from_json(spec.base, obj[1]))
    raise CompAlgError(f"unknown field spec {spec!r}")


def scalar_to_json(x: Scalar):
    return raw_to_json(x.spec, x.raw)


def scalar_from_json(spec: FieldSpec, obj) -> Scalar:
    return Scalar(spec, raw_from_json(spec, obj))


def algebra_to_json(algebra):
    if isinstance(algebra, QuatAlgebra):
        return {
            "field": field_to_json(algebra.field),
            "a": scalar_to_json(algebra.a),
            "b": scalar_to_json(algebra.b),
        }
    if isinstance(algebra, Mat2Algebra):
        return {"field": field_to_json(algebra.field), "mat2": True}
    raise CompAlgError(f"unknown algebra {algebra!r}")


def algebra_from_json(obj):
    spec = field_from_json(obj["field"])
    if obj.get("mat2"):
        return Mat2Algebra(spec)
    return QuatAlgebra(spec, raw_from_json(spec, obj["a"]), raw_from_json(spec, obj["b"]))


def element_to_json(e):
    spec = e.algebra.field
    if isinstance(e, QuaternionElement):
        return {
            "algebra": algebra_to_json(e.algebra),
            "coeffs": [raw_to_json(spec, c) for c in e.coeffs],
        }
    if isinstance(e, Mat2Element):
        m00, m01, m10, m11 = (raw_to_json(spec, c) for c in e.entries)
        return {"algebra": algebra_to_json(e.algebra), "block": [[m00, m01], [m10, m11]]}
    raise CompAlgError(f"unknown element {e!r}")


def element_from_json(obj, algebra=None):
    if algebra is None:
        algebra = algebra_from_json(obj["algebra"])
    spec = algebra.field
    if isinstance(algebra, QuatAlgebra):
        return algebra.element([raw_from_json(spec, c) for c in obj["coeffs"]])
    block = obj["block"]
    return algebra.element(
        (
            raw_from_json(spec, block[0][0]),
            raw_from_json(spec, block[0][1]),
            raw_from_json(spec, block[1][0]),
            raw_from_json(spec, block[1][1]),
        )
    )


def _entry_payload(e):
    spec = e.algebra.field
    if isinstance(e, QuaternionElement):
        return [raw_to_json(spec, c) for c in e.coeffs]
    m00, m01, m10, m11 = (raw_to_json(spec, c) for c in e.entries)
    return [[m00, m01], [m10, m11]]


def matrix_to_json(Z: CompMatrix):
    payload = {"algebra": algebra_to_json(Z.algebra), "m": Z.m, "n": Z.n}
    entries = [_entry_payload(e) for row in Z.entries for e in row]
    if isinstance(Z.algebra, Mat2Algebra):
        payload["blocks"] = entries
    else:
        payload["entries"] = entries
    return payload


def matrix_from_json(obj) -> CompMatrix:
    algebra = algebra_from_json(obj["algebra"])
    m, n = obj["m"], obj["n"]
    spec = algebra.field
    flat = obj.get("entries") if "entries" in obj else obj.get("blocks")
    if flat is None or len(flat) != m * n:
        raise CompAlgError("matrix payload must carry m*n entries")
    elems = []
    for item in flat:
        if isinstance(algebra, QuatAlgebra) and not (item and isinstance(item[0], list)):
            elems.append(algebra.element([raw_from_json(spec, c) for c in item]))
        else:
            target = algebra if isinstance(algebra, Mat2Algebra) else None
            block = [
                raw_from_json(spec, item[0][0]),
                raw_from_json(spec, item[0][1]),
                raw_from_json(spec, item[1][0]),
                raw_from_json(spec, item[1][1]),
            ]
            if target is not None:
                elems.append(target.element(block))
            else:
                from .quaternion import mat2_to_quat

                elems.append(mat2_to_quat(Mat2Algebra(spec).element(block), algebra))
    return CompMatrix(algebra, [elems[i * n : (i + 1) * n] for i in range(m)])
