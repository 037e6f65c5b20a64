"""Four-dimensional associative composition algebras.

Two concrete realizations share one element interface:

``QuatAlgebra(field, a, b)``
    basis (1, u, v, w) with u*u = a, v*v = b, w = u*v = -v*u, over a base of
    characteristic != 2.  The full 4x4 structure-constant table is derived
    from those relations once per algebra, and associativity is re-verified
    on all 64 basis triples at construction; this guards the sign choices in
    the u*w, w*v, w*w products, which are easy to get wrong by hand.

``Mat2Algebra(field)``
    the split algebra realized directly as 2x2 matrices over the base field,
    with conjugation the adjugate and norm the determinant.  This form works
    in every characteristic (including 2) and is the one the flattening
    isomorphism Mat(n, Mat(2,k)) ~ Mat(2n,k) consumes.

For characteristic != 2 the two realizations are identified by the basis

    1 -> I,  u -> diag(1,-1),  v -> [[0,-1],[1,0]],  w -> [[0,-1],[-1,0]],

which exhibits Mat(2,k) as the (1,-1) algebra; `quat_to_mat2` / `mat2_to_quat`
implement that isomorphism and the test suite transports random products
through it.

Scalars act on the right everywhere in this package; since the algebras are
noncommutative the side matters and left variants are deliberately absent.
"""

from .errors import (
    AlgebraMismatchError,
    InfeasibleError,
    NotInvertibleError,
)
from .fields import (
    UNDECIDED,
    FieldSpec,
    PrimeField,
    QuadExt,
    RationalField,
    Scalar,
    square_root_raw,
)

SPLIT = "split"
NONSPLIT = "nonsplit"

# default search bounds for splitness over the rationals
_ZERO_DIVISOR_BOX = 5
_TWO_SQUARES_BOUND = 50
_FP_SEARCH_LIMIT = 2000


class QuatAlgebra:
    """The quaternion algebra with parameters (a, b) over QQ or GF(p), p odd."""

    def __init__(self, field: FieldSpec, a, b):
        if not isinstance(field, (RationalField, PrimeField)):
            raise ValueError("base field must be QQ or GF(p)")
        if field.characteristic == 2:
            raise ValueError("quaternion coefficients need characteristic != 2")
        self.field = field
        self.a = field.element(a)
        self.b = field.element(b)
        if self.a.is_zero() or self.b.is_zero():
            raise ValueError("parameters a, b must be nonzero")
        self.dim = 4
        self._table = self._build_table()
        self._check_associativity()
        self._split_state = None
        self._quad = None

    def _build_table(self):
        f = self.field
        zero, one = f._coerce(0), f._coerce(1)
        a, b = self.a.raw, self.b.raw

        def vec(i, c=one):
            r = [zero, zero, zero, zero]
            r[i] = c
            return tuple(r)

        neg = f._neg
        t = [[None] * 4 for _ in range(4)]
        for j in range(4):
            t[0][j] = vec(j)
            t[j][0] = vec(j)
        t[1][1] = vec(0, a)
        t[1][2] = vec(3)
        t[1][3] = vec(2, a)
        t[2][1] = vec(3, neg(one))
        t[2][2] = vec(0, b)
        t[2][3] = vec(1, neg(b))
        t[3][1] = vec(2, neg(a))
        t[3][2] = vec(1, b)
        t[3][3] = vec(0, neg(f._mul(a, b)))
        return t

    def _mul_raw(self, x, y):
        f = self.field
        acc = [f._coerce(0)] * 4
        for i in range(4):
            xi = x[i]
            if xi == 0:
                continue
            for j in range(4):
                yj = y[j]
                if yj == 0:
                    continue
                c = f._mul(xi, yj)
                row = self._table[i][j]
                for k in range(4):
                    if row[k] != 0:
                        acc[k] = f._add(acc[k], f._mul(c, row[k]))
        return tuple(acc)

    def _check_associativity(self):
        f = self.field
        basis = []
        for i in range(4):
            e = [f._coerce(0)] * 4
            e[i] = f._coerce(1)
            basis.append(tuple(e))
        for x in basis:
            for y in basis:
                for z in basis:
                    left = self._mul_raw(self._mul_raw(x, y), z)
                    right = self._mul_raw(x, self._mul_raw(y, z))
                    if left != right:
                        raise ValueError("structure constants are not associative")

    def __eq__(self, other):
        return (
            isinstance(other, QuatAlgebra)
            and other.field == self.field
            and other.a == self.a
            and other.b == self.b
        )

    def __hash__(self):
        return hash(("quat", self.field, self.a, self.b))

    def __repr__(self):
        return f"({self.a.raw},{self.b.raw})_{self.field!r}"

    def element(self, coeffs) -> "QuaternionElement":
        return QuaternionElement(self, tuple(self.field._coerce(c) for c in coeffs))

    def zero(self):
        return self.element((0, 0, 0, 0))

    def one(self):
        return self.element((1, 0, 0, 0))

    def u(self):
        return self.element((0, 1, 0, 0))

    def v(self):
        return self.element((0, 0, 1, 0))

    def w(self):
        return self.element((0, 0, 0, 1))

    def from_base(self, value) -> "QuaternionElement":
        return self.element((value, 0, 0, 0))

    def quad_subfield(self) -> QuadExt:
        """The subalgebra L = k[sqrt(a)] generated by u, used for the doubling coordinates."""
        if self._quad is None:
            self._quad = QuadExt(self.field, self.a.raw)
        return self._quad

    def has_mat2_form(self) -> bool:
        return self.a == self.field.element(1) and self.b == self.field.element(-1)

    @classmethod
    def split_form(cls, field: FieldSpec) -> "QuatAlgebra":
        """The (1,-1) algebra, the coefficient form of Mat(2,k) for char != 2."""
        return cls(field, 1, -1)

    def is_split_decision(self) -> str:
        """'split', 'nonsplit', or 'undecided', with a verified witness for 'split'.

        Over GF(p) a zero divisor is searched for exhaustively and the search
        result alone is the answer.  Over QQ the decision combines a bounded
        zero-divisor search, the sum-of-two-squares criterion for b = -1 (or
        a = -1 through the parameter swap), and positive-definiteness of the
        norm form when a < 0 and b < 0; anything else stays undecided.
        """
        if self._split_state is None:
            self._split_state = self._decide_split()
        return self._split_state[0]

    def split_witness(self):
        """A verified zero divisor when the decision is 'split', else None."""
        self.is_split_decision()
        return self._split_state[1]

    def _decide_split(self):
        norm0 = lambda z: z.norm().is_zero() and not z.is_zero()
        # perfect-square parameter gives an explicit zero divisor (s+u)(s-u) = a - u^2 = 0
        for par, idx in ((self.a, 1), (self.b, 2)):
            s = square_root_raw(self.field, par.raw)
            if s is not None:
                coeffs = [s, 0, 0, 0]
                coeffs[idx] = 1
                z = self.element(coeffs)
                if norm0(z):
                    return (SPLIT, z)
        if isinstance(self.field, PrimeField):
            z = self._fp_zero_divisor()
            if z is None or not norm0(z):
                raise InfeasibleError("no zero divisor found over the prime field")
            return (SPLIT, z)
        z = self._box_zero_divisor(_ZERO_DIVISOR_BOX)
        if z is not None and norm0(z):
            return (SPLIT, z)
        z = self._two_squares_zero_divisor(_TWO_SQUARES_BOUND)
        if z is not None and norm0(z):
            return (SPLIT, z)
        if self.a.raw < 0 and self.b.raw < 0:
            # the norm form x0^2 - a x1^2 - b x2^2 + ab x3^2 is positive definite
            return (NONSPLIT, None)
        return (UNDECIDED, None)

    def _fp_zero_divisor(self):
        p = self.field.p
        if p > _FP_SEARCH_LIMIT:
            raise InfeasibleError(f"zero-divisor search over GF({p}) exceeds the budget")
        sqrt_table = {}
        for r in range(p):
            sqrt_table.setdefault(r * r % p, r)
        a, b = self.a.raw, self.b.raw
        # exhaust the x3 = 0 slice first: x0^2 = a x1^2 + b x2^2
        for x1 in range(p):
            for x2 in range(p):
                if x1 == 0 and x2 == 0:
                    continue
                t = (a * x1 * x1 + b * x2 * x2) % p
                if t in sqrt_table:
                    return self.element((sqrt_table[t], x1, x2, 0))
        # full fallback; unreachable for odd p but keeps the search honest
        for x0 in range(p):
            for x1 in range(p):
                for x2 in range(p):
                    for x3 in range(p):
                        if x0 == x1 == x2 == x3 == 0:
                            continue
                        z = self.element((x0, x1, x2, x3))
                        if z.norm().is_zero():
                            return z
        return None

    def _box_zero_divisor(self, box: int):
        rng = range(-box, box + 1)
        for x0 in range(0, box + 1):
            for x1 in rng:
                for x2 in rng:
                    for x3 in rng:
                        if x0 == x1 == x2 == x3 == 0:
                            continue
                        z = self.element((x0, x1, x2, x3))
                        if z.norm().is_zero():
                            return z
        return None

    def _two_squares_zero_divisor(self, bound: int):
        # (a,-1): split iff a = r^2 + s^2; then r + u + s*v has norm
        # r^2 - a + s^2 = 0.  (-1,b) is the same through the parameter swap.
        minus_one = self.field.element(-1)
        if self.b == minus_one:
            pair = self._sum_of_two_squares(self.a.raw, bound)
            if pair is not None:
                r, s = pair
                return self.element((r, 1, s, 0))
        if self.a == minus_one:
            pair = self._sum_of_two_squares(self.b.raw, bound)
            if pair is not None:
                r, s = pair
                return self.element((r, s, 1, 0))
        return None

    def _sum_of_two_squares(self, value, bound: int):
        from fractions import Fraction
        from math import isqrt

        val = Fraction(value)
        if val < 0:
            return None
        for den in range(1, bound + 1):
            m = val * den * den
            if m.denominator != 1:
                continue
            m = m.numerator
            top = isqrt(m)
            for n1 in range(min(top, bound) + 1):
                rest = m - n1 * n1
                n2 = isqrt(rest)
                if n2 * n2 == rest and n2 <= bound:
                    return (Fraction(n1, den), Fraction(n2, den))
        return None


class QuaternionElement:
    """Element x0 + x1*u + x2*v + x3*w with exact base-field coefficients."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: QuatAlgebra, coeffs):
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, *_):
        raise AttributeError("QuaternionElement is immutable")

    def _check(self, other):
        if not isinstance(other, QuaternionElement) or other.algebra != self.algebra:
            raise AlgebraMismatchError("operands live in different algebras")
        return other

    def __add__(self, other):
        other = self._check(other)
        f = self.algebra.field
        return QuaternionElement(
            self.algebra, tuple(f._add(x, y) for x, y in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other):
        other = self._check(other)
        f = self.algebra.field
        return QuaternionElement(
            self.algebra, tuple(f._sub(x, y) for x, y in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self):
        f = self.algebra.field
        return QuaternionElement(self.algebra, tuple(f._neg(x) for x in self.coeffs))

    def __mul__(self, other):
        other = self._check(other)
        return QuaternionElement(
            self.algebra, self.algebra._mul_raw(self.coeffs, other.coeffs)
        )

    def __eq__(self, other):
        return (
            isinstance(other, QuaternionElement)
            and other.algebra == self.algebra
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.algebra, self.coeffs))

    def __repr__(self):
        return f"Quat{self.coeffs!r}"

    def is_zero(self) -> bool:
        zero = self.algebra.field._coerce(0)
        return all(c == zero for c in self.coeffs)

    def scale(self, value) -> "QuaternionElement":
        """Base-field scalar multiple (central, so no side to choose)."""
        f = self.algebra.field
        c = f._coerce(value)
        return QuaternionElement(self.algebra, tuple(f._mul(x, c) for x in self.coeffs))

    def conjugate(self) -> "QuaternionElement":
        f = self.algebra.field
        x0, x1, x2, x3 = self.coeffs
        return QuaternionElement(self.algebra, (x0, f._neg(x1), f._neg(x2), f._neg(x3)))

    def norm(self) -> Scalar:
        """z * conj(z) projected to the 1-component.

        The u, v, w components of the product are checked to vanish exactly.
        """
        prod = (self * self.conjugate()).coeffs
        zero = self.algebra.field._coerce(0)
        if prod[1] != zero or prod[2] != zero or prod[3] != zero:
            raise AssertionError("norm has a nonreal component; structure table is broken")
        return Scalar(self.algebra.field, prod[0])

    def is_unit(self) -> bool:
        return not self.norm().is_zero()

    def inverse(self) -> "QuaternionElement":
        n = self.norm()
        if n.is_zero():
            raise NotInvertibleError(f"{self!r} has zero norm")
        return self.conjugate().scale(n.inverse())

    def cd_coords(self) -> tuple[Scalar, Scalar]:
        """Doubling coordinates (x, y) in L = k[sqrt(a)] with z = x + v*y.

        Identifying u with sqrt(a) gives x = x0 + x1*sqrt(a); the v-part
        satisfies v*(y0 + y1*sqrt(a)) = y0*v - y1*w, hence y = x2 - x3*sqrt(a).
        """
        L = self.algebra.quad_subfield()
        x0, x1, x2, x3 = self.coeffs
        f = self.algebra.field
        return (Scalar(L, (x0, x1)), Scalar(L, (x2, f._neg(x3))))

    @classmethod
    def from_cd_coords(cls, algebra: QuatAlgebra, x: Scalar, y: Scalar) -> "QuaternionElement":
        L = algebra.quad_subfield()
        if x.spec != L or y.spec != L:
            raise AlgebraMismatchError("coordinates must live in the doubling subfield")
        f = algebra.field
        return algebra.element((x.raw[0], x.raw[1], y.raw[0], f._neg(y.raw[1])))


class Mat2Algebra:
    """The split four-dimensional composition algebra as literal 2x2 matrices."""

    def __init__(self, field: FieldSpec):
        if not isinstance(field, (RationalField, PrimeField)):
            raise ValueError("base field must be QQ or GF(p)")
        self.field = field
        self.dim = 4

    def __eq__(self, other):
        return isinstance(other, Mat2Algebra) and other.field == self.field

    def __hash__(self):
        return hash(("mat2", self.field))

    def __repr__(self):
        return f"Mat2({self.field!r})"

    def element(self, entries) -> "Mat2Element":
        """Entries (m00, m01, m10, m11), or a 2x2 nested list."""
        if len(entries) == 2:
            entries = (entries[0][0], entries[0][1], entries[1][0], entries[1][1])
        return Mat2Element(self, tuple(self.field._coerce(e) for e in entries))

    def zero(self):
        return self.element((0, 0, 0, 0))

    def one(self):
        return self.element((1, 0, 0, 1))

    def from_base(self, value) -> "Mat2Element":
        c = self.field._coerce(value)
        return Mat2Element(self, (c, self.field._coerce(0), self.field._coerce(0), c))

    def is_split_decision(self) -> str:
        return SPLIT

    def split_witness(self) -> "Mat2Element":
        return self.element((0, 1, 0, 0))

    def has_mat2_form(self) -> bool:
        return True


class Mat2Element:
    """2x2 matrix entries (m00, m01, m10, m11); conjugate is the adjugate."""

    __slots__ = ("algebra", "entries")

    def __init__(self, algebra: Mat2Algebra, entries):
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "entries", tuple(entries))

    def __setattr__(self, *_):
        raise AttributeError("Mat2Element is immutable")

    def _check(self, other):
        if not isinstance(other, Mat2Element) or other.algebra != self.algebra:
            raise AlgebraMismatchError("operands live in different algebras")
        return other

    def __add__(self, other):
        other = self._check(other)
        f = self.algebra.field
        return Mat2Element(
            self.algebra, tuple(f._add(x, y) for x, y in zip(self.entries, other.entries))
        )

    def __sub__(self, other):
        other = self._check(other)
        f = self.algebra.field
        return Mat2Element(
            self.algebra, tuple(f._sub(x, y) for x, y in zip(self.entries, other.entries))
        )

    def __neg__(self):
        f = self.algebra.field
        return Mat2Element(self.algebra, tuple(f._neg(x) for x in self.entries))

    def __mul__(self, other):
        other = self._check(other)
        f = self.algebra.field
        a00, a01, a10, a11 = self.entries
        b00, b01, b10, b11 = other.entries
        return Mat2Element(
            self.algebra,
            (
                f._add(f._mul(a00, b00), f._mul(a01, b10)),
                f._add(f._mul(a00, b01), f._mul(a01, b11)),
                f._add(f._mul(a10, b00), f._mul(a11, b10)),
                f._add(f._mul(a10, b01), f._mul(a11, b11)),
            ),
        )

    def __eq__(self, other):
        return (
            isinstance(other, Mat2Element)
            and other.algebra == self.algebra
            and other.entries == self.entries
        )

    def __hash__(self):
        return hash((self.algebra, self.entries))

    def __repr__(self):
        m00, m01, m10, m11 = self.entries
        return f"[[{m00},{m01}],[{m10},{m11}]]"

    def is_zero(self) -> bool:
        zero = self.algebra.field._coerce(0)
        return all(e == zero for e in self.entries)

    def scale(self, value) -> "Mat2Element":
        f = self.algebra.field
        c = f._coerce(value)
        return Mat2Element(self.algebra, tuple(f._mul(x, c) for x in self.entries))

    def conjugate(self) -> "Mat2Element":
        f = self.algebra.field
        m00, m01, m10, m11 = self.entries
        return Mat2Element(self.algebra, (m11, f._neg(m01), f._neg(m10), m00))

    def norm(self) -> Scalar:
        f = self.algebra.field
        m00, m01, m10, m11 = self.entries
        return Scalar(f, f._sub(f._mul(m00, m11), f._mul(m01, m10)))

    def is_unit(self) -> bool:
        return not self.norm().is_zero()

    def inverse(self) -> "Mat2Element":
        n = self.norm()
        if n.is_zero():
            raise NotInvertibleError(f"{self!r} is singular")
        return self.conjugate().scale(n.inverse())


def quat_to_mat2(z: QuaternionElement, target: Mat2Algebra | None = None) -> Mat2Element:
    """Image of a (1,-1) element under the 2x2 realization.

    1 -> I, u -> diag(1,-1), v -> [[0,-1],[1,0]], w -> [[0,-1],[-1,0]].
    """
    alg = z.algebra
    if not alg.has_mat2_form():
        raise AlgebraMismatchError("only the (1,-1) algebra has the registered 2x2 form")
    if target is None:
        target = Mat2Algebra(alg.field)
    f = alg.field
    x0, x1, x2, x3 = z.coeffs
    return target.element(
        (
            f._add(x0, x1),
            f._neg(f._add(x2, x3)),
            f._sub(x2, x3),
            f._sub(x0, x1),
        )
    )


def mat2_to_quat(m: Mat2Element, target: QuatAlgebra | None = None) -> QuaternionElement:
    """Inverse of `quat_to_mat2` (needs characteristic != 2)."""
    f = m.algebra.field
    if f.characteristic == 2:
        raise ValueError("the (1,-1) coefficient form does not exist in characteristic 2")
    if target is None:
        target = QuatAlgebra.split_form(f)
    elif not target.has_mat2_form():
        raise AlgebraMismatchError("target must be the (1,-1) algebra")
    m00, m01, m10, m11 = m.entries
    half = f._inv(f._coerce(2))
    return target.element(
        (
            f._mul(f._add(m00, m11), half),
            f._mul(f._sub(m00, m11), half),
            f._mul(f._sub(m10, m01), half),
            f._mul(f._neg(f._add(m01, m10)), half),
        )
    )


def swap_parameters(z: QuaternionElement, target: QuatAlgebra | None = None) -> QuaternionElement:
    """The natural isomorphism (a,b) -> (b,a): u and v trade places, w flips sign."""
    alg = z.algebra
    if target is None:
        target = QuatAlgebra(alg.field, alg.b.raw, alg.a.raw)
    f = alg.field
    x0, x1, x2, x3 = z.coeffs
    return target.element((x0, x2, x1, f._neg(x3)))
