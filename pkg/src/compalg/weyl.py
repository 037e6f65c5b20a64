"""Laurent polynomials with monomial signed-permutation actions.

A group element is a pair (permutation, sign vector): variable i is sent to
variable perm[i] raised to the power signs[i].  The flavors are

    Sym(n)             permutations, no sign flips        order n!
    Hyperoctahedral(n) permutations with arbitrary flips  order n! * 2^n
    EvenSigned(n)      even number of flips               order n! * 2^(n-1)
    Trivial(n)         identity only
    ProductGroup       factors acting on consecutive variable blocks

Invariant rings are probed three ways: Reynolds averaging, explicit
fundamental generators (elementary symmetric functions, plain or evaluated
on x_i + 1/x_i for the signed flavors), and a bounded-degree generation
check that answers "expressible" or "inconclusive at this bound", never
claiming a refutation.  Index counts |G| / |H| feed the free-module ranks in
the K-group bookkeeping: the quaternionic pair gives (2n)!/n!, the split
pair the central binomial coefficient, and the smallest split case 2.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from math import factorial

from .errors import (
    InfeasibleError,
    NotDividingError,
    ShapeError,
    UnsupportedFlavorError,
)

DEFAULT_MAX_GROUP_ORDER = factorial(8) * 2**8  # hyperoctahedral of rank 8


class LaurentPoly:
    """Finite map from integer exponent vectors to rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        clean = {}
        for expo, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            expo = tuple(int(e) for e in expo)
            if len(expo) != nvars:
                raise ShapeError("exponent vector has the wrong length")
            clean[expo] = coeff
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *_):
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def constant(cls, nvars: int, value) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def variable(cls, nvars: int, index: int, power: int = 1) -> "LaurentPoly":
        expo = [0] * nvars
        expo[index] = power
        return cls(nvars, {tuple(expo): Fraction(1)})

    def _check(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(self.nvars, other)
        if other.nvars != self.nvars:
            raise ShapeError("operands have different variable counts")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for expo, coeff in other.terms.items():
            out[expo] = out.get(expo, Fraction(0)) + coeff
        return LaurentPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        other = self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return LaurentPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers of a general polynomial are undefined")
        acc = LaurentPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def scale(self, value) -> "LaurentPoly":
        value = Fraction(value)
        return LaurentPoly(self.nvars, {e: c * value for e, c in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, LaurentPoly)
            and other.nvars == self.nvars
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for expo in sorted(self.terms, reverse=True):
            coeff = self.terms[expo]
            factors = []
            for i, e in enumerate(expo):
                if e == 0:
                    continue
                factors.append(f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}")
            body = "*".join(factors)
            if not body:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(body)
            elif coeff == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{coeff}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"LaurentPoly({self.text()})"


_TERM_RE = re.compile(
    r"^\s*([+-])?\s*(\d+(?:/\d+)?)?\s*((?:\*?\s*x\d+(?:\^-?\d+)?)*)\s*$"
)
_FACTOR_RE = re.compile(r"x(\d+)(?:\^(-?\d+))?")


def _split_terms(text: str) -> list[str]:
    # split at +/- signs that are not exponent signs (i.e. not right after '^')
    terms, current = [], ""
    for ch in text:
        if ch in "+-" and current.strip() and not current.rstrip().endswith("^"):
            terms.append(current)
            current = ch if ch == "-" else ""
        else:
            current += ch
    if current.strip():
        terms.append(current)
    return terms


def parse_laurent(text: str, nvars: int) -> LaurentPoly:
    """Parse strings like "x1^2*x2^-1 + 3" into a LaurentPoly."""
    out = LaurentPoly(nvars, {})
    for chunk in _split_terms(text):
        chunk = chunk.strip()
        if not chunk:
            continue
        match = _TERM_RE.match(chunk)
        if not match or (match.group(2) is None and not match.group(3)):
            raise ValueError(f"cannot parse term {chunk!r}")
        sign = -1 if match.group(1) == "-" else 1
        coeff = sign * (Fraction(match.group(2)) if match.group(2) else Fraction(1))
        expo = [0] * nvars
        for var, power in _FACTOR_RE.findall(match.group(3)):
            idx = int(var) - 1
            if not 0 <= idx < nvars:
                raise ValueError(f"variable x{var} out of range for {nvars} variables")
            expo[idx] += int(power) if power else 1
        out = out + LaurentPoly(nvars, {tuple(expo): coeff})
    return out


class SignedPerm:
    """perm maps position i to perm[i]; signs[i] = -1 inverts that variable."""

    __slots__ = ("perm", "signs")

    def __init__(self, perm, signs):
        object.__setattr__(self, "perm", tuple(perm))
        object.__setattr__(self, "signs", tuple(signs))

    def __setattr__(self, *_):
        raise AttributeError("SignedPerm is immutable")

    @classmethod
    def identity(cls, n: int) -> "SignedPerm":
        return cls(range(n), (1,) * n)

    def compose(self, other: "SignedPerm") -> "SignedPerm":
        """self after other (matches acting on polynomials twice)."""
        perm = tuple(self.perm[other.perm[i]] for i in range(len(self.perm)))
        signs = tuple(self.signs[other.perm[i]] * other.signs[i] for i in range(len(self.perm)))
        return SignedPerm(perm, signs)

    def __eq__(self, other):
        return (
            isinstance(other, SignedPerm)
            and other.perm == self.perm
            and other.signs == self.signs
        )

    def __hash__(self):
        return hash((self.perm, self.signs))

    def __repr__(self):
        return f"SignedPerm({self.perm}, {self.signs})"


def act(g: SignedPerm, f: LaurentPoly) -> LaurentPoly:
    """Monomial action: x_i -> x_{ g.perm[i] } ** g.signs[i]."""
    if len(g.perm) != f.nvars:
        raise ShapeError("group element and polynomial have different variable counts")
    out = {}
    for expo, coeff in f.terms.items():
        new = [0] * f.nvars
        for i, e in enumerate(expo):
            new[g.perm[i]] += g.signs[i] * e
        key = tuple(new)
        out[key] = out.get(key, Fraction(0)) + coeff
    return LaurentPoly(f.nvars, out)


class SignedPermGroup:
    flavor = "abstract"

    def __init__(self, n: int):
        self.n = n

    def order(self) -> int:
        raise NotImplementedError

    def elements(self):
        raise NotImplementedError

    def generators(self):
        raise NotImplementedError

    def __repr__(self):
        return f"{self.flavor}({self.n})"

    def __eq__(self, other):
        return type(other) is type(self) and other.n == self.n

    def __hash__(self):
        return hash((self.flavor, self.n))


class SymGroup(SignedPermGroup):
    flavor = "Sym"

    def order(self):
        return factorial(self.n)

    def elements(self):
        for p in permutations(range(self.n)):
            yield SignedPerm(p, (1,) * self.n)

    def generators(self):
        if self.n < 2:
            return []
        out = []
        for i in range(self.n - 1):
            perm = list(range(self.n))
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
            out.append(SignedPerm(perm, (1,) * self.n))
        return out


class TrivialGroup(SignedPermGroup):
    flavor = "Trivial"

    def order(self):
        return 1

    def elements(self):
        yield SignedPerm.identity(self.n)

    def generators(self):
        return []


class HyperoctahedralGroup(SignedPermGroup):
    flavor = "Hyperoctahedral"

    def order(self):
        return factorial(self.n) * 2**self.n

    def elements(self):
        for p in permutations(range(self.n)):
            for signs in product((1, -1), repeat=self.n):
                yield SignedPerm(p, signs)

    def generators(self):
        out = list(SymGroup(self.n).generators())
        signs = [1] * self.n
        signs[0] = -1
        out.append(SignedPerm(range(self.n), signs))
        return out


class EvenSignedGroup(SignedPermGroup):
    flavor = "EvenSigned"

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("the even-signed flavor needs n >= 2")
        super().__init__(n)

    def order(self):
        return factorial(self.n) * 2 ** (self.n - 1)

    def elements(self):
        for p in permutations(range(self.n)):
            for signs in product((1, -1), repeat=self.n):
                if signs.count(-1) % 2 == 0:
                    yield SignedPerm(p, signs)

    def generators(self):
        out = list(SymGroup(self.n).generators())
        signs = [1] * self.n
        signs[0] = signs[1] = -1
        out.append(SignedPerm(range(self.n), signs))
        return out


class ProductGroup(SignedPermGroup):
    flavor = "Product"

    def __init__(self, factors):
        self.factors = tuple(factors)
        super().__init__(sum(f.n for f in self.factors))

    def __repr__(self):
        return " x ".join(repr(f) for f in self.factors)

    def __eq__(self, other):
        return isinstance(other, ProductGroup) and other.factors == self.factors

    def __hash__(self):
        return hash(self.factors)

    def order(self):
        out = 1
        for f in self.factors:
            out *= f.order()
        return out

    def _embed(self, parts):
        perm, signs = [], []
        offset = 0
        for factor, g in zip(self.factors, parts):
            perm.extend(offset + p for p in g.perm)
            signs.extend(g.signs)
            offset += factor.n
        return SignedPerm(perm, signs)

    def elements(self):
        for parts in product(*(list(f.elements()) for f in self.factors)):
            yield self._embed(parts)

    def generators(self):
        out = []
        for idx, factor in enumerate(self.factors):
            for g in factor.generators():
                parts = [SignedPerm.identity(f.n) for f in self.factors]
                parts[idx] = g
                out.append(self._embed(parts))
        return out


def is_invariant(G: SignedPermGroup, f: LaurentPoly) -> bool:
    return all(act(g, f) == f for g in G.generators())


def reynolds(G: SignedPermGroup, f: LaurentPoly, max_order: int = DEFAULT_MAX_GROUP_ORDER) -> LaurentPoly:
    """Group average (1/|G|) sum g.f; idempotent on invariants."""
    order = G.order()
    if order > max_order:
        raise InfeasibleError(f"|G| = {order} exceeds the averaging budget {max_order}")
    acc = LaurentPoly(f.nvars, {})
    for g in G.elements():
        acc = acc + act(g, f)
    return acc.scale(Fraction(1, order))


def elementary_symmetric(k: int, gens: list[LaurentPoly], nvars: int) -> LaurentPoly:
    acc = LaurentPoly(nvars, {})
    for subset in combinations(gens, k):
        term = LaurentPoly.constant(nvars, 1)
        for g in subset:
            term = term * g
        acc = acc + term
    return acc


def fundamental_generators(flavor: str, n: int) -> list[LaurentPoly]:
    """Sym: e_1..e_n in the variables; Hyperoctahedral: e_1..e_n in x_i + 1/x_i."""
    if flavor == "Sym":
        base = [LaurentPoly.variable(n, i) for i in range(n)]
    elif flavor == "Hyperoctahedral":
        base = [
            LaurentPoly.variable(n, i) + LaurentPoly.variable(n, i, -1) for i in range(n)
        ]
    else:
        raise UnsupportedFlavorError(f"no generator table for flavor {flavor!r}")
    return [elementary_symmetric(k, base, n) for k in range(1, n + 1)]


def weyl_index(G: SignedPermGroup, H: SignedPermGroup) -> int:
    """|G| / |H|; the subgroup is specified independently, only orders are used."""
    g, h = G.order(), H.order()
    if g % h != 0:
        raise NotDividingError(f"|{H!r}| = {h} does not divide |{G!r}| = {g}")
    return g // h


def ktheory_rank(kind: str, n: int | None = None) -> int:
    """Rank of the free module of K-group summands for the three standard pairs.

    quaternionic(n): index of Sym(n) in Sym(2n), i.e. (2n)!/n!.
    split(n): index of Sym(n) x Sym(n) in Sym(2n), the central binomial.
    one_dim_split: the two-summand degenerate case.
    """
    if kind == "one_dim_split":
        return weyl_index(SymGroup(2), ProductGroup([SymGroup(1), SymGroup(1)]))
    if n is None or n < 1:
        raise ValueError("need n >= 1")
    if kind == "quaternionic":
        return weyl_index(SymGroup(2 * n), SymGroup(n))
    if kind == "split":
        return weyl_index(SymGroup(2 * n), ProductGroup([SymGroup(n), SymGroup(n)]))
    raise ValueError(f"unknown pair kind {kind!r}")


@dataclass
class GenerationReport:
    flavor: str
    n: int
    degree_bound: int
    checked: int = 0
    expressible: int = 0
    inconclusive: list[str] = field(default_factory=list)

    def to_json(self):
        return {
            "flavor": self.flavor,
            "n": self.n,
            "degree_bound": self.degree_bound,
            "checked": self.checked,
            "expressible": self.expressible,
            "inconclusive": list(self.inconclusive),
        }


def _orbit_sum(G: SignedPermGroup, expo: tuple) -> LaurentPoly:
    monomials = {tuple(act(g, LaurentPoly(G.n, {expo: 1})).terms.keys())[0] for g in G.elements()}
    return LaurentPoly(G.n, {m: Fraction(1) for m in monomials})


def _bounded_products(flavor: str, n: int, bound: int) -> list[LaurentPoly]:
    """Products of fundamental generators with weighted degree at most `bound`.

    Generator k carries weight k; for Sym the inverse of the top generator is
    also available (it is a unit in the Laurent ring) at weight n per power.
    """
    gens = fundamental_generators(flavor, n)
    results = [(LaurentPoly.constant(n, 1), 0)]
    factors = [(gen, idx + 1) for idx, gen in enumerate(gens)]
    if flavor == "Sym":
        top_inv = LaurentPoly(n, {(-1,) * n: Fraction(1)})  # inverse of e_n = x1...xn
        factors.append((top_inv, n))
    for gen, weight in factors:
        extended = list(results)
        for poly, w in results:
            current, cw = poly, w
            while cw + weight <= bound:
                current = current * gen
                cw += weight
                extended.append((current, cw))
        results = extended
    return [poly for poly, _ in results]


def verify_generation(flavor: str, n: int, degree_bound: int) -> GenerationReport:
    """Check bounded orbit-sums against bounded generator products.

    Anything not expressible within the bound is reported as inconclusive at
    this bound, never as a refutation.
    """
    if n > 3 or degree_bound > 6:
        raise InfeasibleError("generation checking is budgeted to n <= 3, bound <= 6")
    if flavor == "Sym":
        G = SymGroup(n)
    elif flavor == "Hyperoctahedral":
        G = HyperoctahedralGroup(n)
    else:
        raise UnsupportedFlavorError(f"no generation check for flavor {flavor!r}")
    candidates = _bounded_products(flavor, n, degree_bound)
    report = GenerationReport(flavor=flavor, n=n, degree_bound=degree_bound)
    seen = set()
    for expo in product(range(-degree_bound, degree_bound + 1), repeat=n):
        orbit = _orbit_sum(G, expo)
        key = frozenset(orbit.terms)
        if key in seen or orbit.is_zero():
            continue
        seen.add(key)
        report.checked += 1
        if _in_span(orbit, candidates):
            report.expressible += 1
        else:
            report.inconclusive.append(orbit.text())
    return report


def _in_span(target: LaurentPoly, candidates: list[LaurentPoly]) -> bool:
    support = set(target.terms)
    for c in candidates:
        support.update(c.terms)
    support = sorted(support)
    index = {m: i for i, m in enumerate(support)}
    rows = [[Fraction(0)] * len(candidates) for _ in support]
    for j, c in enumerate(candidates):
        for m, coeff in c.terms.items():
            rows[index[m]][j] = coeff
    rhs = [Fraction(0)] * len(support)
    for m, coeff in target.terms.items():
        rhs[index[m]] = coeff
    # consistency of rows * x = rhs by elimination
    ncols = len(candidates)
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        rhs[rank], rhs[pivot] = rhs[pivot], rhs[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [e * inv for e in rows[rank]]
        rhs[rank] = rhs[rank] * inv
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
                rhs[r] = rhs[r] - factor * rhs[rank]
        rank += 1
    for r in range(len(rows)):
        if all(e == 0 for e in rows[r]) and rhs[r] != 0:
            return False
    return True


def group_from_json(obj) -> SignedPermGroup:
    """{"flavor": "BC", "n": 3} and friends; products as {"product": [...]}."""
    if "product" in obj:
        return ProductGroup([group_from_json(part) for part in obj["product"]])
    flavor = obj["flavor"].lower()
    n = obj["n"]
    if flavor in ("a", "sym"):
        return SymGroup(n)
    if flavor in ("bc", "b", "c", "hyperoctahedral"):
        return HyperoctahedralGroup(n)
    if flavor in ("d", "evensigned"):
        return EvenSignedGroup(n)
    if flavor == "trivial":
        return TrivialGroup(n)
    raise UnsupportedFlavorError(f"unknown flavor {obj['flavor']!r}")
