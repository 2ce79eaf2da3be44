"""Homogeneous derivations of the (Laurent) polynomial ring over Q.

Every homogeneous derivation of K[x_1^{+-1}, ..., x_n^{+-1}] has the form

    D^c_alpha = x^c * sum_j alpha_j x_j d_j,     c in Z^n, alpha in Q^n,

and acts on monomials by D^c_alpha(x^u) = <alpha, u> x^(c+u).  Brackets of
such elements are again homogeneous, so the whole calculus reduces to integer
and rational vector arithmetic.

Vectors are plain tuples: degrees/exponents are tuples of ``int``, coefficient
vectors are tuples of ``Fraction``.  Variable indices are 0-based in the
Python API; text output renders them 1-based (``x1``, ``d1``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Optional, Sequence, Tuple, Union

LatticeVector = Tuple[int, ...]
RationalVector = Tuple[Fraction, ...]
Number = Union[int, Fraction, str]


class AlgebraError(ValueError):
    pass


class DimensionError(AlgebraError):
    """Vectors or derivations from different ambient dimensions were combined."""


class InvalidElementError(AlgebraError):
    """A zero vector was supplied where a nonzero one is required."""


class ClassificationError(AlgebraError):
    pass


def _check_len(a: Sequence, b: Sequence) -> None:
    if len(a) != len(b):
        raise DimensionError(f"length mismatch: {len(a)} != {len(b)}")


def lattice(entries: Iterable[int]) -> LatticeVector:
    out = []
    for e in entries:
        if isinstance(e, bool) or int(e) != e:
            raise AlgebraError(f"not an integer: {e!r}")
        out.append(int(e))
    return tuple(out)


def rational(entries: Iterable[Number]) -> RationalVector:
    return tuple(Fraction(e) for e in entries)


def is_zero_vector(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def pairing(alpha: Sequence[Fraction], u: Sequence[int]) -> Fraction:
    """<alpha, u> = sum_i alpha_i u_i, computed exactly."""
    _check_len(alpha, u)
    return sum((Fraction(a) * b for a, b in zip(alpha, u)), Fraction(0))


def add_lattice(c: Sequence[int], d: Sequence[int]) -> LatticeVector:
    _check_len(c, d)
    return tuple(x + y for x, y in zip(c, d))


def unit(n: int, i: int) -> LatticeVector:
    return tuple(1 if k == i else 0 for k in range(n))


def proportional(alpha: Sequence[Fraction], beta: Sequence[Fraction]) -> bool:
    """True iff every 2x2 minor alpha_i beta_j - alpha_j beta_i vanishes."""
    _check_len(alpha, beta)
    if is_zero_vector(alpha) or is_zero_vector(beta):
        raise InvalidElementError("proportionality is undefined for the zero vector")
    n = len(alpha)
    return all(
        alpha[i] * beta[j] == alpha[j] * beta[i]
        for i in range(n)
        for j in range(i + 1, n)
    )


def normalize_vector(v: Sequence[Fraction]) -> RationalVector:
    """Scale ``v`` so that its first nonzero entry is 1."""
    for x in v:
        if x != 0:
            return tuple(Fraction(y) / x for y in v)
    raise InvalidElementError("cannot normalize the zero vector")


@dataclass(frozen=True)
class HomogeneousDerivation:
    """The derivation D^c_alpha = x^c sum_j alpha_j x_j d_j with alpha != 0."""

    degree: LatticeVector
    coeffs: RationalVector

    def __post_init__(self):
        degree = lattice(self.degree)
        coeffs = rational(self.coeffs)
        _check_len(degree, coeffs)
        if is_zero_vector(coeffs):
            raise InvalidElementError("a homogeneous derivation needs nonzero coefficients")
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def n(self) -> int:
        return len(self.degree)

    @property
    def weight(self) -> int:
        return sum(self.degree)

    def scaled(self, s: Number) -> "HomogeneousDerivation":
        s = Fraction(s)
        if s == 0:
            raise InvalidElementError("scaling by zero")
        return HomogeneousDerivation(self.degree, tuple(s * a for a in self.coeffs))

    def __str__(self) -> str:
        return pretty(self)


def derivation(c: Iterable[int], alpha: Iterable[Number]) -> HomogeneousDerivation:
    return HomogeneousDerivation(tuple(c), tuple(alpha))


def nabla(i: int, a: Sequence[int]) -> HomogeneousDerivation:
    """The type I derivation x^a d_i (``i`` is 0-based, requires a_i = 0, a >= 0)."""
    a = lattice(a)
    if not 0 <= i < len(a):
        raise AlgebraError(f"variable index {i} out of range")
    if a[i] != 0 or any(x < 0 for x in a):
        raise AlgebraError("type I exponents need a_i = 0 and a >= 0")
    c = tuple(x - (1 if k == i else 0) for k, x in enumerate(a))
    return HomogeneousDerivation(c, tuple(Fraction(k == i) for k in range(len(a))))


def delta(p: Sequence[int], beta: Sequence[Number]) -> HomogeneousDerivation:
    """The type II derivation x^p sum_j beta_j x_j d_j (requires p >= 0)."""
    p = lattice(p)
    if any(x < 0 for x in p):
        raise AlgebraError("type II exponents must be non-negative")
    return HomogeneousDerivation(p, tuple(beta))


def bracket_vectors(
    c: Sequence[int], alpha: Sequence[Fraction], d: Sequence[int], beta: Sequence[Fraction]
) -> Tuple[LatticeVector, RationalVector]:
    """Raw bracket [D^c_alpha, D^d_beta] as (degree, coefficient vector); may be zero."""
    _check_len(c, d)
    a_d = pairing(alpha, d)
    b_c = pairing(beta, c)
    coeffs = tuple(a_d * b - b_c * a for a, b in zip(alpha, beta))
    return add_lattice(c, d), coeffs


def bracket(D: HomogeneousDerivation, E: HomogeneousDerivation) -> Optional[HomogeneousDerivation]:
    """Lie bracket [D, E]; returns ``None`` when the bracket is the zero derivation."""
    _check_len(D.degree, E.degree)
    degree, coeffs = bracket_vectors(D.degree, D.coeffs, E.degree, E.coeffs)
    if is_zero_vector(coeffs):
        return None
    return HomogeneousDerivation(degree, coeffs)


def canonicalize(D: HomogeneousDerivation) -> HomogeneousDerivation:
    return HomogeneousDerivation(D.degree, normalize_vector(D.coeffs))


def weight(D: HomogeneousDerivation) -> int:
    return D.weight


# --- classification -------------------------------------------------------


@dataclass(frozen=True)
class TypeI:
    """Proportional to x^a d_i; ``i`` is 0-based, ``a`` the exponent vector."""

    i: int
    a: LatticeVector

    @property
    def weight(self) -> int:
        return sum(self.a) - 1


@dataclass(frozen=True)
class TypeII:
    """Proportional to x^p sum_j beta_j x_j d_j with p >= 0."""

    p: LatticeVector
    beta: RationalVector

    @property
    def weight(self) -> int:
        return sum(self.p)


@dataclass(frozen=True)
class LaurentOnly:
    """A homogeneous Witt-algebra element that is not a polynomial vector field."""


@dataclass(frozen=True)
class Zero:
    pass


DerivationClass = Union[TypeI, TypeII, LaurentOnly, Zero]


def classify(D: Optional[HomogeneousDerivation]) -> DerivationClass:
    if D is None:
        return Zero()
    c = D.degree
    if all(x >= 0 for x in c):
        return TypeII(c, D.coeffs)
    negative = [k for k, x in enumerate(c) if x < 0]
    if len(negative) == 1 and c[negative[0]] == -1:
        i = negative[0]
        if all(a == 0 for k, a in enumerate(D.coeffs) if k != i):
            return TypeI(i, tuple(x + (1 if k == i else 0) for k, x in enumerate(c)))
    return LaurentOnly()


def as_type1(g: Union[TypeI, HomogeneousDerivation]) -> TypeI:
    cls = g if isinstance(g, TypeI) else classify(g)
    if not isinstance(cls, TypeI):
        raise ClassificationError(f"expected a type I derivation, got {type(cls).__name__}")
    return cls


def as_type2(g: Union[TypeII, HomogeneousDerivation]) -> TypeII:
    cls = g if isinstance(g, TypeII) else classify(g)
    if not isinstance(cls, TypeII):
        raise ClassificationError(f"expected a type II derivation, got {type(cls).__name__}")
    return cls


# --- action on monomials --------------------------------------------------


@dataclass(frozen=True)
class Monomial:
    """coefficient * x^exponents; a zero coefficient forces the zero exponent."""

    exponents: LatticeVector
    coefficient: Fraction = Fraction(1)

    def __post_init__(self):
        exps = lattice(self.exponents)
        coef = Fraction(self.coefficient)
        if coef == 0:
            exps = (0,) * len(exps)
        object.__setattr__(self, "exponents", exps)
        object.__setattr__(self, "coefficient", coef)

    @property
    def is_zero(self) -> bool:
        return self.coefficient == 0


def apply(D: HomogeneousDerivation, m: Monomial) -> Monomial:
    _check_len(D.degree, m.exponents)
    coef = pairing(D.coeffs, m.exponents) * m.coefficient
    return Monomial(add_lattice(D.degree, m.exponents), coef)


LaurentPolynomial = Dict[LatticeVector, Fraction]


def apply_poly(D: HomogeneousDerivation, f: LaurentPolynomial) -> LaurentPolynomial:
    """Apply ``D`` termwise to a Laurent polynomial stored as {exponents: coeff}."""
    out: LaurentPolynomial = {}
    for u, a in f.items():
        m = apply(D, Monomial(u, a))
        if m.is_zero:
            continue
        s = out.get(m.exponents, Fraction(0)) + m.coefficient
        if s == 0:
            out.pop(m.exponents, None)
        else:
            out[m.exponents] = s
    return out


def commutator_on(D: HomogeneousDerivation, E: HomogeneousDerivation, f: LaurentPolynomial) -> LaurentPolynomial:
    """(D o E - E o D)(f) by composing the operators directly."""
    de = apply_poly(D, apply_poly(E, f))
    ed = apply_poly(E, apply_poly(D, f))
    out = dict(de)
    for u, a in ed.items():
        s = out.get(u, Fraction(0)) - a
        if s == 0:
            out.pop(u, None)
        else:
            out[u] = s
    return out


# --- display --------------------------------------------------------------


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _monomial_text(u: Sequence[int]) -> str:
    parts = []
    for k, e in enumerate(u):
        if e == 1:
            parts.append(f"x{k + 1}")
        elif e != 0:
            parts.append(f"x{k + 1}^{e}")
    return "*".join(parts)


def pretty(D: Optional[HomogeneousDerivation]) -> str:
    """Render as a sum of terms coeff*x^u*d_j, e.g. ``x1^2*d1 - x1*x2*d2``."""
    if D is None:
        return "0"
    terms = []
    for j, a in enumerate(D.coeffs):
        if a == 0:
            continue
        u = tuple(c + (1 if k == j else 0) for k, c in enumerate(D.degree))
        mono = _monomial_text(u)
        mag = abs(a)
        body = "*".join(s for s in (None if mag == 1 else format_rational(mag), mono, f"d{j + 1}") if s)
        terms.append(("-" if a < 0 else "+", body))
    sign, body = terms[0]
    text = ("-" if sign == "-" else "") + body
    for sign, body in terms[1:]:
        text += f" {sign} {body}"
    return text
