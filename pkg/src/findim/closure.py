"""Graded Lie closure of a finite set of homogeneous derivations.

The span of the generated algebra is stored per degree as an RREF matrix of
coefficient vectors.  Saturation is a FIFO worklist: each newly inserted
element is bracketed against every element inserted before it, and a bracket
is kept when it is not already in the span of its degree component.  Two caps
(total weight of any nonzero bracket, number of stored elements) make the run
a semidecision: ``Closed`` proves finite dimensionality, ``CapExceeded`` only
bounds it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .algebra import (
    AlgebraError,
    HomogeneousDerivation,
    LatticeVector,
    RationalVector,
    bracket_vectors,
    is_zero_vector,
    pairing,
)
from .criteria import find_r
from . import linalg

DEFAULT_MAX_WEIGHT = 100
DEFAULT_MAX_ELEMENTS = 10_000


class ConfigurationError(AlgebraError):
    pass


class StateError(AlgebraError):
    """An operation that needs a ``Closed`` result received something else."""


class HypothesisError(AlgebraError):
    pass


@dataclass(frozen=True)
class GradedBasis:
    components: Dict[LatticeVector, Tuple[linalg.Row, ...]]

    @property
    def total_dim(self) -> int:
        return sum(len(rows) for rows in self.components.values())

    def degrees(self) -> List[LatticeVector]:
        return sorted(self.components)

    def elements(self) -> List[HomogeneousDerivation]:
        """Basis in canonical order: degrees lexicographically, then RREF rows."""
        return [HomogeneousDerivation(c, row) for c in self.degrees() for row in self.components[c]]

    def span_contains(self, D: Optional[HomogeneousDerivation]) -> bool:
        if D is None:
            return True
        rows = self.components.get(D.degree, ())
        return not any(linalg.reduce_against(rows, D.coeffs))


StructureConstants = Dict[Tuple[int, int], Dict[int, Fraction]]


@dataclass(frozen=True)
class Closed:
    basis: GradedBasis
    structure_constants: StructureConstants
    generations: int
    generator_coords: Tuple[Dict[int, Fraction], ...] = ()

    @property
    def dimension(self) -> int:
        return self.basis.total_dim


@dataclass(frozen=True)
class CapExceeded:
    cap: str  # "weight" or "elements"
    last_basis: GradedBasis
    generations: int


ClosureResult = Union[Closed, CapExceeded]


_PROBES = 4


class _Cap(Exception):
    def __init__(self, cap: str):
        self.cap = cap


def close(
    gens: Sequence[HomogeneousDerivation],
    max_weight: int = DEFAULT_MAX_WEIGHT,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
) -> ClosureResult:
    gens = list(gens)
    if gens:
        if len({g.n for g in gens}) != 1:
            raise ConfigurationError("generators live in different ambient dimensions")
        if max_weight < max(g.weight for g in gens):
            raise ConfigurationError(f"max_weight {max_weight} is below a generator weight")
    if max_elements < len(gens):
        raise ConfigurationError(f"max_elements {max_elements} is below the generator count")

    # per degree: integer rows in echelon form (distinct pivots)
    components: Dict[LatticeVector, List[Tuple[int, ...]]] = {}
    # elements are stored as primitive integer vectors; spans are scale-free
    elements: List[Tuple[LatticeVector, Tuple[int, ...], int]] = []
    generation: List[int] = []
    queue: deque = deque()
    heavy: List[int] = []

    def insert(deg, vec, gen) -> None:
        rows = components.get(deg)
        if rows is None:
            rows = components[deg] = []
        residual = _int_reduce(rows, vec)
        if residual is None:
            return
        if len(elements) >= max_elements:
            raise _Cap("elements")
        rows.append(residual)
        rows.sort(key=linalg.pivot)
        w = sum(deg)
        # any nonzero bracket heavier than the cap is a cap violation, whenever it is found
        for h in heavy:
            hc, ha, hw = elements[h]
            if w + hw > max_weight and _int_bracket(deg, vec, hc, ha) is not None:
                raise _Cap("weight")
        elements.append((deg, vec, w))
        generation.append(gen)
        queue.append(len(elements) - 1)
        heavy.append(len(elements) - 1)
        heavy.sort(key=lambda k: -elements[k][2])
        del heavy[_PROBES:]

    try:
        for g in gens:
            insert(g.degree, _primitive(g.coeffs), 0)
        while queue:
            i = queue.popleft()
            ci, ai, wi = elements[i]
            # newest (heaviest) partners first so the weight cap trips early
            for j in range(i - 1, -1, -1):
                cj, aj, wj = elements[j]
                vec = _int_bracket(ci, ai, cj, aj)
                if vec is None:
                    continue
                if wi + wj > max_weight:
                    raise _Cap("weight")
                insert(tuple(x + y for x, y in zip(ci, cj)), vec, max(generation[i], generation[j]) + 1)
    except _Cap as cap:
        return CapExceeded(cap.cap, _freeze(components), max(generation, default=0))

    basis = _freeze(components)
    consts = _structure_constants(basis)
    index = _coordinate_map(basis)
    gen_coords = tuple(index(g.degree, g.coeffs) for g in gens)
    return Closed(basis, consts, max(generation, default=0), gen_coords)


def _primitive(v: Sequence) -> Tuple[int, ...]:
    """Integer multiple of ``v`` with coprime entries."""
    if not all(type(x) is int for x in v):
        den = 1
        for x in v:
            d = Fraction(x).denominator
            den = den * d // gcd(den, d)
        v = [int(Fraction(x) * den) for x in v]
    g = gcd(*v)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def _int_reduce(rows: Sequence[Tuple[int, ...]], v: Tuple[int, ...]) -> Optional[Tuple[int, ...]]:
    """Fraction-free residual of ``v`` against echelon ``rows``; None if in the span."""
    if len(rows) == len(v):
        return None
    for r in rows:
        p = linalg.pivot(r)
        f = v[p]
        if f:
            rp = r[p]
            v = _primitive([rp * x - f * y for x, y in zip(v, r)])
            if not any(v):
                return None
    return v if any(v) else None


def _int_bracket(c, a, d, b) -> Optional[Tuple[int, ...]]:
    a_d = sum(x * y for x, y in zip(a, d))
    b_c = sum(x * y for x, y in zip(b, c))
    vec = [a_d * y - b_c * x for x, y in zip(a, b)]
    if not any(vec):
        return None
    return _primitive(vec)


def _freeze(components) -> GradedBasis:
    return GradedBasis({c: tuple(linalg.rref(components[c])) for c in sorted(components) if components[c]})


def _coordinate_map(basis: GradedBasis):
    offsets = {}
    k = 0
    for c in basis.degrees():
        offsets[c] = k
        k += len(basis.components[c])

    def coords(deg, vec) -> Dict[int, Fraction]:
        rows = basis.components.get(deg)
        local = linalg.coordinates(rows, vec) if rows else None
        if local is None:
            raise StateError(f"bracket at degree {deg} escapes the computed span")
        return {offsets[deg] + n: x for n, x in enumerate(local) if x}

    return coords


def _structure_constants(basis: GradedBasis) -> StructureConstants:
    """Coordinates of [b_i, b_j], i < j; doubles as the saturation re-check."""
    elems = basis.elements()
    coords = _coordinate_map(basis)
    out: StructureConstants = {}
    for i, bi in enumerate(elems):
        for j in range(i + 1, len(elems)):
            bj = elems[j]
            deg, vec = bracket_vectors(bi.degree, bi.coeffs, bj.degree, bj.coeffs)
            out[(i, j)] = {} if is_zero_vector(vec) else coords(deg, vec)
    return out


def structure_constants(result: ClosureResult) -> StructureConstants:
    return _require_closed(result).structure_constants


def constant(table: StructureConstants, i: int, j: int) -> Dict[int, Fraction]:
    """Coordinates of [b_i, b_j] for any ordered pair (antisymmetric lookup)."""
    if i == j:
        return {}
    if i < j:
        return table[(i, j)]
    return {k: -v for k, v in table[(j, i)].items()}


def _require_closed(result: ClosureResult) -> Closed:
    if not isinstance(result, Closed):
        raise StateError("operation requires a Closed closure result")
    return result


# --- abstract Lie algebra from structure constants -----------------------------


class _Table:
    def __init__(self, closed: Closed):
        self.dim = closed.dimension
        self.rows: List[List[Tuple[int, Dict[int, Fraction]]]] = [[] for _ in range(self.dim)]
        for (i, j), c in closed.structure_constants.items():
            if c:
                self.rows[i].append((j, c))
                self.rows[j].append((i, {k: -v for k, v in c.items()}))

    def br(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> List[Fraction]:
        out = [Fraction(0)] * self.dim
        ynz = {j: v for j, v in enumerate(y) if v}
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, c in self.rows[i]:
                yj = ynz.get(j)
                if yj:
                    s = xi * yj
                    for k, v in c.items():
                        out[k] += s * v
        return out

    def unit(self, i: int) -> List[Fraction]:
        v = [Fraction(0)] * self.dim
        v[i] = Fraction(1)
        return v


@dataclass(frozen=True)
class SeriesReport:
    lower_central: Tuple[int, ...]
    derived: Tuple[int, ...]
    nilpotent: bool
    nilpotency_class: Optional[int]
    solvable: bool
    derived_length: Optional[int]


def _descend(current, step) -> Tuple[int, ...]:
    dims = [len(current)]
    while current:
        nxt = linalg.rref(step(current))
        dims.append(len(nxt))
        if len(nxt) == len(current):
            break
        current = nxt
    return tuple(dims)


def series_analysis(result: ClosureResult) -> SeriesReport:
    closed = _require_closed(result)
    t = _Table(closed)
    full = [tuple(t.unit(i)) for i in range(t.dim)]
    basis_units = [t.unit(i) for i in range(t.dim)]
    lcs = _descend(full, lambda cur: [t.br(e, r) for e in basis_units for r in cur])
    derived = _descend(
        full, lambda cur: [t.br(cur[a], cur[b]) for a in range(len(cur)) for b in range(a + 1, len(cur))]
    )
    nilpotent = lcs[-1] == 0
    solvable = derived[-1] == 0
    return SeriesReport(
        lcs,
        derived,
        nilpotent,
        len(lcs) - 1 if nilpotent else None,
        solvable,
        len(derived) - 1 if solvable else None,
    )


@dataclass(frozen=True)
class FiliformResult:
    is_model_filiform: bool
    chain: Tuple[HomogeneousDerivation, ...] = ()
    x1_index: Optional[int] = None
    x2_index: Optional[int] = None


def model_filiform_check(result: ClosureResult) -> FiliformResult:
    """Look for X_1, X_2 among stored basis elements with [X_1, X_i] = X_{i+1}.

    Sound but incomplete: candidates outside the stored basis are not tried.
    """
    closed = _require_closed(result)
    m = closed.dimension
    if m < 3:
        raise ValueError("model filiform recognition needs dimension >= 3")
    if series_analysis(closed).lower_central != (m,) + tuple(range(m - 2, -1, -1)):
        return FiliformResult(False)
    t = _Table(closed)
    elems = closed.basis.elements()
    for k in range(m):
        x1 = t.unit(k)
        for l in range(m):
            if l == k:
                continue
            chain = [x1, t.unit(l)]
            while len(chain) < m:
                chain.append(t.br(x1, chain[-1]))
            if linalg.rank(chain) != m or any(t.br(x1, chain[-1])):
                continue
            if any(any(t.br(chain[a], chain[b])) for a in range(1, m) for b in range(a + 1, m)):
                continue
            return FiliformResult(True, tuple(_to_derivation(elems, v) for v in chain), k, l)
    return FiliformResult(False)


def _to_derivation(elems: Sequence[HomogeneousDerivation], v: Sequence[Fraction]) -> HomogeneousDerivation:
    support = [k for k, x in enumerate(v) if x]
    degree = elems[support[0]].degree
    if any(elems[k].degree != degree for k in support):
        raise StateError("coordinate vector is not homogeneous")
    coeffs = [Fraction(0)] * len(degree)
    for k in support:
        for a, c in enumerate(elems[k].coeffs):
            coeffs[a] += v[k] * c
    return HomogeneousDerivation(degree, tuple(coeffs))


# --- closed forms for two type II generators ----------------------------------


@dataclass(frozen=True)
class ScaledDerivation:
    """scale * D^degree_omega; the element is zero when either factor vanishes."""

    scale: Fraction
    degree: LatticeVector
    omega: RationalVector

    @property
    def vector(self) -> RationalVector:
        return tuple(self.scale * w for w in self.omega)

    @property
    def is_zero(self) -> bool:
        return is_zero_vector(self.vector)

    def as_derivation(self) -> Optional[HomogeneousDerivation]:
        return None if self.is_zero else HomogeneousDerivation(self.degree, self.vector)


def _check_type2(*vectors) -> None:
    for v in vectors:
        if any(x < 0 for x in v):
            raise ValueError("type II exponent vectors must be non-negative")


def ad_power(q, gamma, p, beta, d: int) -> ScaledDerivation:
    """(ad D^q_gamma)^d (D^p_beta) = s_d D^(p+dq)_(omega_d) in closed form."""
    if d < 1:
        raise ValueError("d must be at least 1")
    q, p = tuple(q), tuple(p)
    _check_type2(q, p)
    gamma = tuple(Fraction(x) for x in gamma)
    beta = tuple(Fraction(x) for x in beta)
    s = Fraction(1)
    for i in range(d - 1):
        s *= pairing(gamma, tuple(a + i * b for a, b in zip(p, q)))
    lead = pairing(gamma, tuple(a + (d - 1) * b for a, b in zip(p, q)))
    bq = pairing(beta, q)
    omega = tuple(lead * b - d * bq * g for b, g in zip(beta, gamma))
    return ScaledDerivation(s, tuple(a + d * b for a, b in zip(p, q)), omega)


@dataclass(frozen=True)
class TwoGeneratorAlgebra:
    basis: Tuple[HomogeneousDerivation, ...]
    dimension: int
    nilpotency_class: int
    r: int


def two_generator_algebra(q, gamma, p, beta) -> TwoGeneratorAlgebra:
    """Basis D^q_gamma, D^p_beta, D^(p+q)_beta, ..., D^(p+rq)_beta of the algebra
    generated by D^q_gamma and D^p_beta when <beta, q> = 0."""
    q, p = tuple(q), tuple(p)
    _check_type2(q, p)
    gamma = tuple(Fraction(x) for x in gamma)
    beta = tuple(Fraction(x) for x in beta)
    if is_zero_vector(gamma) or is_zero_vector(beta):
        raise HypothesisError("gamma and beta must be nonzero")
    if pairing(beta, q) != 0:
        raise HypothesisError("<beta, q> must vanish")
    r = find_r(gamma, q, p)
    if r is None:
        raise HypothesisError("no r >= 0 with <gamma, p + r q> = 0")
    first = HomogeneousDerivation(q, gamma)
    chain = [HomogeneousDerivation(tuple(a + t * b for a, b in zip(p, q)), beta) for t in range(r + 1)]
    if p == q and linalg.rank([gamma, beta]) < 2:
        raise HypothesisError("the two generators are linearly dependent")
    return TwoGeneratorAlgebra(tuple([first] + chain), r + 2, r + 1, r)
