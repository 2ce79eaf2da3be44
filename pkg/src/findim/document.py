"""JSON input documents describing a set of generators.

    {"n": 2,
     "generators": [
        {"delta": {"p": [1, 0], "beta": ["1", "-1"]}},
        {"nabla": {"i": 2, "a": [1, 0]}},
        {"raw":   {"c": [-1, -1], "alpha": ["1/2", "0"]}}
     ]}

``nabla`` is x^a d_i with a 1-based index ``i``; ``delta`` is
x^p sum_j beta_j x_j d_j; ``raw`` is any homogeneous element
x^c sum_j alpha_j x_j d_j of the Laurent Witt algebra.  Rationals are strings
``"num"`` or ``"num/den"`` (JSON integers are accepted as well).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, List, Tuple

from .algebra import HomogeneousDerivation, derivation, nabla as make_nabla

_RATIONAL = re.compile(r"^(-?\d+)(?:/(-?\d+))?$")


class ParseError(ValueError):
    """Invalid input document; ``code`` is a stable machine-readable tag."""

    def __init__(self, code: str, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.code = code
        self.where = where
        self.message = message


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str  # "nabla" | "delta" | "raw"
    vector: Tuple[int, ...]  # a, p or c
    coeffs: Tuple[Fraction, ...] = ()  # beta or alpha; empty for nabla
    index: int = 0  # 1-based variable index for nabla

    def to_derivation(self) -> HomogeneousDerivation:
        if self.kind == "nabla":
            return make_nabla(self.index - 1, self.vector)
        return derivation(self.vector, self.coeffs)

    def to_json(self) -> dict:
        if self.kind == "nabla":
            return {"nabla": {"i": self.index, "a": list(self.vector)}}
        if self.kind == "delta":
            return {"delta": {"p": list(self.vector), "beta": [rational_text(x) for x in self.coeffs]}}
        return {"raw": {"c": list(self.vector), "alpha": [rational_text(x) for x in self.coeffs]}}


@dataclass(frozen=True)
class InputDocument:
    n: int
    generators: Tuple[GeneratorSpec, ...]

    def derivations(self) -> List[HomogeneousDerivation]:
        return [g.to_derivation() for g in self.generators]

    def to_json(self) -> dict:
        return {"n": self.n, "generators": [g.to_json() for g in self.generators]}


def rational_text(q: Fraction) -> str:
    """Exact "num/den" form used in every machine-readable output."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool):
        raise ParseError("bad-rational", where, f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise ParseError("bad-rational", where, f"rationals are strings 'num' or 'num/den', got {value!r}")
    m = _RATIONAL.match(value.strip())
    if not m:
        raise ParseError("bad-rational", where, f"not a rational: {value!r}")
    num = int(m.group(1))
    if m.group(2) is None:
        return Fraction(num)
    den = int(m.group(2))
    if den < 0:
        raise ParseError("negative-denominator", where, "denominator must be positive")
    if den == 0:
        raise ParseError("zero-denominator", where, "denominator must be positive")
    return Fraction(num, den)


def _int_list(value: Any, n: int, where: str) -> Tuple[int, ...]:
    if not isinstance(value, list):
        raise ParseError("wrong-type", where, "expected a list of integers")
    if len(value) != n:
        raise ParseError("length-mismatch", where, f"expected length {n}, got {len(value)}")
    for k, x in enumerate(value):
        if isinstance(x, bool) or not isinstance(x, int):
            raise ParseError("wrong-type", f"{where}[{k}]", f"expected an integer, got {x!r}")
    return tuple(value)


def _rational_list(value: Any, n: int, where: str) -> Tuple[Fraction, ...]:
    if not isinstance(value, list):
        raise ParseError("wrong-type", where, "expected a list of rationals")
    if len(value) != n:
        raise ParseError("length-mismatch", where, f"expected length {n}, got {len(value)}")
    return tuple(parse_rational(x, f"{where}[{k}]") for k, x in enumerate(value))


def _field(obj: dict, key: str, where: str) -> Any:
    if key not in obj:
        raise ParseError("missing-field", f"{where}.{key}", "required field is missing")
    return obj[key]


def _generator(obj: Any, n: int, where: str) -> GeneratorSpec:
    if not isinstance(obj, dict) or len(obj) != 1:
        raise ParseError("wrong-type", where, "each generator is an object with one key: nabla, delta or raw")
    (kind, body), = obj.items()
    where = f"{where}.{kind}"
    if not isinstance(body, dict):
        raise ParseError("wrong-type", where, "expected an object")
    if kind == "nabla":
        i = _field(body, "i", where)
        if isinstance(i, bool) or not isinstance(i, int):
            raise ParseError("wrong-type", f"{where}.i", "expected an integer")
        if not 1 <= i <= n:
            raise ParseError("index-out-of-range", f"{where}.i", f"variable index must be in 1..{n}")
        a = _int_list(_field(body, "a", where), n, f"{where}.a")
        if any(x < 0 for x in a):
            raise ParseError("negative-exponent", f"{where}.a", "exponents must be non-negative")
        if a[i - 1] != 0:
            raise ParseError("nabla-ai-nonzero", f"{where}.a", "a_i must be zero")
        return GeneratorSpec("nabla", a, (), i)
    if kind == "delta":
        p = _int_list(_field(body, "p", where), n, f"{where}.p")
        if any(x < 0 for x in p):
            raise ParseError("negative-exponent", f"{where}.p", "exponents must be non-negative")
        beta = _rational_list(_field(body, "beta", where), n, f"{where}.beta")
        if not any(beta):
            raise ParseError("zero-beta", f"{where}.beta", "beta must be nonzero")
        return GeneratorSpec("delta", p, beta)
    if kind == "raw":
        c = _int_list(_field(body, "c", where), n, f"{where}.c")
        alpha = _rational_list(_field(body, "alpha", where), n, f"{where}.alpha")
        if not any(alpha):
            raise ParseError("zero-alpha", f"{where}.alpha", "alpha must be nonzero")
        return GeneratorSpec("raw", c, alpha)
    raise ParseError("unknown-kind", where, "generator kind must be nabla, delta or raw")


def parse(text: str) -> InputDocument:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("malformed-json", "$", str(exc)) from None
    if not isinstance(obj, dict):
        raise ParseError("wrong-type", "$", "document must be a JSON object")
    n = _field(obj, "n", "$")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ParseError("wrong-type", "$.n", "n must be a positive integer")
    gens = _field(obj, "generators", "$")
    if not isinstance(gens, list):
        raise ParseError("wrong-type", "$.generators", "expected a list")
    return InputDocument(n, tuple(_generator(g, n, f"$.generators[{k}]") for k, g in enumerate(gens)))


def dumps(doc: InputDocument) -> str:
    return json.dumps(doc.to_json(), indent=2) + "\n"


def from_derivations(gens, n: int) -> InputDocument:
    """Document with one ``raw`` entry per derivation."""
    return InputDocument(n, tuple(GeneratorSpec("raw", g.degree, g.coeffs) for g in gens))
