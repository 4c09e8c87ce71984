"""
Exact and float scalars.

Exact scalars are `Fraction` when rational and `Surd` otherwise. A Surd is a
rational combination of 1 and square roots of distinct squarefree integers,
kept in canonical form, so two exact scalars are equal exactly when their
canonical term maps are equal. Float scalars are plain Python floats.
"""
import math
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Iterable, Mapping, Union

import sympy

from .config import FLOAT_ABS_TOL, FLOAT_REL_TOL
from .errors import FieldError


class Backend(str, Enum):
    EXACT = "exact"
    FLOAT = "float"

    @classmethod
    def parse(cls, value) -> "Backend":
        if isinstance(value, Backend):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"Unknown backend: {value}") from None


@lru_cache(maxsize=4096)
def squarefree_decompose(m: int) -> tuple[int, int]:
    """Write a positive integer as m = s**2 * d with d squarefree and return (s, d)."""
    if m <= 0:
        raise FieldError(f"Expected a positive integer, got {m}")
    s, d = 1, 1
    for p, e in sympy.factorint(m).items():
        s *= p ** (e // 2)
        if e % 2:
            d *= p
    return s, d


@lru_cache(maxsize=4096)
def _prime_factors(d: int) -> tuple[int, ...]:
    return tuple(sympy.primefactors(d))


def is_squarefree(d: int) -> bool:
    return isinstance(d, int) and d >= 1 and squarefree_decompose(d)[0] == 1


def _reduce_radicands(d1: int, d2: int) -> tuple[int, int]:
    """sqrt(d1)*sqrt(d2) = g*sqrt(key) for squarefree d1, d2; returns (key, g)."""
    g = math.gcd(d1, d2)
    return (d1 // g) * (d2 // g), g


def _add_terms(a: Mapping[int, Fraction], b: Mapping[int, Fraction], sign: int = 1) -> dict[int, Fraction]:
    out = dict(a)
    for d, c in b.items():
        out[d] = out.get(d, 0) + sign * c
    return {d: c for d, c in out.items() if c}


def _mul_terms(a: Mapping[int, Fraction], b: Mapping[int, Fraction]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for d1, c1 in a.items():
        for d2, c2 in b.items():
            key, g = _reduce_radicands(d1, d2)
            out[key] = out.get(key, 0) + c1 * c2 * g
    return {d: c for d, c in out.items() if c}


def _inverse_terms(terms: Mapping[int, Fraction]) -> dict[int, Fraction]:
    """Invert a nonzero element by clearing one prime from the denominator at a time."""
    if not terms:
        raise ZeroDivisionError("division by an exact zero")
    numerator = {1: Fraction(1)}
    denominator = dict(terms)
    while True:
        irrational = [d for d in denominator if d != 1]
        if not irrational:
            break
        p = _prime_factors(irrational[0])[0]
        # conjugate over Q(...)(sqrt p): flip the sign of every term carrying sqrt p
        conjugate = {d: (-c if d % p == 0 else c) for d, c in denominator.items()}
        numerator = _mul_terms(numerator, conjugate)
        denominator = _mul_terms(denominator, conjugate)
    scale = denominator[1]
    return {d: c / scale for d, c in numerator.items()}


def _sign_of_terms(terms: Mapping[int, Fraction]) -> int:
    if not terms:
        return 0
    bits = 32
    while True:
        scale = 1 << bits
        lo = hi = Fraction(0)
        for d, c in terms.items():
            if d == 1:
                lo += c
                hi += c
                continue
            r = math.isqrt(d * scale * scale)
            low, high = Fraction(r, scale), Fraction(r + 1, scale)
            if c > 0:
                lo += c * low
                hi += c * high
            else:
                lo += c * high
                hi += c * low
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        bits *= 2


def _terms_of(x) -> dict[int, Fraction] | None:
    if isinstance(x, Surd):
        return dict(x._terms)
    if isinstance(x, (int, Fraction)):
        return {1: Fraction(x)} if x else {}
    return None


def _from_terms(terms: Mapping[int, Fraction]) -> "ExactScalar":
    terms = {d: c for d, c in terms.items() if c}
    if not terms:
        return Fraction(0)
    if set(terms) == {1}:
        return Fraction(terms[1])
    return Surd._from_canonical(terms)


@total_ordering
class Surd:
    """
    An irrational element q0 + q1*sqrt(d1) + ... + qm*sqrt(dm).

    Arithmetic returns a `Fraction` whenever the result is rational, so a Surd
    always has at least one nonzero irrational term and is never zero.
    """

    __slots__ = ("_terms", "_key")

    def __init__(self, terms: Mapping[int, Fraction]):
        canonical: dict[int, Fraction] = {}
        for d, c in terms.items():
            if not is_squarefree(d):
                raise FieldError(f"Radicand {d} is not a squarefree positive integer")
            c = Fraction(c)
            if c:
                canonical[d] = c
        if not any(d != 1 for d in canonical):
            raise FieldError("A Surd needs an irrational term; use Fraction for rationals")
        self._terms = canonical
        self._key = tuple(sorted(canonical.items()))

    @classmethod
    def _from_canonical(cls, terms: dict[int, Fraction]) -> "Surd":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._key = tuple(sorted(terms.items()))
        return obj

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    @property
    def radicands(self) -> tuple[int, ...]:
        return tuple(d for d, _ in self._key if d != 1)

    @property
    def rational_part(self) -> Fraction:
        return self._terms.get(1, Fraction(0))

    def sign(self) -> int:
        return _sign_of_terms(self._terms)

    def to_sympy(self):
        return sum((sympy.Rational(c.numerator, c.denominator) * sympy.sqrt(d) for d, c in self._key), sympy.Integer(0))

    def __add__(self, other):
        terms = _terms_of(other)
        if terms is None:
            return NotImplemented
        return _from_terms(_add_terms(self._terms, terms))

    __radd__ = __add__

    def __sub__(self, other):
        terms = _terms_of(other)
        if terms is None:
            return NotImplemented
        return _from_terms(_add_terms(self._terms, terms, -1))

    def __rsub__(self, other):
        terms = _terms_of(other)
        if terms is None:
            return NotImplemented
        return _from_terms(_add_terms(terms, self._terms, -1))

    def __neg__(self):
        return Surd._from_canonical({d: -c for d, c in self._terms.items()})

    def __pos__(self):
        return self

    def __abs__(self):
        return self if self.sign() > 0 else -self

    def __mul__(self, other):
        terms = _terms_of(other)
        if terms is None:
            return NotImplemented
        return _from_terms(_mul_terms(self._terms, terms))

    __rmul__ = __mul__

    def __truediv__(self, other):
        terms = _terms_of(other)
        if terms is None:
            return NotImplemented
        return _from_terms(_mul_terms(self._terms, _inverse_terms(terms)))

    def __rtruediv__(self, other):
        terms = _terms_of(other)
        if terms is None:
            return NotImplemented
        return _from_terms(_mul_terms(terms, _inverse_terms(self._terms)))

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return (1 / self) ** (-exponent)
        result: ExactScalar = Fraction(1)
        base: ExactScalar = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Surd):
            return self._key == other._key
        if isinstance(other, (int, Fraction)):
            return False
        return NotImplemented

    def __lt__(self, other):
        if _terms_of(other) is None:
            return NotImplemented
        return exact_sign(self - other) < 0

    def __hash__(self):
        return hash(self._key)

    def __bool__(self):
        return True

    def __float__(self):
        return math.fsum(float(c) * math.sqrt(d) for d, c in self._key)

    def __str__(self):
        return format_exact(self)

    def __repr__(self):
        return f"Surd({format_exact(self)!r})"


ExactScalar = Union[Fraction, Surd]
Scalar = Union[Fraction, Surd, float]


@dataclass(frozen=True)
class ExactField:
    """
    A multiquadratic field Q(sqrt d1, ..., sqrt dm), given by its full radicand set.

    The set must be closed under reduced products; use `saturate` to build one
    from generators.
    """

    radicands: tuple[int, ...] = ()

    def __post_init__(self):
        values = tuple(sorted(set(self.radicands)))
        for d in values:
            if d == 1 or not is_squarefree(d):
                raise FieldError(f"Radicand {d} is not a squarefree integer > 1")
        allowed = set(values) | {1}
        for d1 in values:
            for d2 in values:
                key, _ = _reduce_radicands(d1, d2)
                if key not in allowed:
                    raise FieldError(
                        f"Radicand set {list(values)} is not saturated: "
                        f"sqrt({d1})*sqrt({d2}) needs sqrt({key})"
                    )
        object.__setattr__(self, "radicands", values)

    @classmethod
    def saturate(cls, generators: Iterable[int]) -> "ExactField":
        """Smallest saturated field containing sqrt(m) for every positive generator m."""
        current = {squarefree_decompose(m)[1] for m in generators if m > 0} - {1}
        while True:
            extra = set()
            for d1 in current:
                for d2 in current:
                    key, _ = _reduce_radicands(d1, d2)
                    if key != 1 and key not in current:
                        extra.add(key)
            if not extra:
                return cls(tuple(current))
            current |= extra

    def contains(self, x) -> bool:
        terms = _terms_of(x)
        if terms is None:
            return False
        return all(d == 1 or d in self.radicands for d in terms)

    def require(self, x) -> ExactScalar:
        if not self.contains(x):
            raise FieldError(f"{format_exact(x)} does not lie in Q(sqrt {list(self.radicands)})")
        return x


def exact_sqrt(q) -> ExactScalar:
    """Square root of a non-negative rational, as a Fraction or a single-term Surd."""
    if isinstance(q, Surd):
        raise FieldError(f"Square root of an irrational value {q} is outside the multiquadratic field")
    q = Fraction(q)
    if q < 0:
        raise FieldError(f"Square root of a negative value {q}")
    if q == 0:
        return Fraction(0)
    s, d = squarefree_decompose(q.numerator * q.denominator)
    coef = Fraction(s, q.denominator)
    if d == 1:
        return coef
    return Surd._from_canonical({d: coef})


def to_exact(x) -> ExactScalar:
    if isinstance(x, Surd):
        return x
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise FieldError(f"Cannot convert {x} to an exact scalar")
        return Fraction(x)
    if isinstance(x, str):
        return parse_exact(x)
    raise TypeError(f"Cannot convert {type(x).__name__} to an exact scalar")


def to_float(x) -> float:
    return float(x)


def coerce(x, backend: Backend) -> Scalar:
    if backend is Backend.EXACT:
        return to_exact(x)
    if isinstance(x, str):
        try:
            return float(x)
        except ValueError:
            return float(parse_exact(x))
    return float(x)


def exact_sign(x) -> int:
    if isinstance(x, Surd):
        return x.sign()
    return (x > 0) - (x < 0)


def scalar_sign(x, backend: Backend, abs_tol: float = FLOAT_ABS_TOL) -> int:
    if backend is Backend.EXACT:
        return exact_sign(x)
    if abs(x) <= abs_tol:
        return 0
    return 1 if x > 0 else -1


def is_zero(x, backend: Backend, abs_tol: float = FLOAT_ABS_TOL) -> bool:
    if backend is Backend.EXACT:
        return x == 0
    return abs(x) <= abs_tol


def float_isclose(a, b, rel_tol: float = FLOAT_REL_TOL, abs_tol: float = FLOAT_ABS_TOL) -> bool:
    return math.isclose(float(a), float(b), rel_tol=rel_tol, abs_tol=abs_tol)


def to_sympy(x):
    if isinstance(x, Surd):
        return x.to_sympy()
    if isinstance(x, Fraction):
        return sympy.Rational(x.numerator, x.denominator)
    if isinstance(x, int):
        return sympy.Integer(x)
    return sympy.Float(x)


def format_exact(x) -> str:
    terms = _terms_of(x)
    if terms is None:
        raise TypeError(f"Not an exact scalar: {x!r}")
    if not terms:
        return "0"
    pieces = []
    for d, c in sorted(terms.items()):
        magnitude = abs(c)
        if d == 1:
            body = str(magnitude)
        elif magnitude == 1:
            body = f"sqrt({d})"
        else:
            body = f"{magnitude}*sqrt({d})"
        pieces.append(("-" if c < 0 else "+", body))
    sign, body = pieces[0]
    text = f"-{body}" if sign == "-" else body
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


def format_scalar(x, backend: Backend) -> str:
    if backend is Backend.EXACT:
        return format_exact(x)
    return repr(float(x))


_TERM = re.compile(
    r"\s*(?P<sign>[+-])?\s*"
    r"(?:(?P<coef>\d+(?:/\d+)?)(?:\s*\*\s*sqrt\(\s*(?P<rad1>\d+)\s*\))?"
    r"|sqrt\(\s*(?P<rad2>\d+)\s*\))\s*"
)


def parse_exact(text: str) -> ExactScalar:
    """Parse the `q0 ± q1*sqrt(d1) ± ...` grammar written by `format_exact`."""
    source = text.strip()
    if not source:
        raise FieldError("Empty exact scalar")
    terms: dict[int, Fraction] = {}
    pos = 0
    while pos < len(source):
        match = _TERM.match(source, pos)
        if match is None or match.end() == pos:
            raise FieldError(f"Malformed exact scalar: {text!r}")
        if match["sign"] is None and pos > 0:
            raise FieldError(f"Missing sign between terms: {text!r}")
        coef = Fraction(match["coef"]) if match["coef"] else Fraction(1)
        if match["sign"] == "-":
            coef = -coef
        radicand = match["rad1"] or match["rad2"]
        d = int(radicand) if radicand else 1
        if radicand and (d == 1 or not is_squarefree(d)):
            raise FieldError(f"Radicand {d} is not a squarefree integer > 1: {text!r}")
        terms[d] = terms.get(d, 0) + coef
        pos = match.end()
    return _from_terms(terms)


def parse_scalar(text: str, backend: Backend) -> Scalar:
    if backend is Backend.EXACT:
        return parse_exact(text)
    try:
        return float(text)
    except ValueError:
        pass
    try:
        return float(parse_exact(text))
    except FieldError:
        raise FieldError(f"Malformed float scalar: {text!r}") from None
