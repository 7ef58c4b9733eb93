"""Exact arithmetic in tensor powers of a graded module.

Coefficients live in Z2, Q, or an exterior algebra E(x) over one of those
(x*x = 0, |x| = p).  An element of H^{⊗k} is stored as a map
``(word, e) -> c`` where ``word`` is a tuple of generator names, ``e`` is
the power of x (0 or 1) and ``c`` is a base-ring coefficient.  The x is
always factored to the front of the word; moving it leftward past a letter
of degree d costs (-1)^(p*d).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Mapping

from .errors import ArityMismatch, RingMismatch, StructureParseError, UndefinedDegree

UNIT = "1"
MIXED = "mixed"

_NAME_RE = re.compile(r"^(1|[A-Za-z_][A-Za-z0-9_]*)$")


@dataclass(frozen=True)
class Ring:
    """Coefficient ring: ``Z2``, ``Q``, or ``E(x)`` over one of those."""

    base: str
    x_degree: int | None = None

    def __post_init__(self):
        if self.base not in ("Z2", "Q"):
            raise ValueError(f"unsupported base ring {self.base!r}")
        if self.x_degree is not None and self.x_degree < 1:
            raise ValueError("exterior generator must have degree >= 1")

    @property
    def exterior(self) -> bool:
        return self.x_degree is not None

    @property
    def characteristic(self) -> int:
        return 2 if self.base == "Z2" else 0

    @property
    def base_ring(self) -> Ring:
        return Ring(self.base)

    def coerce(self, value):
        if self.base == "Z2":
            value = Fraction(value)
            if value.denominator % 2 == 0:
                raise ValueError(f"{value} is not defined in Z2")
            return (value.numerator * value.denominator) % 2
        return Fraction(value)

    def __str__(self):
        if self.exterior:
            return f"E({self.base},{self.x_degree})"
        return self.base


Z2 = Ring("Z2")
QQ = Ring("Q")


def exterior(base: Ring | str, p: int) -> Ring:
    name = base.base if isinstance(base, Ring) else base
    return Ring(name, p)


def parse_ring(text: str) -> Ring:
    s = text.replace(" ", "")
    if s in ("Z2", "Q"):
        return Ring(s)
    m = re.fullmatch(r"E\((Z2|Q),(\d+)\)", s)
    if not m:
        raise StructureParseError(f"cannot parse ring {text!r}")
    return Ring(m.group(1), int(m.group(2)))


@dataclass(frozen=True)
class Scalar:
    """``const + x_part * x`` in the coefficient ring."""

    ring: Ring
    const: object = 0
    x_part: object = 0

    def __post_init__(self):
        object.__setattr__(self, "const", self.ring.coerce(self.const))
        object.__setattr__(self, "x_part", self.ring.coerce(self.x_part))
        if self.x_part and not self.ring.exterior:
            raise RingMismatch(f"{self.ring} has no exterior generator")

    def _check(self, other: Scalar):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def __add__(self, other: Scalar) -> Scalar:
        self._check(other)
        return Scalar(self.ring, self.const + other.const, self.x_part + other.x_part)

    def __neg__(self) -> Scalar:
        return Scalar(self.ring, -self.const, -self.x_part)

    def __sub__(self, other: Scalar) -> Scalar:
        return self + (-other)

    def __mul__(self, other: Scalar) -> Scalar:
        if not isinstance(other, Scalar):
            return NotImplemented
        self._check(other)
        # x*x = 0 drops the cross term
        return Scalar(
            self.ring,
            self.const * other.const,
            self.const * other.x_part + self.x_part * other.const,
        )

    def is_zero(self) -> bool:
        return not self.const and not self.x_part

    def degree(self):
        if self.is_zero():
            raise UndefinedDegree("zero scalar has no degree")
        if not self.x_part:
            return 0
        if not self.const:
            return self.ring.x_degree
        return MIXED

    def __str__(self):
        parts = []
        if self.const:
            parts.append(str(self.const))
        if self.x_part:
            parts.append("x" if self.x_part == 1 else f"{self.x_part}x")
        return " + ".join(parts) if parts else "0"


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


class GeneratorTable:
    """Ordered generator names with integer degrees; always contains ``1``."""

    def __init__(self, generators: Iterable[tuple[str, int]]):
        gens = [(str(name), int(deg)) for name, deg in generators]
        names = [g for g, _ in gens]
        if UNIT not in names:
            gens.insert(0, (UNIT, 0))
            names.insert(0, UNIT)
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        for name, deg in gens:
            if not _NAME_RE.match(name) or name == "x":
                raise ValueError(f"invalid generator name {name!r}")
            if name == UNIT and deg != 0:
                raise ValueError("the unit must have degree 0")
        if len(gens) < 2:
            raise ValueError("need at least one generator besides 1")
        # unit first so that canonical order puts 1 before everything else
        gens.sort(key=lambda g: g[0] != UNIT)
        self._gens = tuple(gens)
        self._degree = dict(gens)
        self._index = {name: i for i, (name, _) in enumerate(gens)}

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g for g, _ in self._gens)

    def degree(self, name: str) -> int:
        return self._degree[name]

    def index(self, name: str) -> int:
        return self._index[name]

    def __contains__(self, name):
        return name in self._degree

    def __iter__(self):
        return iter(self._gens)

    def __len__(self):
        return len(self._gens)

    def __eq__(self, other):
        return isinstance(other, GeneratorTable) and self._gens == other._gens

    def __hash__(self):
        return hash(self._gens)

    def __repr__(self):
        inner = ", ".join(f"{g}:{d}" for g, d in self._gens)
        return f"GeneratorTable({inner})"


class GradedModule:
    """A free graded module H over a coefficient ring, with basis words."""

    def __init__(self, ring: Ring, generators: GeneratorTable | Iterable[tuple[str, int]]):
        if not isinstance(generators, GeneratorTable):
            generators = GeneratorTable(generators)
        self.ring = ring
        self.generators = generators
        self._deg_cache: dict[tuple, int] = {}
        self._letters_cache: dict[tuple, tuple] = {}

    def __eq__(self, other):
        return (
            isinstance(other, GradedModule)
            and self.ring == other.ring
            and self.generators == other.generators
        )

    def __hash__(self):
        return hash((self.ring, self.generators))

    def __repr__(self):
        return f"GradedModule({self.ring}, {self.generators!r})"

    def word_degree(self, word: tuple) -> int:
        d = self._deg_cache.get(word)
        if d is None:
            d = sum(self.generators.degree(a) for a in word)
            self._deg_cache[word] = d
        return d

    def letter_degrees(self, word: tuple) -> tuple:
        d = self._letters_cache.get(word)
        if d is None:
            d = tuple(self.generators.degree(a) for a in word)
            self._letters_cache[word] = d
        return d

    def word_key(self, word: tuple) -> tuple:
        return tuple(self.generators.index(a) for a in word)

    def words(self, k: int) -> Iterator[tuple]:
        return product(self.generators.names, repeat=k)

    def basis_size(self, k: int) -> int:
        return len(self.generators) ** k

    def x_sign(self, degree: int) -> int:
        """Sign for moving x past something of the given degree."""
        p = self.ring.x_degree or 0
        return -1 if (p * degree) % 2 else 1

    def reduce(self, c):
        return c % 2 if self.ring.base == "Z2" else c

    def one(self):
        return 1 if self.ring.base == "Z2" else Fraction(1)

    # element construction

    def word(self, *letters: str) -> Element:
        if len(letters) == 1 and isinstance(letters[0], str) and "|" in letters[0]:
            letters = tuple(letters[0].split("|"))
        return Element(self, len(letters), {(tuple(letters), 0): 1})

    def zero(self, arity: int) -> Element:
        return Element(self, arity, {})

    def element(self, text: str, arity: int | None = None) -> Element:
        return parse_element(self, text, arity)


class Element:
    """An element of H^{⊗k} in normal form."""

    __slots__ = ("module", "arity", "_terms", "_hash")

    def __init__(self, module: GradedModule, arity: int, terms: Mapping | None = None):
        if arity < 0:
            raise ValueError("arity must be non-negative")
        self.module = module
        self.arity = arity
        ring = module.ring
        clean: dict[tuple, object] = {}
        for (word, e), c in (terms or {}).items():
            word = tuple(word)
            if len(word) != arity:
                raise ArityMismatch(f"word {word} has length {len(word)}, expected {arity}")
            for a in word:
                if a not in module.generators:
                    raise ValueError(f"unknown generator {a!r}")
            if e not in (0, 1):
                if e >= 2:
                    continue
                raise ValueError("x exponent must be 0 or 1")
            if e and not ring.exterior:
                raise RingMismatch(f"{ring} has no exterior generator")
            c = ring.coerce(c)
            key = (word, e)
            c = module.reduce(clean.get(key, 0) + c)
            if c:
                clean[key] = c
            else:
                clean.pop(key, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _from_raw(cls, module: GradedModule, arity: int, raw: dict) -> Element:
        # trusted path: raw is already normalized
        self = object.__new__(cls)
        self.module = module
        self.arity = arity
        self._terms = raw
        self._hash = None
        return self

    @property
    def raw(self) -> Mapping:
        return self._terms

    def _check(self, other: Element):
        if not isinstance(other, Element):
            raise TypeError(f"expected Element, got {type(other).__name__}")
        if self.module.ring != other.module.ring or self.module != other.module:
            raise RingMismatch("elements live over different modules")

    def __add__(self, other: Element) -> Element:
        self._check(other)
        if self.arity != other.arity:
            raise ArityMismatch(f"arity {self.arity} vs {other.arity}")
        out = dict(self._terms)
        raw_add(self.module, out, other._terms)
        return Element._from_raw(self.module, self.arity, out)

    def __neg__(self) -> Element:
        return Element._from_raw(
            self.module, self.arity,
            {k: self.module.reduce(-c) for k, c in self._terms.items()},
        )

    def __sub__(self, other: Element) -> Element:
        return self + (-other)

    def __rmul__(self, scalar) -> Element:
        module = self.module
        if not isinstance(scalar, Scalar):
            scalar = Scalar(module.ring, scalar)
        if scalar.ring != module.ring:
            raise RingMismatch(f"{scalar.ring} vs {module.ring}")
        out: dict = {}
        for (word, e), c in self._terms.items():
            raw_add(module, out, {(word, e): c * scalar.const})
            if not e and scalar.x_part:
                raw_add(module, out, {(word, 1): c * scalar.x_part})
        return Element._from_raw(module, self.arity, out)

    def __matmul__(self, other: Element) -> Element:
        return self.tensor(other)

    def tensor(self, other: Element) -> Element:
        self._check(other)
        raw = raw_tensor(self.module, self._terms, other._terms)
        return Element._from_raw(self.module, self.arity + other.arity, raw)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def degree(self):
        """Common total degree of the terms, ``MIXED`` if they disagree."""
        if not self._terms:
            raise UndefinedDegree("the zero element has no degree")
        p = self.module.ring.x_degree or 0
        degs = {self.module.word_degree(w) + e * p for (w, e) in self._terms}
        return degs.pop() if len(degs) == 1 else MIXED

    def coefficient(self, word) -> Scalar:
        if isinstance(word, str):
            word = tuple(word.split("|"))
        word = tuple(word)
        return Scalar(
            self.module.ring,
            self._terms.get((word, 0), 0),
            self._terms.get((word, 1), 0),
        )

    def sorted_terms(self) -> list[tuple[tuple, int, object]]:
        key = self.module.word_key
        return sorted(
            ((w, e, c) for (w, e), c in self._terms.items()),
            key=lambda t: (key(t[0]), t[1]),
        )

    def terms(self) -> list[tuple[tuple, Scalar]]:
        """(word, coefficient) pairs in canonical order."""
        out = []
        for word, _, _ in self.sorted_terms():
            if out and out[-1][0] == word:
                continue
            out.append((word, self.coefficient(word)))
        return out

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return (
            self.module == other.module
            and self.arity == other.arity
            and self._terms == other._terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.arity, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_raw(self.module, self._terms)

    def __repr__(self):
        return f"Element({self})"


# raw term-map helpers shared with the operation evaluator


def raw_add(module: GradedModule, acc: dict, raw: Mapping, scale=1) -> dict:
    z2 = module.ring.base == "Z2"
    for key, c in raw.items():
        v = acc.get(key, 0) + scale * c
        if z2:
            v %= 2
        if v:
            acc[key] = v
        else:
            acc.pop(key, None)
    return acc


def raw_tensor(module: GradedModule, a: Mapping, b: Mapping) -> dict:
    """Concatenate words, factoring the x of the right factor to the front."""
    out: dict = {}
    z2 = module.ring.base == "Z2"
    p = module.ring.x_degree or 0
    for (w1, e1), c1 in a.items():
        d1 = module.word_degree(w1) if p else 0
        for (w2, e2), c2 in b.items():
            if e1 and e2:
                continue
            c = c1 * c2
            if e2 and (p * d1) % 2:
                c = -c
            key = (w1 + w2, e1 + e2)
            v = out.get(key, 0) + c
            if z2:
                v %= 2
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def format_raw(module: GradedModule, raw: Mapping) -> str:
    if not raw:
        return "0"
    key = module.word_key
    items = sorted(raw.items(), key=lambda kv: (key(kv[0][0]), kv[0][1]))
    pieces = []
    for (word, e), c in items:
        body = "|".join(word)
        neg = c < 0
        mag = -c if neg else c
        coef = "" if mag == 1 else str(mag)
        if e:
            text = f"{coef}x({body})"
        elif coef:
            text = f"{coef}({body})"
        else:
            text = body
        pieces.append((neg, text))
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, text in pieces[1:]:
        out += (" - " if neg else " + ") + text
    return out


# parsing

_NUM_RE = re.compile(r"\d+(?:/\d+)?")


def _parse_word(module: GradedModule, text: str) -> tuple[tuple, int, int]:
    """Parse ``a|xb|c``; returns (word, x count, Koszul sign)."""
    if not text:
        raise StructureParseError("empty word")
    letters = []
    xs = 0
    sign = 1
    degree_before = 0
    gens = module.generators
    for token in text.split("|"):
        if token in gens:
            name = token
        elif token.startswith("x") and token[1:] in gens:
            if not module.ring.exterior:
                raise StructureParseError(f"{module.ring} has no exterior generator x")
            name = token[1:]
            xs += 1
            sign *= module.x_sign(degree_before)
        else:
            raise StructureParseError(f"unknown letter {token!r}")
        letters.append(name)
        degree_before += gens.degree(name)
    return tuple(letters), xs, sign


def _closing(text: str, start: int) -> int:
    depth = 0
    for i in range(start, len(text)):
        if text[i] == "(":
            depth += 1
        elif text[i] == ")":
            depth -= 1
            if depth == 0:
                return i
    raise StructureParseError(f"unbalanced parentheses in {text!r}")


def parse_element(module: GradedModule, text: str, arity: int | None = None) -> Element:
    """Parse ``y|1|1 + 1|1|y``, ``-2x(y|y)``, ``1|xy|y`` and the like."""
    s = text.replace(" ", "").replace("−", "-").replace("⊗", "|")
    if s in ("", "0"):
        if arity is None:
            raise StructureParseError("the zero element needs an explicit arity")
        return module.zero(arity)
    terms: dict = {}
    pos = 0
    first = True
    while pos < len(s):
        sign = 1
        if s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos += 1
        elif not first:
            raise StructureParseError(f"expected + or - at {pos} in {text!r}")
        first = False
        coef = Fraction(1)
        m = _NUM_RE.match(s, pos)
        if m:
            nxt = s[m.end():m.end() + 1]
            if nxt in ("(", "*", "x"):
                coef = Fraction(m.group(0))
                pos = m.end() + (1 if nxt == "*" else 0)
        outer_x = 0
        if s.startswith("x(", pos):
            outer_x = 1
            pos += 1
        if pos < len(s) and s[pos] == "(":
            end = _closing(s, pos)
            body = s[pos + 1:end]
            pos = end + 1
        else:
            end = pos
            while end < len(s) and s[end] not in "+-":
                end += 1
            body = s[pos:end]
            pos = end
        word, xs, ksign = _parse_word(module, body)
        if arity is not None and len(word) != arity:
            raise ArityMismatch(f"word {body!r} has length {len(word)}, expected {arity}")
        arity = len(word)
        e = xs + outer_x
        if e >= 2:
            continue
        raw_add(module, terms, {(word, e): module.ring.coerce(sign * ksign * coef)})
    return Element(module, arity, terms)
