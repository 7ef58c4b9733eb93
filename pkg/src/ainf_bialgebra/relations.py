"""Structure relations of an A∞-bialgebra of type (m, n) and their verification.

Relations 1 and 2 carry complete signs and are checked exactly over any
ring.  The remaining families have signs that are only partly fixed; they
are checked either exactly over Z2 (where signs do not matter) or term by
term: if every summand is the zero operation the relation holds for every
choice of signs.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from math import comb

from .algebra import Element, GradedModule, raw_add, raw_tensor
from .catalog import HopfStructure, associativity_pair, coassociativity_pair, hopf_pair
from .ops import (
    MultiOp,
    Tensor,
    bar_component,
    cobar_component,
    compose,
    fraction,
    fraction_leaves,
    iterated_coproduct,
    iterated_product,
)

log = logging.getLogger(__name__)

# enumerating more input words than this is refused
MAX_WORDS = 1 << 20


class RelationId(enum.Enum):
    ASSOC = "Assoc"
    COASSOC = "Coassoc"
    HOPF = "Hopf"
    R1 = "R1"
    R2 = "R2"
    R3 = "R3"
    R4A = "R4a"
    R4B = "R4b"
    R4C = "R4c"
    R4D = "R4d"
    R5A = "R5a"
    R5B = "R5b"
    R5C = "R5c"
    R5D = "R5d"
    R6 = "R6"

    def __str__(self):
        return self.value

    @property
    def order(self) -> int:
        return list(RelationId).index(self)


class Mode(enum.Enum):
    EXACT = "exact"
    TERMWISE = "termwise"

    def __str__(self):
        return self.value


RELATION2_CONVENTIONS = ("definition", "display")


@dataclass(frozen=True)
class Term:
    """One composite in a relation; ``sign`` is None where the displays leave it open."""

    op: MultiOp
    sign: int | None = 1
    label: str = ""

    @property
    def count(self) -> int:
        return 1

    def candidates(self):
        return self.op.candidates()

    def evaluate(self, word):
        raw = self.op.eval_word(word)
        return [(self.label or self.op.name, self.sign, raw)] if raw else []


class OuterFamily:
    """Terms (B_1⊗…⊗B_q) ∘ σ ∘ inner where each B_j is drawn from a palette.

    Used when the number of placements grows like 2^q: the inner expansion
    is computed once per word and each surviving leaf is matched against
    the placements it can feed.  Placements no leaf reaches are exactly zero.
    """

    def __init__(self, inner: list[MultiOp], palette: dict[str, MultiOp], accept, count: int,
                 sign=None, inner_sign: int | None = 1, label: str = ""):
        self.inner = list(inner)
        self.q = self.inner[0].outputs
        self.palette = dict(palette)
        self.accept = accept
        self.count = count
        self.sign = sign or (lambda choice: None)
        self.inner_sign = inner_sign
        self.label = label
        self.module = self.inner[0].module
        self._inner_op = Tensor(self.inner)

    def candidates(self):
        return self._inner_op.candidates()

    def _prefixes(self):
        sets = [op.prefix_set() for op in self.palette.values()]
        if any(s is None for s in sets):
            return [None] * self.q
        union = frozenset().union(*sets)
        return [union] * self.q

    def describe(self, choice) -> str:
        return f"{self.label}[{'⊗'.join(choice)}]"

    def evaluate(self, word):
        module = self.module
        p = module.ring.x_degree or 0
        acc: dict[tuple, dict] = {}
        prefixes = self._prefixes()
        for e, c, columns in fraction_leaves(module, self.inner, self.q, prefixes, word):
            options = []
            for col in columns:
                opts = [(k, op) for k, op in self.palette.items() if op.eval_word(col)]
                if not opts:
                    break
                options.append(opts)
            else:
                for picked in product(*options):
                    choice = tuple(k for k, _ in picked)
                    if not self.accept(choice):
                        continue
                    raw = _outer_value(module, [op for _, op in picked], columns, e, c, p)
                    if raw:
                        raw_add(module, acc.setdefault(choice, {}), raw)
        out = []
        for choice, raw in sorted(acc.items()):
            if raw:
                s = self.sign(choice)
                if s is not None and self.inner_sign is not None:
                    s *= self.inner_sign
                out.append((self.describe(choice), s, raw))
        return out


def _outer_value(module, ops, columns, e, c, p):
    results = []
    deg_before = 0
    flips = 0
    total = 0
    for op, col in zip(ops, columns):
        res = op.eval_word(col)
        if op.degree % 2 and deg_before % 2:
            flips ^= 1
        deg_before += module.word_degree(col)
        total += op.degree
        results.append(res)
    acc = results[0]
    for res in results[1:]:
        acc = raw_tensor(module, acc, res)
        if not acc:
            return {}
    if e and (total * p) % 2:
        flips ^= 1
    if flips:
        c = -c
    out = {}
    for (w, e2), v in acc.items():
        if e and e2:
            continue
        raw_add(module, out, {(w, e + e2): c * v})
    return out


@dataclass
class Relation:
    """``Σ lhs = Σ rhs``; an empty rhs means the relation reads ``Σ lhs = 0``."""

    id: RelationId
    inputs: int
    outputs: int | None
    lhs: list
    rhs: list = field(default_factory=list)
    module: GradedModule | None = None

    @property
    def is_vanishing(self) -> bool:
        return not self.rhs

    @property
    def term_count(self) -> int:
        return sum(t.count for t in self.lhs + self.rhs)

    @property
    def signs_known(self) -> bool:
        # families may leave signs open
        return all(isinstance(t, Term) and t.sign is not None for t in self.lhs + self.rhs)

    def sides(self, word) -> tuple[Element, Element]:
        """Both sides on one basis word, with open signs taken as +1."""
        module = self.module
        word = tuple(word.split("|")) if isinstance(word, str) else tuple(word)
        left = _side_sum(module, [c for t in self.lhs for c in t.evaluate(word)])
        right = _side_sum(module, [c for t in self.rhs for c in t.evaluate(word)])
        arity = self.outputs
        if arity is None:
            arity = len(next(iter(left or right), ((),))[0]) if (left or right) else 0
        return Element(module, arity, left), Element(module, arity, right)

    def candidates(self):
        acc = set()
        for t in self.lhs + self.rhs:
            c = t.candidates()
            if c is None:
                return None
            acc |= c
        return acc


@dataclass(frozen=True)
class Witness:
    word: tuple
    lhs: Element
    rhs: Element
    term: str | None = None

    def to_dict(self) -> dict:
        out = {"word": "|".join(self.word), "lhs": str(self.lhs), "rhs": str(self.rhs)}
        if self.term is not None:
            out["term"] = self.term
        return out


@dataclass
class RelationReport:
    relation: RelationId
    mode: Mode
    passed: bool
    basis_size: int
    checked: int
    terms: int
    failures: int = 0
    witness: Witness | None = None
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.passed and self.witness is None:
            raise ValueError("a failed report needs a witness")

    def to_dict(self) -> dict:
        return {
            "relation": str(self.relation),
            "mode": str(self.mode),
            "passed": self.passed,
            "basis_size": self.basis_size,
            "checked": self.checked,
            "terms": self.terms,
            "failures": self.failures,
            "witness": self.witness.to_dict() if self.witness else None,
            "notes": dict(self.notes),
        }

    def to_text(self) -> str:
        line = (
            f"{str(self.relation):<8}{str(self.mode):<10}{'PASS' if self.passed else 'FAIL'}"
            f"  basis={self.basis_size} checked={self.checked} terms={self.terms}"
        )
        for key, value in sorted(self.notes.items()):
            line += f" {key}={value}"
        if self.witness is not None:
            w = self.witness
            line += f"\n    on {'|'.join(w.word)}: lhs = {w.lhs}  rhs = {w.rhs}"
            if w.term:
                line += f"  (term {w.term})"
        return line


def _words_for(relation: Relation, module: GradedModule):
    cands = relation.candidates()
    if cands is None:
        if module.basis_size(relation.inputs) > MAX_WORDS:
            raise ValueError(
                f"{relation.id}: basis of H^⊗{relation.inputs} is too large to enumerate"
            )
        return list(module.words(relation.inputs))
    return list(cands)


def _side_sum(module, contributions):
    out: dict = {}
    for _, sign, raw in contributions:
        raw_add(module, out, raw, 1 if sign is None else sign)
    return out


def check_relation(relation: Relation, mode: Mode, words=None,
                   exhaustive: bool = False) -> RelationReport:
    """Evaluate a relation on every candidate input word.

    Words outside every term's candidate support give zero on both sides,
    so skipping them is exact; ``exhaustive=True`` walks the full basis.

    The reported witness is the first failing word in canonical order, so
    the result does not depend on the iteration order of ``words``.
    """
    module = relation.module
    if mode is Mode.TERMWISE and not relation.is_vanishing:
        mode = Mode.EXACT
    if mode is Mode.EXACT and not relation.signs_known and module.ring.characteristic != 2:
        raise ValueError(
            f"{relation.id} has unspecified signs; exact mode needs characteristic 2"
        )
    if words is None and exhaustive:
        if module.basis_size(relation.inputs) > MAX_WORDS:
            raise ValueError(f"{relation.id}: basis too large for an exhaustive check")
        words = list(module.words(relation.inputs))
    if words is None:
        words = _words_for(relation, module)
    failures = []
    for word in words:
        word = tuple(word)
        left = [c for t in relation.lhs for c in t.evaluate(word)]
        right = [c for t in relation.rhs for c in t.evaluate(word)]
        if mode is Mode.TERMWISE:
            for label, _, raw in left + right:
                failures.append((module.word_key(word), word, raw, {}, label))
                break
        else:
            lraw = _side_sum(module, left)
            rraw = _side_sum(module, right)
            if lraw != rraw:
                failures.append((module.word_key(word), word, lraw, rraw, None))
    witness = None
    if failures:
        _, word, lraw, rraw, label = min(failures, key=lambda f: f[0])
        arity = relation.outputs
        if arity is None:
            arity = len(next(iter(lraw or rraw))[0])
        witness = Witness(
            word,
            Element._from_raw(module, arity, dict(lraw)),
            Element._from_raw(module, arity, dict(rraw)),
            label,
        )
    return RelationReport(
        relation=relation.id,
        mode=mode,
        passed=not failures,
        basis_size=module.basis_size(relation.inputs),
        checked=len(words),
        terms=relation.term_count,
        failures=len(failures),
        witness=witness,
    )


class Pieces:
    """The named operations of one structure, built once and shared."""

    def __init__(self, h: HopfStructure, bar_sign: int = 1):
        if h.omega is None:
            raise ValueError("the structure has no higher operation")
        self.h = h
        self.module = h.module
        self.mu = h.mu
        self.delta = h.delta
        self.omega = h.omega
        self.m = h.m
        self.n = h.n
        self.bar_sign = bar_sign

    @lru_cache(maxsize=None)
    def f(self, k: int) -> MultiOp:
        return iterated_coproduct(self.delta, k)

    @lru_cache(maxsize=None)
    def g(self, k: int) -> MultiOp:
        return iterated_product(self.mu, k)

    @lru_cache(maxsize=None)
    def cobar(self, k: int) -> MultiOp:
        return cobar_component(self.delta, k)

    @lru_cache(maxsize=None)
    def bar(self, k: int) -> MultiOp:
        return bar_component(self.mu, k, self.bar_sign)


def _pieces(h, pieces, bar_sign=1):
    return pieces if pieces is not None else Pieces(h, bar_sign)


def build_relation1(h: HopfStructure, pieces: Pieces | None = None) -> Relation:
    """δ^n ω = (g_m⊗ω - (-1)^n ω⊗g_m) σ_{2,m} Δ^{⊗m}."""
    pc = _pieces(h, pieces)
    m, n, w, g = pc.m, pc.n, pc.omega, pc.g(pc.m)
    lhs = [Term(compose(pc.cobar(n), w), 1, f"δ{n}∘ω")]
    inner = [pc.delta] * m
    rhs = [
        Term(fraction([g, w], inner), 1, f"(g{m}⊗ω)σΔ^{m}"),
        Term(fraction([w, g], inner), -((-1) ** n), f"(ω⊗g{m})σΔ^{m}"),
    ]
    return Relation(RelationId.R1, m, n + 1, lhs, rhs, pc.module)


def build_relation2(h: HopfStructure, pieces: Pieces | None = None,
                    convention: str = "definition") -> Relation:
    """ω ∂_m = μ^{⊗n} σ_{n,2} (f^n⊗ω - (-1)^m ω⊗f^n).

    ``convention="display"`` uses the variant
    (-1)^⌊(n+1)/2⌋ μ^{⊗n} σ_{n,2} (ω⊗f^n - (-1)^m f^n⊗ω).
    """
    if convention not in RELATION2_CONVENTIONS:
        raise ValueError(f"unknown Relation 2 convention {convention!r}")
    pc = _pieces(h, pieces)
    m, n, w, f = pc.m, pc.n, pc.omega, pc.f(pc.n)
    lhs = [Term(compose(w, pc.bar(m)), 1, f"ω∘∂{m}")]
    outer = [pc.mu] * n
    sm = (-1) ** m
    if convention == "definition":
        rhs = [
            Term(fraction(outer, [f, w]), 1, f"μ^{n}σ(f{n}⊗ω)"),
            Term(fraction(outer, [w, f]), -sm, f"μ^{n}σ(ω⊗f{n})"),
        ]
    else:
        s = (-1) ** ((n + 1) // 2)
        rhs = [
            Term(fraction(outer, [w, f]), s, f"μ^{n}σ(ω⊗f{n})"),
            Term(fraction(outer, [f, w]), -s * sm, f"μ^{n}σ(f{n}⊗ω)"),
        ]
    return Relation(RelationId.R2, m + 1, n, lhs, rhs, pc.module)


def _slot_label(names):
    return "⊗".join(names)


def build_relation3(h: HopfStructure, pieces: Pieces | None = None) -> Relation:
    """All n*m composites (…⊗ω⊗…) σ_{n,m} (…⊗ω⊗…) with g_m / f^n elsewhere."""
    pc = _pieces(h, pieces)
    m, n, w, f, g = pc.m, pc.n, pc.omega, pc.f(pc.n), pc.g(pc.m)
    terms = []
    for i in range(n):
        outer = [g] * i + [w] + [g] * (n - 1 - i)
        for j in range(m):
            inner = [f] * j + [w] + [f] * (m - 1 - j)
            sign = 1 if i == 0 and j == 0 else None
            label = (
                f"({_slot_label(['g'] * i + ['ω'] + ['g'] * (n - 1 - i))})σ"
                f"({_slot_label(['f'] * j + ['ω'] + ['f'] * (m - 1 - j))})"
            )
            terms.append(Term(fraction(outer, inner), sign, label))
    return Relation(RelationId.R3, 2 * m - 1, 2 * n - 1, terms, [], pc.module)


def _guard(cond, what):
    if not cond:
        raise ValueError(what)


def _family_ks(k_max: int) -> list[int]:
    # the intermediate families between the displayed endpoints; k=1 alone when k_max=1
    return list(range(1, max(2, k_max)))


def build_relation4(variant: str, h: HopfStructure, pieces: Pieces | None = None) -> Relation:
    """Families 4a-4d (m = 2)."""
    pc = _pieces(h, pieces)
    _guard(pc.m == 2, "Relation 4 needs m = 2")
    n, w, f, mu, delta = pc.n, pc.omega, pc.f(pc.n), pc.mu, pc.delta
    module = pc.module
    inner_pairs = [([f, w], 1, "f⊗ω"), ([w, f], -1, "ω⊗f")]
    if variant == "a":
        terms = [Term(fraction([w, w], [delta, delta]), 1, "(ω⊗ω)σ(Δ⊗Δ)")]
        return Relation(RelationId.R4A, 2, 2 * n, terms, [], module)
    if variant == "b":
        terms = [
            Term(fraction([w] * n, inner), s, f"ω^{n}σ({lab})") for inner, s, lab in inner_pairs
        ]
        return Relation(RelationId.R4B, 3, n * n, terms, [], module)
    if variant == "c":
        ks = set(_family_ks(n - 1))
        count = sum(comb(n, k) for k in ks)
        terms = [
            OuterFamily(
                inner, {"μ": mu, "ω": w},
                accept=lambda ch, ks=ks: ch.count("μ") in ks,
                count=count, inner_sign=s, label=f"σ({lab})",
            )
            for inner, s, lab in inner_pairs
        ]
        # the output arity depends on the placement, so it is left open
        return Relation(RelationId.R4C, 3, None, terms, [], module)
    if variant == "d":
        terms = []
        for i in range(1, n + 1):
            outer = [mu] * (i - 1) + [w] + [mu] * (n - i)
            s_out = 1 if (n - i) % 2 == 0 else -((-1) ** n)
            names = ["μ"] * (i - 1) + ["ω"] + ["μ"] * (n - i)
            for inner, s_in, lab in inner_pairs:
                terms.append(
                    Term(fraction(outer, inner), s_out * s_in, f"({_slot_label(names)})σ({lab})")
                )
        return Relation(RelationId.R4D, 3, 2 * n - 1, terms, [], module)
    raise ValueError(f"unknown Relation 4 variant {variant!r}")


def build_relation5(variant: str, h: HopfStructure, pieces: Pieces | None = None) -> Relation:
    """Families 5a-5d (n = 2)."""
    pc = _pieces(h, pieces)
    _guard(pc.n == 2, "Relation 5 needs n = 2")
    m, w, g, mu, delta = pc.m, pc.omega, pc.g(pc.m), pc.mu, pc.delta
    module = pc.module
    outer_pairs = [([g, w], 1, "g⊗ω"), ([w, g], -1, "ω⊗g")]
    if variant == "a":
        terms = [Term(fraction([mu, mu], [w, w]), 1, "(μ⊗μ)σ(ω⊗ω)")]
        return Relation(RelationId.R5A, 2 * m, 2, terms, [], module)
    if variant == "b":
        terms = [
            Term(fraction(outer, [w] * m), s, f"({lab})σω^{m}") for outer, s, lab in outer_pairs
        ]
        return Relation(RelationId.R5B, m * m, 3, terms, [], module)

    def placements(k):
        for slots in combinations(range(m), k):
            names = ["Δ" if i in slots else "ω" for i in range(m)]
            yield names, [delta if i in slots else w for i in range(m)]

    if variant == "c":
        terms = []
        for k in _family_ks(m - 1):
            for names, inner in placements(k):
                for outer, s, lab in outer_pairs:
                    terms.append(
                        Term(fraction(outer, inner), None, f"({lab})σ({_slot_label(names)})")
                    )
        rel = Relation(RelationId.R5C, terms[0].op.inputs, 3, terms, [], module)
        return rel
    if variant == "d":
        terms = []
        for i in range(1, m + 1):
            names = ["Δ"] * (i - 1) + ["ω"] + ["Δ"] * (m - i)
            inner = [delta] * (i - 1) + [w] + [delta] * (m - i)
            s_in = 1 if (m - i) % 2 == 0 else -((-1) ** m)
            for outer, s_out, lab in outer_pairs:
                terms.append(
                    Term(fraction(outer, inner), s_in * s_out, f"({lab})σ({_slot_label(names)})")
                )
        return Relation(RelationId.R5D, 2 * m - 1, 3, terms, [], module)
    raise ValueError(f"unknown Relation 5 variant {variant!r}")


def build_relation6(h: HopfStructure, pieces: Pieces | None = None) -> Relation:
    """(ω⊗ω) σ_{2,2} (ω⊗ω) = 0 for m = n = 2."""
    pc = _pieces(h, pieces)
    _guard(pc.m == 2 and pc.n == 2, "Relation 6 needs m = n = 2")
    w = pc.omega
    terms = [Term(fraction([w, w], [w, w]), 1, "(ω⊗ω)σ(ω⊗ω)")]
    return Relation(RelationId.R6, 4, 4, terms, [], pc.module)


def build_classical(rid: RelationId, h: HopfStructure) -> Relation:
    if rid is RelationId.ASSOC:
        lhs, rhs = associativity_pair(h.mu)
    elif rid is RelationId.COASSOC:
        lhs, rhs = coassociativity_pair(h.delta)
    elif rid is RelationId.HOPF:
        lhs, rhs = hopf_pair(h.mu, h.delta)
    else:
        raise ValueError(f"{rid} is not a classical relation")
    return Relation(rid, lhs.inputs, lhs.outputs, [Term(lhs)], [Term(rhs)], h.module)


def applicable_relations(m: int, n: int) -> list[RelationId]:
    ids = [RelationId.ASSOC, RelationId.COASSOC, RelationId.HOPF,
           RelationId.R1, RelationId.R2, RelationId.R3]
    if m == 2:
        ids += [RelationId.R4A, RelationId.R4B, RelationId.R4C, RelationId.R4D]
    if n == 2:
        ids += [RelationId.R5A, RelationId.R5B, RelationId.R5C, RelationId.R5D]
    if m == 2 and n == 2:
        ids.append(RelationId.R6)
    return ids


def build_relation(rid: RelationId, h: HopfStructure, pieces: Pieces | None = None,
                   relation2: str = "definition") -> Relation:
    if rid in (RelationId.ASSOC, RelationId.COASSOC, RelationId.HOPF):
        return build_classical(rid, h)
    if rid is RelationId.R1:
        return build_relation1(h, pieces)
    if rid is RelationId.R2:
        return build_relation2(h, pieces, relation2)
    if rid is RelationId.R3:
        return build_relation3(h, pieces)
    if rid is RelationId.R6:
        return build_relation6(h, pieces)
    family, variant = rid.value[1], rid.value[2]
    if family == "4":
        return build_relation4(variant, h, pieces)
    return build_relation5(variant, h, pieces)


@dataclass
class Verification:
    structure: str
    ring: str
    m: int
    n: int
    degree: int
    required_degree: int
    reports: list[RelationReport]
    relation2: str = "definition"
    bar_sign: int = 1

    @property
    def degree_ok(self) -> bool:
        return self.degree == self.required_degree

    @property
    def passed(self) -> bool:
        return self.degree_ok and all(r.passed for r in self.reports)

    def report(self, rid: RelationId | str) -> RelationReport:
        rid = RelationId(rid) if isinstance(rid, str) else rid
        for r in self.reports:
            if r.relation is rid:
                return r
        raise KeyError(str(rid))

    def __iter__(self):
        return iter(self.reports)

    def to_dict(self) -> dict:
        return {
            "structure": self.structure,
            "ring": self.ring,
            "type": [self.m, self.n],
            "degree": self.degree,
            "required_degree": self.required_degree,
            "degree_ok": self.degree_ok,
            "relation2": self.relation2,
            "bar_sign": self.bar_sign,
            "passed": self.passed,
            "reports": [r.to_dict() for r in self.reports],
        }

    def to_text(self) -> str:
        head = (
            f"structure {self.structure} over {self.ring}, type ({self.m},{self.n}), "
            f"|ω| = {self.degree} (need {self.required_degree})"
        )
        lines = [head]
        if not self.degree_ok:
            lines.append("DEGREE   precheck  FAIL  ω does not have degree m+n-3")
        lines += [r.to_text() for r in self.reports]
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


def resolve_mode(mode: Mode | str | None, h: HopfStructure) -> Mode:
    if mode in (None, "auto"):
        ring = h.ring
        return Mode.EXACT if ring.characteristic == 2 and not ring.exterior else Mode.TERMWISE
    mode = Mode(mode) if isinstance(mode, str) else mode
    if mode is Mode.EXACT and h.ring.characteristic != 2:
        raise ValueError("exact mode for the sign-ambiguous relations needs characteristic 2")
    return mode


def verify(h: HopfStructure, mode: Mode | str | None = "auto", relation2: str = "definition",
           bar_sign: int = 1, check_alternate: bool = True,
           relations: list[RelationId] | None = None, exhaustive: bool = False) -> Verification:
    """Check every applicable relation of ``h``; one report per relation."""
    if h.omega is None:
        raise ValueError("the structure has no higher operation")
    mode = resolve_mode(mode, h)
    m, n = h.m, h.n
    pieces = Pieces(h, bar_sign)
    ids = relations or applicable_relations(m, n)
    ids = sorted(ids, key=lambda r: r.order)
    reports = []
    for rid in ids:
        rel = build_relation(rid, h, pieces, relation2)
        report = check_relation(rel, mode, exhaustive=exhaustive)
        if rid is RelationId.R2 and check_alternate:
            alt = next(c for c in RELATION2_CONVENTIONS if c != relation2)
            alt_report = check_relation(build_relation2(h, pieces, alt), mode,
                                        exhaustive=exhaustive)
            report.notes[f"r2_{alt}"] = "pass" if alt_report.passed else "fail"
            log.info("%s: Relation 2 under the %s convention: %s", h.name, alt,
                     "pass" if alt_report.passed else "fail")
        reports.append(report)
    return Verification(
        structure=h.name or "structure",
        ring=str(h.ring),
        m=m,
        n=n,
        degree=h.omega.degree,
        required_degree=m + n - 3,
        reports=reports,
        relation2=relation2,
        bar_sign=bar_sign,
    )
