"""Example Hopf structures and the dimension arithmetic for ω_m^n.

H = E(y) with basis {1, y}, trivial product and primitive coproduct, plus
one extra operation ω_m^n of degree m + n - 3.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .algebra import QQ, UNIT, Z2, Element, GradedModule, Ring, exterior, parse_ring
from .errors import (
    DegreeError,
    HopfStructureError,
    InadmissibleParams,
    NotApplicable,
    StructureParseError,
)
from .ops import MultiOp, Table, compose, first_difference, fraction, in_slot

CASES = ("i", "ii", "iii", "custom")


def degree_condition(m: int, n: int, p: int, q: int) -> bool:
    """True iff x*y^n has degree |y^m| + m + n - 3."""
    return m * (q + 1) == n * (q - 1) + p + 3


def q_of_n(m: int, p: int, n: int) -> Fraction:
    if n == m:
        raise NotApplicable("q(n) is undefined at n = m")
    return Fraction(p - m - n + 3, m - n)


def classify(m: int, n: int, p: int, q: int) -> str | None:
    """Case label of an admissible (m, n, p, q), None if inadmissible."""
    if min(m, n, p, q) < 1 or m + n < 4 or not degree_condition(m, n, p, q):
        return None
    if m == 2 and n == 2 and p == 1 and q >= 2:
        return "i"
    if m >= 2 and p == 2 * m - 3 and q == 1:
        return "ii"
    if m >= 3 and m + 1 <= n <= 3 * m - p - 3 and 1 <= p <= 2 * m - 4 and q >= 2:
        return "iii"
    return "custom"


@dataclass(frozen=True)
class TypeParams:
    m: int
    n: int
    p: int
    q: int
    case: str = ""

    def __post_init__(self):
        found = classify(self.m, self.n, self.p, self.q)
        if found is None:
            raise InadmissibleParams(
                f"(m,n,p,q)={self.astuple()} violates m(q+1) = n(q-1) + p + 3 or m + n >= 4"
            )
        if not self.case:
            object.__setattr__(self, "case", found)
        elif self.case != found:
            raise InadmissibleParams(f"{self.astuple()} is case {found}, not {self.case}")

    def astuple(self) -> tuple[int, int, int, int]:
        return (self.m, self.n, self.p, self.q)


def enumerate_types(m_max: int, q_cap: int = 6, n_max: int | None = None) -> list[TypeParams]:
    """All admissible (m, n, p, q) with 2 <= m <= m_max, p <= 2m - 3, n <= n_max.

    Case (i) and the n = m family are unbounded in q and are cut at q_cap;
    case (ii) is unbounded in n and is cut at n_max (default 3*m_max).
    """
    if m_max < 2:
        raise ValueError("m_max must be >= 2")
    if n_max is None:
        n_max = 3 * m_max
    found = []
    for q in range(2, q_cap + 1):
        if n_max >= 2:
            found.append(TypeParams(2, 2, 1, q))
    for m in range(2, m_max + 1):
        for n in range(max(1, 4 - m), n_max + 1):
            found.append(TypeParams(m, n, 2 * m - 3, 1))
    for m in range(3, m_max + 1):
        for p in range(1, 2 * m - 3):
            for n in range(m + 1, min(3 * m - p - 3, n_max) + 1):
                q = q_of_n(m, p, n)
                if q.denominator == 1:
                    found.append(TypeParams(m, n, p, int(q)))
        if m <= n_max:
            # n = m forces p = 2m - 3 and leaves q free
            for q in range(2, q_cap + 1):
                found.append(TypeParams(m, m, 2 * m - 3, q))
    return sorted(found, key=TypeParams.astuple)


# Hopf structures


def trivial_product(module: GradedModule) -> Table:
    images = {}
    for a in module.generators.names:
        for b in module.generators.names:
            if a == UNIT:
                images[(a, b)] = module.word(b)
            elif b == UNIT:
                images[(a, b)] = module.word(a)
    return Table(module, 2, 1, 0, images, name="μ")


def primitive_coproduct(module: GradedModule) -> Table:
    images = {}
    for a in module.generators.names:
        if a == UNIT:
            images[(a,)] = module.word(UNIT, UNIT)
        else:
            images[(a,)] = module.word(UNIT, a) + module.word(a, UNIT)
    return Table(module, 1, 2, 0, images, name="Δ")


def associativity_pair(mu: MultiOp):
    return compose(mu, in_slot(mu, 0, 1)), compose(mu, in_slot(mu, 1, 0))


def coassociativity_pair(delta: MultiOp):
    return compose(in_slot(delta, 0, 1), delta), compose(in_slot(delta, 1, 0), delta)


def hopf_pair(mu: MultiOp, delta: MultiOp):
    return compose(delta, mu), fraction([mu, mu], [delta, delta])


class HopfStructure:
    """(H, μ, Δ) with an optional higher operation ω of type (m, n)."""

    def __init__(self, module: GradedModule, mu: MultiOp, delta: MultiOp,
                 omega: MultiOp | None = None, name: str = "", params: TypeParams | None = None,
                 check: bool = True):
        if (mu.inputs, mu.outputs) != (2, 1) or (delta.inputs, delta.outputs) != (1, 2):
            raise HopfStructureError("μ must be 2->1 and Δ must be 1->2")
        if mu.degree or delta.degree:
            raise HopfStructureError("μ and Δ must have degree 0")
        self.module = module
        self.mu = mu
        self.delta = delta
        self.omega = omega
        self.name = name
        self.params = params
        if check:
            self.check()

    @property
    def ring(self) -> Ring:
        return self.module.ring

    @property
    def m(self) -> int | None:
        return self.omega.inputs if self.omega is not None else None

    @property
    def n(self) -> int | None:
        return self.omega.outputs if self.omega is not None else None

    def degree_ok(self) -> bool:
        return self.omega is not None and self.omega.degree == self.m + self.n - 3

    def check(self):
        module = self.module
        one = module.word(UNIT)
        for a in module.generators.names:
            h = module.word(a)
            if self.mu(one @ h) != h or self.mu(h @ one) != h:
                raise HopfStructureError(f"1 is not a two-sided unit on {a}")
        if self.delta(one) != one @ one:
            raise HopfStructureError("Δ(1) must be 1|1")
        for label, (lhs, rhs) in (
            ("associativity", associativity_pair(self.mu)),
            ("coassociativity", coassociativity_pair(self.delta)),
            ("Hopf compatibility", hopf_pair(self.mu, self.delta)),
        ):
            w = first_difference(lhs, rhs)
            if w is not None:
                raise HopfStructureError(
                    f"{label} fails on {'|'.join(w)}: {lhs.on_word(w)} != {rhs.on_word(w)}"
                )

    def with_omega(self, omega: MultiOp, name: str | None = None) -> HopfStructure:
        return HopfStructure(self.module, self.mu, self.delta, omega,
                             name=name or self.name, params=self.params, check=False)

    def __repr__(self):
        kind = f" type ({self.m},{self.n})" if self.omega is not None else ""
        return f"<HopfStructure {self.name or '?'} over {self.ring}{kind}>"


def exterior_hopf(ring: Ring, y_degree: int) -> HopfStructure:
    module = GradedModule(ring, [(UNIT, 0), ("y", y_degree)])
    return HopfStructure(module, trivial_product(module), primitive_coproduct(module))


def make_ex1() -> HopfStructure:
    """Z2, |y| = -2, ω_2^3(y|y) = y|1|1 + 1|1|y and zero otherwise."""
    h = exterior_hopf(Z2, -2)
    omega = Table(h.module, 2, 3, 2, {"y|y": "y|1|1 + 1|1|y"}, name="ω")
    return h.with_omega(omega, name="ex1")


def make_theorem1(params: TypeParams | tuple, base: Ring | str | None = None) -> HopfStructure:
    """Λ = E(x), |x| = p; H = E(y), |y| = q; ω(y|…|y) = xy|y|…|y.

    ``base`` defaults to Q when q is odd and Z2 when q is even (for even |y|
    the primitive y with y*y = 0 is only compatible in characteristic 2).
    """
    if not isinstance(params, TypeParams):
        params = TypeParams(*params)
    m, n, p, q = params.astuple()
    if base is None:
        base = QQ if q % 2 else Z2
    ring = exterior(base, p)
    h = exterior_hopf(ring, q)
    module = h.module
    image = Element(module, n, {(("y",) * n, 1): 1})
    try:
        omega = Table(module, m, n, m + n - 3, {("y",) * m: image}, name="ω")
    except DegreeError as exc:
        raise InadmissibleParams(str(exc)) from exc
    out = h.with_omega(omega, name=f"theorem1{params.astuple()}")
    out.params = params
    return out


# structure-description files
#
#   ring Z2 | Q | E(Q,3)
#   generators 1:0 y:-2
#   type 2 3
#   omega y|y = y|1|1 + 1|1|y
#   mu y|y = 0           (optional; overrides the trivial product)
#   delta y = 1|y + y|1  (optional; overrides the primitive coproduct)


def _infer_degree(module: GradedModule, images: dict, default: int) -> int:
    p = module.ring.x_degree or 0
    shifts = set()
    for word, image in images.items():
        for (w, e) in image.raw:
            shifts.add(module.word_degree(w) + e * p - module.word_degree(word))
    if len(shifts) > 1:
        raise StructureParseError(f"ω entries have inconsistent degree shifts {sorted(shifts)}")
    return shifts.pop() if shifts else default


def parse_structure(text: str, name: str = "custom", check: bool = True) -> HopfStructure:
    ring = None
    gens = None
    mn = None
    entries: dict[str, list[tuple[int, str, str]]] = {"omega": [], "mu": [], "delta": []}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "ring":
            ring = parse_ring(rest)
        elif head == "generators":
            gens = []
            for tok in rest.split():
                m = re.fullmatch(r"([^:]+):(-?\d+)", tok)
                if not m:
                    raise StructureParseError(f"line {lineno}: bad generator {tok!r}")
                gens.append((m.group(1), int(m.group(2))))
        elif head == "type":
            try:
                mn = tuple(int(t) for t in rest.split())
            except ValueError:
                mn = ()
            if len(mn) != 2 or min(mn) < 1:
                raise StructureParseError(f"line {lineno}: type needs two positive integers")
        elif head in entries:
            lhs, eq, rhs = rest.partition("=")
            if not eq:
                raise StructureParseError(f"line {lineno}: expected 'word = element'")
            entries[head].append((lineno, lhs.strip(), rhs.strip()))
        else:
            raise StructureParseError(f"line {lineno}: unknown directive {head!r}")
    if ring is None or gens is None or mn is None:
        raise StructureParseError("structure needs 'ring', 'generators' and 'type' lines")
    try:
        module = GradedModule(ring, gens)
    except ValueError as exc:
        raise StructureParseError(str(exc)) from exc
    m, n = mn

    def images(kind, arity_in, arity_out):
        out = {}
        for lineno, lhs, rhs in entries[kind]:
            try:
                word = tuple(lhs.replace(" ", "").split("|"))
                if len(word) != arity_in or any(a not in module.generators for a in word):
                    raise StructureParseError(f"{lhs!r} is not a basis word of length {arity_in}")
                out[word] = module.element(rhs, arity_out)
            except (ValueError, StructureParseError) as exc:
                raise StructureParseError(f"line {lineno}: {exc}") from exc
        return out

    mu = trivial_product(module)
    delta = primitive_coproduct(module)
    try:
        if entries["mu"]:
            table = {w: Element._from_raw(module, 1, dict(r)) for w, r in mu.table.items()}
            table.update(images("mu", 2, 1))
            mu = Table(module, 2, 1, 0, table, name="μ")
        if entries["delta"]:
            table = {w: Element._from_raw(module, 2, dict(r)) for w, r in delta.table.items()}
            table.update(images("delta", 1, 2))
            delta = Table(module, 1, 2, 0, table, name="Δ")
        om = images("omega", m, n)
        omega = Table(module, m, n, _infer_degree(module, om, m + n - 3), om, name="ω")
    except DegreeError as exc:
        raise StructureParseError(str(exc)) from exc
    h = HopfStructure(module, mu, delta, omega, name=name, check=False)
    if check:
        try:
            h.check()
        except HopfStructureError as exc:
            raise StructureParseError(f"not a Hopf algebra: {exc}") from exc
    return h


def load_structure(path: str | Path, check: bool = True) -> HopfStructure:
    path = Path(path)
    return parse_structure(path.read_text(), name=path.stem, check=check)
