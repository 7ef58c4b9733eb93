"""Multilinear operations H^{⊗m} -> H^{⊗n} as values.

Evaluation follows the Koszul rule: a tensor factor of degree d that passes
over input of total degree e picks up (-1)^(d*e), and an operation of degree
d applied to x*w gives (-1)^(d*|x|) x*f(w).  Operations are evaluated lazily
per basis word; results are memoized on the (immutable) operation.
"""
from __future__ import annotations

from itertools import chain, product
from typing import Iterable, Mapping

from .algebra import Element, GradedModule, parse_element, raw_add, raw_tensor
from .errors import ArityMismatch, DegreeError, RingMismatch

# above these sizes a support is not enumerated eagerly
SUPPORT_LIMIT = 1 << 14
CANDIDATE_LIMIT = 1 << 18


class MultiOp:
    kind = "op"

    def __init__(self, module: GradedModule, inputs: int, outputs: int, degree: int, name: str):
        if inputs < 1 or outputs < 1:
            raise ValueError("operations need at least one input and one output")
        self.module = module
        self.inputs = inputs
        self.outputs = outputs
        self.degree = degree
        self.name = name
        self._cache: dict[tuple, dict] = {}
        self._support = None
        self._prefixes = None

    def __repr__(self):
        return f"<{self.kind} {self.name}: {self.inputs}->{self.outputs}, deg {self.degree}>"

    def __str__(self):
        return self.name

    # evaluation

    def _compute(self, word: tuple) -> dict:
        raise NotImplementedError

    def eval_word(self, word: tuple) -> dict:
        """Raw image of a basis word; callers must not mutate the result."""
        res = self._cache.get(word)
        if res is None:
            res = self._compute(word)
            self._cache[word] = res
        return res

    def apply_raw(self, raw: Mapping) -> dict:
        module = self.module
        p = module.ring.x_degree or 0
        flip = (self.degree * p) % 2
        z2 = module.ring.base == "Z2"
        out: dict = {}
        for (w, e), c in raw.items():
            res = self.eval_word(w)
            if not res:
                continue
            if e and flip:
                c = -c
            for (w2, e2), c2 in res.items():
                if e and e2:
                    continue
                key = (w2, e + e2)
                v = out.get(key, 0) + c * c2
                if z2:
                    v %= 2
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return out

    def apply(self, u: Element) -> Element:
        if u.module != self.module:
            raise RingMismatch("element and operation live over different modules")
        if u.arity != self.inputs:
            raise ArityMismatch(f"{self.name} takes {self.inputs} inputs, got arity {u.arity}")
        return Element._from_raw(self.module, self.outputs, self.apply_raw(u.raw))

    def __call__(self, u: Element | str) -> Element:
        if isinstance(u, str):
            u = parse_element(self.module, u, self.inputs)
        return self.apply(u)

    def on_word(self, word: tuple | str) -> Element:
        if isinstance(word, str):
            word = tuple(word.split("|"))
        if len(word) != self.inputs:
            raise ArityMismatch(f"{self.name} takes {self.inputs} inputs")
        return Element._from_raw(self.module, self.outputs, dict(self.eval_word(tuple(word))))

    # supports

    def candidates(self) -> frozenset | None:
        """A superset of the input words with nonzero image, or None for 'all'."""
        return None

    def support(self) -> frozenset | None:
        if self._support is None:
            cands = self.candidates()
            if cands is None:
                if self.module.basis_size(self.inputs) > SUPPORT_LIMIT:
                    return None
                cands = self.module.words(self.inputs)
            self._support = frozenset(w for w in cands if self.eval_word(w))
        return self._support

    def prefix_set(self) -> frozenset | None:
        if self._prefixes is None:
            sup = self.support()
            if sup is None or len(sup) == self.module.basis_size(self.inputs):
                return None
            self._prefixes = frozenset(w[:k] for w in sup for k in range(1, len(w) + 1))
        return self._prefixes

    # operator sugar: a @ b is a⊗b, a * b is a∘b

    def __matmul__(self, other: MultiOp) -> MultiOp:
        return tensor(self, other)

    def __mul__(self, other: MultiOp) -> MultiOp:
        return compose(self, other)

    def __neg__(self) -> MultiOp:
        return ScaledBy(-1, self)

    def __rmul__(self, k: int) -> MultiOp:
        return ScaledBy(k, self)

    def __add__(self, other: MultiOp) -> MultiOp:
        return Sum([(1, self), (1, other)])

    def __sub__(self, other: MultiOp) -> MultiOp:
        return Sum([(1, self), (-1, other)])


def _as_word(w) -> tuple:
    return tuple(w.split("|")) if isinstance(w, str) else tuple(w)


class Table(MultiOp):
    """Operation given by images of basis words, zero elsewhere."""

    kind = "table"

    def __init__(self, module, inputs, outputs, degree, images: Mapping, name="T"):
        super().__init__(module, inputs, outputs, degree, name)
        table: dict[tuple, dict] = {}
        for word, image in images.items():
            word = _as_word(word)
            if len(word) != inputs:
                raise ArityMismatch(f"table key {word} is not a word of length {inputs}")
            if isinstance(image, str):
                image = parse_element(module, image, outputs)
            if image.module != module:
                raise RingMismatch("table image lives over a different module")
            if image.arity != outputs:
                raise ArityMismatch(f"image of {word} has arity {image.arity}, expected {outputs}")
            if image.is_zero():
                continue
            want = module.word_degree(word) + degree
            p = module.ring.x_degree or 0
            for (w, e) in image.raw:
                if module.word_degree(w) + e * p != want:
                    raise DegreeError(
                        f"{name}({'|'.join(word)}) = {image} does not have degree {want}"
                    )
            table[word] = dict(image.raw)
        self.table = table

    def _compute(self, word):
        return self.table.get(word, {})

    def candidates(self):
        return frozenset(self.table)


class Identity(MultiOp):
    kind = "identity"

    def __init__(self, module, k: int):
        super().__init__(module, k, k, 0, "1" if k == 1 else f"1^{k}")

    def _compute(self, word):
        return {(word, 0): self.module.one()}


def koszul_permutation_sign(module: GradedModule, word: tuple, order: list[int]) -> int:
    """Sign of reordering ``word`` so that position order[i] lands at i."""
    degs = [module.generators.degree(word[i]) for i in order]
    odd = 0
    for a in range(len(order)):
        if degs[a] % 2 == 0:
            continue
        for b in range(a + 1, len(order)):
            if order[b] < order[a] and degs[b] % 2:
                odd ^= 1
    return -1 if odd else 1


class Sigma(MultiOp):
    """Block transpose (H^{⊗q})^{⊗p} -> (H^{⊗p})^{⊗q} with Koszul signs."""

    kind = "sigma"

    def __init__(self, module, q: int, p: int):
        super().__init__(module, q * p, q * p, 0, f"σ_{{{q},{p}}}")
        self.q = q
        self.p = p
        # output position j*p + i takes input block i, slot j
        self.order = [i * q + j for j in range(q) for i in range(p)]

    def _compute(self, word):
        out = tuple(word[k] for k in self.order)
        sign = koszul_permutation_sign(self.module, word, self.order)
        return {(out, 0): self.module.reduce(self.module.one() * sign)}


def _check_same_module(ops):
    module = ops[0].module
    for op in ops[1:]:
        if op.module != module:
            raise RingMismatch("operations live over different modules")
    return module


def tensor_eval(module: GradedModule, factors, word: tuple) -> dict:
    results = []
    pos = 0
    deg_before = 0
    flips = 0
    for f in factors:
        seg = word[pos:pos + f.inputs]
        pos += f.inputs
        res = f.eval_word(seg)
        if not res:
            return {}
        if f.degree % 2 and deg_before % 2:
            flips ^= 1
        deg_before += module.word_degree(seg)
        results.append(res)
    acc = results[0]
    for res in results[1:]:
        acc = raw_tensor(module, acc, res)
        if not acc:
            return {}
    if flips:
        acc = {k: module.reduce(-c) for k, c in acc.items()}
    elif len(results) == 1:
        acc = dict(acc)
    return acc


class Tensor(MultiOp):
    kind = "tensor"

    def __init__(self, factors: Iterable[MultiOp]):
        flat: list[MultiOp] = []
        for f in factors:
            flat.extend(f.factors if isinstance(f, Tensor) else [f])
        if not flat:
            raise ValueError("empty tensor product")
        module = _check_same_module(flat)
        super().__init__(
            module,
            sum(f.inputs for f in flat),
            sum(f.outputs for f in flat),
            sum(f.degree for f in flat),
            "⊗".join(_paren(f) for f in flat),
        )
        self.factors = tuple(flat)

    def _compute(self, word):
        return tensor_eval(self.module, self.factors, word)

    def candidates(self):
        parts = []
        size = 1
        for f in self.factors:
            c = f.candidates()
            if c is None:
                if self.module.basis_size(f.inputs) > CANDIDATE_LIMIT:
                    return None
                c = list(self.module.words(f.inputs))
            size *= len(c)
            if size > CANDIDATE_LIMIT:
                return None
            parts.append(c)
        return frozenset(tuple(chain.from_iterable(ws)) for ws in product(*parts))


def _paren(op: MultiOp) -> str:
    return f"({op.name})" if op.kind in ("compose", "sum") else op.name


class Compose(MultiOp):
    """``stages[0] ∘ stages[1] ∘ ...``; the last stage is applied first."""

    kind = "compose"

    def __init__(self, stages: Iterable[MultiOp]):
        flat: list[MultiOp] = []
        for s in stages:
            flat.extend(s.stages if isinstance(s, Compose) else [s])
        if not flat:
            raise ValueError("empty composition")
        module = _check_same_module(flat)
        for a, b in zip(flat, flat[1:]):
            if a.inputs != b.outputs:
                raise ArityMismatch(
                    f"cannot compose {a.name} ({a.inputs} inputs) after {b.name} ({b.outputs} outputs)"
                )
        super().__init__(
            module, flat[-1].inputs, flat[0].outputs,
            sum(s.degree for s in flat), "∘".join(_paren(s) for s in flat),
        )
        self.stages = tuple(flat)
        self._fraction = self._fraction_shape()

    def _fraction_shape(self):
        if len(self.stages) != 3:
            return False
        outer, sig, inner = self.stages
        if not isinstance(sig, Sigma):
            return False
        inner_factors = inner.factors if isinstance(inner, Tensor) else (inner,)
        outer_factors = outer.factors if isinstance(outer, Tensor) else (outer,)
        return (
            len(inner_factors) == sig.p
            and all(a.outputs == sig.q for a in inner_factors)
            and len(outer_factors) == sig.q
            and all(b.inputs == sig.p for b in outer_factors)
        )

    def _compute(self, word):
        if self._fraction:
            return self._contract(word)
        cur = {(word, 0): self.module.one()}
        for op in reversed(self.stages):
            cur = op.apply_raw(cur)
            if not cur:
                break
        return cur

    def _contract(self, word):
        outer, sig, inner = self.stages
        inner_factors = inner.factors if isinstance(inner, Tensor) else (inner,)
        outer_factors = outer.factors if isinstance(outer, Tensor) else (outer,)
        prefixes = [b.prefix_set() for b in outer_factors]
        module = self.module
        p = module.ring.x_degree or 0
        flip = (outer.degree * p) % 2
        z2 = module.ring.base == "Z2"
        out: dict = {}
        for e, c, columns in fraction_leaves(module, inner_factors, sig.q, prefixes, word):
            res = outer.eval_word(tuple(chain.from_iterable(columns)))
            if not res:
                continue
            if e and flip:
                c = -c
            for (w2, e2), c2 in res.items():
                if e and e2:
                    continue
                key = (w2, e + e2)
                v = out.get(key, 0) + c * c2
                if z2:
                    v %= 2
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return out

    def candidates(self):
        return self.stages[-1].candidates()


def fraction_leaves(module: GradedModule, inner_factors, q: int, prefixes, word: tuple):
    """Expand (A_1⊗…⊗A_p)(word) row by row and block-transpose it.

    Yields ``(e, c, columns)`` where ``columns[j]`` is the input word of the
    j-th outer factor and ``c * x^e`` carries every sign picked up on the
    way (inner Koszul signs, x factoring, the permutation sign).  Branches
    whose partial column is not a prefix of the j-th outer support are
    dropped; they contribute exactly zero.
    """
    p = module.ring.x_degree or 0
    rows = []
    pos = 0
    deg_before = 0
    sign0 = 1
    for a in inner_factors:
        seg = word[pos:pos + a.inputs]
        pos += a.inputs
        res = a.eval_word(seg)
        if not res:
            return
        if a.degree % 2 and deg_before % 2:
            sign0 = -sign0
        deg_before += module.word_degree(seg)
        rows.append([(w, e, c, module.letter_degrees(w)) for (w, e), c in res.items()])
    nrows = len(rows)
    checks = [(j, pre) for j, pre in enumerate(prefixes) if pre is not None]

    def dfs(i, e, c, columns, colsum, total_deg):
        if i == nrows:
            yield e, c, columns
            return
        for w, e_i, c_i, degs in rows[i]:
            if e and e_i:
                continue
            new_cols = tuple(col + (w[j],) for j, col in enumerate(columns))
            if any(new_cols[j] not in pre for j, pre in checks):
                continue
            s = c * c_i
            if e_i and (p * total_deg) % 2:
                s = -s
            odd = 0
            suffix = 0
            for j in range(q - 1, -1, -1):
                odd += degs[j] * suffix
                suffix += colsum[j]
            if odd % 2:
                s = -s
            yield from dfs(
                i + 1, e + e_i, s, new_cols,
                tuple(a + b for a, b in zip(colsum, degs)),
                total_deg + sum(degs),
            )

    start = tuple(() for _ in range(q))
    yield from dfs(0, 0, sign0, start, (0,) * q, 0)


class ScaledBy(MultiOp):
    kind = "scaled"

    def __init__(self, sign: int, op: MultiOp):
        name = op.name if sign == 1 else ("-" if sign == -1 else f"{sign}") + _paren(op)
        super().__init__(op.module, op.inputs, op.outputs, op.degree, name)
        self.sign = sign
        self.op = op

    def _compute(self, word):
        res = self.op.eval_word(word)
        return raw_add(self.module, {}, res, self.sign)

    def candidates(self):
        return self.op.candidates()


class Sum(MultiOp):
    """Integer linear combination of operations with equal signature."""

    kind = "sum"

    def __init__(self, terms: Iterable[tuple[int, MultiOp]], like: MultiOp | None = None,
                 shape: tuple | None = None):
        terms = [(k, op) for k, op in terms]
        if terms:
            module = _check_same_module([op for _, op in terms])
            sig = {(op.inputs, op.outputs, op.degree) for _, op in terms}
            if len(sig) != 1:
                raise ArityMismatch(f"summands have different signatures: {sorted(sig)}")
            inputs, outputs, degree = sig.pop()
        elif like is not None:
            module, inputs, outputs, degree = like.module, like.inputs, like.outputs, like.degree
        elif shape is not None:
            module, inputs, outputs, degree = shape
        else:
            raise ValueError("an empty sum needs a signature")
        name = ""
        for k, op in terms:
            piece = _paren(op)
            mag = abs(k)
            piece = piece if mag == 1 else f"{mag}{piece}"
            if not name:
                name = ("-" if k < 0 else "") + piece
            else:
                name += (" - " if k < 0 else " + ") + piece
        super().__init__(module, inputs, outputs, degree, name or "0")
        self.terms = tuple(terms)

    def _compute(self, word):
        out: dict = {}
        for k, op in self.terms:
            raw_add(self.module, out, op.eval_word(word), k)
        return out

    def candidates(self):
        acc = set()
        for _, op in self.terms:
            c = op.candidates()
            if c is None:
                return None
            acc |= c
        return frozenset(acc)


def zero_op(module: GradedModule, inputs: int, outputs: int, degree: int = 0) -> Sum:
    return Sum([], shape=(module, inputs, outputs, degree))


# constructors


def identity(module: GradedModule, k: int) -> Identity:
    return Identity(module, k)


def sigma(module: GradedModule, q: int, p: int) -> Sigma:
    return Sigma(module, q, p)


def tensor(*ops: MultiOp) -> MultiOp:
    return ops[0] if len(ops) == 1 else Tensor(ops)


def tensor_power(op: MultiOp, k: int) -> MultiOp:
    return tensor(*([op] * k))


def compose(*ops: MultiOp) -> MultiOp:
    return ops[0] if len(ops) == 1 else Compose(ops)


def fraction(outer: Iterable[MultiOp], inner: Iterable[MultiOp]) -> MultiOp:
    """(B_1⊗…⊗B_q) ∘ σ_{q,p} ∘ (A_1⊗…⊗A_p), outputs of each A_i feeding the B's."""
    outer = list(outer)
    inner = list(inner)
    q, p = len(outer), len(inner)
    if any(a.outputs != q for a in inner):
        raise ArityMismatch("every inner factor needs one output per outer factor")
    if any(b.inputs != p for b in outer):
        raise ArityMismatch("every outer factor needs one input per inner factor")
    return Compose([Tensor(outer), Sigma(inner[0].module, q, p), Tensor(inner)])


def in_slot(op: MultiOp, left: int, right: int) -> MultiOp:
    """1^{⊗left} ⊗ op ⊗ 1^{⊗right}."""
    parts = []
    if left:
        parts.append(Identity(op.module, left))
    parts.append(op)
    if right:
        parts.append(Identity(op.module, right))
    return tensor(*parts)


def iterated_coproduct(delta: MultiOp, n: int, side: str = "left") -> MultiOp:
    """f^n: the (n-1)-fold iterated coproduct."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return Identity(delta.module, 1)
    if n == 2:
        return delta
    stages = []
    for k in range(n - 2, 0, -1):
        stages.append(in_slot(delta, 0, k) if side == "left" else in_slot(delta, k, 0))
    stages.append(delta)
    op = compose(*stages)
    op.name = f"f{n}"
    return op


def iterated_product(mu: MultiOp, m: int, side: str = "left") -> MultiOp:
    """g_m: the (m-1)-fold iterated product."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if m == 1:
        return Identity(mu.module, 1)
    if m == 2:
        return mu
    stages = [mu]
    for k in range(1, m - 1):
        stages.append(in_slot(mu, 0, k) if side == "left" else in_slot(mu, k, 0))
    op = compose(*stages)
    op.name = f"g{m}"
    return op


def cobar_component(delta: MultiOp, k: int) -> MultiOp:
    """δ^k = Σ_{i=1}^k (-1)^{i+1} 1^{i-1}⊗Δ⊗1^{k-i}."""
    if k < 1:
        raise ValueError("k must be >= 1")
    op = Sum([((-1) ** (i + 1), in_slot(delta, i - 1, k - i)) for i in range(1, k + 1)])
    op.name = f"δ{k}"
    return op


def bar_component(mu: MultiOp, k: int, sign: int = 1) -> MultiOp:
    """∂_k = sign * Σ_{i=1}^k (-1)^{i+1} 1^{i-1}⊗μ⊗1^{k-i}."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    op = Sum([(sign * (-1) ** (i + 1), in_slot(mu, i - 1, k - i)) for i in range(1, k + 1)])
    op.name = f"∂{k}"
    return op


def signed_power(op: MultiOp, k: int) -> MultiOp:
    """(-1)^⌊(k+1)/2⌋ μ^{⊗k} for a product, (-1)^⌊k/2⌋ Δ^{⊗k} for a coproduct."""
    if (op.inputs, op.outputs) == (2, 1):
        s = (-1) ** ((k + 1) // 2)
    elif (op.inputs, op.outputs) == (1, 2):
        s = (-1) ** (k // 2)
    else:
        raise ArityMismatch("signed_power needs a product (2->1) or a coproduct (1->2)")
    power = tensor_power(op, k)
    return power if s == 1 else ScaledBy(-1, power)


def op_equal(a: MultiOp, b: MultiOp) -> bool:
    if (a.inputs, a.outputs) != (b.inputs, b.outputs):
        raise ArityMismatch(f"{a.name} and {b.name} have different arities")
    if a.module != b.module:
        raise RingMismatch("operations live over different modules")
    return first_difference(a, b) is None


def first_difference(a: MultiOp, b: MultiOp):
    """Smallest basis word (canonical order) where a and b differ, else None."""
    ca, cb = a.candidates(), b.candidates()
    if ca is None or cb is None:
        words = a.module.words(a.inputs)
    else:
        words = sorted(ca | cb, key=a.module.word_key)
    for w in words:
        if a.eval_word(w) != b.eval_word(w):
            return w
    return None


def is_zero_op(op: MultiOp) -> bool:
    return op_equal(op, zero_op(op.module, op.inputs, op.outputs, op.degree))
