"""Canonical normal forms and algebra in a free product of finite groups.

An element is a reduced alternating sequence of syllables; a syllable is a
pair (factor_index, element_id) with a nonidentity element.  The reduced
sequence is the unique canonical representative, so syllable-sequence
equality is the equality oracle for the whole group.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    BadFactorIndexError,
    DuplicateLabelError,
    MixedAmbientError,
    NotASubgroupError,
    OrderTooSmallError,
    TrivialSubgroupError,
    UnknownGeneratorError,
)
from .finite_group import FiniteGroup

#: Returned by FPElement.order() for elements of infinite order.
INFINITE = math.inf

#: A syllable is a plain (factor_index, element_id) pair.
Syllable = tuple[int, int]


class FreeProduct:
    """Ambient group G = G_0 * ... * G_{n-1} with a generator namespace.

    Generator labels must be unique across all factors; each label denotes
    one element of one factor.
    """

    __slots__ = ("factors", "generator_map", "name", "__weakref__")

    def __init__(self, factors: Sequence[FiniteGroup], name: str | None = None):
        factors = tuple(factors)
        if not factors:
            raise BadFactorIndexError("a free product needs at least one factor")
        for g in factors:
            if g.order < 2:
                raise OrderTooSmallError(f"factor {g.name} is trivial")
        gen_map: dict[str, tuple[int, int]] = {}
        for i, g in enumerate(factors):
            for label, e in g.generators:
                if label in gen_map:
                    raise DuplicateLabelError(f"label {label!r} used by two factors")
                gen_map[label] = (i, e)
        self.factors = factors
        self.generator_map = gen_map
        self.name = name or " * ".join(g.name for g in factors)

    def __repr__(self) -> str:
        return f"FreeProduct({self.name!r})"

    @property
    def generator_labels(self) -> tuple[str, ...]:
        return tuple(self.generator_map)

    def identity(self) -> FPElement:
        return FPElement(self, ())

    def generator(self, label: str) -> FPElement:
        if label not in self.generator_map:
            raise UnknownGeneratorError(f"unknown generator {label!r} in {self.name}")
        i, e = self.generator_map[label]
        return FPElement(self, ((i, e),))

    def factor_element(self, factor: int, elem: int) -> FPElement:
        self._check_factor(factor)
        self.factors[factor].check_element(elem)
        return FPElement(self, ((factor, elem),)) if elem else FPElement(self, ())

    def element(self, pairs: Iterable[tuple[int, int]]) -> FPElement:
        """Normal form of a raw syllable sequence.

        Identity syllables are dropped, adjacent same-factor syllables are
        merged through the factor's table, repeating until stable.
        """
        out: list[tuple[int, int]] = []
        factors = self.factors
        n = len(factors)
        for f, e in pairs:
            if not isinstance(f, int) or not 0 <= f < n:
                raise BadFactorIndexError(f"factor index {f!r} out of range")
            factors[f].check_element(e)
            if e == 0:
                continue
            if out and out[-1][0] == f:
                m = factors[f].table[out[-1][1]][e]
                if m == 0:
                    out.pop()
                else:
                    out[-1] = (f, m)
            else:
                out.append((f, e))
        return FPElement(self, tuple(out))

    def _check_factor(self, i: int) -> None:
        if not isinstance(i, int) or not 0 <= i < len(self.factors):
            raise BadFactorIndexError(f"factor index {i!r} out of range")


class FPElement:
    """An element of a FreeProduct in canonical normal form.

    Immutable; construct through FreeProduct methods or the arithmetic
    operators, never by mutating ``syllables``.
    """

    __slots__ = ("group", "syllables")

    def __init__(self, group: FreeProduct, syllables: tuple[tuple[int, int], ...]):
        self.group = group
        self.syllables = syllables

    # -- equality is normal-form equality within one ambient group --------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FPElement):
            return NotImplemented
        return self.group is other.group and self.syllables == other.syllables

    def __hash__(self) -> int:
        return hash(self.syllables)

    @property
    def norm(self) -> int:
        """Syllable length of the normal form; the identity has norm 0."""
        return len(self.syllables)

    @property
    def is_identity(self) -> bool:
        return not self.syllables

    def _require_same_group(self, other: FPElement) -> None:
        if not isinstance(other, FPElement) or other.group is not self.group:
            raise MixedAmbientError("elements live in different ambient groups")

    def __mul__(self, other: FPElement) -> FPElement:
        if not isinstance(other, FPElement):
            return NotImplemented
        self._require_same_group(other)
        # Both sides are reduced, so cancellation happens only at the seam.
        a = list(self.syllables)
        b = other.syllables
        factors = self.group.factors
        i, n = 0, len(b)
        while a and i < n:
            f, e = b[i]
            lf, le = a[-1]
            if lf != f:
                break
            m = factors[f].table[le][e]
            i += 1
            if m:
                a[-1] = (f, m)
                break
            a.pop()
        a.extend(b[i:])
        return FPElement(self.group, tuple(a))

    def inverse(self) -> FPElement:
        factors = self.group.factors
        return FPElement(
            self.group,
            tuple((f, factors[f].inverses[e]) for f, e in reversed(self.syllables)),
        )

    def __invert__(self) -> FPElement:
        return self.inverse()

    def power(self, k: int) -> FPElement:
        """k-th power by square-and-multiply on normal forms."""
        if k < 0:
            return self.inverse().power(-k)
        out = FPElement(self.group, ())
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __pow__(self, k: int) -> FPElement:
        return self.power(k)

    def conjugate(self, g: FPElement) -> FPElement:
        """g * self * g^-1 (the value written self^g)."""
        self._require_same_group(g)
        return g * self * g.inverse()

    def commutes_with(self, other: FPElement) -> bool:
        return self * other == other * self

    def cyclic_reduce(self) -> CyclicReduction:
        """Split as conjugator * core * conjugator^-1 with the core
        cyclically reduced.

        Deterministic: while the first and last syllables share a factor,
        the first syllable is conjugated off the front (merging it into the
        tail).  Any conjugator differing by a power of the core would be
        equally valid; this one is pinned so results are reproducible.
        """
        syl = list(self.syllables)
        conj: list[tuple[int, int]] = []
        factors = self.group.factors
        while len(syl) >= 2 and syl[0][0] == syl[-1][0]:
            f, e = syl.pop(0)
            conj.append((f, e))
            lf, le = syl[-1]
            m = factors[f].table[le][e]
            if m == 0:
                syl.pop()
            else:
                syl[-1] = (f, m)
        return CyclicReduction(
            FPElement(self.group, tuple(conj)), FPElement(self.group, tuple(syl))
        )

    def order(self) -> int | float:
        """Order of the element; INFINITE when the cyclic core has norm >= 2."""
        core = self.cyclic_reduce().core
        if core.norm == 0:
            return 1
        if core.norm == 1:
            f, e = core.syllables[0]
            return self.group.factors[f].element_order(e)
        return INFINITE

    # -- rendering ---------------------------------------------------------

    def as_word(self) -> str:
        """Generator-power word, e.g. ``a b^2 a``; the identity is ``1``.

        Reparses to the identical normal form (each label binds to one
        factor, so the rendering is unambiguous).
        """
        if not self.syllables:
            return "1"
        labels: list[str] = []
        for f, e in self.syllables:
            labels.extend(self.group.factors[f].element_words[e])
        parts: list[str] = []
        i = 0
        while i < len(labels):
            j = i
            while j < len(labels) and labels[j] == labels[i]:
                j += 1
            parts.append(labels[i] if j - i == 1 else f"{labels[i]}^{j - i}")
            i = j
        return " ".join(parts)

    def __str__(self) -> str:
        return self.as_word()

    def __repr__(self) -> str:
        return f"<{self.as_word()}>"


@dataclass(frozen=True)
class CyclicReduction:
    """Result of cyclic reduction: original = conjugator * core * conjugator^-1."""

    conjugator: FPElement
    core: FPElement

    def rebuild(self) -> FPElement:
        return self.conjugator * self.core * self.conjugator.inverse()


def enumerate_ball(
    group: FreeProduct,
    parts: Sequence[tuple[int, Iterable[int], FPElement]],
    depth: int,
) -> list[FPElement]:
    """All products of up to ``depth`` nontrivial part elements.

    Each part is (factor index, subgroup id set, conjugator); its elements
    are conjugator * h * conjugator^-1 for nonidentity h.  Consecutive
    elements of a product must come from different parts.  Results are
    normal forms, deduplicated (first occurrence wins) and returned in
    length-lexicographic order of the (part, element) index sequences, so
    the output is correct even when the parts fail to generate an actual
    free product.
    """
    part_elems: list[list[FPElement]] = []
    for factor, subgroup, conj in parts:
        group._check_factor(factor)
        g = group.factors[factor]
        sub = tuple(sorted(set(subgroup)))
        if not g.is_subgroup(sub):
            raise NotASubgroupError(f"{list(sub)} is not a subgroup of factor {factor}")
        if len(sub) < 2:
            raise TrivialSubgroupError("ball parts must be nontrivial subgroups")
        if not isinstance(conj, FPElement) or conj.group is not group:
            raise MixedAmbientError("part conjugator must be an ambient element")
        cinv = conj.inverse()
        part_elems.append(
            [conj * group.factor_element(factor, h) * cinv for h in sub if h != 0]
        )

    identity = group.identity()
    seen = {identity.syllables}
    out = [identity]
    level: list[tuple[int, FPElement]] = [(-1, identity)]
    for _ in range(depth):
        nxt: list[tuple[int, FPElement]] = []
        for last, value in level:
            for pi, elems in enumerate(part_elems):
                if pi == last:
                    continue
                for t in elems:
                    v = value * t
                    nxt.append((pi, v))
                    if v.syllables not in seen:
                        seen.add(v.syllables)
                        out.append(v)
        level = nxt
    return out
