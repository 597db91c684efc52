"""Necessary-condition checks on a decomposition of a subgroup.

A subgroup of a free product is presented as a free rank plus a list of
parts (factor index, subgroup of that factor, conjugator).  The checks are
necessary for the subgroup to be verbally closed, never sufficient, so a
passing verdict is always reported as inconclusive:

  condition 1: the free rank is zero;
  condition 2: no two same-factor parts admit a common "cyclic witness"
      f with f^k1 nontrivial in one subgroup and f^k2 nontrivial in a
      conjugate of the other;
  condition 3: the k1 = k2 = 1 slice of condition 2 (pairwise trivial
      intersections H_1 and g H_2 g^-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    BadFactorIndexError,
    GroupError,
    MixedAmbientError,
    NotASubgroupError,
    TrivialSubgroupError,
)
from .free_product import FPElement, FreeProduct

CONDITION1 = "condition1"
CONDITION2 = "condition2"


@dataclass(frozen=True)
class Part:
    """One conjugated-subgroup part: subgroup of factors[factor], conjugated
    by an arbitrary ambient element."""

    factor: int
    subgroup: tuple[int, ...]
    conjugator: FPElement

    @classmethod
    def of(
        cls, ambient: FreeProduct, factor: int, gens: Iterable[int], conj: FPElement | None = None
    ) -> Part:
        sub = ambient.factors[factor].generated_subgroup(gens)
        return cls(factor, sub, conj if conj is not None else ambient.identity())


@dataclass(frozen=True)
class KuroshData:
    """A subgroup given by free rank + parts; the optional free basis is
    documentation only and plays no role in the checks."""

    ambient: FreeProduct
    free_rank: int
    parts: tuple[Part, ...]
    free_basis: tuple[FPElement, ...] = ()


@dataclass(frozen=True)
class Violation:
    """A failed necessary condition with a re-verifiable witness.

    For condition 2 the witness means: witness_f^k1 is a nontrivial element
    of part j1's subgroup, and witness_f^k2 is a nontrivial element of
    witness_g * (part j2's subgroup) * witness_g^-1, all inside factor
    ``factor``.  Condition 3 findings are reported as the k1 = k2 = 1 case.
    """

    kind: str
    factor: int | None = None
    part_indices: tuple[int, int] | None = None
    witness_f: int | None = None
    witness_g: int | None = None
    k1: int | None = None
    k2: int | None = None
    free_rank: int | None = None

    def describe(self, ambient: FreeProduct) -> str:
        if self.kind == CONDITION1:
            return f"free part has rank {self.free_rank}, expected 0"
        g = ambient.factors[self.factor]
        fw = " ".join(g.element_words[self.witness_f]) or "1"
        gw = " ".join(g.element_words[self.witness_g]) or "1"
        j1, j2 = self.part_indices
        return (
            f"parts {j1} and {j2} in factor {self.factor}: "
            f"f = {fw} with f^{self.k1} in part {j1} and f^{self.k2} in "
            f"conjugate of part {j2} by g = {gw}"
        )


@dataclass(frozen=True)
class Verdict:
    """Outcome of check_all; passing is always inconclusive because the
    conditions are necessary, not sufficient."""

    violations: tuple[Violation, ...]

    @property
    def passes_necessary(self) -> bool:
        return not self.violations

    @property
    def inconclusive(self) -> bool:
        return self.passes_necessary


def validate(data: KuroshData) -> list[GroupError]:
    """Collect every Part invariant violation (empty list means ok)."""
    errors: list[GroupError] = []
    n = len(data.ambient.factors)
    if data.free_rank < 0:
        errors.append(GroupError("free_rank must be nonnegative"))
    if not data.parts and data.free_rank == 0:
        errors.append(GroupError("decomposition has no parts and no free part"))
    for j, part in enumerate(data.parts):
        if not 0 <= part.factor < n:
            errors.append(BadFactorIndexError(f"part {j}: factor {part.factor} out of range"))
            continue
        g = data.ambient.factors[part.factor]
        try:
            ok = g.is_subgroup(part.subgroup)
        except GroupError as exc:
            errors.append(exc)
            continue
        if not ok:
            errors.append(NotASubgroupError(f"part {j}: {list(part.subgroup)} is not a subgroup"))
        elif len(set(part.subgroup)) < 2:
            errors.append(TrivialSubgroupError(f"part {j}: subgroup is trivial"))
        if not isinstance(part.conjugator, FPElement) or part.conjugator.group is not data.ambient:
            errors.append(MixedAmbientError(f"part {j}: conjugator not in the ambient group"))
    for basis_elem in data.free_basis:
        if basis_elem.group is not data.ambient:
            errors.append(MixedAmbientError("free basis element not in the ambient group"))
    return errors


def _require_valid(data: KuroshData) -> None:
    errors = validate(data)
    if errors:
        raise errors[0]


def check_condition1(data: KuroshData) -> Violation | None:
    _require_valid(data)
    if data.free_rank == 0:
        return None
    return Violation(kind=CONDITION1, free_rank=data.free_rank)


def _powers(group, f: int) -> list[int]:
    # powers[k] = f^k for k = 0 .. order(f); index 0 unused by the scans.
    out = [0]
    x = f
    while True:
        out.append(x)
        if x == 0:
            return out
        x = group.table[x][f]


def _first_power_in(powers: Sequence[int], target: set[int]) -> int | None:
    for k in range(1, len(powers)):
        if powers[k] != 0 and powers[k] in target:
            return k
    return None


def _pair_witness(group, sub1: Sequence[int], sub2: Sequence[int]):
    """First (f, g, k1, k2) in scan order with f^k1 in sub1 \\ {1} and
    f^k2 in g sub2 g^-1 \\ {1}; None when the pair is clean."""
    set1 = set(sub1)
    for f in range(1, group.order):
        powers = _powers(group, f)
        k1 = _first_power_in(powers, set1)
        if k1 is None:
            continue
        for g in range(group.order):
            gi = group.inverses[g]
            conj = {group.table[group.table[g][h]][gi] for h in sub2}
            k2 = _first_power_in(powers, conj)
            if k2 is not None:
                return f, g, k1, k2
    return None


def check_condition2(data: KuroshData) -> list[Violation]:
    """One violation (first witness in scan order) per ordered same-factor
    pair of distinct part positions that admits a common cyclic witness."""
    _require_valid(data)
    out: list[Violation] = []
    for j1, p1 in enumerate(data.parts):
        for j2, p2 in enumerate(data.parts):
            if j1 == j2 or p1.factor != p2.factor:
                continue
            group = data.ambient.factors[p1.factor]
            found = _pair_witness(group, p1.subgroup, p2.subgroup)
            if found:
                f, g, k1, k2 = found
                out.append(
                    Violation(
                        kind=CONDITION2,
                        factor=p1.factor,
                        part_indices=(j1, j2),
                        witness_f=f,
                        witness_g=g,
                        k1=k1,
                        k2=k2,
                    )
                )
    return out


def check_condition3(data: KuroshData) -> list[Violation]:
    """Trivial-intersection check: for every ordered same-factor pair and
    every g in the factor, part1 meets g part2 g^-1 trivially.  Violations
    are the k1 = k2 = 1 slice of condition 2."""
    _require_valid(data)
    out: list[Violation] = []
    for j1, p1 in enumerate(data.parts):
        for j2, p2 in enumerate(data.parts):
            if j1 == j2 or p1.factor != p2.factor:
                continue
            group = data.ambient.factors[p1.factor]
            set1 = set(p1.subgroup)
            for g in range(group.order):
                gi = group.inverses[g]
                conj = {group.table[group.table[g][h]][gi] for h in p2.subgroup}
                meet = sorted((set1 & conj) - {0})
                if meet:
                    out.append(
                        Violation(
                            kind=CONDITION2,
                            factor=p1.factor,
                            part_indices=(j1, j2),
                            witness_f=meet[0],
                            witness_g=g,
                            k1=1,
                            k2=1,
                        )
                    )
                    break
    return out


def check_all(data: KuroshData) -> Verdict:
    """Run conditions 1 and 2 (condition 3 is a special case of 2)."""
    violations: list[Violation] = []
    v1 = check_condition1(data)
    if v1:
        violations.append(v1)
    violations.extend(check_condition2(data))
    return Verdict(tuple(violations))
