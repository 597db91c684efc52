"""Finite groups as validated Cayley tables.

Elements are integer ids in [0, order); id 0 is always the identity
(constructors relabel to enforce this).  Tables are validated eagerly:
Latin square, identity, inverses, associativity and generator closure are
all checked at construction time, which is O(order^3) and cheap at the
group sizes this package works with.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    DuplicateLabelError,
    ForeignElementError,
    GeneratorsDoNotGenerateError,
    InvalidLabelError,
    NoIdentityError,
    NotAssociativeError,
    NotASubgroupError,
    NotLatinSquareError,
    OrderTooSmallError,
)

_LABEL_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_VARIABLE_RE = re.compile(r"x[0-9]+")


def _check_label(label: str) -> None:
    if not _LABEL_RE.fullmatch(label):
        raise InvalidLabelError(f"bad generator label {label!r}")
    if _VARIABLE_RE.fullmatch(label):
        raise InvalidLabelError(f"label {label!r} is reserved for variables")


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its Cayley table.

    table[x][y] is the id of x*y.  Identity is id 0.  Instances are
    immutable and compared by identity: elements of two structurally equal
    groups are still foreign to each other.
    """

    name: str
    table: tuple[tuple[int, ...], ...]
    inverses: tuple[int, ...]
    generators: tuple[tuple[str, int], ...]

    def __eq__(self, other: object) -> bool:
        return self is other

    def __hash__(self) -> int:
        return id(self)

    @property
    def order(self) -> int:
        return len(self.table)

    def elements(self) -> range:
        return range(self.order)

    def check_element(self, x: int) -> int:
        if not isinstance(x, int) or not 0 <= x < self.order:
            raise ForeignElementError(f"{x!r} is not an element id of {self.name}")
        return x

    def mul(self, x: int, y: int) -> int:
        self.check_element(x)
        self.check_element(y)
        return self.table[x][y]

    def inv(self, x: int) -> int:
        self.check_element(x)
        return self.inverses[x]

    def power(self, x: int, k: int) -> int:
        self.check_element(x)
        if k < 0:
            x, k = self.inverses[x], -k
        out, base = 0, x
        while k:
            if k & 1:
                out = self.table[out][base]
            base = self.table[base][base]
            k >>= 1
        return out

    def element_order(self, x: int) -> int:
        """Least k >= 1 with x^k = identity."""
        self.check_element(x)
        k, y = 1, x
        while y != 0:
            y = self.table[y][x]
            k += 1
        return k

    def generated_subgroup(self, gens: Iterable[int]) -> tuple[int, ...]:
        """Closure of gens under multiplication, as a sorted id tuple.

        Always contains the identity.  Inverses come for free in a finite
        group (x^-1 is a positive power of x).
        """
        seed = [self.check_element(g) for g in gens]
        seen = {0}
        frontier = [0]
        gens_set = sorted(set(seed))
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens_set:
                    y = self.table[x][g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(seen))

    def is_subgroup(self, ids: Iterable[int]) -> bool:
        s = set(ids)
        if 0 not in s:
            return False
        for x in s:
            self.check_element(x)
            if self.inverses[x] not in s:
                return False
            for y in s:
                if self.table[x][y] not in s:
                    return False
        return True

    def conjugate_subgroup(self, subgroup: Iterable[int], g: int) -> tuple[int, ...]:
        """{g*h*g^-1 : h in subgroup}, sorted; requires an actual subgroup."""
        sub = tuple(subgroup)
        if not self.is_subgroup(sub):
            raise NotASubgroupError(f"{sorted(sub)} is not a subgroup of {self.name}")
        self.check_element(g)
        gi = self.inverses[g]
        return tuple(sorted(self.table[self.table[g][h]][gi] for h in sub))

    @cached_property
    def element_words(self) -> tuple[tuple[str, ...], ...]:
        """Shortest generator word for every element (BFS, deterministic)."""
        words: dict[int, tuple[str, ...]] = {0: ()}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for label, g in self.generators:
                    y = self.table[x][g]
                    if y not in words:
                        words[y] = words[x] + (label,)
                        nxt.append(y)
            frontier = nxt
        return tuple(words[x] for x in range(self.order))

    def relabeled(self, labels: Sequence[str]) -> FiniteGroup:
        """Same group with generator labels replaced, in declaration order."""
        if len(labels) != len(self.generators):
            raise InvalidLabelError(
                f"{self.name} has {len(self.generators)} generators, got {len(labels)} labels"
            )
        for label in labels:
            _check_label(label)
        if len(set(labels)) != len(labels):
            raise DuplicateLabelError(f"duplicate labels in {list(labels)}")
        gens = tuple((lab, g) for lab, (_, g) in zip(labels, self.generators))
        return FiniteGroup(self.name, self.table, self.inverses, gens)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"


def _validate_table(rows: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    n = len(rows)
    if n < 2:
        raise OrderTooSmallError("group order must be at least 2")
    table = tuple(tuple(row) for row in rows)
    ids = list(range(n))
    for i, row in enumerate(table):
        if len(row) != n or sorted(row) != ids:
            raise NotLatinSquareError(f"row {i} is not a permutation of 0..{n - 1}")
    for j in range(n):
        if sorted(row[j] for row in table) != ids:
            raise NotLatinSquareError(f"column {j} is not a permutation of 0..{n - 1}")
    return table


def _find_identity(table: tuple[tuple[int, ...], ...]) -> int:
    n = len(table)
    for e in range(n):
        if all(table[e][x] == x and table[x][e] == x for x in range(n)):
            return e
    raise NoIdentityError("table has no two-sided identity")


def _relabel_identity_first(
    table: tuple[tuple[int, ...], ...], e: int
) -> tuple[tuple[int, ...], ...]:
    # Swap ids 0 <-> e; the transposition is its own inverse.
    n = len(table)
    p = list(range(n))
    p[0], p[e] = e, 0
    return tuple(tuple(p[table[p[i]][p[j]]] for j in range(n)) for i in range(n))


def from_cayley_table(
    rows: Sequence[Sequence[int]],
    generators: Sequence[tuple[str, int]],
    name: str = "G",
) -> FiniteGroup:
    """Build a validated group from an explicit table.

    The identity is relabelled to id 0 if necessary; generator ids refer to
    the *input* table and are remapped along with it.
    """
    table = _validate_table(rows)
    n = len(table)
    e = _find_identity(table)
    remap = list(range(n))
    if e != 0:
        remap[0], remap[e] = e, 0
        table = _relabel_identity_first(table, e)

    for x in range(n):
        for y in range(n):
            xy = table[x][y]
            for z in range(n):
                if table[xy][z] != table[x][table[y][z]]:
                    raise NotAssociativeError(
                        f"({x}*{y})*{z} != {x}*({y}*{z}) after identity relabelling"
                    )

    # Latin + identity + associativity already force two-sided inverses.
    inverses = [0] * n
    for x in range(n):
        y = table[x].index(0)
        assert table[y][x] == 0
        inverses[x] = y

    labels = [lab for lab, _ in generators]
    for lab in labels:
        _check_label(lab)
    if len(set(labels)) != len(labels):
        raise DuplicateLabelError(f"duplicate generator labels in {labels}")
    gens = []
    for lab, g in generators:
        if not isinstance(g, int) or not 0 <= g < n:
            raise ForeignElementError(f"generator {lab!r} has bad id {g!r}")
        gens.append((lab, remap[g]))

    group = FiniteGroup(name, table, tuple(inverses), tuple(gens))
    closure = group.generated_subgroup(g for _, g in gens)
    if len(closure) != n:
        raise GeneratorsDoNotGenerateError(
            f"generators reach only {len(closure)} of {n} elements"
        )
    return group


def make_cyclic(n: int, label: str = "a", name: str | None = None) -> FiniteGroup:
    """Cyclic group of order n >= 2 with one generator of order n."""
    if n < 2:
        raise OrderTooSmallError(f"cyclic group needs order >= 2, got {n}")
    rows = [[(i + j) % n for j in range(n)] for i in range(n)]
    return from_cayley_table(rows, [(label, 1)], name or f"C{n}")


def make_dihedral_reflections(
    n: int, labels: tuple[str, str] = ("a", "b"), name: str | None = None
) -> FiniteGroup:
    """Dihedral group of order 2n generated by two reflections a, b.

    Both generators have order 2 and their product has order n (n = 2 gives
    the Klein four group).  Element (rot, ref) is encoded as rot + n*ref.
    """
    if n < 2:
        raise OrderTooSmallError(f"dihedral group needs n >= 2, got {n}")

    def mul(x: int, y: int) -> int:
        r1, f1 = x % n, x // n
        r2, f2 = y % n, y // n
        rot = (r1 - r2) % n if f1 else (r1 + r2) % n
        return rot + n * (f1 ^ f2)

    rows = [[mul(i, j) for j in range(2 * n)] for i in range(2 * n)]
    # a = reflection (0,1); b = (n-1,1) so that a*b is the basic rotation.
    gens = [(labels[0], n), (labels[1], 2 * n - 1)]
    return from_cayley_table(rows, gens, name or f"D{n}")


def direct_product(a: FiniteGroup, b: FiniteGroup, name: str | None = None) -> FiniteGroup:
    """Direct product A x B; element (x, y) is encoded as x*#B + y.

    Generators are A's paired with B's identity and vice versa, labels
    preserved (they must not clash).
    """
    nb = b.order

    def mul(x: int, y: int) -> int:
        x1, x2 = divmod(x, nb)
        y1, y2 = divmod(y, nb)
        return a.table[x1][y1] * nb + b.table[x2][y2]

    order = a.order * nb
    rows = [[mul(i, j) for j in range(order)] for i in range(order)]
    gens = [(lab, g * nb) for lab, g in a.generators]
    gens += [(lab, g) for lab, g in b.generators]
    return from_cayley_table(rows, gens, name or f"{a.name}x{b.name}")
