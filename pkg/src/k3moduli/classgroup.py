"""Form class groups C(D): enumeration, Cayley table, genus structure."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd, isqrt

from . import qforms
from .errors import ClassNotInGroup
from .qforms import FormClass, QuadForm, check_discriminant


@dataclass(frozen=True)
class ClassGroup:
    """All reduced primitive classes of one discriminant, with composition table.

    cayley[i][j] is the index of classes[i] * classes[j]; elementary_divisors
    are the invariant factors of the group, each dividing the next.
    """

    disc: int
    classes: tuple[FormClass, ...]
    cayley: tuple[tuple[int, ...], ...]
    elementary_divisors: tuple[int, ...]

    @property
    def h(self) -> int:
        return len(self.classes)

    @cached_property
    def _index(self) -> dict[FormClass, int]:
        return {cls: i for i, cls in enumerate(self.classes)}

    @cached_property
    def principal_index(self) -> int:
        return self._index[qforms.principal_class(self.disc)]

    def index_of(self, cls: FormClass) -> int:
        try:
            return self._index[cls]
        except KeyError:
            raise ClassNotInGroup(f"{cls} is not a class of discriminant {self.disc}") from None

    def mul(self, i: int, j: int) -> int:
        return self.cayley[i][j]

    def inverse_index(self, i: int) -> int:
        return self.index_of(qforms.inverse(self.classes[i]))

    def power_index(self, i: int, n: int) -> int:
        if n < 0:
            return self.power_index(self.inverse_index(i), -n)
        acc = self.principal_index
        while n:
            if n & 1:
                acc = self.cayley[acc][i]
            i = self.cayley[i][i]
            n >>= 1
        return acc

    def order_of(self, i: int) -> int:
        e = self.principal_index
        n, j = 1, i
        while j != e:
            j = self.cayley[j][i]
            n += 1
        return n


@dataclass(frozen=True)
class GenusPartition:
    """Cosets of the principal genus C(D)^2 inside C(D), as index sets."""

    principal_genus: frozenset[int]
    cosets: tuple[frozenset[int], ...]


def reduced_representatives(d: int) -> list[QuadForm]:
    """All reduced primitive forms of discriminant d, sorted by (a, b)."""
    check_discriminant(d)
    reps = []
    for a in range(1, isqrt(-d // 3) + 1):
        for b in range(-a + 1, a + 1):
            if (b - d) % 2:
                continue
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (a == c and b < 0):
                continue
            if gcd(a, b, c) != 1:
                continue
            reps.append(QuadForm(a, b, c))
    return reps


def _invariant_factors(table: list[list[int]], identity: int) -> list[int]:
    """Invariant factors of an abelian group given by a multiplication table.

    Peels off a cyclic subgroup generated by an element of maximal order
    (always a direct summand) and recurses on the quotient table.
    """
    n = len(table)
    if n == 1:
        return []

    def order(i: int) -> int:
        k, j = 1, i
        while j != identity:
            j = table[j][i]
            k += 1
        return k

    best = max(range(n), key=order)
    d = order(best)
    # cyclic subgroup and its cosets
    sub = [identity]
    j = best
    while j != identity:
        sub.append(j)
        j = table[j][best]
    coset_id: dict[int, int] = {}
    reps: list[int] = []
    for i in range(n):
        if i in coset_id:
            continue
        cid = len(reps)
        reps.append(i)
        for s in sub:
            coset_id[table[i][s]] = cid
    quotient = [[coset_id[table[reps[i]][reps[j]]] for j in range(len(reps))] for i in range(len(reps))]
    return _invariant_factors(quotient, coset_id[identity]) + [d]


@lru_cache(maxsize=None)
def class_group(d: int) -> ClassGroup:
    """Enumerate C(d) with its Cayley table and invariant factors."""
    reps = reduced_representatives(d)
    classes = tuple(FormClass(rep, d) for rep in reps)
    index = {cls: i for i, cls in enumerate(classes)}
    h = len(classes)
    cayley = tuple(
        tuple(index[qforms.compose(classes[i], classes[j])] for j in range(h)) for i in range(h)
    )
    table = [list(row) for row in cayley]
    identity = index[qforms.principal_class(d)]
    divisors = tuple(_invariant_factors(table, identity))
    return ClassGroup(d, classes, cayley, divisors)


def two_torsion(group: ClassGroup) -> frozenset[int]:
    """Indices of classes with x * x principal; the ambiguous classes."""
    e = group.principal_index
    return frozenset(i for i in range(group.h) if group.cayley[i][i] == e)


def principal_genus(group: ClassGroup) -> frozenset[int]:
    """The subgroup of squares C(D)^2."""
    return frozenset(group.cayley[i][i] for i in range(group.h))


def genus_partition(group: ClassGroup) -> GenusPartition:
    squares = principal_genus(group)
    seen: set[int] = set()
    cosets = []
    for i in range(group.h):
        if i in seen:
            continue
        coset = frozenset(group.cayley[i][s] for s in squares)
        seen |= coset
        cosets.append(coset)
    cosets.sort(key=min)
    return GenusPartition(squares, tuple(cosets))


def genus_of(group: ClassGroup, cls: FormClass) -> frozenset[int]:
    """The coset cls * C(D)^2, i.e. the genus containing cls."""
    i = group.index_of(cls)
    return frozenset(group.cayley[i][s] for s in principal_genus(group))


def genus_order(group: ClassGroup) -> int:
    """g = |C(D)^2| = h / |C(D)[2]|."""
    return len(principal_genus(group))


def structure(group: ClassGroup) -> tuple[int, ...]:
    """Invariant factors of C(D), each dividing the next."""
    return group.elementary_divisors
