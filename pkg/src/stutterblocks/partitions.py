"""Integer partitions, nodes, residues, rim hooks and beta-numbers.

A partition is stored as a tuple of positive, weakly decreasing parts.
Beta-numbers use the finite canonical form: entry ``a`` (0-indexed) is
``parts[a] - (a + 1)`` for the ``h`` rows of the partition, and every
position past the end implicitly holds ``-(a + 1)``.
"""

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidBeta, InvalidHook, InvalidModulus, InvalidPartition

Node = tuple  # (row, col)


class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        try:
            raw = tuple(parts)
            parts = tuple(int(x) for x in raw)
        except (TypeError, ValueError) as exc:
            raise InvalidPartition(f"parts must be integers: {exc}") from exc
        if any(x != y for x, y in zip(parts, raw)):
            raise InvalidPartition(f"parts must be integers, got {raw}")
        for a, x in enumerate(parts):
            if x <= 0:
                raise InvalidPartition(f"parts must be positive, got {parts}")
            if a and parts[a - 1] < x:
                raise InvalidPartition(f"parts must be weakly decreasing, got {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def height(self) -> int:
        return len(self)

    def nodes(self):
        return [(a, b) for a, row in enumerate(self) for b in range(row)]

    def contains(self, node) -> bool:
        a, b = node
        return 0 <= a < len(self) and 0 <= b < self[a]

    def conjugate(self) -> "Partition":
        if not self:
            return Partition()
        return Partition(sum(1 for x in self if x > b) for b in range(self[0]))

    def __repr__(self):
        return "(" + ",".join(map(str, self)) + ")"


def as_partition(obj) -> Partition:
    return obj if isinstance(obj, Partition) else Partition(obj)


def check_modulus(e: int) -> int:
    if int(e) != e or e < 2:
        raise InvalidModulus(f"modulus must be an integer >= 2, got {e}")
    return int(e)


def residue(node, e: int) -> int:
    check_modulus(e)
    a, b = node
    return (b - a) % e


# beta-numbers

def beta_number(lam) -> tuple:
    lam = as_partition(lam)
    return tuple(x - a - 1 for a, x in enumerate(lam))


def partition_from_beta(beta: Sequence[int]) -> Partition:
    beta = [int(b) for b in beta]
    L = len(beta)
    for a in range(1, L):
        if beta[a] >= beta[a - 1]:
            raise InvalidBeta(f"beta-number must be strictly decreasing, got {beta}")
    if L and beta[-1] < -L:
        raise InvalidBeta(f"entry {beta[-1]} collides with the implicit tail -{L + 1}, -{L + 2}, ...")
    parts = [b + a + 1 for a, b in enumerate(beta)]
    while parts and parts[-1] == 0:
        parts.pop()
    return Partition(parts)


def _in_beta(v: int, beta: Sequence[int]) -> bool:
    # implicit tail holds every integer <= -(len + 1)
    return v <= -(len(beta) + 1) or v in beta


# rim hooks

def hook_length(lam, node) -> int:
    lam = as_partition(lam)
    a, b = node
    arm = lam[a] - b - 1
    leg = sum(1 for x in lam[a + 1:] if x > b)
    return arm + leg + 1


@dataclass(frozen=True)
class RimHook:
    anchor: tuple
    nodes: tuple
    length: int
    hand: tuple
    beta_entry: int


def _hook_nodes(lam: Partition, anchor) -> tuple:
    a, b = anchor
    out = []
    for r in range(a, len(lam)):
        for c in range(b, lam[r]):
            if not lam.contains((r + 1, c + 1)):
                out.append((r, c))
    return tuple(out)


def _make_hook(lam: Partition, row: int, l: int) -> RimHook:
    col = next(c for c in range(lam[row]) if hook_length(lam, (row, c)) == l)
    nodes = _hook_nodes(lam, (row, col))
    return RimHook((row, col), nodes, l, (row, lam[row] - 1), lam[row] - row - 1)


def rim_hooks(lam, l: int) -> list:
    """All removable rim hooks of length ``l``, ordered by anchor row."""
    lam = as_partition(lam)
    if l < 1:
        raise InvalidHook(f"hook length must be >= 1, got {l}")
    beta = beta_number(lam)
    return [_make_hook(lam, a, l) for a, b in enumerate(beta) if not _in_beta(b - l, beta)]


def remove_rim_hook(lam, hook: RimHook) -> Partition:
    lam = as_partition(lam)
    if hook.length < 1 or hook not in rim_hooks(lam, hook.length):
        raise InvalidHook(f"{hook.anchor} does not anchor a removable {hook.length}-rim hook of {lam}")
    a = hook.anchor[0]
    beta = list(beta_number(lam))
    beta[a] -= hook.length
    return partition_from_beta(sorted(beta, reverse=True))


def add_rim_hook_by_beta(lam, l: int) -> Partition:
    """Wrap an ``l``-rim hook by moving the largest beta entry up by ``l``."""
    lam = as_partition(lam)
    if l < 1:
        raise InvalidHook(f"hook length must be >= 1, got {l}")
    if not lam:
        return Partition((l,))
    return Partition((lam[0] + l,) + tuple(lam[1:]))


def e_core_and_weight(lam, e: int) -> tuple:
    """Return ``(core, weight)``; hooks are removed largest beta entry first."""
    lam = as_partition(lam)
    e = check_modulus(e)
    beta = list(beta_number(lam))
    weight = 0
    moved = True
    while moved:
        moved = False
        for a, b in enumerate(beta):
            if not _in_beta(b - e, beta):
                beta[a] = b - e
                beta.sort(reverse=True)
                weight += 1
                moved = True
                break
    return partition_from_beta(beta), weight


def is_e_core(lam, e: int) -> bool:
    return not rim_hooks(lam, check_modulus(e))


# residues

def residue_vector(lam, e: int, shift: int = 0) -> tuple:
    """Counts of nodes by residue ``b - a + shift`` mod ``e``."""
    lam = as_partition(lam)
    e = check_modulus(e)
    out = [0] * e
    for a, row in enumerate(lam):
        q, rem = divmod(row, e)
        if q:
            for i in range(e):
                out[i] += q
        start = (shift - a) % e
        for c in range(rem):
            out[(start + c) % e] += 1
    return tuple(out)


def partitions_of(n: int):
    """Partitions of ``n`` in reverse-lexicographic order."""

    def rec(n, cap):
        if n == 0:
            yield ()
            return
        for first in range(min(n, cap), 0, -1):
            for rest in rec(n - first, first):
                yield (first,) + rest

    for parts in rec(n, n):
        yield Partition(parts)
