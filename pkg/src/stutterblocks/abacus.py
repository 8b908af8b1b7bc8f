"""The e-runner abacus and the parametrisation of e-cores.

Position ``q`` of the beta-set sits on runner ``q mod e`` at height
``q // e``.  The empty partition fills every runner strictly below
height 0, so each runner of any partition is described by a frontier
(its bead surplus over the empty abacus) plus the finitely many gaps
below the frontier and beads at or above it.
For an e-core the frontiers are the first-gap positions, an integer
vector summing to zero.
"""

from dataclasses import dataclass

from .errors import InvalidParams, NotACore
from .partitions import as_partition, beta_number, check_modulus, partition_from_beta


@dataclass(frozen=True)
class Abacus:
    e: int
    frontier: tuple
    gaps: tuple   # per runner: sorted heights j < frontier[i] without a bead
    extra: tuple  # per runner: sorted heights j >= frontier[i] with a bead

    def has_bead(self, runner: int, j: int) -> bool:
        if j < self.frontier[runner]:
            return j not in self.gaps[runner]
        return j in self.extra[runner]

    @property
    def gap_count(self) -> int:
        return sum(len(g) for g in self.gaps)

    def first_gaps(self) -> tuple:
        out = []
        for i in range(self.e):
            j = self.gaps[i][0] if self.gaps[i] else self.frontier[i]
            out.append(j)
        return tuple(out)

    def render(self, window: int = 6) -> str:
        """Runners as rows over heights ``-window .. window-1``; ``|`` precedes height 0."""
        lines = []
        for i in range(self.e):
            left = "".join("o" if self.has_bead(i, j) else "." for j in range(-window, 0))
            right = "".join("o" if self.has_bead(i, j) else "." for j in range(0, window))
            lines.append(f"{i}: {left}|{right}")
        return "\n".join(lines)


def abacus_from_partition(lam, e: int) -> Abacus:
    lam = as_partition(lam)
    e = check_modulus(e)
    beta = beta_number(lam)
    # window [-N, inf) with N a multiple of e beyond the beta prefix
    N = e * (len(beta) // e + 1)
    beads = set(beta) | set(range(-N, -len(beta)))
    frontier, gaps, extra = [], [], []
    for i in range(e):
        heights = sorted((q - i) // e for q in beads if q % e == i)
        # the empty partition has N // e beads on each runner in the same window
        f = len(heights) - N // e
        hs = set(heights)
        floor = -(N // e)
        frontier.append(f)
        gaps.append(tuple(j for j in range(floor, f) if j not in hs))
        extra.append(tuple(j for j in heights if j >= f))
    return Abacus(e, tuple(frontier), tuple(gaps), tuple(extra))


def is_e_core(lam, e: int) -> bool:
    return abacus_from_partition(lam, e).gap_count == 0


def params_of_core(lam, e: int) -> tuple:
    ab = abacus_from_partition(lam, e)
    if ab.gap_count:
        raise NotACore(f"{as_partition(lam)} is not a {e}-core")
    return ab.frontier


def _check_params(x, e=None) -> tuple:
    x = tuple(int(v) for v in x)
    if e is not None and len(x) != e:
        raise InvalidParams(f"expected {e} parameters, got {len(x)}")
    if len(x) < 2:
        raise InvalidParams("need at least 2 runners")
    if sum(x):
        raise InvalidParams(f"parameters must sum to zero, got sum {sum(x)}")
    return x


def core_from_params(x, e: int = None):
    x = _check_params(x, e)
    e = len(x)
    M = e * (max(abs(v) for v in x) + 1)
    beads = [i + j * e for i in range(e) for j in range(-M, x[i]) if i + j * e >= -M]
    beads.sort(reverse=True)
    return partition_from_beta(beads)


def n0_of_core(x) -> int:
    x = _check_params(x)
    return sum(v * v for v in x) // 2


def ni_of_core(x, i: int) -> int:
    x = _check_params(x)
    i %= len(x)
    return n0_of_core(x) - sum(x[:i])
