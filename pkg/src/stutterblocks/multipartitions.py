"""Multipartitions, compatible multicharges, residue vectors and shifts.

A level configuration ``(d, eta, p)`` fixes ``e = eta * p`` residues and
``r = d * p`` components.  The shift on multipartitions rotates the
components by ``d``; the shift on residue vectors rotates by ``eta``.
Both have order dividing ``p``.
"""

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .errors import ConfigError
from .partitions import as_partition, e_core_and_weight, partitions_of, residue_vector


@dataclass(frozen=True)
class LevelConfig:
    d: int
    eta: int
    p: int

    def __post_init__(self):
        for name in ("d", "eta", "p"):
            v = getattr(self, name)
            if int(v) != v or v < 1:
                raise ConfigError(f"{name} must be a positive integer, got {v}")
        if self.eta * self.p < 2:
            raise ConfigError("e = eta * p must be at least 2")

    @property
    def e(self) -> int:
        return self.eta * self.p

    @property
    def r(self) -> int:
        return self.d * self.p

    def derived(self, q: int) -> "LevelConfig":
        """Configuration ``(q d, q eta, p / q)`` whose shift is the ``q``-th power of this one."""
        if q < 1 or self.p % q:
            raise ConfigError(f"{q} does not divide p = {self.p}")
        return LevelConfig(self.d * q, self.eta * q, self.p // q)

    def to_json(self, kappa=None) -> dict:
        out = {"d": self.d, "eta": self.eta, "p": self.p}
        if kappa is not None:
            out["kappa"] = list(kappa)
        return out


def divisors(n: int) -> list:
    return [q for q in range(1, n + 1) if n % q == 0]


# multicharges

def normalize_kappa(kappa: Sequence[int], config: LevelConfig) -> tuple:
    if len(kappa) != config.r:
        raise ConfigError(f"multicharge has length {len(kappa)}, expected r = {config.r}")
    return tuple(int(k) % config.e for k in kappa)


def is_compatible(kappa, config: LevelConfig) -> bool:
    kappa = normalize_kappa(kappa, config)
    r, d, e = config.r, config.d, config.e
    return all(kappa[(k + d) % r] == (kappa[k] + config.eta) % e for k in range(r))


def compatible_multicharges(config: LevelConfig):
    """All compatible multicharges; the first ``d`` entries are free."""
    for head in product(range(config.e), repeat=config.d):
        yield tuple((head[k % config.d] + (k // config.d) * config.eta) % config.e
                    for k in range(config.r))


# multipartitions

class Multipartition(tuple):
    __slots__ = ()

    def __new__(cls, comps=()):
        return super().__new__(cls, tuple(as_partition(c) for c in comps))

    @property
    def size(self) -> int:
        return sum(c.size for c in self)

    def to_json(self) -> list:
        return [list(c) for c in self]

    def __repr__(self):
        return "(" + ",".join(repr(c) for c in self) + ")"


def as_multipartition(obj) -> Multipartition:
    return obj if isinstance(obj, Multipartition) else Multipartition(obj)


def alpha_kappa(lam, kappa, e: int) -> tuple:
    lam = as_multipartition(lam)
    if len(lam) != len(kappa):
        raise ConfigError(f"{len(lam)} components but multicharge of length {len(kappa)}")
    out = [0] * e
    for comp, k in zip(lam, kappa):
        for i, c in enumerate(residue_vector(comp, e, k)):
            out[i] += c
    return tuple(out)


def shift_multipartition(lam, config: LevelConfig, times: int = 1) -> Multipartition:
    lam = as_multipartition(lam)
    if len(lam) != config.r:
        raise ConfigError(f"{len(lam)} components, expected r = {config.r}")
    s = (times * config.d) % config.r
    return Multipartition(lam[(k - s) % config.r] for k in range(config.r))


def shift_alpha(alpha, config: LevelConfig, times: int = 1) -> tuple:
    if len(alpha) != config.e:
        raise ConfigError(f"residue vector of length {len(alpha)}, expected e = {config.e}")
    e = config.e
    s = (times * config.eta) % e
    return tuple(alpha[(i - s) % e] for i in range(e))


def orbit_size_multipartition(lam, config: LevelConfig) -> int:
    lam = as_multipartition(lam)
    for q in divisors(config.p):
        if shift_multipartition(lam, config, q) == lam:
            return q
    return config.p


def orbit_size_alpha(alpha, config: LevelConfig) -> int:
    alpha = tuple(alpha)
    for q in divisors(config.p):
        if shift_alpha(alpha, config, q) == alpha:
            return q
    return config.p


def is_stable(alpha, config: LevelConfig, j: int = 1) -> bool:
    return shift_alpha(alpha, config, j) == tuple(alpha)


def multicore(lam, e: int) -> tuple:
    lam = as_multipartition(lam)
    cores, weight = [], 0
    for comp in lam:
        c, w = e_core_and_weight(comp, e)
        cores.append(c)
        weight += w
    return Multipartition(cores), weight


# enumeration

def enumerate_partitions(n: int) -> list:
    return list(partitions_of(n))


def compositions(n: int, r: int):
    """Weak compositions of ``n`` into ``r`` parts, lexicographic."""
    if r == 0:
        if n == 0:
            yield ()
        return
    if r == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in compositions(n - first, r - 1):
            yield (first,) + rest


def enumerate_multipartitions(n: int, r: int):
    by_size = [enumerate_partitions(m) for m in range(n + 1)]
    for comp in compositions(n, r):
        for combo in product(*(by_size[m] for m in comp)):
            yield Multipartition(combo)

