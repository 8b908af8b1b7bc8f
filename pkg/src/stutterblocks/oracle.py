"""Brute-force ground truth by exhaustive enumeration.

Multipartitions are held as rows of partition ids so that a whole
``P^kappa_n`` can be grouped by residue vector with a few array passes.
Nothing here reads intermediate state of the stuttering pipeline; only
its final outputs are checked.
"""

import json
import os
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from math import gcd

import numpy as np

from . import kernels
from .errors import TooLarge
from .multipartitions import (
    LevelConfig,
    Multipartition,
    alpha_kappa,
    compatible_multicharges,
    normalize_kappa,
    orbit_size_alpha,
    orbit_size_multipartition,
    shift_alpha,
    shift_multipartition,
)
from .partitions import partitions_of, residue_vector
from .stuttering import find_minimal_orbit, find_power_stable

DEFAULT_CAP = 10 ** 6


def enumeration_cap() -> int:
    env = os.environ.get("STUTTER_CAP")
    return int(env) if env else DEFAULT_CAP


# independent counts

@lru_cache(maxsize=None)
def partition_counts(n_max: int) -> tuple:
    """Number of partitions of each m <= n_max via the coin-change recurrence."""
    ways = [1] + [0] * n_max
    for part in range(1, n_max + 1):
        for m in range(part, n_max + 1):
            ways[m] += ways[m - part]
    return tuple(ways)


def count_multipartitions(n: int, r: int) -> int:
    """Coefficient of q^n in the r-th power of the partition generating function."""
    base = partition_counts(n)
    poly = [1] + [0] * n
    for _ in range(r):
        poly = [sum(poly[a] * base[m - a] for a in range(m + 1)) for m in range(n + 1)]
    return poly[n]


# partition tables

class PartitionTable:
    """Every partition of size <= n_max, by size then reverse-lex order."""

    def __init__(self, n_max: int):
        self.n_max = n_max
        self.parts = []
        self.offsets = []
        self.counts = []
        for m in range(n_max + 1):
            self.offsets.append(len(self.parts))
            block = list(partitions_of(m))
            self.counts.append(len(block))
            self.parts.extend(block)
        self._rv = {}

    def residues(self, e: int) -> np.ndarray:
        """Array ``rv[pid, shift, i]`` of residue counts."""
        if e not in self._rv:
            rv = np.zeros((len(self.parts), e, e), dtype=np.int32)
            for pid, lam in enumerate(self.parts):
                for s in range(e):
                    rv[pid, s] = residue_vector(lam, e, s)
            self._rv[e] = rv
        return self._rv[e]


@lru_cache(maxsize=None)
def partition_table(n_max: int) -> PartitionTable:
    return PartitionTable(n_max)


@lru_cache(maxsize=16)
def multipartition_ids(n: int, r: int) -> np.ndarray:
    table = partition_table(n)
    ids = kernels.enumerate_ids(n, r, table.offsets, table.counts)
    ids.setflags(write=False)
    return ids


@lru_cache(maxsize=32)
def orbit_table(n: int, r: int, d: int, p: int) -> np.ndarray:
    out = kernels.orbit_sizes(multipartition_ids(n, r), d, p)
    out.setflags(write=False)
    return out


# block tables

@dataclass
class BlockTable:
    n: int
    kappa: tuple
    config: LevelConfig
    ids: np.ndarray          # (N, r) partition ids
    block_of: np.ndarray     # (N,) block index of each row
    alphas: np.ndarray       # (B, e) residue vector of each block
    sizes: np.ndarray        # (B,) members per block
    first: np.ndarray        # (B,) row of the first member in enumeration order
    orbits: np.ndarray       # (N,) shift-orbit size of each row
    min_orbit: np.ndarray    # (B,)
    max_orbit: np.ndarray    # (B,)
    orbit_masks: np.ndarray  # (B,) bit q set when some member has orbit size q

    @property
    def total(self) -> int:
        return int(self.ids.shape[0])

    def multipartition(self, row: int) -> Multipartition:
        parts = partition_table(self.n).parts
        return Multipartition(parts[i] for i in self.ids[row])

    def alpha(self, b: int) -> tuple:
        return tuple(int(v) for v in self.alphas[b])

    def alpha_orbit(self, b: int) -> int:
        return orbit_size_alpha(self.alpha(b), self.config)

    def members(self, b: int) -> list:
        return [self.multipartition(int(i)) for i in np.flatnonzero(self.block_of == b)]

    def blocks(self) -> dict:
        return {self.alpha(b): self.members(b) for b in range(len(self.sizes))}

    def orbit_set(self, b: int) -> list:
        m = int(self.orbit_masks[b])
        return [q for q in range(1, self.config.p + 1) if m >> q & 1]


def enumerate_blocks(n: int, kappa, config: LevelConfig, cap: int = None) -> BlockTable:
    kappa = normalize_kappa(kappa, config)
    cap = enumeration_cap() if cap is None else cap
    expected = count_multipartitions(n, config.r)
    if expected > cap:
        raise TooLarge(f"{expected} multipartitions of {n} into {config.r} parts exceeds cap {cap}")
    e = config.e
    ids = multipartition_ids(n, config.r)
    rv = partition_table(n).residues(e)
    base = n + 1
    keys = kernels.alpha_keys(ids, rv, kappa, base)
    uniq, first, inverse, sizes = np.unique(keys, return_index=True, return_inverse=True, return_counts=True)
    alphas = (uniq[:, None] // base ** np.arange(e, dtype=np.int64)) % base
    orbits = orbit_table(n, config.r, config.d, config.p)
    B = len(uniq)
    lo = np.full(B, config.p + 1, dtype=np.int32)
    hi = np.zeros(B, dtype=np.int32)
    masks = np.zeros(B, dtype=np.int64)
    np.minimum.at(lo, inverse, orbits)
    np.maximum.at(hi, inverse, orbits)
    np.bitwise_or.at(masks, inverse, np.left_shift(1, orbits.astype(np.int64)))
    return BlockTable(n, kappa, config, ids, inverse, alphas, sizes, first, orbits, lo, hi, masks)


# verification

def verify_minmax(n: int, config: LevelConfig, cap: int = None) -> dict:
    """Extreme orbit sizes over all r-partitions of n: expect p and p / gcd(p, n)."""
    cap = enumeration_cap() if cap is None else cap
    expected_total = count_multipartitions(n, config.r)
    if expected_total > cap:
        raise TooLarge(f"{expected_total} multipartitions exceeds cap {cap}")
    orbits = orbit_table(n, config.r, config.d, config.p)
    lo, hi = int(orbits.min()), int(orbits.max())
    want_lo = config.p // gcd(config.p, n)
    failures = []
    if len(orbits) != expected_total:
        failures.append({"check": "count", "got": len(orbits), "want": expected_total})
    if lo != want_lo:
        failures.append({"check": "min", "got": lo, "want": want_lo})
    # with n = 0 the only multipartition is empty and has orbit 1
    if n >= 1 and hi != config.p:
        failures.append({"check": "max", "got": hi, "want": config.p})
    return {"config": config.to_json(), "n": n, "min": lo, "max": hi, "failures": failures}


def verify_main_theorem(n: int, kappa, config: LevelConfig, cap: int = None, run_algorithm: bool = True) -> dict:
    """Check that each block's smallest member orbit equals its residue-vector orbit.

    With ``run_algorithm`` the constructive routines are run on the first
    member of each block and their outputs are validated from scratch.
    """
    kappa = normalize_kappa(kappa, config)
    table = enumerate_blocks(n, kappa, config, cap)
    p, e = config.p, config.e
    failures = []
    wada_checked = wada_fail = 0
    blocks = []
    for b in range(len(table.sizes)):
        alpha = table.alpha(b)
        q = orbit_size_alpha(alpha, config)
        rec = {"alpha": list(alpha), "members": int(table.sizes[b]), "alpha_orbit": q,
               "min_orbit": int(table.min_orbit[b]), "max_orbit": int(table.max_orbit[b])}
        if int(table.min_orbit[b]) != q:
            failures.append({"alpha": list(alpha), "check": "oracle-min", "got": int(table.min_orbit[b]), "want": q})
        if len(table.orbit_set(b)) >= 2:
            wada_checked += 1
            if int(table.max_orbit[b]) != p:
                wada_fail += 1
        if run_algorithm:
            lam = table.multipartition(int(table.first[b]))
            mu = find_minimal_orbit(lam, kappa, config)
            if alpha_kappa(mu, kappa, e) != alpha or orbit_size_multipartition(mu, config) != q:
                failures.append({"alpha": list(alpha), "check": "minimal-orbit", "input": lam.to_json(),
                                 "output": mu.to_json()})
            for j in range(1, p):
                if shift_alpha(alpha, config, j) != alpha:
                    continue
                if shift_multipartition(mu, config, j) != mu:
                    failures.append({"alpha": list(alpha), "check": f"sigma^{j}-minimal", "output": mu.to_json()})
                nu = find_power_stable(lam, kappa, config, j)
                if alpha_kappa(nu, kappa, e) != alpha or shift_multipartition(nu, config, j) != nu:
                    failures.append({"alpha": list(alpha), "check": f"sigma^{j}-power", "input": lam.to_json(),
                                     "output": nu.to_json()})
            rec["witness"] = mu.to_json()
        blocks.append(rec)
    total = int(table.sizes.sum())
    if total != count_multipartitions(n, config.r):
        failures.append({"check": "partition-property", "got": total, "want": count_multipartitions(n, config.r)})
    return {
        "config": config.to_json(kappa),
        "n": n,
        "total": total,
        "blocks": blocks,
        "failures": failures,
        "max_orbit_claim": {"blocks_with_two_orbit_sizes": wada_checked, "max_below_p": wada_fail},
    }


# grid

def load_grid(name: str = "grid_v1.json") -> dict:
    with resources.files(__package__).joinpath("data").joinpath(name).open() as fh:
        return json.load(fh)


def grid_configs(grid: dict = None):
    """Yield ``(config, kappa)`` for every compatible multicharge on the grid."""
    grid = load_grid() if grid is None else grid
    for e in grid["e"]:
        for p in range(1, e + 1):
            if e % p:
                continue
            for d in grid["d"]:
                config = LevelConfig(d, e // p, p)
                for kappa in compatible_multicharges(config):
                    yield config, kappa


def grid_levels(grid: dict = None):
    """Distinct level configurations on the grid."""
    seen = []
    for config, _ in grid_configs(grid):
        if config not in seen:
            seen.append(config)
    return seen
