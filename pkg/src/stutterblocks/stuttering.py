"""Shift-invariant multipartitions inside shift-stable blocks.

Given a compatible multicharge and a multipartition whose residue
vector is fixed by the shift, the pipeline builds a multipartition with
the same residue vector that is itself fixed by the shift:

1. reduce to the e-multicore and read abacus parameters ``x[k]``;
2. average the parameters over each shift orbit of components;
3. round the averages back to integers with binary matrices whose
   block sums are rectified, keeping the linear constraints exact;
4. build cores from the rounded parameters, repeated ``p`` times, and
   wrap ``eta``-rim hooks on the orbit of component 0 to make up the
   missing nodes.

All objective values are exact ``Fraction``s and every inequality the
construction relies on is checked at runtime.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from ._checks import check
from .abacus import core_from_params, params_of_core
from .binmat import gale_ryser_vectors, rectify_block_sums
from .errors import ConfigError, Incompatible, NotStable
from .multipartitions import (
    LevelConfig,
    Multipartition,
    alpha_kappa,
    as_multipartition,
    is_compatible,
    is_stable,
    multicore,
    normalize_kappa,
    orbit_size_alpha,
    orbit_size_multipartition,
    shift_multipartition,
)
from .partitions import add_rim_hook_by_beta


def _sq(v) -> Fraction:
    return sum((Fraction(t) * t for t in v), Fraction(0))


class Objective:
    """The quadratic objective ``g_l(x) = |x|^2 / 2 - Lbar_l(x)`` and its sums.

    ``Lbar_l`` averages the prefix-sum forms ``L_i(x) = x_0 + ... + x_{i-1}``
    over the indices ``-kappa_l + j eta`` for ``j < p``.
    """

    def __init__(self, kappa, config: LevelConfig):
        self.config = config
        self.kappa = normalize_kappa(kappa, config)
        e, eta, p = config.e, config.eta, config.p
        self._idx = [[(-self.kappa[l] + j * eta) % e for j in range(p)] for l in range(config.d)]

    @staticmethod
    def prefix(i: int, x) -> Fraction:
        return sum((Fraction(t) for t in x[:i]), Fraction(0))

    def linear(self, l: int, x) -> Fraction:
        return sum((self.prefix(i, x) for i in self._idx[l]), Fraction(0)) / self.config.p

    def g(self, l: int, x) -> Fraction:
        return _sq(x) / 2 - self.linear(l, x)

    def f(self, xs) -> Fraction:
        """Full objective on ``r`` parameter vectors."""
        d = self.config.d
        return sum((self.g(k % d, x) for k, x in enumerate(xs)), Fraction(0))

    def f_p(self, zs) -> Fraction:
        """Reduced objective on ``d`` parameter vectors."""
        return sum((self.g(l, z) for l, z in enumerate(zs)), Fraction(0))


def _validate(lam, kappa, config: LevelConfig):
    lam = as_multipartition(lam)
    if len(lam) != config.r:
        raise ConfigError(f"{len(lam)} components, expected r = {config.r}")
    kappa = normalize_kappa(kappa, config)
    if not is_compatible(kappa, config):
        raise Incompatible(f"multicharge {list(kappa)} is not compatible with {config.to_json()}")
    return lam, kappa


def _params(core: Multipartition, e: int) -> list:
    return [params_of_core(c, e) for c in core]


def compute_delta(core, kappa, config: LevelConfig) -> tuple:
    """``delta_i = n^i - n^(i+1)`` for ``i < eta`` from a stable multicore."""
    core = as_multipartition(core)
    kappa = normalize_kappa(kappa, config)
    e, eta, p = config.e, config.eta, config.p
    alpha = alpha_kappa(core, kappa, e)
    if not is_stable(alpha, config):
        raise NotStable("alpha not sigma-stable")
    delta = tuple(alpha[i] - alpha[(i + 1) % e] for i in range(eta))
    xs = _params(core, e)
    for j0 in range(p):
        via_x = tuple(sum(x[(i + j0 * eta - kappa[k]) % e] for k, x in enumerate(xs)) for i in range(eta))
        check("delta-abacus", via_x == delta, f"j0={j0}: {via_x} != {delta}")
        shifted = tuple(alpha[(i + j0 * eta) % e] - alpha[(i + j0 * eta + 1) % e] for i in range(eta))
        check("delta-stable", shifted == delta, f"j0={j0}")
    return delta


def naive_average(core, kappa, config: LevelConfig) -> list:
    """Average the parameters over each orbit ``l, l + d, ...`` of components."""
    core = as_multipartition(core)
    kappa = normalize_kappa(kappa, config)
    d, p, e = config.d, config.p, config.e
    xs = _params(core, e)
    zt = [tuple(Fraction(sum(xs[l + j * d][i] for j in range(p)), p) for i in range(e)) for l in range(d)]
    obj = Objective(kappa, config)
    for l in range(d):
        check("average-zero-sum", sum(zt[l]) == 0)
    spread = sum((_sq([a - b for a, b in zip(xs[l + j * d], zt[l])]) for l in range(d) for j in range(p)), Fraction(0))
    check("average-convexity-equality", p * obj.f_p(zt) == obj.f(xs) - spread / 2)
    alpha = alpha_kappa(core, kappa, e)
    if is_stable(alpha, config):
        check("objective-consistency", obj.f(xs) == alpha[0], f"f(x) = {obj.f(xs)} but n0 = {alpha[0]}")
        delta = tuple(alpha[i] - alpha[(i + 1) % e] for i in range(config.eta))
        sums = tuple(sum(zt[l][(i - j * config.eta - kappa[l]) % e] for l in range(d) for j in range(p))
                     for i in range(config.eta))
        check("average-delta", sums == delta)
    return zt


@dataclass
class Rectification:
    z: list
    j0: int
    integer_part: np.ndarray
    numerators: np.ndarray
    matrices: np.ndarray
    log: list = field(default_factory=list)


def rectify_parameters(zt, delta, kappa, config: LevelConfig, x=None) -> Rectification:
    """Round averaged parameters to integer zero-sum vectors meeting the delta constraint."""
    kappa = normalize_kappa(kappa, config)
    d, eta, p, e = config.d, config.eta, config.p, config.e
    zt = [tuple(Fraction(t) for t in v) for v in zt]
    obj = Objective(kappa, config)
    perm = [[0] * e for _ in range(d)]
    M = np.zeros((d, e), dtype=np.int64)
    W = np.zeros((d, e), dtype=np.int64)
    for l in range(d):
        for i in range(eta):
            for j in range(p):
                c = j + i * p
                src = (i - j * eta - kappa[l]) % e
                perm[l][c] = src
                val = zt[l][src]
                m = val.numerator // val.denominator
                w = (val - m) * p
                check("fraction-denominator", w.denominator == 1, f"{val} is not in (1/p)Z")
                M[l, c], W[l, c] = m, int(w)
    for l in range(d):
        check("row-fraction-integral", int(W[l].sum()) % p == 0, f"|v({l})| = {W[l].sum()}/{p}")
    for i in range(eta):
        check("block-fraction-integral", int(W[:, i * p:(i + 1) * p].sum()) % p == 0, f"block {i}")

    E = np.zeros((p, d, e), dtype=np.int8)
    for l in range(d):
        E[:, l, :] = gale_ryser_vectors(W[l], p)
    E, log = rectify_block_sums(E, p)

    best = None
    for j in range(p):
        z = []
        for l in range(d):
            v = [0] * e
            for c in range(e):
                v[perm[l][c]] = int(M[l, c] + E[j, l, c])
            z.append(tuple(v))
        val = obj.f_p(z)
        if best is None or val < best[0]:
            best = (val, j, z)
    fz, j0, z = best

    for l in range(d):
        check("rounded-zero-sum", sum(z[l]) == 0)
    sums = tuple(sum(z[l][(i - j * eta - kappa[l]) % e] for l in range(d) for j in range(p)) for i in range(eta))
    check("rounded-delta", sums == tuple(delta), f"{sums} != {tuple(delta)}")
    V = [Fraction(int(t), p) for t in W.ravel()]
    slack = (sum(V, Fraction(0)) - _sq(V)) / 2
    check("rounding-bound", fz <= obj.f_p(zt) + slack)
    if x is not None:
        spread = sum((_sq([a - b for a, b in zip(x[l + j * d], zt[l])]) for l in range(d) for j in range(p)), Fraction(0))
        check("fractional-part-bound", slack <= spread / (2 * p))
        check("key-inequality", p * fz <= obj.f(x), f"p f<p>(z) = {p * fz} > f(x) = {obj.f(x)}")
    return Rectification(z, j0, M, W, E, log)


def _wrap_eta_hooks(mu: Multipartition, count: int, config: LevelConfig) -> Multipartition:
    if count == 0:
        return mu
    comps = list(mu)
    grown = comps[0]
    for _ in range(count):
        grown = add_rim_hook_by_beta(grown, config.eta)
    for j in range(config.p):
        comps[j * config.d] = grown
    return Multipartition(comps)


def assemble_stuttering(z, target, kappa, config: LevelConfig) -> Multipartition:
    """Cores from the rounded parameters, then ``eta``-hooks up to ``target``."""
    kappa = normalize_kappa(kappa, config)
    e, d = config.e, config.d
    base = Multipartition(core_from_params(z[k % d], e) for k in range(config.r))
    m = alpha_kappa(base, kappa, e)
    n = tuple(target)
    check("hook-count-nonnegative", m[0] <= n[0], f"m0 = {m[0]} > n0 = {n[0]}")
    check("residue-differences", all(m[0] - m[i] == n[0] - n[i] for i in range(e)))
    mu = _wrap_eta_hooks(base, n[0] - m[0], config)
    check("assembled-alpha", alpha_kappa(mu, kappa, e) == n)
    check("assembled-stuttering", shift_multipartition(mu, config) == mu)
    return mu


@dataclass
class StutterReport:
    mu: Multipartition
    alpha: tuple
    core: Multipartition = None
    weight: int = 0
    delta: tuple = ()
    z: list = None
    rectification_log: list = field(default_factory=list)


def stutter_with_report(lam, kappa, config: LevelConfig) -> StutterReport:
    lam, kappa = _validate(lam, kappa, config)
    e = config.e
    alpha = alpha_kappa(lam, kappa, e)
    if not is_stable(alpha, config):
        raise NotStable("alpha not sigma-stable")
    if config.p == 1:
        return StutterReport(lam, alpha)
    core, weight = multicore(lam, e)
    xs = _params(core, e)
    delta = compute_delta(core, kappa, config)
    zt = naive_average(core, kappa, config)
    rect = rectify_parameters(zt, delta, kappa, config, x=xs)
    mu = assemble_stuttering(rect.z, alpha_kappa(core, kappa, e), kappa, config)
    mu = _wrap_eta_hooks(mu, weight, config)
    check("result-alpha", alpha_kappa(mu, kappa, e) == alpha)
    check("result-stuttering", shift_multipartition(mu, config) == mu)
    return StutterReport(mu, alpha, core, weight, delta, rect.z, rect.log)


def find_stuttering(lam, kappa, config: LevelConfig) -> Multipartition:
    return stutter_with_report(lam, kappa, config).mu


def find_minimal_orbit(lam, kappa, config: LevelConfig) -> Multipartition:
    """A multipartition of the same block whose shift orbit is as small as the block's."""
    lam, kappa = _validate(lam, kappa, config)
    alpha = alpha_kappa(lam, kappa, config.e)
    q = orbit_size_alpha(alpha, config)
    if q == config.p:
        return lam
    mu = find_stuttering(lam, kappa, config.derived(q))
    check("minimal-orbit-alpha", alpha_kappa(mu, kappa, config.e) == alpha)
    check("minimal-orbit-size", orbit_size_multipartition(mu, config) == q)
    return mu


def find_power_stable(lam, kappa, config: LevelConfig, j: int) -> Multipartition:
    """A multipartition of the same block fixed by the ``j``-th power of the shift."""
    lam, kappa = _validate(lam, kappa, config)
    alpha = alpha_kappa(lam, kappa, config.e)
    if not is_stable(alpha, config, j):
        raise NotStable(f"alpha not sigma^{j}-stable")
    q = gcd(j, config.p)
    if q == config.p:
        return lam
    mu = find_stuttering(lam, kappa, config.derived(q))
    check("power-alpha", alpha_kappa(mu, kappa, config.e) == alpha)
    check("power-stuttering", shift_multipartition(mu, config, j) == mu)
    return mu
