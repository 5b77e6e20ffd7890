"""Unit-group structure of (Z/qZ)^*: factorization, generators, discrete logs.

The multiplicative group mod q is decomposed into cyclic components, one
per odd prime-power factor (generated by the smallest suitable primitive
root) and one or two for the 2-part: nothing for 2, a single order-2
component generated by 3 for 4, and <-1> x <5> for 2^e with e >= 3.
Discrete logarithms are precomputed as full lookup tables, sized by the
prime-power part, so that character evaluation and the batch DFT can
index straight into numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True, slots=True)
class Factorization:
    q: int
    factors: tuple[tuple[int, int], ...]  # (prime, exponent), primes ascending

    def phi(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= (p - 1) * p ** (e - 1)
        return out


def factorize(q: int) -> Factorization:
    """Trial-division factorization; total on positive integers."""
    if q < 1:
        raise ValueError(f"q must be a positive integer, got {q}")
    n = q
    factors: list[tuple[int, int]] = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors.append((p, e))
    p = 5
    step = 2  # alternate +2, +4 to skip multiples of 2 and 3
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors.append((p, e))
        p += step
        step = 6 - step
    if n > 1:
        factors.append((n, 1))
    return Factorization(q, tuple(factors))


def euler_phi(q: int) -> int:
    return factorize(q).phi()


def smallest_primitive_root(p: int) -> int:
    """Smallest primitive root mod an odd prime p."""
    if p == 2:
        return 1
    order_factors = [r for r, _ in factorize(p - 1).factors]
    g = 2
    while True:
        if all(pow(g, (p - 1) // r, p) != 1 for r in order_factors):
            return g
        g += 1


def _prime_power_generator(p: int, e: int) -> int:
    """Generator of (Z/p^e Z)^* for odd p: smallest primitive root mod p,
    bumped by p if it fails to have full order mod p^2."""
    g = smallest_primitive_root(p)
    if e == 1:
        return g
    if pow(g, p - 1, p * p) == 1:
        g += p
    return g


@dataclass(frozen=True, slots=True)
class Component:
    """One cyclic factor of the unit group."""
    modulus: int    # the prime-power part this component lives in
    generator: int  # residue mod `modulus`
    order: int


@dataclass(frozen=True, slots=True)
class UnitGroupStructure:
    q: int
    phi: int
    components: tuple[Component, ...]
    # dlog_tables[i][n % components[i].modulus] is the exponent of n on
    # component i, or -1 for non-units of that part.
    dlog_tables: tuple[np.ndarray, ...] = field(repr=False)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(c.order for c in self.components)


def _power_table(g: int, order: int, modulus: int) -> np.ndarray:
    """table[residue] = k with g^k = residue (mod modulus), -1 elsewhere.

    Built baby-step/giant-step so the Python-level loop is O(sqrt(order)).
    """
    m = math.isqrt(order) + 1
    baby = [1] * m
    for i in range(1, m):
        baby[i] = baby[i - 1] * g % modulus
    big = baby[m - 1] * g % modulus  # g^m
    giant = [1] * m
    for i in range(1, m):
        giant[i] = giant[i - 1] * big % modulus
    grid = (np.array(giant, dtype=np.int64)[:, None]
            * np.array(baby, dtype=np.int64)[None, :]) % modulus
    residues = grid.ravel()[:order]
    table = np.full(modulus, -1, dtype=np.int64)
    table[residues] = np.arange(order, dtype=np.int64)
    return table


def _two_part_tables(e: int) -> tuple[list[Component], list[np.ndarray]]:
    """Components and dlog tables for the part 2^e, e >= 3: <-1> x <5>."""
    mod = 1 << e
    order5 = 1 << (e - 2)
    pow5 = _power_table(5, order5, mod)
    idx = np.arange(mod, dtype=np.int64)
    neg = (mod - idx) % mod
    sign_tbl = np.full(mod, -1, dtype=np.int64)
    five_tbl = np.full(mod, -1, dtype=np.int64)
    is1 = idx % 4 == 1
    is3 = idx % 4 == 3
    sign_tbl[is1] = 0
    sign_tbl[is3] = 1
    five_tbl[is1] = pow5[idx[is1]]
    five_tbl[is3] = pow5[neg[is3]]
    comps = [Component(mod, mod - 1, 2), Component(mod, 5, order5)]
    return comps, [sign_tbl, five_tbl]


def unit_group(q: int) -> UnitGroupStructure:
    """Deterministic cyclic decomposition of (Z/qZ)^* with dlog tables."""
    if q < 3:
        raise ValueError(f"unit_group requires q >= 3, got {q}")
    fac = factorize(q)
    comps: list[Component] = []
    tables: list[np.ndarray] = []
    for p, e in fac.factors:
        if p == 2:
            if e == 1:
                continue  # trivial part, contributes nothing
            if e == 2:
                comps.append(Component(4, 3, 2))
                tables.append(np.array([-1, 0, -1, 1], dtype=np.int64))
            else:
                c2, t2 = _two_part_tables(e)
                comps.extend(c2)
                tables.extend(t2)
        else:
            pe = p ** e
            g = _prime_power_generator(p, e)
            order = (p - 1) * p ** (e - 1)
            comps.append(Component(pe, g, order))
            tables.append(_power_table(g, order, pe))
    return UnitGroupStructure(q, fac.phi(), tuple(comps), tuple(tables))


def dlog(g: UnitGroupStructure, n: int) -> tuple[int, ...]:
    """Exponent tuple of n against the group's generators."""
    n %= g.q
    if math.gcd(n, g.q) != 1:
        raise ValueError(f"{n} is not a unit mod {g.q}")
    return tuple(int(tbl[n % comp.modulus])
                 for comp, tbl in zip(g.components, g.dlog_tables))


def reconstruct(g: UnitGroupStructure, exps: tuple[int, ...]) -> int:
    """Inverse of dlog: the unit residue with the given exponent tuple."""
    if len(exps) != len(g.components):
        raise ValueError("exponent tuple has wrong length")
    # local value per prime-power part, then CRT
    locals_: dict[int, int] = {}
    for (comp, e) in zip(g.components, exps):
        v = locals_.get(comp.modulus, 1)
        locals_[comp.modulus] = v * pow(comp.generator, int(e) % comp.order,
                                        comp.modulus) % comp.modulus
    n = 0
    for mod, v in locals_.items():
        rest = g.q // mod
        n += v * rest * pow(rest, -1, mod)
    # parts of q coprime to every component modulus (the factor 2 when
    # q = 2 mod 4) force n = 1 mod that part, which CRT handles because
    # their local value is implicitly 1
    covered = 1
    for mod in locals_:
        covered *= mod
    if covered != g.q:
        rest = g.q // covered
        n += 1 * covered * pow(covered, -1, rest)
    return n % g.q


def units(q: int) -> np.ndarray:
    """Ascending array of unit residues in [1, q)."""
    r = np.arange(1, q, dtype=np.int64)
    return r[np.gcd(r, q) == 1]


def dlog_matrix(g: UnitGroupStructure, ns: np.ndarray) -> list[np.ndarray]:
    """Vectorized dlog: one exponent array per component, aligned with ns."""
    out = []
    for comp, tbl in zip(g.components, g.dlog_tables):
        out.append(tbl[ns % comp.modulus])
    return out
