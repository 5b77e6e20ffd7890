"""Dirichlet character algebra over the unit-group decomposition.

A character mod q is an exponent tuple against the group's generators;
its value at a unit n is e(sum_i exps[i]*dlog(n)[i]/order[i]).  Phases
are carried as exact integers over a common denominator (the lcm of the
component orders), so parity, conductor and orthogonality tests are
exact; only the final root of unity is a floating-point ball.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache, reduce

import numpy as np

from .arith import UnitGroupStructure, dlog, factorize, reconstruct, units
from .ball import Ball, ComplexBall

_ROOT_RAD = 2.0 ** -51  # two ulps of unity; see roots_of_unity


@lru_cache(maxsize=256)
def roots_of_unity(m: int) -> tuple[np.ndarray, np.ndarray]:
    """cos/sin midpoint arrays for e(k/m), k = 0..m-1, radius <= 2 ulp.

    k/m is folded into [0, 1/8] by exact integer octant arithmetic before
    any floating-point trig, so the evaluated angle is at most pi/4 and
    no accuracy is lost to range reduction.
    """
    if m < 1:
        raise ValueError("denominator must be positive")
    k = np.arange(m, dtype=np.int64)
    j8 = 8 * k
    o = j8 // m                      # octant index 0..7
    rem = j8 - o * m                 # position within octant, in units of 1/(8m)
    f_num = np.where(o % 2 == 1, m - rem, rem)
    theta = (math.pi * f_num) / (4.0 * m)
    c = np.cos(theta)
    s = np.sin(theta)
    cos_out = np.choose(o, [c, s, -s, -c, -c, -s, s, c])
    sin_out = np.choose(o, [s, c, c, s, -s, -c, -c, -s])
    cos_out.setflags(write=False)
    sin_out.setflags(write=False)
    return cos_out, sin_out


def root_ball(num: int, den: int) -> ComplexBall:
    """e(num/den) as a complex ball."""
    cos_t, sin_t = roots_of_unity(den)
    i = num % den
    return ComplexBall(Ball(float(cos_t[i]), _ROOT_RAD),
                       Ball(float(sin_t[i]), _ROOT_RAD))


def _lcm_orders(g: UnitGroupStructure) -> int:
    return reduce(math.lcm, (c.order for c in g.components), 1)


@dataclass(frozen=True)
class Character:
    """A Dirichlet character mod q, encoded by its generator exponents."""

    q: int
    exps: tuple[int, ...]
    parity: str              # "even" | "odd"
    conductor: int
    primitive: bool
    group: UnitGroupStructure = field(repr=False, compare=False)

    def phase_num(self, n: int) -> int:
        """Exact numerator of the phase of chi(n) over lcm(orders)."""
        L = _lcm_orders(self.group)
        ks = dlog(self.group, n)
        return sum(e * k * (L // c.order)
                   for e, k, c in zip(self.exps, ks, self.group.components)) % L

    def conjugate(self) -> "Character":
        neg = tuple((-e) % c.order for e, c in zip(self.exps, self.group.components))
        return Character(self.q, neg, self.parity, self.conductor,
                         self.primitive, self.group)

    def label(self) -> tuple[int, int]:
        """(q, n) cross-reference label: n is the unit whose dlog pairing
        reproduces this character's exponents."""
        return (self.q, reconstruct(self.group, self.exps))


def chi_value(chi: Character, n: int) -> ComplexBall:
    """chi(n) as a complex ball; exactly zero on non-units."""
    n %= chi.q
    if math.gcd(n, chi.q) != 1:
        return ComplexBall.exact(0.0)
    L = _lcm_orders(chi.group)
    return root_ball(chi.phase_num(n), L)


def _parity_of(g: UnitGroupStructure, exps: tuple[int, ...]) -> str:
    m1 = dlog(g, g.q - 1)
    L = _lcm_orders(g)
    num = sum(e * k * (L // c.order)
              for e, k, c in zip(exps, m1, g.components)) % L
    if num == 0:
        return "even"
    if 2 * num == L:
        return "odd"
    raise AssertionError("chi(-1) must be +/-1")


def _conductor_of(g: UnitGroupStructure, exps: tuple[int, ...]) -> int:
    """Divisor-wise induction test: the smallest f | q such that chi is
    trivial on every unit n = 1 (mod f).  Exact integer phase arithmetic
    throughout; for f = 1 the kernel is all units, so conductor 1 means
    principal."""
    q = g.q
    L = _lcm_orders(g)
    weights = [L // c.order for c in g.components]
    for f in sorted(d for d in range(1, q + 1) if q % d == 0):
        ok = True
        for n in range(1, q, f):
            if math.gcd(n, q) != 1:
                continue
            ks = dlog(g, n)
            if sum(e * k * w for e, k, w in zip(exps, ks, weights)) % L != 0:
                ok = False
                break
        if ok:
            return f
    raise AssertionError("conductor search exhausted all divisors")


def conductor_of(chi: Character) -> int:
    """Smallest f | q such that chi is induced by a character mod f."""
    return _conductor_of(chi.group, chi.exps)


def character_from_exps(g: UnitGroupStructure, exps: tuple[int, ...]) -> Character:
    exps = tuple(int(e) % c.order for e, c in zip(exps, g.components))
    cond = _conductor_of(g, exps)
    return Character(g.q, exps, _parity_of(g, exps), cond, cond == g.q, g)


def enumerate_characters(g: UnitGroupStructure) -> list[Character]:
    """All phi(q) characters in lexicographic exponent order (index 0 is
    the principal character)."""
    out = []
    for exps in np.ndindex(*g.orders):
        out.append(character_from_exps(g, tuple(int(e) for e in exps)))
    return out


def gauss_sum(chi: Character) -> ComplexBall:
    """tau(chi) = sum_a chi(a) e(a/q); requires chi primitive so that the
    modulus-sqrt(q) contract holds."""
    if not chi.primitive:
        raise ValueError("Gauss sum modulus contract requires a primitive character")
    q = chi.q
    L = _lcm_orders(chi.group)
    cL, sL = roots_of_unity(L)
    cq, sq = roots_of_unity(q)
    re_terms, im_terms = [], []
    rad_budget = 0.0
    for a in units(q):
        a = int(a)
        num = chi.phase_num(a)
        cr, ci = float(cL[num]), float(sL[num])
        er, ei = float(cq[a]), float(sq[a])
        re_terms.append(cr * er - ci * ei)
        im_terms.append(cr * ei + ci * er)
        # product of two unit-modulus balls: radius <= 2*(rad + rad^2) per
        # part, plus rounding of the 2-term dot products
        rad_budget += 4.0 * _ROOT_RAD + 8.0 * 2.0 ** -52
    re = math.fsum(re_terms)
    im = math.fsum(im_terms)
    rad = rad_budget * (1.0 + 2.0 ** -40) + 2.0 ** -49 * (abs(re) + abs(im) + 1.0)
    return ComplexBall(Ball(re, rad), Ball(im, rad))


# -- vectorized grids for the batch engine ----------------------------------

def parity_mask(g: UnitGroupStructure) -> np.ndarray:
    """Boolean array over enumeration order: True where chi is odd.

    chi(-1) factors as a product of +/-1 per component, so parity is the
    xor of per-axis bits.
    """
    m1 = dlog(g, g.q - 1)
    grids = []
    for comp, k in zip(g.components, m1):
        e = np.arange(comp.order, dtype=np.int64)
        # component phase e*k/order is 0 or 1/2 mod 1; the 1/2 case is a
        # sign flip of chi(-1)
        grids.append((2 * e * k) % (2 * comp.order) == comp.order)
    out = np.zeros(g.orders, dtype=bool)
    shape = [1] * len(grids)
    for i, axis_bits in enumerate(grids):
        shape_i = shape.copy()
        shape_i[i] = -1
        out ^= axis_bits.reshape(shape_i)
    return out.ravel()


def primitive_mask(g: UnitGroupStructure) -> np.ndarray:
    """Boolean array over enumeration order: True where chi is primitive.

    Local conditions per prime-power part: for odd p (exponent e >= 2)
    the component exponent must not be divisible by p, for odd p with
    e = 1 it must be nonzero; for the part 4, nonzero; for 2^e (e >= 3),
    the <5>-component exponent must be odd.  A part p^1 = 2 admits no
    primitive character at all.
    """
    fac = factorize(g.q)
    if any(p == 2 and e == 1 for p, e in fac.factors):
        return np.zeros(g.phi, dtype=bool)
    axis_masks = []
    ci = 0
    for p, e in fac.factors:
        if p == 2:
            if e == 2:
                k = np.arange(g.components[ci].order)
                axis_masks.append(k != 0)
                ci += 1
            else:
                axis_masks.append(np.ones(g.components[ci].order, dtype=bool))
                k5 = np.arange(g.components[ci + 1].order)
                axis_masks.append(k5 % 2 == 1)
                ci += 2
        else:
            k = np.arange(g.components[ci].order)
            axis_masks.append((k % p != 0) if e >= 2 else (k != 0))
            ci += 1
    out = np.ones(g.orders, dtype=bool)
    shape = [1] * len(axis_masks)
    for i, m in enumerate(axis_masks):
        s = shape.copy()
        s[i] = -1
        out &= m.reshape(s)
    return out.ravel()


def conjugate_index(g: UnitGroupStructure, index: int) -> int:
    """Enumeration index of the complex conjugate character."""
    exps = np.unravel_index(index, g.orders)
    neg = tuple((-int(e)) % c.order for e, c in zip(exps, g.components))
    return int(np.ravel_multi_index(neg, g.orders))


# -- primitive-character counting --------------------------------------------

def count_primitive(q_max: int, divisor: int | None = None) -> int:
    """Number of primitive characters with conductor q <= q_max, optionally
    restricted to divisor | q.

    Computed by sieving phi and mu and convolving phi*(q) =
    sum_{d|q} mu(d) phi(q/d).  q = 1 contributes its single (trivial)
    character when unrestricted.
    """
    if q_max < 1:
        raise ValueError("q_max must be >= 1")
    n = q_max
    phi = np.arange(n + 1, dtype=np.int64)
    for p in range(2, n + 1):
        if phi[p] == p:  # p untouched so far <=> prime
            phi[p::p] -= phi[p::p] // p
    mu = np.ones(n + 1, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(math.isqrt(n)) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
            mu[p::p] *= -1
            mu[p * p::p * p] = 0
    for p in range(int(math.isqrt(n)) + 1, n + 1):
        if sieve[p]:
            mu[p::p] *= -1
    phistar = np.zeros(n + 1, dtype=np.int64)
    for d in range(1, n + 1):
        md = mu[d]
        if md:
            phistar[d::d] += md * phi[1:n // d + 1]
    qs = np.arange(n + 1)
    mask = qs >= 1
    if divisor is not None:
        mask &= qs % divisor == 0
        mask &= qs > 0
    return int(phistar[mask].sum())
