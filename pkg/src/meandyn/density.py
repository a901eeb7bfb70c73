"""Hitting sets of a pair into a neighborhood of the square, and the
two finite density readings: along the family itself, and over right
translates of a fixed window shape.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import folner
from .groups import IntShift, multiply
from .spaces import act, contains


def hits(space, pair, nbhd, elements):
    """Members of `elements` sending the pair into the neighborhood."""
    return [g for g in elements if contains(space, nbhd, act(space, g, pair))]


@dataclass
class HittingRecord:
    ratio: Fraction
    count: int
    total: int
    members: list


def hitting_density(space, pair, nbhd, elements, keep_members=False):
    els = list(elements)
    got = hits(space, pair, nbhd, els)
    return HittingRecord(Fraction(len(got), len(els)), len(got), len(els),
                         got if keep_members else [])


@dataclass
class DensityProfile:
    window: tuple
    ratios: list          # Fractions, one per n in the window
    tail_max: Fraction    # max over the upper half; finite limsup proxy

    def rows(self):
        lo, _ = self.window
        return [(lo + i, r) for i, r in enumerate(self.ratios)]


def ua_dens_estimate(space, pair, nbhd, family, window, budget=folner.ATOM_BUDGET):
    """Upper density along the family: |hits in F_n| / |F_n| per n."""
    lo, hi = window
    ratios = [hitting_density(space, pair, nbhd,
                              folner.elements(family, n, budget)).ratio
              for n in range(lo, hi + 1)]
    return DensityProfile((lo, hi), ratios, max(ratios[len(ratios) // 2:]))


def ub_dens_estimate(space, pair, nbhd, shape, n, translates=None,
                     budget=folner.ATOM_BUDGET):
    """Upper Banach reading: best density over right translates F_n.g
    of one window shape.  Searching finitely many translates gives an
    estimate from below of the Banach density."""
    base = folner.elements(shape, n, budget)
    if translates is None:
        translates = [IntShift(t) for t in range(-5 * n, 5 * n + 1)]
    best = (Fraction(0), None)
    for t in translates:
        window = [multiply(f, t) for f in base]
        r = hitting_density(space, pair, nbhd, window).ratio
        if r > best[0]:
            best = (r, t)
    return {"sup": best[0], "argmax": best[1], "shape_n": n,
            "translates": len(list(translates))}
