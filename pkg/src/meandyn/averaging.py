"""Cesaro averages of the orbit distance along Folner sets, finite
profiles for the induced mean pseudometrics, and a probe for mean
equicontinuity at a point.
"""

import csv
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from . import folner
from .spaces import act, metric

DEFAULT_WINDOWS = {folner.LampBox: (1, 12)}


def default_window(family):
    return DEFAULT_WINDOWS.get(type(family), (1, 200))


def cesaro_metric(space, x, y, family, n, budget=folner.ATOM_BUDGET):
    """(1/|F_n|) * sum over g in F_n of d(g.x, g.y), exact."""
    els = folner.elements(family, n, budget)
    counts = Counter((act(space, g, x), act(space, g, y)) for g in els)
    total = sum(metric(space, p, q) * c for (p, q), c in counts.items())
    return total / len(els)


@dataclass
class AverageProfile:
    family: object
    pair: tuple
    window: tuple
    values: list = field(default_factory=list)   # Fractions, one per n
    tail_sup: Fraction = Fraction(0)
    stabilized: bool = False

    def rows(self):
        lo, _ = self.window
        return [(lo + i, v) for i, v in enumerate(self.values)]


def besicovitch_profile(space, x, y, family, window=None, budget=folner.ATOM_BUDGET):
    """Averages for n across the window; the upper-half maximum stands
    in for the limsup."""
    if window is None:
        window = default_window(family)
    lo, hi = window
    values = [cesaro_metric(space, x, y, family, n, budget) for n in range(lo, hi + 1)]
    upper = values[len(values) // 2:]
    tail_sup = max(upper)
    quarter = values[3 * len(values) // 4:]
    stabilized = (max(quarter) - min(quarter)) < Fraction(1, 1000)
    return AverageProfile(family, (x, y), (lo, hi), values, tail_sup, stabilized)


def weyl_estimate(space, x, y, families, window=None, budget=folner.ATOM_BUDGET):
    """Supremum of the Besicovitch estimates over the listed families.
    A finite list under-approximates the true supremum, so this is an
    estimate from below."""
    best = None
    for fam in families:
        prof = besicovitch_profile(space, x, y, fam,
                                   window or default_window(fam), budget)
        if best is None or prof.tail_sup > best[0]:
            best = (prof.tail_sup, fam, prof)
    return {"value": best[0], "family": best[1], "profile": best[2]}


@dataclass
class MecReport:
    verdict: str          # CONSISTENT-WITH-MEC | VIOLATION
    epsilon: float
    estimates: list       # (index, distance to limit, tail estimate)
    witness: object       # first violating approach index, if any


def mec_probe(space, family, limit, approach, epsilon=Fraction(1, 100),
              window=None, budget=folner.ATOM_BUDGET):
    """Mean-equicontinuity probe at `limit`.

    `approach` is a list of points, or of point pairs, converging to
    the limit; each contributes the tail estimate of its Besicovitch
    profile.  Consistency means the estimates die out along the
    approach; a late index whose estimate stays above epsilon is a
    violation witness.
    """
    ests = []
    witness = None
    for k, item in enumerate(approach):
        pair = item if isinstance(item, tuple) else (item, limit)
        d_lim = max(float(metric(space, pair[0], limit)),
                    float(metric(space, pair[1], limit)))
        prof = besicovitch_profile(space, pair[0], pair[1], family, window, budget)
        ests.append((k, d_lim, prof.tail_sup))
    if ests and (ests[-1][1] > 0.5 or ests[-1][1] > ests[0][1] + 1e-12):
        raise ValueError("approach does not converge to the limit point")
    tail = ests[len(ests) // 2:]
    for k, _, est in tail:
        if est >= epsilon:
            witness = k
    verdict = "CONSISTENT-WITH-MEC" if witness is None else "VIOLATION"
    return MecReport(verdict, float(epsilon), ests, witness)


def profile_to_csv(profile, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "average", "average_float"])
        for n, v in profile.rows():
            writer.writerow([n, str(v), float(v)])
