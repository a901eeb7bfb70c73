"""Detectors for the sensitivity and rigidity relations of a system,
reporting certificates at stated finite parameters, plus the smallest
closed invariant equivalence relation on a finite combinatorial model.

A POSITIVE certificate carries a witness schedule: asymptotically
diagonal pairs with strictly decreasing distances ending below the
finest tested radius, each clearing a common positive density c.  A
NEGATIVE certificate carries a finitely checked structural obstruction
(a forward-closed off-diagonal target set, or a copy-separation bound).
Everything else is INCONCLUSIVE.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import density, folner, spaces
from .groups import IntShift
from .spaces import (Ball, PointSet, ProductOf, act, contains, metric,
                     render_point, truncate)

POSITIVE = "POSITIVE"
NEGATIVE = "NEGATIVE"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class Certificate:
    kind: str
    pair: tuple
    verdict: str
    threshold: object = None       # the common density c, for positives
    witnesses: list = field(default_factory=list)
    params: dict = field(default_factory=dict)

    def to_json(self):
        def enc(v):
            if isinstance(v, Fraction):
                return {"fraction": str(v), "float": float(v)}
            if isinstance(v, spaces.Point):
                return render_point(v)
            if isinstance(v, tuple):
                return [enc(x) for x in v]
            if isinstance(v, dict):
                return {str(k): enc(x) for k, x in v.items()}
            if isinstance(v, list):
                return [enc(x) for x in v]
            if isinstance(v, (int, float, str, bool)) or v is None:
                return v
            return repr(v)

        return {"kind": self.kind, "pair": enc(self.pair),
                "verdict": self.verdict, "threshold": enc(self.threshold),
                "witnesses": enc(self.witnesses), "params": enc(self.params)}


# densities below this are treated as finite-size noise, not evidence
DENSITY_FLOOR = Fraction(1, 50)


def _witness_schedule(space, witnesses, ks, min_radius):
    """Materialize witness pairs and enforce the diagonality contract:
    distances strictly decreasing (ties allowed only at zero, for
    witnesses sitting exactly on the diagonal) and ending below the
    finest radius."""
    pairs = [witnesses(k) for k in ks]
    dists = [metric(space, p[0], p[1]) for p in pairs]
    ok = (all(a > b or a == b == 0 for a, b in zip(dists, dists[1:]))
          and dists[-1] < min_radius)
    return pairs, dists, ok


def _positive(kind, pair, scores, pairs, dists, ok, params, floor=DENSITY_FLOOR):
    c = min(scores.values()) if scores else Fraction(0)
    verdict = POSITIVE if ok and c >= floor else INCONCLUSIVE
    wit = [{"pair": p, "distance": d,
            "scores": {k: v for (kk, k), v in scores.items() if kk == i}}
           for i, (p, d) in enumerate(zip(pairs, dists))]
    params = dict(params, floor=float(floor), common_density=c)
    return Certificate(kind, pair, verdict, c if verdict == POSITIVE else None,
                       wit, params)


def detect_srjms_f(space, pair, family, witnesses, radii, ks, ns=None,
                   budget=folner.ATOM_BUDGET):
    """Sensitivity along the family: witness k is scored by the density
    of its hitting set inside a single matched set F_{n_k} (by default
    n_k = k)."""
    radii = sorted(radii, reverse=True)
    if ns is None:
        ns = list(ks)
    pairs, dists, ok = _witness_schedule(space, witnesses, ks, min(radii))
    scores = {}
    for i, (n, wp) in enumerate(zip(ns, pairs)):
        els = folner.elements(family, n, budget)
        for r in radii:
            rec = density.hitting_density(space, wp, Ball(pair, r), els)
            scores[(i, float(r))] = rec.ratio
    return _positive("srjms_f", pair, scores, pairs, dists, ok,
                     {"family": repr(family), "ks": list(ks), "ns": list(ns),
                      "radii": [float(r) for r in radii]})


def detect_swsm_f(space, pair, family, witnesses, radii, ks, window,
                  budget=folner.ATOM_BUDGET):
    """Sensitivity in the sense of separated witness pairs: the query
    pair must be off the diagonal; each witness is scored by its best
    density over the window."""
    if pair[0] == pair[1]:
        raise ValueError("witness-separation sensitivity is off-diagonal only")
    radii = sorted(radii, reverse=True)
    pairs, dists, ok = _witness_schedule(space, witnesses, ks, min(radii))
    lo, hi = window
    scores = {}
    for i, wp in enumerate(pairs):
        for r in radii:
            best = max(density.hitting_density(
                space, wp, Ball(pair, r),
                folner.elements(family, n, budget)).ratio
                for n in range(lo, hi + 1))
            scores[(i, float(r))] = best
    return _positive("swsm_f", pair, scores, pairs, dists, ok,
                     {"family": repr(family), "ks": list(ks),
                      "window": list(window), "radii": [float(r) for r in radii]})


def detect_qrms_f(space, pair, family, witnesses, radii, ks, window,
                  budget=folner.ATOM_BUDGET):
    """Rigid-mean sensitivity along the family: witness k is scored by
    the tail of its upper-density profile over the window."""
    radii = sorted(radii, reverse=True)
    pairs, dists, ok = _witness_schedule(space, witnesses, ks, min(radii))
    scores = {}
    for i, wp in enumerate(pairs):
        for r in radii:
            prof = density.ua_dens_estimate(space, wp, Ball(pair, r),
                                            family, window, budget)
            scores[(i, float(r))] = prof.tail_max
    return _positive("qrms_f", pair, scores, pairs, dists, ok,
                     {"family": repr(family), "ks": list(ks),
                      "window": list(window), "radii": [float(r) for r in radii]})


def detect_qrms_banach(space, pair, shape, witnesses, radii, ks, n,
                       translates=None, budget=folner.ATOM_BUDGET):
    """Banach version: witness k is scored by the best density over
    right translates of the window shape."""
    radii = sorted(radii, reverse=True)
    pairs, dists, ok = _witness_schedule(space, witnesses, ks, min(radii))
    scores = {}
    for i, wp in enumerate(pairs):
        for r in radii:
            est = density.ub_dens_estimate(space, wp, Ball(pair, r),
                                           shape, n, translates, budget)
            scores[(i, float(r))] = est["sup"]
    return _positive("qrms_banach", pair, scores, pairs, dists, ok,
                     {"shape": repr(shape), "ks": list(ks), "n": n,
                      "radii": [float(r) for r in radii]})


def forward_closure_negative(space, nbhd, family, n_list, truncation,
                             budget=folner.ATOM_BUDGET):
    """NEGATIVE certificate for sensitivity towards a product target:
    if membership in each factor propagates backwards along the whole
    element range (g.p in U implies p in U), any hit would pull the
    witness pair itself into U; but U keeps a positive gap from the
    diagonal, so asymptotically diagonal witnesses eventually miss U
    entirely and all densities vanish."""
    if not (isinstance(nbhd, ProductOf)
            and isinstance(nbhd.left, PointSet)
            and isinstance(nbhd.right, PointSet)):
        raise ValueError("closure argument needs a product of point sets")
    els = []
    seen = set()
    for n in n_list:
        for g in folner.elements(family, n, budget):
            if g not in seen:
                seen.add(g)
                els.append(g)
    points = truncate(space, truncation)
    closed = True
    counterexample = None
    for factor in (nbhd.left, nbhd.right):
        for p in points:
            if contains(space, factor, p):
                continue
            for g in els:
                if contains(space, factor, act(space, g, p)):
                    closed = False
                    counterexample = (p, g)
                    break
            if not closed:
                break
        if not closed:
            break
    margin = _product_gap(space, nbhd, points)
    verdict = NEGATIVE if closed and margin > 0 else INCONCLUSIVE
    return Certificate("forward_closure", None, verdict, None,
                       [{"margin": margin, "counterexample": counterexample}],
                       {"family": repr(family), "n_list": list(n_list),
                        "truncation": truncation, "checked_elements": len(els),
                        "checked_points": len(points)})


def _product_gap(space, nbhd, points):
    left = [p for p in points if contains(space, nbhd.left, p)]
    right = [p for p in points if contains(space, nbhd.right, p)]
    if not left or not right:
        return Fraction(0)
    return min(metric(space, p, q) for p in left for q in right)


def detect_proximal(space, pair, elements, delta=Fraction(1, 100)):
    best = None
    for g in elements:
        moved = act(space, g, pair)
        d = metric(space, moved[0], moved[1])
        if best is None or d < best[0]:
            best = (d, g)
    verdict = POSITIVE if best[0] < delta else INCONCLUSIVE
    return Certificate("proximal", pair, verdict, None,
                       [{"min_distance": best[0], "argmin": best[1]}],
                       {"delta": float(delta), "elements": len(list(elements))})


def detect_qrp(space, pair, epsilons, elements, truncation=40):
    """Regional proximality probe.  POSITIVE when every scale admits a
    perturbed pair brought close together by some element; NEGATIVE
    when, for a translation action, the perturbed pairs are trapped in
    copies whose closed layout intervals keep a gap above every scale."""
    epsilons = sorted((Fraction(e) if not isinstance(e, Fraction) else e
                       for e in epsilons), reverse=True)
    points = truncate(space, truncation)
    witnesses = []
    found_all = True
    for eps in epsilons:
        near_x = [y for y in points if metric(space, pair[0], y) < eps]
        near_y = [y for y in points if metric(space, pair[1], y) < eps]
        hit = None
        for y in near_x:
            for y2 in near_y:
                for g in elements:
                    d = metric(space, act(space, g, y), act(space, g, y2))
                    if d < eps:
                        hit = {"epsilon": float(eps), "pair": (y, y2),
                               "element": g, "distance": d}
                        break
                if hit:
                    break
            if hit:
                break
        if hit:
            witnesses.append(hit)
        else:
            found_all = False
            witnesses.append({"epsilon": float(eps), "pair": None,
                              "copies": (sorted({p.copy for p in near_x}),
                                         sorted({p.copy for p in near_y}))})
    if found_all:
        verdict = POSITIVE
    elif space.action == spaces.TRANSLATE and _copy_gap_blocks(space, witnesses,
                                                               epsilons):
        verdict = NEGATIVE
    else:
        verdict = INCONCLUSIVE
    return Certificate("qrp", pair, verdict, None, witnesses,
                       {"epsilons": [float(e) for e in epsilons],
                        "truncation": truncation,
                        "elements": len(list(elements))})


def _copy_gap_blocks(space, witnesses, epsilons):
    """Translations preserve copies, so if every perturbation at the
    finest scale stays in copies whose closed layout ranges are at
    least max(eps) apart, no element can ever bring the legs close."""
    failed = [w for w in witnesses if w.get("pair") is None]
    if not failed:
        return False
    w = failed[-1]
    gap = min(_range_gap(space, ca, cb)
              for ca in w["copies"][0] for cb in w["copies"][1])
    return gap >= max(epsilons)


def _range_gap(space, copy_a, copy_b):
    def rng(tag):
        if space.kind == spaces.ONE_POINT:
            i = space.copies.index(tag)
            return (i - 1, i + 1)
        off, _ = space.layout[space.copies.index(tag)]
        return (off, off + 1)

    (a0, a1), (b0, b1) = rng(copy_a), rng(copy_b)
    if a1 < b0:
        return b0 - a1
    if b1 < a0:
        return a0 - b1
    return Fraction(0)


# --------------------------------------------------------- finite model hull

@dataclass(frozen=True)
class FiniteModel:
    """Combinatorial skeleton of a system: limit classes and free-orbit
    classes, generator permutations, and a directional closure map
    sending each class to its (backward, forward) limit classes."""
    classes: tuple
    generators: tuple        # each a dict class -> class
    closure: dict            # class -> (backward class, forward class)

    def __post_init__(self):
        for c in self.classes:
            b, f = self.closure[c]
            if b not in self.classes or f not in self.classes:
                raise ValueError("closure map leaves the model")


def icer_hull(model, pairs):
    """Smallest equivalence relation containing `pairs` that is closed
    under the generator permutations and the directional closure map."""
    rel = set()
    for c in model.classes:
        rel.add((c, c))
    for a, b in pairs:
        rel.add((a, b))
    while True:
        new = set(rel)
        for a, b in rel:
            new.add((b, a))
            for g in model.generators:
                new.add((g[a], g[b]))
            ba, fa = model.closure[a]
            bb, fb = model.closure[b]
            new.add((ba, bb))
            new.add((fa, fb))
        for a, b in rel:
            for c, d in rel:
                if b == c:
                    new.add((a, d))
        if new == rel:
            return frozenset(rel)
        rel = new
