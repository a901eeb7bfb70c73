"""Compactified integer orbits and the metrics the averages run over.

Two building blocks, each available in several tagged copies:

* one-point circles: the integers plus a single point at infinity,
  embedded by 1/(2s+1) (s >= 0), 1/(2s-1) (s < 0) and 0 at infinity;
* two-point intervals: the integers plus distinct limits at either
  end, embedded order-preservingly into a unit segment.

Copies of two-point intervals may be glued at their limit points; the
glued chain is laid out as consecutive unit segments so that the
metric on one connected component is plain distance along the line.
Points in different components sit at distance equal to their copy
separation.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .groups import INTEGERS, LAMPLIGHTER, IntShift, Lamp

P_INF = "+inf"
M_INF = "-inf"
O_INF = "inf"
_LIMITS = (P_INF, M_INF, O_INF)

ONE_POINT = "one_point_z"
TWO_POINT = "two_point_z"

TRANSLATE = "translate"  # g.x = x + g
SHIFT = "shift"          # generator moves x to x - 1


@dataclass(frozen=True)
class Point:
    coord: object  # int, or one of "+inf" / "-inf" / "inf"
    copy: int = 0

    def is_limit(self):
        return self.coord in _LIMITS

    def __repr__(self):
        return "Point(%r, %d)" % (self.coord, self.copy)


@dataclass(frozen=True)
class Space:
    kind: str
    copies: tuple            # copy tags in layout order
    group: str
    action: str
    layout: tuple = ()       # two-point only: (offset, direction) per tag
    gluings: tuple = ()      # pairs (alias_point, canonical_point)
    name: str = ""

    def limit_points(self):
        seen = []
        coords = (O_INF,) if self.kind == ONE_POINT else (M_INF, P_INF)
        for tag in self.copies:
            for c in coords:
                p = canonical(self, Point(c, tag))
                if p not in seen:
                    seen.append(p)
        return seen


def one_point_space(copies=(0,), group=INTEGERS, action=TRANSLATE, name=""):
    return Space(ONE_POINT, tuple(copies), group, action, name=name)


def two_point_space(copies=(1,), layout=None, gluings=(), group=INTEGERS,
                    action=TRANSLATE, name=""):
    if layout is None:
        layout = tuple((i, 1) for i in range(len(copies)))
    return Space(TWO_POINT, tuple(copies), group, action,
                 layout=tuple(layout), gluings=tuple(gluings), name=name)


def canonical(space, p):
    for alias, rep in space.gluings:
        if p == alias:
            return rep
    return p


def _check_copy(space, p):
    if p.copy not in space.copies:
        raise ValueError("copy %r not in space %r" % (p.copy, space.name or space.kind))


def _layout_of(space, tag):
    return space.layout[space.copies.index(tag)]


@lru_cache(maxsize=None)
def _phi(s):
    # one-point circle coordinate; integers accumulate at 0 = infinity
    if s >= 0:
        return Fraction(1, 2 * s + 1)
    return Fraction(1, 2 * s - 1)


@lru_cache(maxsize=None)
def _psi(s):
    # order embedding of Z into (0,1); -inf -> 0, +inf -> 1
    return (1 + Fraction(s, 1 + abs(s))) / 2


def embed(space, p):
    """Line coordinate of a point; exact rational."""
    p = canonical(space, p)
    _check_copy(space, p)
    if space.kind == ONE_POINT:
        local = Fraction(0) if p.coord == O_INF else _phi(p.coord)
        return local + space.copies.index(p.copy)
    offset, direction = _layout_of(space, p.copy)
    if p.coord == M_INF:
        local = Fraction(0)
    elif p.coord == P_INF:
        local = Fraction(1)
    else:
        local = _psi(p.coord)
    return offset + local if direction > 0 else offset + 1 - local


def component(space, p):
    """Identifier of the connected piece a point lies in."""
    p = canonical(space, p)
    _check_copy(space, p)
    if space.kind == ONE_POINT:
        return space.copies.index(p.copy)
    return _component_of_tag(space, p.copy)


@lru_cache(maxsize=None)
def _components(space):
    parent = {tag: tag for tag in space.copies}

    def find(t):
        while parent[t] != t:
            parent[t] = parent[parent[t]]
            t = parent[t]
        return t

    for alias, rep in space.gluings:
        parent[find(alias.copy)] = find(rep.copy)
    return {tag: space.copies.index(find(tag)) for tag in space.copies}


def _component_of_tag(space, tag):
    return _components(space)[tag]


def metric(space, p, q):
    """Distance; accepts two points or two point pairs (sum metric)."""
    if isinstance(p, tuple):
        return _metric1(space, p[0], q[0]) + _metric1(space, p[1], q[1])
    return _metric1(space, p, q)


@lru_cache(maxsize=1_000_000)
def _metric1(space, p, q):
    p = canonical(space, p)
    q = canonical(space, q)
    if p == q:
        return Fraction(0)
    cp, cq = component(space, p), component(space, q)
    if cp == cq:
        return abs(embed(space, p) - embed(space, q))
    return Fraction(abs(space.copies.index(p.copy) - space.copies.index(q.copy)))


def act(space, g, p):
    """Apply a group element to a point or a point pair (diagonally)."""
    if isinstance(p, tuple):
        return tuple(act(space, g, q) for q in p)
    p = canonical(space, p)
    _check_copy(space, p)
    if space.group == LAMPLIGHTER and isinstance(g, IntShift):
        g = Lamp(g.a, ())  # pure shifts embed into the lamplighter
    if isinstance(g, IntShift):
        if space.group != INTEGERS:
            raise ValueError("integer element on a %s-space" % space.group)
        if p.is_limit():
            return p
        step = g.a if space.action == TRANSLATE else -g.a
        return Point(p.coord + step, p.copy)
    if not isinstance(g, Lamp):
        raise TypeError("not a group element: %r" % (g,))
    if space.group != LAMPLIGHTER:
        raise ValueError("lamplighter element on a %s-space" % space.group)
    if p.is_limit():
        return p
    copy = p.copy
    if p.coord in g.lamps:
        # toggle swaps the two one-point copies at its site
        copy = space.copies[1 - space.copies.index(copy)]
    return Point(p.coord - g.a, copy)


def truncate(space, n):
    """Finite stand-in: coordinates |s| <= n in every copy plus all limits."""
    if n < 0:
        raise ValueError("negative truncation level")
    pts = []
    for tag in space.copies:
        for s in range(-n, n + 1):
            pts.append(Point(s, tag))
    for p in space.limit_points():
        if p not in pts:
            pts.append(p)
    return sorted(set(pts), key=lambda p: sort_key(space, p))


def sort_key(space, p):
    if isinstance(p, tuple):
        return tuple(sort_key(space, q) for q in p)
    p = canonical(space, p)
    return (component(space, p), embed(space, p),
            space.copies.index(p.copy), str(p.coord))


# ---------------------------------------------------------------- text forms

def render_point(p):
    if isinstance(p, tuple):
        return ";".join(render_point(q) for q in p)
    return "%s^%d" % (p.coord, p.copy)


def parse_point(text, space=None):
    """Read "5^1", "+inf^2", "inf^0"; "up_3"/"down_inf" name the two
    one-point copies 1/0.  A ";" separates the legs of a pair."""
    text = text.strip()
    if ";" in text:
        a, b = text.split(";", 1)
        return (parse_point(a, space), parse_point(b, space))
    if text.startswith(("up_", "down_")):
        word, _, c = text.partition("_")
        coord = O_INF if c == "inf" else int(c)
        p = Point(coord, 1 if word == "up" else 0)
    else:
        c, _, tag = text.rpartition("^")
        if not c:
            c, tag = text, "0"
        coord = c if c in _LIMITS else int(c)
        p = Point(coord, int(tag))
    if space is not None:
        p = canonical(space, p)
        _check_copy(space, p)
    return p


def point_to_json(p):
    if isinstance(p, tuple):
        return [point_to_json(q) for q in p]
    return {"coord": str(p.coord), "copy": p.copy}


def point_from_json(obj):
    if isinstance(obj, list):
        return tuple(point_from_json(o) for o in obj)
    c = obj["coord"]
    return Point(c if c in _LIMITS else int(c), int(obj["copy"]))


def space_to_json(space):
    return {
        "kind": space.kind,
        "copies": list(space.copies),
        "group": space.group,
        "action": space.action,
        "layout": [list(e) for e in space.layout],
        "gluings": [[point_to_json(a), point_to_json(b)] for a, b in space.gluings],
        "name": space.name,
    }


def space_from_json(obj):
    gluings = tuple((point_from_json(a), point_from_json(b))
                    for a, b in obj.get("gluings", []))
    return Space(obj["kind"], tuple(obj["copies"]), obj["group"], obj["action"],
                 layout=tuple(tuple(e) for e in obj.get("layout", [])),
                 gluings=gluings, name=obj.get("name", ""))


# ------------------------------------------------------------- neighborhoods

@dataclass(frozen=True)
class Ball:
    center: object  # point or pair
    radius: Fraction


@dataclass(frozen=True)
class Tail:
    """All integer coordinates s with s <= bound (side "le") or
    s >= bound (side "ge") in one copy.  Limit points are listed
    separately in the enclosing PointSet."""
    copy: int
    side: str
    bound: int


@dataclass(frozen=True)
class PointSet:
    points: frozenset
    tails: tuple = ()


@dataclass(frozen=True)
class ProductOf:
    left: object
    right: object


def contains(space, nbhd, p):
    if isinstance(nbhd, Ball):
        return metric(space, nbhd.center, p) < nbhd.radius
    if isinstance(nbhd, ProductOf):
        return (contains(space, nbhd.left, p[0])
                and contains(space, nbhd.right, p[1]))
    if isinstance(nbhd, PointSet):
        if isinstance(p, tuple):
            raise TypeError("point set queried with a pair")
        p = canonical(space, p)
        if p in nbhd.points:
            return True
        if p.is_limit():
            return False
        for t in nbhd.tails:
            if p.copy != t.copy:
                continue
            if t.side == "le" and p.coord <= t.bound:
                return True
            if t.side == "ge" and p.coord >= t.bound:
                return True
        return False
    raise TypeError("not a neighborhood: %r" % (nbhd,))
