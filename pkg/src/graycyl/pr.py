"""The shifted product rule: hom expressions and exact cell counting.

PR(S_1,...,S_n) is the amalgam of the n cylinders-in-one-factor over the
product of the S_i.  Its objects are (level, coordinates) with level in
{0..n} and coordinates ranging over the object sets of the S_i; its homs
are products of cell homs and smaller PR expressions.  PR(S) is the
cylinder over S, which is what the counting oracle cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .theta import ThetaCell, ThetaMorphism, gamma_image


class PRExpr:
    pass


@dataclass(frozen=True)
class Empty(PRExpr):
    def __str__(self):
        return "0"


@dataclass(frozen=True)
class Point(PRExpr):
    def __str__(self):
        return "x"


@dataclass(frozen=True)
class Interval(PRExpr):
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("interval needs lo <= hi")

    def __str__(self):
        return f"[{self.lo},{self.hi}]"


@dataclass(frozen=True)
class Cell(PRExpr):
    cell: ThetaCell

    def __str__(self):
        return str(self.cell)


@dataclass(frozen=True)
class Product(PRExpr):
    factors: tuple

    def __str__(self):
        if not self.factors:
            return "x"
        return "*".join(str(f) for f in self.factors)


@dataclass(frozen=True)
class PR(PRExpr):
    cells: tuple

    def __str__(self):
        return "PR(" + ",".join(str(c) for c in self.cells) + ")"


EMPTY = Empty()
POINT_EXPR = Point()


def product(factors) -> PRExpr:
    flat = []
    for f in factors:
        if isinstance(f, Empty):
            return EMPTY
        if isinstance(f, Point):
            continue
        if isinstance(f, Cell) and f.cell.width == 0:
            continue
        if isinstance(f, Product):
            flat.extend(f.factors)
        else:
            flat.append(f)
    if not flat:
        return POINT_EXPR
    if len(flat) == 1:
        return flat[0]
    return Product(tuple(flat))


def pr(cells) -> PRExpr:
    cells = tuple(cells)
    if not cells:
        return POINT_EXPR
    return PR(cells)


def hom_cell(s: ThetaCell, z: int, w: int) -> PRExpr:
    """Hom in a cell from object z to object w: the product of the
    children over the interval, empty when w < z."""
    if z > w:
        return EMPTY
    return product(Cell(c) for c in s.children[z:w])


# ---------------------------------------------------------------------------
# objects and homs
# ---------------------------------------------------------------------------

def pr_objects(cells) -> set:
    cells = tuple(cells)
    out = set()

    def coords(i):
        if i == len(cells):
            yield ()
            return
        for p in cells[i].objects():
            for rest in coords(i + 1):
                yield (p,) + rest

    for level in range(len(cells) + 1):
        for c in coords(0):
            out.add((level, c))
    return out


def pr_hom(cells, src, tgt) -> PRExpr:
    """Hom of PR(cells) from (x, z) to (y, w)."""
    cells = tuple(cells)
    x, zs = src
    y, ws = tgt
    if x > y or any(z > w for z, w in zip(zs, ws)):
        return EMPTY
    factors = []
    for a in range(1, x + 1):
        factors.append(hom_cell(cells[a - 1], zs[a - 1], ws[a - 1]))
    for b in range(x + 1, y + 1):
        factors.append(pr(cells[b - 1].children[zs[b - 1]:ws[b - 1]]))
    for c in range(y + 1, len(cells) + 1):
        factors.append(hom_cell(cells[c - 1], zs[c - 1], ws[c - 1]))
    return product(factors)


# ---------------------------------------------------------------------------
# counting
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def theta_count(t: ThetaCell, d: int) -> int:
    """Total d-cells (degenerate included) of a cell, by the enriched
    recursion over the tree."""
    if d == 0:
        return t.width + 1
    total = 0
    for z in range(t.width + 1):
        for w in range(z, t.width + 1):
            h = 1
            for q in range(z, w):
                h *= theta_count(t.children[q], d - 1)
            total += h
    return total


@lru_cache(maxsize=None)
def _count(expr: PRExpr, d: int) -> int:
    if isinstance(expr, Empty):
        return 0
    if isinstance(expr, Point):
        return 1
    if isinstance(expr, Interval):
        n = expr.hi - expr.lo
        if d == 0:
            return n + 1
        return (n + 2) * (n + 1) // 2
    if isinstance(expr, Cell):
        return theta_count(expr.cell, d)
    if isinstance(expr, Product):
        out = 1
        for f in expr.factors:
            out *= _count(f, d)
        return out
    if isinstance(expr, PR):
        if d == 0:
            out = len(expr.cells) + 1
            for c in expr.cells:
                out *= c.width + 1
            return out
        objs = sorted(pr_objects(expr.cells))
        total = 0
        for src in objs:
            for tgt in objs:
                total += _count(pr_hom(expr.cells, src, tgt), d - 1)
        return total
    raise TypeError(f"unknown expression {expr!r}")


def pr_count(cells_or_expr, d: int) -> int:
    """Total d-cell count of PR(cells) (or of any expression)."""
    if isinstance(cells_or_expr, PRExpr):
        return _count(cells_or_expr, d)
    return _count(pr(cells_or_expr), d)


# ---------------------------------------------------------------------------
# the cylinder functor on morphisms, reduced to the simplex-over-simplex case
# ---------------------------------------------------------------------------

def _is_simplex(t: ThetaCell) -> bool:
    return all(c.width == 0 for c in t.children)


@dataclass(frozen=True)
class PRHomMapCase:
    """One (i, j) factor of a hom map: the target case entry plus the
    vertex images of the restricted component."""
    i: int
    j: int
    kind: str            # "interval" | "point" | "empty"
    lo: int = 0
    hi: int = 0
    vertex_images: tuple = ()


@dataclass(frozen=True)
class PRHomMap:
    source: PRExpr
    target: PRExpr
    cases: tuple


@dataclass(frozen=True)
class PRMorphism:
    """Object and hom data of PR(f; g, <x,z>)."""
    f: ThetaMorphism
    x: int
    z: int
    object_map: dict      # (level, coords) -> tuple over i of (level_i, coords_i)
    hom_maps: dict        # (src_obj, tgt_obj) -> PRHomMap


def pr_morphism(f: ThetaMorphism, segment_range) -> PRMorphism:
    """The enriched functor PR((T_i)_{i in <x,z>}) -> prod_i PR((S_j)_{j in F(f)(i)})
    for a morphism of simplex-over-simplex cells."""
    x, z = segment_range
    src_cells = f.source.children[x:z]
    if not all(_is_simplex(c) for c in src_cells):
        raise ValueError("recursion bottoms out at simplex children")
    fimg = gamma_image(f.base)

    def clamp(p, i):
        return max(i - 1, min(i, p))

    idx = list(range(x + 1, z + 1))

    object_map = {}
    for (level, coords) in sorted(pr_objects(src_cells)):
        per_i = []
        for pos, i in enumerate(idx):
            lvl = f.base(clamp(x + level, i))
            imgs = tuple(f.component(i, j).base(coords[pos]) for j in fimg[i])
            per_i.append((lvl, imgs))
        object_map[(level, coords)] = tuple(per_i)

    hom_maps = {}
    objs = sorted(pr_objects(src_cells))
    for src in objs:
        for tgt in objs:
            (b, avec), (d, cvec) = src, tgt
            if b > d or any(a > c for a, c in zip(avec, cvec)):
                continue
            src_factors = []
            cases = []
            for pos, i in enumerate(idx):
                a, c = avec[pos], cvec[pos]
                crossed = (x + b) < i <= (x + d)
                src_factors.append(Interval(a, c) if crossed else POINT_EXPR)
                lvl_b = f.base(clamp(x + b, i))
                lvl_d = f.base(clamp(x + d, i))
                for j in fimg[i]:
                    g = f.component(i, j).base
                    if lvl_b < j <= lvl_d:
                        cases.append(PRHomMapCase(i, j, "interval", g(a), g(c),
                                                  tuple(g(v) for v in range(a, c + 1))))
                    else:
                        cases.append(PRHomMapCase(i, j, "point"))
            tgt_expr = product(
                Interval(cs.lo, cs.hi) if cs.kind == "interval" else POINT_EXPR
                for cs in cases)
            hom_maps[(src, tgt)] = PRHomMap(product(src_factors), tgt_expr, tuple(cases))
    return PRMorphism(f, x, z, object_map, hom_maps)
