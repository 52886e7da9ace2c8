"""Cells and morphisms of the wreath-product cell category.

A cell is a finite planar rooted tree [n];(T_1,...,T_n).  Morphisms pair a
monotone map of the base simplices with a family of component morphisms
indexed by the segment-image sets F(f)(i) = {j | f(i-1) < j <= f(i)}.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


class CellSyntaxError(ValueError):
    """Raised on malformed cell literals; carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class ThetaCell:
    children: tuple["ThetaCell", ...]

    @property
    def width(self) -> int:
        return len(self.children)

    def dimension(self) -> int:
        if self.width == 0:
            return 0
        return 1 + max(c.dimension() for c in self.children)

    def node_count(self) -> int:
        return 1 + sum(c.node_count() for c in self.children)

    def objects(self):
        """Vertex set {0..n} of the base simplex."""
        return range(self.width + 1)

    def __str__(self) -> str:
        n = self.width
        if n == 0:
            return "[0]"
        if all(c.width == 0 for c in self.children):
            return f"[{n}]"
        return f"[{n}](" + ",".join(str(c) for c in self.children) + ")"

    def __repr__(self) -> str:
        return f"ThetaCell({self})"


POINT = ThetaCell(())


def cell(width: int, *children) -> ThetaCell:
    """Build [width];(children), filling missing children with [0]."""
    if children:
        if len(children) != width:
            raise ValueError(f"width {width} needs {width} children, got {len(children)}")
        return ThetaCell(tuple(children))
    return ThetaCell((POINT,) * width)


def globe(n: int) -> ThetaCell:
    """The n-globe [1];[1];...;[1]."""
    t = POINT
    for _ in range(n):
        t = ThetaCell((t,))
    return t


def mirror(t: ThetaCell) -> ThetaCell:
    """Recursive left-right reversal of the tree."""
    return ThetaCell(tuple(mirror(c) for c in reversed(t.children)))


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def parse_cell(text: str) -> ThetaCell:
    """Parse the grammar  cell := "[" nat "]" ("(" cell ("," cell)* ")")?

    ``[k]`` with k >= 1 and no parens is sugar for k copies of [0];
    ``G<n>`` is sugar for the n-globe.  Whitespace is insignificant.
    """
    src = text
    pos = 0

    def skip_ws():
        nonlocal pos
        while pos < len(src) and src[pos].isspace():
            pos += 1

    def expect(ch):
        nonlocal pos
        skip_ws()
        if pos >= len(src) or src[pos] != ch:
            raise CellSyntaxError(f"expected {ch!r}", pos)
        pos += 1

    def parse_nat():
        nonlocal pos
        skip_ws()
        start = pos
        while pos < len(src) and src[pos].isdigit():
            pos += 1
        if pos == start:
            raise CellSyntaxError("expected a number", start)
        return int(src[start:pos])

    def parse_one():
        nonlocal pos
        skip_ws()
        if pos < len(src) and src[pos] == "G":
            pos += 1
            return globe(parse_nat())
        expect("[")
        n = parse_nat()
        expect("]")
        skip_ws()
        if pos < len(src) and src[pos] == "(":
            pos += 1
            kids = [parse_one()]
            skip_ws()
            while pos < len(src) and src[pos] == ",":
                pos += 1
                kids.append(parse_one())
                skip_ws()
            expect(")")
            if len(kids) != n:
                raise CellSyntaxError(f"width {n} with {len(kids)} children", pos)
            return ThetaCell(tuple(kids))
        return cell(n)

    t = parse_one()
    skip_ws()
    if pos != len(src):
        raise CellSyntaxError("trailing input", pos)
    return t


# ---------------------------------------------------------------------------
# globular sums
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GlobularSumDecomposition:
    leaf_dims: tuple[int, ...]
    meet_dims: tuple[int, ...]

    def __str__(self) -> str:
        if not self.meet_dims:
            return str(self.leaf_dims[0])
        parts = [str(self.leaf_dims[0])]
        for m, n in zip(self.meet_dims, self.leaf_dims[1:]):
            parts.append(f"(+{m}) {n}")
        return " ".join(parts)


def globular_sum(t: ThetaCell) -> GlobularSumDecomposition:
    """Leaf depths left-to-right and depths of consecutive-leaf meets."""
    leaves: list[int] = []
    meets: list[int] = []

    def walk(u: ThetaCell, depth: int):
        if u.width == 0:
            leaves.append(depth)
            return
        for i, c in enumerate(u.children):
            if i > 0:
                meets.append(depth)
            walk(c, depth + 1)

    walk(t, 0)
    return GlobularSumDecomposition(tuple(leaves), tuple(meets))


def reconstruct(d: GlobularSumDecomposition) -> ThetaCell:
    """Inverse of globular_sum."""
    leaves = list(d.leaf_dims)
    meets = list(d.meet_dims)

    def build(idx_lo: int, idx_hi: int, depth: int) -> ThetaCell:
        # leaves[idx_lo:idx_hi] all have depth > `depth` unless single leaf at depth
        if idx_hi - idx_lo == 1 and leaves[idx_lo] == depth:
            return POINT
        # split at meets equal to `depth`
        kids = []
        lo = idx_lo
        for k in range(idx_lo, idx_hi - 1):
            if meets[k] == depth:
                kids.append(build(lo, k + 1, depth + 1))
                lo = k + 1
        kids.append(build(lo, idx_hi, depth + 1))
        return ThetaCell(tuple(kids))

    return build(0, len(leaves), 0)


# ---------------------------------------------------------------------------
# simplicial maps and the functor F into Segal's category
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SimplicialMap:
    """Monotone map [n] -> [m], stored as the n+1 vertex images."""

    source_width: int
    target_width: int
    image: tuple[int, ...]

    def __post_init__(self):
        if len(self.image) != self.source_width + 1:
            raise ValueError("image length must be source width + 1")
        if any(v < 0 or v > self.target_width for v in self.image):
            raise ValueError("vertex image out of range")
        if any(a > b for a, b in zip(self.image, self.image[1:])):
            raise ValueError("map is not monotone")

    def __call__(self, v: int) -> int:
        return self.image[v]

    def then(self, other: "SimplicialMap") -> "SimplicialMap":
        if self.target_width != other.source_width:
            raise ValueError("widths do not compose")
        return SimplicialMap(self.source_width, other.target_width,
                             tuple(other.image[v] for v in self.image))

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.image)) + "}"


def simplicial_identity(n: int) -> SimplicialMap:
    return SimplicialMap(n, n, tuple(range(n + 1)))


def coface(n: int, k: int) -> SimplicialMap:
    """d^k: [n] -> [n+1], skipping vertex k."""
    return SimplicialMap(n, n + 1, tuple(i if i < k else i + 1 for i in range(n + 1)))


def codegeneracy(n: int, k: int) -> SimplicialMap:
    """s^k: [n] -> [n-1], repeating vertex k."""
    return SimplicialMap(n, n - 1, tuple(i if i <= k else i - 1 for i in range(n + 1)))


def gamma_image(f: SimplicialMap) -> dict[int, tuple[int, ...]]:
    """F(f)(i) = {j | f(i-1) < j <= f(i)} for each source segment i."""
    return {i: tuple(range(f(i - 1) + 1, f(i) + 1)) for i in range(1, f.source_width + 1)}


# ---------------------------------------------------------------------------
# morphisms of the wreath product
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ThetaMorphism:
    source: ThetaCell
    target: ThetaCell
    base: SimplicialMap
    components: tuple[tuple[tuple[int, int], "ThetaMorphism"], ...]

    def __post_init__(self):
        if self.base.source_width != self.source.width:
            raise ValueError("base source width mismatch")
        if self.base.target_width != self.target.width:
            raise ValueError("base target width mismatch")
        expected = [(i, j) for i in range(1, self.source.width + 1)
                    for j in gamma_image(self.base)[i]]
        if [k for k, _ in self.components] != expected:
            raise ValueError("component keys must be exactly the segment-image pairs")
        for (i, j), f in self.components:
            if f.source != self.source.children[i - 1]:
                raise ValueError(f"component ({i},{j}) has wrong source")
            if f.target != self.target.children[j - 1]:
                raise ValueError(f"component ({i},{j}) has wrong target")

    def component(self, i: int, j: int) -> "ThetaMorphism":
        for k, f in self.components:
            if k == (i, j):
                return f
        raise KeyError((i, j))

    def then(self, other: "ThetaMorphism") -> "ThetaMorphism":
        """Composite self;other (self first)."""
        if self.target != other.source:
            raise ValueError("source/target mismatch")
        base = self.base.then(other.base)
        comps = []
        g_self = gamma_image(self.base)
        g_other = gamma_image(other.base)
        for i in range(1, self.source.width + 1):
            for j in gamma_image(base)[i]:
                # unique k in F(self.base)(i) with j in F(other.base)(k)
                ks = [k for k in g_self[i] if j in g_other[k]]
                assert len(ks) == 1
                comps.append(((i, j), self.component(i, ks[0]).then(other.component(ks[0], j))))
        return ThetaMorphism(self.source, other.target, base, tuple(comps))

    def __str__(self) -> str:
        comps = ",".join(f"({i},{j}):{f}" for (i, j), f in self.components)
        return f"{self.base};[{comps}]"


def dimension(t: ThetaCell) -> int:
    return t.dimension()


def compose(f: ThetaMorphism, g: ThetaMorphism) -> ThetaMorphism:
    """The composite of f followed by g."""
    return f.then(g)


def theta_identity(t: ThetaCell) -> ThetaMorphism:
    comps = tuple(((i, i), theta_identity(t.children[i - 1])) for i in range(1, t.width + 1))
    return ThetaMorphism(t, t, simplicial_identity(t.width), comps)


def bang(source: ThetaCell) -> ThetaMorphism:
    """The unique morphism to [0]."""
    return ThetaMorphism(source, POINT, SimplicialMap(source.width, 0, (0,) * (source.width + 1)), ())


def theta_morphism(source, target, base, comp_map) -> ThetaMorphism:
    """Assemble a morphism from a base map and a dict {(i,j): ThetaMorphism}."""
    comps = []
    for i in range(1, source.width + 1):
        for j in gamma_image(base)[i]:
            comps.append(((i, j), comp_map[(i, j)]))
    return ThetaMorphism(source, target, base, tuple(comps))


def vertex(t: ThetaCell, p: int) -> ThetaMorphism:
    """The object inclusion [0] -> T picking vertex p."""
    return ThetaMorphism(POINT, t, SimplicialMap(0, t.width, (p,)), ())


def parse_morphism(data, source: ThetaCell | None = None, target: ThetaCell | None = None) -> ThetaMorphism:
    """Morphism literal: {"source": .., "target": .., "base": [v0..vn],
    "components": {"i,j": literal}}.  Cells are literals in the cell grammar."""
    src = parse_cell(data["source"]) if "source" in data else source
    tgt = parse_cell(data["target"]) if "target" in data else target
    base = SimplicialMap(src.width, tgt.width, tuple(data["base"]))
    comp_map = {}
    for i in range(1, src.width + 1):
        for j in gamma_image(base)[i]:
            a, b = src.children[i - 1], tgt.children[j - 1]
            sub = data.get("components", {}).get(f"{i},{j}")
            if sub is not None:
                comp_map[(i, j)] = parse_morphism(sub, a, b)
            elif b == POINT:
                comp_map[(i, j)] = bang(a)
            elif a == b:
                comp_map[(i, j)] = theta_identity(a)
            else:
                raise KeyError(f"component {i},{j} required for {a} -> {b}")
    return theta_morphism(src, tgt, base, comp_map)


# ---------------------------------------------------------------------------
# hyperfaces (codimension-1 faces with target T)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Hyperface:
    kind: str  # "vertical" | "outer" | "inner"
    position: tuple
    map: ThetaMorphism


def _outer_face(t: ThetaCell, k: int) -> ThetaMorphism:
    """d^0 (k = 0, drops slot 1) or d^n (k = n, drops slot n)."""
    n = t.width
    if k == 0:
        src = ThetaCell(t.children[1:])
        base = coface(n - 1, 0)
        comp_map = {(i, i + 1): theta_identity(src.children[i - 1]) for i in range(1, n)}
    else:
        src = ThetaCell(t.children[:-1])
        base = coface(n - 1, n)
        comp_map = {(i, i): theta_identity(src.children[i - 1]) for i in range(1, n)}
    return theta_morphism(src, t, base, comp_map)


def _inner_face(t: ThetaCell, k: int, variant: str) -> ThetaMorphism:
    """d^k with the unit slot at k+1 (variant "after") or k (variant "before")."""
    n = t.width
    drop = k + 1 if variant == "after" else k
    src = ThetaCell(t.children[:drop - 1] + t.children[drop:])
    base = coface(n - 1, k)
    comp_map = {}
    for i in range(1, n):
        if i < k:
            comp_map[(i, i)] = theta_identity(src.children[i - 1])
        elif i == k:
            if variant == "after":
                comp_map[(k, k)] = theta_identity(src.children[k - 1])
                comp_map[(k, k + 1)] = bang(src.children[k - 1])
            else:
                comp_map[(k, k)] = bang(src.children[k - 1])
                comp_map[(k, k + 1)] = theta_identity(src.children[k - 1])
        else:
            comp_map[(i, i + 1)] = theta_identity(src.children[i - 1])
    return theta_morphism(src, t, base, comp_map)


def hyperfaces(t: ThetaCell) -> list[Hyperface]:
    """All vertical, outer and inner hyperfaces into t.

    Vertical faces replace one child by one of its own hyperfaces' sources;
    outer faces drop the first or last slot; inner faces d^k exist next to
    unit children and come in an (id,!) and a (!,id) variant.
    """
    n = t.width
    out: list[Hyperface] = []
    for k in range(1, n + 1):
        for sub in hyperfaces(t.children[k - 1]):
            comp_map = {(i, i): theta_identity(t.children[i - 1]) for i in range(1, n + 1)}
            comp_map[(k, k)] = sub.map
            src = ThetaCell(t.children[:k - 1] + (sub.map.source,) + t.children[k:])
            m = theta_morphism(src, t, simplicial_identity(n), comp_map)
            out.append(Hyperface("vertical", (k,) + sub.position, m))
    if n >= 1:
        out.append(Hyperface("outer", (0,), _outer_face(t, 0)))
        out.append(Hyperface("outer", (n,), _outer_face(t, n)))
    for k in range(1, n):
        if t.children[k] == POINT:
            out.append(Hyperface("inner", (k, "after"), _inner_face(t, k, "after")))
        if t.children[k - 1] == POINT:
            out.append(Hyperface("inner", (k, "before"), _inner_face(t, k, "before")))
    return out


# ---------------------------------------------------------------------------
# leaf and meet globe inclusions (the globular sum realized in Theta)
# ---------------------------------------------------------------------------

def leaf_inclusion(t: ThetaCell, leaf: int) -> ThetaMorphism:
    """The inclusion of the `leaf`-th leaf globe into t."""
    if t.width == 0:
        return theta_identity(t)
    counts = [len(globular_sum(c).leaf_dims) for c in t.children]
    s, acc = 1, 0
    while acc + counts[s - 1] <= leaf:
        acc += counts[s - 1]
        s += 1
    inner = leaf_inclusion(t.children[s - 1], leaf - acc)
    base = SimplicialMap(1, t.width, (s - 1, s))
    return theta_morphism(ThetaCell((inner.source,)), t, base, {(1, s): inner})


def meet_inclusion(t: ThetaCell, gap: int) -> ThetaMorphism:
    """The inclusion of the meet globe between leaves gap and gap+1."""
    if t.width == 0:
        raise ValueError("a point has no meets")
    counts = [len(globular_sum(c).leaf_dims) for c in t.children]
    s, acc = 1, 0
    while acc + counts[s - 1] <= gap:
        acc += counts[s - 1]
        s += 1
    if acc + counts[s - 1] == gap + 1:
        # the meet sits between segment s and s+1: the shared object
        return vertex(t, s)
    inner = meet_inclusion(t.children[s - 1], gap - acc)
    base = SimplicialMap(1, t.width, (s - 1, s))
    return theta_morphism(ThetaCell((inner.source,)), t, base, {(1, s): inner})


# ---------------------------------------------------------------------------
# corpus enumeration
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def cells_with_nodes(n: int) -> tuple[ThetaCell, ...]:
    """All planar rooted trees with exactly n nodes."""
    if n == 1:
        return (POINT,)
    out = []

    def splits(total, parts):
        if parts == 1:
            yield (total,)
            return
        for first in range(1, total - parts + 2):
            for rest in splits(total - first, parts - 1):
                yield (first,) + rest

    for width in range(1, n):
        for sizes in splits(n - 1, width):
            pools = [cells_with_nodes(s) for s in sizes]

            def combos(i):
                if i == len(pools):
                    yield ()
                    return
                for c in pools[i]:
                    for rest in combos(i + 1):
                        yield (c,) + rest

            for kids in combos(0):
                out.append(ThetaCell(kids))
    return tuple(out)


def cells_up_to(nodes: int) -> list[ThetaCell]:
    out = []
    for n in range(1, nodes + 1):
        out.extend(cells_with_nodes(n))
    return out
