"""Cells of the omega-category attached to a based complex, as tables.

An i-cell is a table of pairs (x_k^0, x_k^1) of nonnegative elements,
0 <= k <= i, with d(x_k^e) = x_{k-1}^1 - x_{k-1}^0, e(x_0^e) = 1 and equal
top entries.  Composition x *_j y is read left to right: x first, then y.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .dac import (DAComplex, DAMorphism, atom, check_basis, gadd, gclean,
                  is_nonneg, render_element)


def _freeze(x: dict) -> tuple:
    return tuple(sorted(x.items(), key=lambda kv: repr(kv[0])))


def _thaw(f: tuple) -> dict:
    return dict(f)


class TableError(ValueError):
    pass


@dataclass(frozen=True)
class NuCell:
    rows: tuple  # ((neg_k, pos_k) frozen pairs), k = 0..dim

    @property
    def dim(self) -> int:
        return len(self.rows) - 1

    def entry(self, k: int, eps: int) -> dict:
        return _thaw(self.rows[k][eps])

    @property
    def is_identity(self) -> bool:
        return self.dim > 0 and self.rows[-1] == ((), ())

    def sort_key(self):
        return repr(self.rows)

    def __str__(self) -> str:
        cols = [f"({render_element(self.entry(k, 0))};{render_element(self.entry(k, 1))})"
                for k in range(self.dim + 1)]
        return "[" + " ".join(cols) + "]"

    def to_json(self):
        def side(x):
            return {render_element({g: 1}): c for g, c in sorted(x.items(), key=repr)}
        return [[side(self.entry(k, 0)), side(self.entry(k, 1))] for k in range(self.dim + 1)]


def make_cell(K: DAComplex, entries) -> NuCell:
    """Validate and build a table from [(neg, pos), ...] dicts."""
    i = len(entries) - 1
    for k, (neg, pos) in enumerate(entries):
        for x in (neg, pos):
            if not is_nonneg(x):
                raise TableError(f"entry at level {k} not positive")
        if k > 0:
            want = gadd(entries[k - 1][1], {g: -c for g, c in entries[k - 1][0].items()})
            for x in (neg, pos):
                if K.d(x) != want:
                    raise TableError(f"boundary condition fails at level {k}")
    for x in entries[0]:
        if K.e(x) != 1:
            raise TableError("augmentation of bottom entries must be 1")
    if entries[i][0] != entries[i][1]:
        raise TableError("top entries must agree")
    return NuCell(tuple((_freeze(n), _freeze(p)) for n, p in entries))


def nu_boundary(c: NuCell):
    """(source, target): truncate, repeating the chosen side at the top."""
    if c.dim == 0:
        raise TableError("a 0-cell has no boundary")
    below = c.rows[:-2]
    neg, pos = c.rows[-2]
    src = NuCell(below + ((neg, neg),))
    tgt = NuCell(below + ((pos, pos),))
    return src, tgt


def nu_source(c: NuCell) -> NuCell:
    return nu_boundary(c)[0]


def nu_target(c: NuCell) -> NuCell:
    return nu_boundary(c)[1]


def nu_identity(c: NuCell) -> NuCell:
    return NuCell(c.rows + (((), ()),))


def nu_composable(j: int, a: NuCell, b: NuCell) -> bool:
    if a.dim != b.dim or j >= a.dim:
        return False
    if a.rows[:j] != b.rows[:j]:
        return False
    return a.rows[j][1] == b.rows[j][0]


def nu_compose(j: int, a: NuCell, b: NuCell) -> NuCell:
    """a *_j b, a first then b."""
    if not nu_composable(j, a, b):
        raise TableError(f"cells are not {j}-composable")
    rows = list(a.rows[:j])
    rows.append((a.rows[j][0], b.rows[j][1]))
    for k in range(j + 1, a.dim + 1):
        rows.append((_freeze(gadd(_thaw(a.rows[k][0]), _thaw(b.rows[k][0]))),
                     _freeze(gadd(_thaw(a.rows[k][1]), _thaw(b.rows[k][1])))))
    return NuCell(tuple(rows))


# ---------------------------------------------------------------------------
# enumeration by polygraph closure
# ---------------------------------------------------------------------------

class EnumerationError(RuntimeError):
    pass


DEFAULT_CEILING = 10 ** 6


def enumerate_cells(K: DAComplex, max_dim: int, ceiling: int = DEFAULT_CEILING):
    """Per-dimension cell sets: atoms + identities, closed under all
    compositions.  Requires a strong Steiner complex."""
    if check_basis(K) != (True, True, True):
        raise EnumerationError("complex is not strong Steiner")
    for g in K.basis(0):
        assert K.aug[g] == 1, "unital basis forces e = 1 in degree 0"
    atoms_by_dim: dict[int, list[NuCell]] = {}
    for d in range(K.top_degree + 1):
        atoms_by_dim[d] = []
        for g in K.basis(d):
            a = atom(K, g)
            atoms_by_dim[d].append(NuCell(tuple((_freeze(n), _freeze(p)) for n, p in a.rows)))
    layers: list[set[NuCell]] = []
    cells0 = set(atoms_by_dim[0])
    layers.append(cells0)
    for d in range(1, max_dim + 1):
        current: set[NuCell] = {nu_identity(c) for c in layers[d - 1]}
        current.update(atoms_by_dim.get(d, []))
        frontier = set(current)
        while frontier:
            new: set[NuCell] = set()
            cur_list = sorted(current, key=NuCell.sort_key)
            frontier_list = sorted(frontier, key=NuCell.sort_key)
            for j in range(d):
                for a in cur_list:
                    for b in frontier_list:
                        if nu_composable(j, a, b):
                            c = nu_compose(j, a, b)
                            if c not in current:
                                new.add(c)
                        if nu_composable(j, b, a):
                            c = nu_compose(j, b, a)
                            if c not in current:
                                new.add(c)
            if len(current) + len(new) > ceiling:
                raise EnumerationError(f"cell ceiling {ceiling} exceeded at dimension {d}")
            current.update(new)
            frontier = new
        layers.append(current)
    return layers


def search_tables(K: DAComplex, max_dim: int, coeff_bound: int):
    """Independent oracle: exhaustive enumeration of valid tables whose
    entries have coefficients <= coeff_bound."""
    def vectors(d: int):
        basis = K.basis(d)
        for combo in iproduct(range(coeff_bound + 1), repeat=len(basis)):
            yield gclean(dict(zip(basis, combo)))

    bottoms = [x for x in vectors(0) if K.e(x) == 1]
    by_boundary: dict[int, dict] = {}
    for d in range(1, max_dim + 1):
        table: dict = {}
        for x in vectors(d):
            table.setdefault(_freeze(K.d(x)), []).append(x)
        by_boundary[d] = table

    layers: list[set[NuCell]] = [set()]
    pairs0 = [((x, x),) for x in bottoms]
    layers[0] = {NuCell(tuple((_freeze(n), _freeze(p)) for n, p in rows)) for rows in pairs0}
    partial = [[(x, y)] for x in bottoms for y in bottoms]
    for d in range(1, max_dim + 1):
        out: set[NuCell] = set()
        nxt = []
        for rows in partial:
            neg_prev, pos_prev = rows[-1]
            want = _freeze(gadd(pos_prev, {g: -c for g, c in neg_prev.items()}))
            sols = by_boundary[d].get(want, [])
            for x in sols:
                out.add(NuCell(tuple(( _freeze(n), _freeze(p)) for n, p in rows) + ((_freeze(x), _freeze(x)),)))
            for x in sols:
                for y in sols:
                    nxt.append(rows + [(x, y)])
        # keep only well-formed prefixes (bottom rows with equal entries are
        # required only at the top, so all pairs continue)
        layers.append(out)
        partial = nxt
    return layers


# ---------------------------------------------------------------------------
# views and functors
# ---------------------------------------------------------------------------

class OmegaCatView:
    """Finitely enumerated cells with boundary/identity/composition."""

    def cells(self, d: int):
        raise NotImplementedError

    def source(self, c):
        raise NotImplementedError

    def target(self, c):
        raise NotImplementedError

    def identity(self, c):
        raise NotImplementedError

    def composable(self, j, a, b) -> bool:
        raise NotImplementedError

    def compose(self, j, a, b):
        raise NotImplementedError

    def dim(self, c) -> int:
        raise NotImplementedError


class NuView(OmegaCatView):
    tag = "nu-of-complex"

    def __init__(self, K: DAComplex, max_dim: int, ceiling: int = DEFAULT_CEILING):
        self.complex = K
        self.max_dim = max_dim
        self.layers = enumerate_cells(K, max_dim, ceiling)
        self._sorted = {}

    def cells(self, d: int):
        if d > self.max_dim:
            return ()
        if d not in self._sorted:
            self._sorted[d] = sorted(self.layers[d], key=NuCell.sort_key)
        return self._sorted[d]

    def source(self, c: NuCell):
        return nu_source(c)

    def target(self, c: NuCell):
        return nu_target(c)

    def identity(self, c: NuCell):
        return nu_identity(c)

    def composable(self, j, a, b):
        return nu_composable(j, a, b)

    def compose(self, j, a, b):
        return nu_compose(j, a, b)

    def dim(self, c: NuCell):
        return c.dim

    def counts(self):
        return tuple(len(self.layers[d]) for d in range(self.max_dim + 1))

    def nondegenerate_counts(self):
        return tuple(sum(1 for c in self.layers[d] if not c.is_identity)
                     for d in range(self.max_dim + 1))


def theta_view(t, max_dim: int, ceiling: int = DEFAULT_CEILING) -> NuView:
    """A cell of the wreath category as an enumerable view."""
    from .dac import lambda_cell
    view = NuView(lambda_cell(t), max_dim, ceiling)
    view.tag = "theta-cell"
    return view


class ProductView(OmegaCatView):
    tag = "product-of-views"

    def __init__(self, factors):
        self.factors = tuple(factors)
        self.max_dim = min((f.max_dim for f in self.factors), default=0)

    def cells(self, d: int):
        pools = [f.cells(d) for f in self.factors]
        return [tuple(combo) for combo in iproduct(*pools)]

    def source(self, c):
        return tuple(f.source(x) for f, x in zip(self.factors, c))

    def target(self, c):
        return tuple(f.target(x) for f, x in zip(self.factors, c))

    def identity(self, c):
        return tuple(f.identity(x) for f, x in zip(self.factors, c))

    def composable(self, j, a, b):
        return all(f.composable(j, x, y) for f, x, y in zip(self.factors, a, b))

    def compose(self, j, a, b):
        return tuple(f.compose(j, x, y) for f, x, y in zip(self.factors, a, b))

    def dim(self, c):
        if not self.factors:
            return None
        return self.factors[0].dim(c[0])


class TerminalView(OmegaCatView):
    """Product of zero factors: one cell per dimension."""

    tag = "terminal"
    max_dim = 10 ** 9

    def cells(self, d: int):
        return [("*", d)]

    def source(self, c):
        return ("*", c[1] - 1)

    def target(self, c):
        return ("*", c[1] - 1)

    def identity(self, c):
        return ("*", c[1] + 1)

    def composable(self, j, a, b):
        return a[1] == b[1] and j < a[1]

    def compose(self, j, a, b):
        return a

    def dim(self, c):
        return c[1]


def product_view(factors) -> OmegaCatView:
    factors = list(factors)
    if not factors:
        return TerminalView()
    return ProductView(factors)


@dataclass
class OmegaFunctor:
    source_view: OmegaCatView
    target_view: OmegaCatView
    mapping: object  # callable cell -> cell

    def __call__(self, c):
        return self.mapping(c)

    def then(self, other: "OmegaFunctor") -> "OmegaFunctor":
        return OmegaFunctor(self.source_view, other.target_view,
                            lambda c: other.mapping(self.mapping(c)))


def nu_functor(a: DAMorphism, max_dim: int, ceiling: int = DEFAULT_CEILING,
               source_view: NuView | None = None,
               target_view: NuView | None = None) -> OmegaFunctor:
    """Entrywise application of a morphism of complexes to tables."""
    src = source_view or NuView(a.source, max_dim, ceiling)
    tgt = target_view or NuView(a.target, max_dim, ceiling)
    cache: dict = {}

    def apply(c: NuCell) -> NuCell:
        out = cache.get(c)
        if out is not None:
            return out
        rows = []
        for k in range(c.dim + 1):
            rows.append((_freeze(a.apply(c.entry(k, 0))), _freeze(a.apply(c.entry(k, 1)))))
        out = NuCell(tuple(rows))
        if out.dim <= tgt.max_dim and out not in tgt.layers[out.dim]:
            raise TableError(f"image table is not a cell of the target: {c}")
        cache[c] = out
        return out

    return OmegaFunctor(src, tgt, apply)


def check_functor(F: OmegaFunctor, max_dim: int):
    """List of violations of boundary/identity/composition preservation."""
    src, tgt = F.source_view, F.target_view
    report = []
    top = min(max_dim, src.max_dim)
    for d in range(top + 1):
        for c in src.cells(d):
            fc = F(c)
            if d > 0:
                if F(src.source(c)) != tgt.source(fc):
                    report.append(("source", d, c))
                if F(src.target(c)) != tgt.target(fc):
                    report.append(("target", d, c))
            if d < top and F(src.identity(c)) != tgt.identity(fc):
                report.append(("identity", d, c))
        for j in range(d):
            cs = src.cells(d)
            if isinstance(src, NuView):
                by_start: dict = {}
                for b in cs:
                    by_start.setdefault((b.rows[:j], b.rows[j][0]), []).append(b)
                pairs = ((a, b) for a in cs
                         for b in by_start.get((a.rows[:j], a.rows[j][1]), ()))
            else:
                pairs = ((a, b) for a in cs for b in cs if src.composable(j, a, b))
            for a, b in pairs:
                lhs = F(src.compose(j, a, b))
                if not tgt.composable(j, F(a), F(b)):
                    report.append(("composable", d, j, a, b))
                elif lhs != tgt.compose(j, F(a), F(b)):
                    report.append(("compose", d, j, a, b))
    return report


def skeleton_dot(view, name: str = "skeleton") -> str:
    """0/1/2-skeleton: nodes are 0-cells, edges nondegenerate 1-cells,
    one comment line per nondegenerate 2-cell."""
    def node_id(c):
        return '"' + str(c).replace('"', "'") + '"'

    lines = [f"digraph {name} {{"]
    for c in view.cells(0):
        lines.append(f"  {node_id(c)};")
    if view.max_dim >= 1:
        for c in view.cells(1):
            if isinstance(c, NuCell) and c.is_identity:
                continue
            s, t = view.source(c), view.target(c)
            lines.append(f"  {node_id(s)} -> {node_id(t)} [label={node_id(c)}];")
    if view.max_dim >= 2:
        for c in view.cells(2):
            if isinstance(c, NuCell) and c.is_identity:
                continue
            s, t = view.source(c), view.target(c)
            lines.append(f"  // 2-cell {c}: {s} => {t}")
    lines.append("}")
    return "\n".join(lines)
