"""Based directed augmented chain complexes with exact integer coefficients.

A complex carries an ordered basis per degree, a differential on generators
of positive degree, and an augmentation on degree-0 generators satisfying
e(d x) = 0.  The positivity sub-monoid of each degree is implicitly the set
of nonnegative combinations of the basis.

Group elements are plain dicts {generator name: int} with zero entries
dropped.  Generator names are hashable structured tuples:

    ("o", p)        object p of a wreath complex
    ("s", i, g)     suspension of child generator g over segment i
    ("t", a, b)     tensor generator a (x) b
    ("A", g) / ("B", g)   amalgamation leg tags

plus bare strings for the globe complexes ("b0", "t1", "v2", ...).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .theta import (SimplicialMap, ThetaCell, ThetaMorphism, gamma_image,
                    globular_sum)


# ---------------------------------------------------------------------------
# group element helpers
# ---------------------------------------------------------------------------

def gclean(x: dict) -> dict:
    return {k: v for k, v in x.items() if v != 0}


def gadd(*xs) -> dict:
    out: dict = {}
    for x in xs:
        for k, v in x.items():
            out[k] = out.get(k, 0) + v
    return gclean(out)


def gneg(x: dict) -> dict:
    return {k: -v for k, v in x.items()}


def gsub(x: dict, y: dict) -> dict:
    return gadd(x, gneg(y))


def gscale(c: int, x: dict) -> dict:
    if c == 0:
        return {}
    return {k: c * v for k, v in x.items()}


def is_nonneg(x: dict) -> bool:
    return all(v >= 0 for v in x.values())


def support(x: dict) -> frozenset:
    return frozenset(k for k, v in x.items() if v != 0)


def sign_split(x: dict):
    """(support, positive part, negative part); x = plus - minus."""
    plus = {k: v for k, v in x.items() if v > 0}
    minus = {k: -v for k, v in x.items() if v < 0}
    return support(x), plus, minus


def render_name(g) -> str:
    if isinstance(g, str):
        return g
    tag = g[0]
    if tag == "o":
        return f"o{g[1]}"
    if tag == "s":
        return f"{g[1]}|{render_name(g[2])}"
    if tag == "t":
        return f"{render_name(g[1])}⊗{render_name(g[2])}"
    if tag in ("A", "B"):
        return f"{tag}.{render_name(g[1])}"
    return repr(g)


def render_element(x: dict) -> str:
    if not x:
        return "0"
    parts = []
    for g in sorted(x, key=render_name):
        c = x[g]
        parts.append(f"{'' if c == 1 else c}{render_name(g)}" if c > 0 else f"-{'' if c == -1 else -c}{render_name(g)}")
    return "+".join(parts).replace("+-", "-")


# ---------------------------------------------------------------------------
# complexes
# ---------------------------------------------------------------------------

class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class DAComplex:
    degrees: tuple[tuple, ...]           # ordered basis per degree
    diff: dict                           # gen -> element one degree down
    aug: dict                            # degree-0 gen -> int
    _degree_of: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        deg = {}
        for d, gens in enumerate(self.degrees):
            for g in gens:
                if g in deg:
                    raise ComplexError(f"duplicate generator {g!r}")
                deg[g] = d
        object.__setattr__(self, "_degree_of", deg)

    @property
    def top_degree(self) -> int:
        return len(self.degrees) - 1

    def basis(self, d: int) -> tuple:
        return self.degrees[d] if 0 <= d <= self.top_degree else ()

    def degree_of(self, g) -> int:
        return self._degree_of[g]

    def d(self, x: dict) -> dict:
        out: dict = {}
        for g, c in x.items():
            for h, w in self.diff.get(g, {}).items():
                out[h] = out.get(h, 0) + c * w
        return gclean(out)

    def e(self, x: dict) -> int:
        return sum(c * self.aug[g] for g, c in x.items())

    def element_degree(self, x: dict) -> int | None:
        degs = {self.degree_of(g) for g in x}
        if len(degs) > 1:
            raise ComplexError("mixed-degree element")
        return degs.pop() if degs else None

    def validate(self):
        for d in range(2, self.top_degree + 1):
            for g in self.basis(d):
                if self.d(self.diff.get(g, {})):
                    raise ComplexError(f"d∘d != 0 on {g!r}")
        for g in self.basis(1):
            if self.e(self.diff.get(g, {})) != 0:
                raise ComplexError(f"e∘d != 0 on {g!r}")
        for g in self.basis(0):
            if g not in self.aug:
                raise ComplexError(f"missing augmentation for {g!r}")
        return self

    def size_profile(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.degrees)

    def to_json(self) -> dict:
        return {
            "degrees": [[render_name(g) for g in b] for b in self.degrees],
            "d": {render_name(g): {render_name(h): c for h, c in sorted(v.items(), key=lambda kv: render_name(kv[0]))}
                  for g, v in sorted(self.diff.items(), key=lambda kv: render_name(kv[0])) if v},
            "e": {render_name(g): c for g, c in sorted(self.aug.items(), key=lambda kv: render_name(kv[0]))},
        }


def point_complex() -> DAComplex:
    return DAComplex((( ("o", 0), ),), {}, {("o", 0): 1})


def lambda_globe(n: int) -> DAComplex:
    """The globe complex: b_k, t_k below the top, v_n on top."""
    if n == 0:
        return DAComplex((("b0",),), {}, {"b0": 1})
    degrees = tuple(
        (f"b{k}", f"t{k}") if k < n else (f"v{n}",) for k in range(n + 1)
    )
    diff = {}
    for k in range(1, n):
        step = {f"t{k - 1}": 1, f"b{k - 1}": -1}
        diff[f"b{k}"] = dict(step)
        diff[f"t{k}"] = dict(step)
    diff[f"v{n}"] = {f"t{n - 1}": 1, f"b{n - 1}": -1}
    return DAComplex(degrees, diff, {"b0": 1, "t0": 1}).validate()


def wreath_complex(children: list[DAComplex]) -> DAComplex:
    """[n];(K_1..K_n): objects in degree 0, suspended child bases above."""
    n = len(children)
    top = 1 + max((k.top_degree for k in children), default=-1)
    degrees: list[tuple] = [tuple(("o", p) for p in range(n + 1))]
    diff: dict = {}
    for d in range(1, top + 1):
        row = []
        for i, k in enumerate(children, start=1):
            for g in k.basis(d - 1):
                name = ("s", i, g)
                row.append(name)
                if d == 1:
                    diff[name] = {("o", i): 1, ("o", i - 1): -1}
                else:
                    diff[name] = {("s", i, h): c for h, c in k.diff[g].items()}
        degrees.append(tuple(row))
    aug = {("o", p): 1 for p in range(n + 1)}
    return DAComplex(tuple(degrees), diff, aug)


def lambda_cell(t: ThetaCell) -> DAComplex:
    """The chain-complex realization of a cell, by recursion on the tree."""
    if t.width == 0:
        return point_complex()
    return wreath_complex([lambda_cell(c) for c in t.children])


def tensor(K: DAComplex, L: DAComplex) -> DAComplex:
    """K (x) L with d(a⊗b) = da⊗b + (-1)^{|a|} a⊗db and e(a⊗b) = e(a)e(b)."""
    top = K.top_degree + L.top_degree
    degrees = []
    diff: dict = {}
    for n in range(top + 1):
        row = []
        for i in range(n + 1):
            j = n - i
            for a in K.basis(i):
                for b in L.basis(j):
                    name = ("t", a, b)
                    row.append(name)
                    dd: dict = {}
                    if i > 0:
                        for a2, c in K.diff[a].items():
                            dd[("t", a2, b)] = dd.get(("t", a2, b), 0) + c
                    if j > 0:
                        s = 1 if i % 2 == 0 else -1
                        for b2, c in L.diff[b].items():
                            dd[("t", a, b2)] = dd.get(("t", a, b2), 0) + s * c
                    if n > 0:
                        diff[name] = gclean(dd)
        degrees.append(tuple(row))
    aug = {("t", a, b): K.aug[a] * L.aug[b] for a in K.basis(0) for b in L.basis(0)}
    return DAComplex(tuple(degrees), diff, aug)


# ---------------------------------------------------------------------------
# morphisms
# ---------------------------------------------------------------------------

class MorphismError(ValueError):
    pass


@dataclass(frozen=True)
class DAMorphism:
    source: DAComplex
    target: DAComplex
    images: dict                         # source gen -> target element

    def apply(self, x: dict) -> dict:
        out: dict = {}
        for g, c in x.items():
            for h, w in self.images[g].items():
                out[h] = out.get(h, 0) + c * w
        return gclean(out)

    def then(self, other: "DAMorphism") -> "DAMorphism":
        if self.target is not other.source and self.target != other.source:
            raise MorphismError("composition mismatch")
        return DAMorphism(self.source, other.target,
                          {g: other.apply(v) for g, v in self.images.items()})

    def validate(self):
        for d in range(self.source.top_degree + 1):
            for g in self.source.basis(d):
                img = self.images.get(g)
                if img is None:
                    raise MorphismError(f"no image for {g!r}")
                if not is_nonneg(img):
                    raise MorphismError(f"image of {g!r} is not positive")
                deg = self.target.element_degree(img)
                if deg is not None and deg != d:
                    raise MorphismError(f"image of {g!r} has wrong degree")
                if d == 0:
                    if self.target.e(img) != self.source.e({g: 1}):
                        raise MorphismError(f"augmentation broken at {g!r}")
                else:
                    if self.apply(self.source.diff.get(g, {})) != self.target.d(img):
                        raise MorphismError(f"chain condition broken at {g!r}")
        return self


def identity_morphism(K: DAComplex) -> DAMorphism:
    return DAMorphism(K, K, {g: {g: 1} for b in K.degrees for g in b})


def wreath_morphism(src: DAComplex, tgt: DAComplex, base: SimplicialMap,
                    comps: dict) -> DAMorphism:
    """Morphism of wreath complexes from a base map and child morphisms
    comps[(i, j)] for j in F(base)(i)."""
    fimg = gamma_image(base)
    images: dict = {}
    for p in range(base.source_width + 1):
        images[("o", p)] = {("o", base(p)): 1}
    for d in range(1, src.top_degree + 1):
        for g in src.basis(d):
            _, i, child_gen = g
            out: dict = {}
            for j in fimg[i]:
                for h, c in comps[(i, j)].images[child_gen].items():
                    out[("s", j, h)] = out.get(("s", j, h), 0) + c
            images[g] = gclean(out)
    return DAMorphism(src, tgt, images)


def lambda_map(f: ThetaMorphism) -> DAMorphism:
    src = lambda_cell(f.source)
    tgt = lambda_cell(f.target)
    if f.source.width == 0:
        return DAMorphism(src, tgt, {("o", 0): {("o", f.base(0)): 1}})
    comps = {(i, j): lambda_map(m) for (i, j), m in f.components}
    return wreath_morphism(src, tgt, f.base, comps)


def tensor_morphism(f: DAMorphism, g: DAMorphism) -> DAMorphism:
    src = tensor(f.source, g.source)
    tgt = tensor(f.target, g.target)
    images: dict = {}
    for row in src.degrees:
        for name in row:
            _, a, b = name
            out: dict = {}
            for a2, ca in f.images[a].items():
                for b2, cb in g.images[b].items():
                    key = ("t", a2, b2)
                    out[key] = out.get(key, 0) + ca * cb
            images[name] = gclean(out)
    return DAMorphism(src, tgt, images)


# ---------------------------------------------------------------------------
# atoms and basis conditions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AtomTable:
    rows: tuple              # ((neg, pos), ...) from degree 0 up to i
    valid: bool

    @property
    def dimension(self) -> int:
        return len(self.rows) - 1


def atom(K: DAComplex, b) -> AtomTable:
    """The table <b>: top pair (b, b), lower rows via d(-)_- / d(-)_+."""
    if b not in K._degree_of:
        raise KeyError(f"unknown generator {b!r}")
    i = K.degree_of(b)
    neg, pos = {b: 1}, {b: 1}
    rows = [(neg, pos)]
    for _ in range(i, 0, -1):
        _, _, neg_next = sign_split(K.d(neg))
        _, pos_next, _ = sign_split(K.d(pos))
        neg, pos = neg_next, pos_next
        rows.append((neg, pos))
    rows.reverse()
    valid = K.e(rows[0][0]) == 1 and K.e(rows[0][1]) == 1
    return AtomTable(tuple(rows), valid)


def _acyclic(nodes, edges) -> bool:
    """No directed cycle through >= 2 distinct nodes (self-loops ignored)."""
    adj: dict = {u: set() for u in nodes}
    for u, v in edges:
        if u != v:
            adj[u].add(v)
    state = dict.fromkeys(nodes, 0)

    def dfs(u) -> bool:
        state[u] = 1
        for v in adj[u]:
            if state[v] == 1:
                return False
            if state[v] == 0 and not dfs(v):
                return False
        state[u] = 2
        return True

    return all(state[u] != 0 or dfs(u) for u in nodes)


def check_basis(K: DAComplex):
    """(unital, loop_free, strongly_loop_free) for the basis of K."""
    gens = [g for row in K.degrees for g in row]
    atoms = {g: atom(K, g) for g in gens}
    unital = all(atoms[g].valid for g in gens)

    loop_free = True
    for i in range(K.top_degree + 1):
        hi = [g for g in gens if K.degree_of(g) > i]
        edges = []
        for x in hi:
            sx = support(atoms[x].rows[i][1])
            for y in hi:
                if sx & support(atoms[y].rows[i][0]):
                    edges.append((x, y))
        if not _acyclic(hi, edges):
            loop_free = False
            break

    edges = []
    for x in gens:
        dx = K.d({x: 1}) if K.degree_of(x) > 0 else {}
        _, dplus, dminus = sign_split(dx)
        for y in support(dplus):
            edges.append((x, y))
        for y in support(dminus):
            edges.append((y, x))
    strongly_loop_free = _acyclic(gens, edges)
    return unital, loop_free, strongly_loop_free


# ---------------------------------------------------------------------------
# amalgamation and isomorphism search
# ---------------------------------------------------------------------------

def _single_gen(x: dict):
    if len(x) == 1:
        ((g, c),) = x.items()
        if c == 1:
            return g
    return None


def amalgamate_with_inclusions(K: DAComplex, L: DAComplex, M: DAComplex,
                               i: DAMorphism, j: DAMorphism):
    """Glue K and L along M via generator-to-generator injections i, j.

    Returns (result, inclusion of K, inclusion of L).  Names from K are
    tagged ("A", g), unidentified names from L are tagged ("B", g).
    """
    for leg, name in ((i, "i"), (j, "j")):
        seen = set()
        for row in M.degrees:
            for g in row:
                h = _single_gen(leg.images[g])
                if h is None:
                    raise MorphismError(f"leg {name} is not prerigid at {g!r}")
                if h in seen:
                    raise MorphismError(f"leg {name} is not injective")
                seen.add(h)
    ident = {}
    for row in M.degrees:
        for g in row:
            ident[_single_gen(j.images[g])] = ("A", _single_gen(i.images[g]))

    def l_name(g):
        return ident.get(g, ("B", g))

    degrees = []
    top = max(K.top_degree, L.top_degree)
    for d in range(top + 1):
        row = [("A", g) for g in K.basis(d)]
        row += [l_name(g) for g in L.basis(d) if g not in ident]
        degrees.append(tuple(row))
    diff = {}
    for g, v in K.diff.items():
        diff[("A", g)] = {("A", h): c for h, c in v.items()}
    for g, v in L.diff.items():
        if g not in ident:
            diff[l_name(g)] = {l_name(h): c for h, c in v.items()}
    aug = {("A", g): c for g, c in K.aug.items()}
    for g, c in L.aug.items():
        if g not in ident:
            aug[l_name(g)] = c
    result = DAComplex(tuple(degrees), diff, aug).validate()
    incl_k = DAMorphism(K, result, {g: {("A", g): 1} for row in K.degrees for g in row})
    incl_l = DAMorphism(L, result, {g: {l_name(g): 1} for row in L.degrees for g in row})
    return result, incl_k, incl_l


def amalgamate(K: DAComplex, L: DAComplex, M: DAComplex,
               i: DAMorphism, j: DAMorphism) -> DAComplex:
    return amalgamate_with_inclusions(K, L, M, i, j)[0]


def find_isomorphism(K: DAComplex, L: DAComplex):
    """Backtracking search for a basis bijection commuting with d and e.

    Returns the generator map or None.  Sizes here are tiny; matching is
    pruned by degree and differential support size.
    """
    if K.size_profile() != L.size_profile():
        return None
    mapping: dict = {}
    used: set = set()

    def signature(C: DAComplex, g):
        d = C.degree_of(g)
        dx = C.diff.get(g, {})
        return (d, tuple(sorted(dx.values())), C.aug.get(g, 0))

    sig_l: dict = {}
    for row in L.degrees:
        for g in row:
            sig_l.setdefault(signature(L, g), []).append(g)

    order = [g for d in range(K.top_degree + 1) for g in K.basis(d)]

    def consistent(g, h):
        dg = K.diff.get(g, {})
        dh = L.diff.get(h, {})
        for x, c in dg.items():
            if x in mapping and dh.get(mapping[x], 0) != c:
                return False
        if K.degree_of(g) == 0 and K.aug[g] != L.aug[h]:
            return False
        return True

    def extend(idx) -> bool:
        if idx == len(order):
            return True
        g = order[idx]
        for h in sig_l.get(signature(K, g), []):
            if h in used or not consistent(g, h):
                continue
            mapping[g] = h
            used.add(h)
            if extend(idx + 1):
                return True
            del mapping[g]
            used.discard(h)
        return False

    return dict(mapping) if extend(0) else None


def globe_inclusion(m: int, n: int, side: str) -> DAMorphism:
    """Iterated source (side="s") or target (side="t") inclusion of the
    m-globe complex into the n-globe complex, m <= n."""
    src, tgt = lambda_globe(m), lambda_globe(n)
    top = "b0" if m == 0 else f"v{m}"
    images = {}
    for row in src.degrees:
        for g in row:
            if g == top and m < n:
                images[g] = {(f"t{m}" if side == "t" else f"b{m}"): 1}
            else:
                images[g] = {g: 1}
    return DAMorphism(src, tgt, images).validate()


def amalgamation_over_globular_sum(t: ThetaCell) -> DAComplex:
    """Iterated pushout of globe complexes along the decomposition of t."""
    dec = globular_sum(t)
    acc = lambda_globe(dec.leaf_dims[0])
    latest = identity_morphism(acc)      # inclusion of the newest leaf globe
    for m, n_next in zip(dec.meet_dims, dec.leaf_dims[1:]):
        meet = lambda_globe(m)
        nxt = lambda_globe(n_next)
        prev_n = latest.source.top_degree
        t_leg = globe_inclusion(m, prev_n, "t").then(latest)
        s_leg = globe_inclusion(m, n_next, "s")
        acc, _, latest = amalgamate_with_inclusions(acc, nxt, meet, t_leg, s_leg)
    return acc
