"""The span from the cylinder to the cartesian cylinder and the shift.

kappa projects tables entrywise to the two tensor factors and lands in the
product of the interval with the cell.  sigma collapses the two ends and
sends every crossing generator h⊗x to the suspension of the mirrored x;
its codomain is the suspension of the left-right mirror of the cell (for
the left-right symmetric cells of the acceptance corpus this is the
suspension of the cell itself).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .dac import (DAMorphism, identity_morphism, lambda_cell, lambda_map,
                  point_complex, tensor, wreath_morphism)
from .gray import (H, L, R, cylinder_complex, endpoint_inclusion, gray_cylinder,
                   interval, lax_shuffle_diagram, o_cell)
from .nu import (NuView, OmegaFunctor, check_functor, nu_functor,
                 product_view)
from .theta import (POINT, SimplicialMap, ThetaCell, cell, coface,
                    codegeneracy, mirror, simplicial_identity, theta_identity,
                    theta_morphism)


def split_map(n: int, j: int) -> SimplicialMap:
    """[n] -> [1]: vertices below j to 0, the rest to 1."""
    if not 0 <= j <= n + 1:
        raise ValueError("threshold out of range")
    return SimplicialMap(n, 1, tuple(0 if i < j else 1 for i in range(n + 1)))


def mirror_name(t: ThetaCell, g):
    """The generator of lambda(mirror t) matching g under the reversal."""
    if g[0] == "o":
        return ("o", t.width - g[1])
    _, i, sub = g
    return ("s", t.width + 1 - i, mirror_name(t.children[i - 1], sub))


def projection_to_interval(t: ThetaCell) -> DAMorphism:
    """cyl(T) -> interval: kill everything with a positive cell factor."""
    cyl = cylinder_complex(t)
    K = lambda_cell(t)
    images = {}
    for row in cyl.degrees:
        for g in row:
            _, a, x = g
            images[g] = {a: 1} if K.degree_of(x) == 0 else {}
    return DAMorphism(cyl, interval(), images).validate()


def projection_to_cell(t: ThetaCell) -> DAMorphism:
    """cyl(T) -> lambda(T): kill everything with a positive interval factor."""
    cyl = cylinder_complex(t)
    iv = interval()
    images = {}
    for row in cyl.degrees:
        for g in row:
            _, a, x = g
            images[g] = {x: 1} if iv.degree_of(a) == 0 else {}
    return DAMorphism(cyl, lambda_cell(t), images).validate()


def shift_target_cell(t: ThetaCell) -> ThetaCell:
    return ThetaCell((mirror(t),))


def shift_map(t: ThetaCell) -> DAMorphism:
    """cyl(T) -> lambda([1];(mirror T)): ends collapse to the two objects,
    h⊗x goes to the suspended mirror of x."""
    cyl = cylinder_complex(t)
    tgt = lambda_cell(shift_target_cell(t))
    K = lambda_cell(t)
    images = {}
    for row in cyl.degrees:
        for g in row:
            _, a, x = g
            if a == H:
                images[g] = {("s", 1, mirror_name(t, x)): 1}
            elif K.degree_of(x) > 0:
                images[g] = {}
            else:
                images[g] = {("o", 0 if a == L else 1): 1}
    return DAMorphism(cyl, tgt, images).validate()


@dataclass
class SpanBundle:
    cell: ThetaCell
    max_dim: int
    cyl_view: NuView
    kappa: OmegaFunctor
    sigma: OmegaFunctor
    p1: DAMorphism
    p2: DAMorphism
    q: DAMorphism


def build_span(t: ThetaCell, max_dim: int | None = None) -> SpanBundle:
    if max_dim is None:
        max_dim = t.dimension() + 1
    cyl_view = gray_cylinder(t, max_dim)
    p1 = projection_to_interval(t)
    p2 = projection_to_cell(t)
    q = shift_map(t)
    f1 = nu_functor(p1, max_dim, source_view=cyl_view)
    f2 = nu_functor(p2, max_dim, source_view=cyl_view)
    prod = product_view([f1.target_view, f2.target_view])
    kappa = OmegaFunctor(cyl_view, prod, lambda c: (f1(c), f2(c)))
    sigma = nu_functor(q, max_dim, source_view=cyl_view)
    return SpanBundle(t, max_dim, cyl_view, kappa, sigma, p1, p2, q)


# ---------------------------------------------------------------------------
# the expected column maps of the defining diagram
# ---------------------------------------------------------------------------

def _interval_as_cell_iso() -> DAMorphism:
    """lambda([1];([0])) -> the interval complex, the evident renaming."""
    K = lambda_cell(cell(1))
    return DAMorphism(K, interval(), {
        ("o", 0): {L: 1}, ("o", 1): {R: 1}, ("s", 1, ("o", 0)): {H: 1},
    }).validate()


def kappa_column_expectations(t: ThetaCell):
    """(column, expected p1 composite, expected p2 composite) triples."""
    diag = lax_shuffle_diagram(t)
    iso = _interval_as_cell_iso()
    out = []
    n = t.width
    if n == 0:
        col = diag.columns[0]
        out.append((col, identity_morphism(col.complex).then(iso),
                    DAMorphism(col.complex, lambda_cell(t),
                               {("o", 0): {("o", 0): 1}, ("o", 1): {("o", 0): 1},
                                ("s", 1, ("o", 0)): {}})))
        return out
    for c in diag.columns:
        if c.kind == "O":
            j = c.index
            collapse = theta_morphism(
                c.cell, cell(1), split_map(n + 1, j + 1),
                {(j + 1, 1): theta_identity(POINT)})
            to_t = theta_morphism(
                c.cell, t, codegeneracy(n + 1, j),
                {(i, i if i <= j else i - 1): theta_identity(c.cell.children[i - 1])
                 for i in range(1, n + 2) if i != j + 1})
            out.append((c, lambda_map(collapse).then(iso), lambda_map(to_t)))
        else:
            k = c.index
            child = lambda_cell(t.children[k - 1])
            child_cyl = tensor(interval(), child)
            collapse = DAMorphism(child_cyl, point_complex(), {
                g: {("o", 0): 1} if child_cyl.degree_of(g) == 0 else {}
                for row in child_cyl.degrees for g in row})
            p1_exp = wreath_morphism(c.complex, lambda_cell(cell(1)),
                                     split_map(n, k), {(k, 1): collapse}).then(iso)
            child_p2 = DAMorphism(child_cyl, child, {
                g: ({g[2]: 1} if interval().degree_of(g[1]) == 0 else {})
                for row in child_cyl.degrees for g in row})
            comps = {(i, i): identity_morphism(lambda_cell(cc)) if i != k else child_p2
                     for i, cc in enumerate(t.children, start=1)}
            p2_exp = wreath_morphism(c.complex, lambda_cell(t),
                                     simplicial_identity(n), comps)
            out.append((c, p1_exp, p2_exp))
    return out


def sigma_column_expectations(t: ThetaCell):
    """(column, expected sigma composite) pairs, built from the child
    recursion: the k-th cylinder column maps through the suspended piece
    of the mirrored cell."""
    diag = lax_shuffle_diagram(t)
    tgt = lambda_cell(shift_target_cell(t))
    out = []
    n = t.width
    if n == 0:
        col = diag.columns[0]
        exp = DAMorphism(col.complex, tgt, {
            ("o", 0): {("o", 0): 1}, ("o", 1): {("o", 1): 1},
            ("s", 1, ("o", 0)): {("s", 1, ("o", 0)): 1}})
        return [(col, exp)]
    for c in diag.columns:
        images = {}
        if c.kind == "O":
            j = c.index
            for p in range(n + 2):
                images[("o", p)] = {("o", 0 if p <= j else 1): 1}
            for d in range(1, c.complex.top_degree + 1):
                for g in c.complex.basis(d):
                    _, i, sub = g
                    if i == j + 1:
                        images[g] = {("s", 1, ("o", n - j)): 1}
                    else:
                        images[g] = {}
        else:
            k = c.index
            child = t.children[k - 1]
            child_q = shift_map(child)
            mpos = n + 1 - k
            for p in range(n + 1):
                images[("o", p)] = {("o", 0 if p < k else 1): 1}
            for d in range(1, c.complex.top_degree + 1):
                for g in c.complex.basis(d):
                    _, i, sub = g
                    if i != k:
                        images[g] = {}
                        continue
                    img = child_q.images[sub]
                    out_img = {}
                    for h, cc in img.items():
                        if h == ("o", 0):
                            out_img[("s", 1, ("o", mpos - 1))] = cc
                        elif h == ("o", 1):
                            out_img[("s", 1, ("o", mpos))] = cc
                        else:
                            _, _, inner = h
                            out_img[("s", 1, ("s", mpos, inner))] = cc
                    images[g] = out_img
        out.append((c, DAMorphism(c.complex, tgt, images)))
    return out


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

@dataclass
class SpanReport:
    cell: ThetaCell
    kappa_functor: list = field(default_factory=list)
    sigma_functor: list = field(default_factory=list)
    kappa_columns: list = field(default_factory=list)
    sigma_columns: list = field(default_factory=list)
    diamonds: dict = field(default_factory=dict)
    split_identities: bool = True

    @property
    def passed(self) -> bool:
        return (not self.kappa_functor and not self.sigma_functor
                and all(ok for _, ok in self.kappa_columns)
                and all(ok for _, ok in self.sigma_columns)
                and all(self.diamonds.values()) and self.split_identities)

    def to_json(self):
        return {
            "cell": str(self.cell),
            "kappa_functor_violations": len(self.kappa_functor),
            "sigma_functor_violations": len(self.sigma_functor),
            "kappa_columns": {k: v for k, v in self.kappa_columns},
            "sigma_columns": {k: v for k, v in self.sigma_columns},
            "diamonds": self.diamonds,
            "split_identities": self.split_identities,
            "passed": self.passed,
        }


def _morphisms_equal(a: DAMorphism, b: DAMorphism) -> bool:
    return all(a.images[g] == b.images[g] for row in a.source.degrees for g in row)


def verify_span(t: ThetaCell, max_dim: int | None = None,
                bundle: SpanBundle | None = None) -> SpanReport:
    b = bundle or build_span(t, max_dim)
    report = SpanReport(t)
    report.kappa_functor = check_functor(b.kappa, b.max_dim)
    report.sigma_functor = check_functor(b.sigma, b.max_dim)

    diag = lax_shuffle_diagram(t)
    for col, p1_exp, p2_exp in kappa_column_expectations(t):
        ok = (_morphisms_equal(col.embed.then(b.p1), p1_exp)
              and _morphisms_equal(col.embed.then(b.p2), p2_exp))
        report.kappa_columns.append((f"{col.kind}{col.index}", ok))
    for col, q_exp in sigma_column_expectations(t):
        report.sigma_columns.append((f"{col.kind}{col.index}",
                                     _morphisms_equal(col.embed.then(b.q), q_exp)))

    # folding diamonds
    tcell_view = b.kappa.target_view.factors[1] if t.width >= 0 else None
    iv_view = b.kappa.target_view.factors[0]
    e0, e1 = (endpoint_inclusion(t, 0), endpoint_inclusion(t, 1))
    for eps, e in ((0, e0), (1, e1)):
        end_gen = L if eps == 0 else R
        kappa_ok = True
        f = e.then(b.p1)
        const_ok = all(f.images[g] == ({end_gen: 1} if e.source.degree_of(g) == 0 else {})
                       for row in e.source.degrees for g in row)
        ident_ok = _morphisms_equal(e.then(b.p2), identity_morphism(lambda_cell(t)))
        kappa_ok = const_ok and ident_ok
        sig = e.then(b.q)
        sigma_ok = all(
            sig.images[g] == ({("o", eps): 1} if e.source.degree_of(g) == 0 else {})
            for row in e.source.degrees for g in row)
        report.diamonds[f"kappa_e{eps}"] = kappa_ok
        report.diamonds[f"sigma_e{eps}"] = sigma_ok

    # split-map identities from the square sorts
    ok = True
    for n in range(5):
        for k in range(n + 2):
            lhs = split_map(n + 1, k)
            if k <= n + 1:
                if coface(n + 1, k).then(split_map(n + 2, k)) != lhs:
                    ok = False
            if coface(n + 1, k).then(split_map(n + 2, k + 1)) != lhs:
                ok = False
    report.split_identities = ok
    return report


def span_dot(t: ThetaCell) -> str:
    """The span diagram with pass/fail coloring per column square."""
    rep = verify_span(t)
    lines = ["digraph span {", "  rankdir=LR;",
             f'  cyl [label="[1]⊗{t}"];',
             f'  cart [label="[1]×{t}"];',
             f'  shift [label="[1];({mirror(t)})"];',
             "  cyl -> cart [label=kappa];",
             "  cyl -> shift [label=sigma];"]
    for name, ok in rep.kappa_columns:
        color = "green" if ok else "red"
        lines.append(f'  k_{name} [label="kappa {name}", color={color}];')
    for name, ok in rep.sigma_columns:
        color = "green" if ok else "red"
        lines.append(f'  s_{name} [label="sigma {name}", color={color}];')
    lines.append("}")
    return "\n".join(lines)
