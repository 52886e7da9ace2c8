import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graycyl.theta import (CellSyntaxError, POINT, SimplicialMap, ThetaCell,
                           cell, cells_up_to, coface, codegeneracy,
                           gamma_image, globe, globular_sum, hyperfaces,
                           leaf_inclusion, meet_inclusion, mirror,
                           parse_cell, parse_morphism, reconstruct,
                           simplicial_identity, theta_identity, vertex)


def cells_strategy(max_width=3, max_height=3):
    return st.recursive(
        st.just(POINT),
        lambda kids: st.lists(kids, min_size=1, max_size=max_width).map(
            lambda ks: ThetaCell(tuple(ks))),
        max_leaves=6)


class TestParsing:
    def test_point(self):
        assert parse_cell("[0]") == POINT

    def test_nested(self):
        t = parse_cell("[2]([1],[0])")
        assert t.width == 2
        assert t.children == (cell(1), POINT)

    def test_bare_width_sugar(self):
        assert parse_cell("[3]") == cell(3)
        assert parse_cell("[3]") == parse_cell("[3]([0],[0],[0])")

    def test_globe_sugar(self):
        assert parse_cell("G3") == globe(3)

    def test_whitespace(self):
        assert parse_cell(" [2]( [1] , [0] ) ") == parse_cell("[2]([1],[0])")

    def test_syntax_error_position(self):
        with pytest.raises(CellSyntaxError) as exc:
            parse_cell("[2]([1]")
        assert exc.value.position >= 4

    def test_width_mismatch(self):
        with pytest.raises(CellSyntaxError):
            parse_cell("[2]([0])")

    @given(cells_strategy())
    @settings(max_examples=150, deadline=None)
    def test_roundtrip(self, t):
        assert parse_cell(str(t)) == t


class TestDimension:
    def test_point(self):
        assert POINT.dimension() == 0

    def test_two_globe(self):
        assert parse_cell("[1]([1])").dimension() == 2

    def test_mixed(self):
        assert parse_cell("[2]([1],[0])").dimension() == 2

    def test_globes(self):
        for n in range(6):
            assert globe(n).dimension() == n


class TestGlobularSum:
    def test_globe_single_leaf(self):
        for n in range(5):
            d = globular_sum(globe(n))
            assert d.leaf_dims == (n,)
            assert d.meet_dims == ()

    def test_examples(self):
        d = globular_sum(parse_cell("[2]([1],[0])"))
        assert (d.leaf_dims, d.meet_dims) == ((2, 1), (0,))
        d = globular_sum(parse_cell("[1]([2])"))
        assert (d.leaf_dims, d.meet_dims) == ((2, 2), (1,))

    def test_shape_condition(self):
        for t in cells_up_to(7):
            d = globular_sum(t)
            for i, m in enumerate(d.meet_dims):
                assert d.leaf_dims[i] >= m <= d.leaf_dims[i + 1]

    def test_reconstruct_corpus(self):
        for t in cells_up_to(7):
            assert reconstruct(globular_sum(t)) == t


class TestGammaImage:
    def test_identity(self):
        assert gamma_image(simplicial_identity(2)) == {1: (1,), 2: (2,)}

    def test_inner_coface(self):
        assert gamma_image(coface(2, 1)) == {1: (1, 2), 2: (3,)}

    def test_degeneracy(self):
        assert gamma_image(codegeneracy(1, 0)) == {1: ()}

    def test_composite_union_formula(self):
        def monotone_maps(n, m):
            def rec(prefix, remaining):
                if remaining == 0:
                    yield SimplicialMap(n, m, tuple(prefix))
                    return
                lo = prefix[-1] if prefix else 0
                for v in range(lo, m + 1):
                    yield from rec(prefix + [v], remaining - 1)
            yield from rec([], n + 1)

        for n in range(5):
            for m in range(5):
                for k in range(5):
                    for f in monotone_maps(n, m):
                        gi_f = gamma_image(f)
                        for g in monotone_maps(m, k):
                            comp = gamma_image(f.then(g))
                            gi_g = gamma_image(g)
                            for i in range(1, n + 1):
                                union = sorted(j for mid in gi_f[i] for j in gi_g[mid])
                                assert sorted(comp[i]) == union


def random_morphism_from(rng, src, max_width=3, depth=0):
    """A random morphism with the given source; returns it with its target."""
    m = rng.randint(0, max_width)
    base = SimplicialMap(src.width, m,
                         tuple(sorted(rng.randint(0, m) for _ in range(src.width + 1))))
    fi = gamma_image(base)
    targets = {}
    comps = {}
    for i in range(1, src.width + 1):
        for j in fi[i]:
            sub = random_morphism_from(rng, src.children[i - 1], max_width=2)
            comps[(i, j)] = sub
            targets[j] = sub.target
    kids = tuple(targets.get(j, rng.choice([POINT, cell(1)])) for j in range(1, m + 1))
    tgt = ThetaCell(kids)
    from graycyl.theta import theta_morphism
    return theta_morphism(src, tgt, base, comps)


class TestCompose:
    def test_identity_laws(self):
        rng = random.Random(7)
        for _ in range(40):
            src = rng.choice(cells_up_to(4))
            f = random_morphism_from(rng, src)
            assert theta_identity(f.source).then(f) == f
            assert f.then(theta_identity(f.target)) == f

    def test_associativity_random_triples(self):
        rng = random.Random(11)
        done = 0
        while done < 200:
            src = rng.choice([t for t in cells_up_to(5) if t.width <= 3])
            f = random_morphism_from(rng, src)
            g = random_morphism_from(rng, f.target)
            h = random_morphism_from(rng, g.target)
            assert f.then(g).then(h) == f.then(g.then(h))
            done += 1

    def test_hyperface_composite_base(self):
        from graycyl.dac import lambda_map
        faces3 = [f.map for f in hyperfaces(cell(3)) if f.kind != "vertical"]
        faces2 = [f.map for f in hyperfaces(cell(2)) if f.kind != "vertical"]
        pairs = 0
        for f in faces2:
            for g in faces3:
                if f.target == g.source:
                    comp = f.then(g)
                    assert comp.base == f.base.then(g.base)
                    lhs = lambda_map(comp)
                    rhs = lambda_map(f).then(lambda_map(g))
                    assert lhs.images == rhs.images
                    pairs += 1
        assert pairs > 0


class TestHyperfaces:
    def test_interval(self):
        out = hyperfaces(cell(1))
        kinds = sorted((h.kind, h.map.base.image) for h in out)
        assert kinds == [("outer", (0,)), ("outer", (1,))]

    def test_two_simplex(self):
        out = hyperfaces(cell(2))
        assert sum(1 for h in out if h.kind == "outer") == 2
        assert sum(1 for h in out if h.kind == "inner") == 2
        assert all(h.map.target == cell(2) for h in out)

    def test_suspended_interval(self):
        out = hyperfaces(parse_cell("[1]([1])"))
        vertical = [h for h in out if h.kind == "vertical"]
        assert len(vertical) == 2
        assert all(h.map.source == cell(1) for h in vertical)
        assert sum(1 for h in out if h.kind == "outer") == 2

    def test_mixed_cell(self):
        out = hyperfaces(parse_cell("[2]([1],[0])"))
        by_kind = {}
        for h in out:
            by_kind.setdefault(h.kind, []).append(h)
        assert len(by_kind["vertical"]) == 2
        assert len(by_kind["outer"]) == 2
        assert len(by_kind["inner"]) == 1


class TestMisc:
    def test_mirror_involution(self):
        for t in cells_up_to(6):
            assert mirror(mirror(t)) == t

    def test_leaf_and_meet_inclusions(self):
        for t in cells_up_to(6):
            d = globular_sum(t)
            for i, n in enumerate(d.leaf_dims):
                inc = leaf_inclusion(t, i)
                assert inc.source == globe(n)
                assert inc.target == t
            for g, m in enumerate(d.meet_dims):
                inc = meet_inclusion(t, g)
                assert inc.source == globe(m)

    def test_morphism_literal(self):
        data = {"source": "[1]([2])", "target": "[2]([1],[1])", "base": [0, 2],
                "components": {
                    "1,1": {"base": [0, 1, 1]},
                    "1,2": {"base": [0, 0, 1]},
                }}
        f = parse_morphism(data)
        assert f.base.image == (0, 2)
        assert f.component(1, 1).base.image == (0, 1, 1)
        assert f.component(1, 2).base.image == (0, 0, 1)

    def test_vertex(self):
        v = vertex(cell(2), 1)
        assert v.source == POINT and v.base(0) == 1
