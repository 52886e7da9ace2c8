import pytest

from graycyl.dac import (atom, identity_morphism, lambda_cell, lambda_globe,
                         lambda_map, tensor)
from graycyl.nu import (EnumerationError, NuCell, NuView, TableError,
                        check_functor, enumerate_cells, make_cell,
                        nu_boundary, nu_composable, nu_compose, nu_functor,
                        nu_identity, product_view, search_tables)
from graycyl.theta import (cell, coface, globe, hyperfaces, parse_cell,
                           theta_identity, theta_morphism)


def atom_cell(K, g) -> NuCell:
    a = atom(K, g)
    assert a.valid
    return make_cell(K, list(a.rows))


IV = lambda_globe(1)
SQ = tensor(IV, IV)  # the cylinder complex over the interval


def sq(a, b):
    return ("t", a, b)


class TestBoundary:
    def test_interval_top(self):
        c = atom_cell(IV, "v1")
        src, tgt = nu_boundary(c)
        assert src == atom_cell(IV, "b0")
        assert tgt == atom_cell(IV, "t0")

    def test_identity_boundary(self):
        c = atom_cell(IV, "v1")
        assert nu_boundary(nu_identity(c)) == (c, c)

    def test_square_filler(self):
        c = atom_cell(SQ, sq("v1", "v1"))
        src, tgt = nu_boundary(c)
        assert src.entry(1, 0) == {sq("b0", "v1"): 1, sq("v1", "t0"): 1}
        assert tgt.entry(1, 0) == {sq("v1", "b0"): 1, sq("t0", "v1"): 1}

    def test_zero_cell_has_none(self):
        with pytest.raises(TableError):
            nu_boundary(atom_cell(IV, "b0"))

    def test_globularity(self):
        view = NuView(SQ, 2)
        for d in (1, 2):
            for c in view.cells(d):
                if d >= 2:
                    s, t = nu_boundary(c)
                    assert nu_boundary(s) == nu_boundary(t)


class TestIdentity:
    def test_append_zero(self):
        c = atom_cell(IV, "b0")
        i = nu_identity(c)
        assert i.rows[-1] == ((), ())
        assert i.dim == 1

    def test_double(self):
        c = atom_cell(IV, "b0")
        assert nu_identity(nu_identity(c)).rows[-2:] == (((), ()), ((), ()))


class TestCompose:
    def test_diagonal_path(self):
        a = atom_cell(SQ, sq("b0", "v1"))
        b = atom_cell(SQ, sq("v1", "t0"))
        c = nu_compose(0, a, b)
        assert c.entry(1, 0) == {sq("b0", "v1"): 1, sq("v1", "t0"): 1}

    def test_unit_law(self):
        a = atom_cell(SQ, sq("b0", "v1"))
        left = nu_compose(0, nu_identity(nu_boundary(a)[0]), a)
        assert left == a
        right = nu_compose(0, a, nu_identity(nu_boundary(a)[1]))
        assert right == a

    def test_non_composable(self):
        a = atom_cell(SQ, sq("b0", "v1"))
        with pytest.raises(TableError):
            nu_compose(0, a, a)

    def test_associativity_instance(self):
        K = lambda_cell(cell(3))
        ones = [atom_cell(K, ("s", i, ("o", 0))) for i in (1, 2, 3)]
        a, b, c = ones
        lhs = nu_compose(0, nu_compose(0, a, b), c)
        rhs = nu_compose(0, a, nu_compose(0, b, c))
        assert lhs == rhs

    def test_exchange_law_instances(self):
        K = tensor(IV, lambda_globe(2))
        view = NuView(K, 2)
        twos = view.cells(2)
        checked = 0
        for a in twos:
            for b in twos:
                if not nu_composable(0, a, b):
                    continue
                ab = nu_compose(0, a, b)
                for c in twos:
                    if not nu_composable(1, a, c):
                        continue
                    for d in twos:
                        if nu_composable(1, b, d) and nu_composable(0, c, d):
                            lhs = nu_compose(1, ab, nu_compose(0, c, d))
                            rhs = nu_compose(0, nu_compose(1, a, c), nu_compose(1, b, d))
                            assert lhs == rhs
                            checked += 1
        assert checked > 0


class TestEnumeration:
    def test_two_globe(self):
        view = NuView(lambda_globe(2), 2)
        assert view.nondegenerate_counts() == (2, 2, 1)

    def test_square(self):
        view = NuView(SQ, 2)
        assert view.counts()[:2] == (4, 10)
        assert view.nondegenerate_counts() == (4, 6, 1)

    def test_point(self):
        view = NuView(lambda_globe(0), 3)
        assert view.counts() == (1, 1, 1, 1)

    def test_globes_up_to_five(self):
        for n in range(6):
            view = NuView(lambda_globe(n), n)
            want = tuple([2] * n + [1])
            assert view.nondegenerate_counts() == want

    def test_idempotent_closure(self):
        view = NuView(SQ, 2)
        for d in (1, 2):
            cells = set(view.layers[d])
            extra = set()
            for j in range(d):
                for a in cells:
                    for b in cells:
                        if nu_composable(j, a, b):
                            extra.add(nu_compose(j, a, b))
            assert extra <= cells

    def test_ceiling(self):
        with pytest.raises(EnumerationError):
            enumerate_cells(SQ, 2, ceiling=3)

    def test_requires_strong_steiner(self):
        from graycyl.dac import DAComplex
        K = DAComplex(
            degrees=((("o", 0), ("o", 1)), (("x", 0),)),
            diff={("x", 0): {}},
            aug={("o", 0): 1, ("o", 1): 1},
        )
        with pytest.raises(EnumerationError):
            enumerate_cells(K, 1)


class TestSearchOracle:
    def test_square(self):
        view = NuView(SQ, 3)
        found = search_tables(SQ, 3, 3)
        for d in range(4):
            assert set(found[d]) == view.layers[d]

    def test_interval_times_two_globe(self):
        K = tensor(IV, lambda_globe(2))
        view = NuView(K, 3)
        found = search_tables(K, 3, 3)
        for d in range(4):
            assert set(found[d]) == view.layers[d]


class TestFunctors:
    def test_identity_functor(self):
        view = NuView(SQ, 2)
        f = nu_functor(identity_morphism(SQ), 2, source_view=view, target_view=view)
        assert not check_functor(f, 2)

    def test_long_edge_image(self):
        comp = {(1, 1): theta_identity(parse_cell("[0]")),
                (1, 2): theta_identity(parse_cell("[0]")),
                (2, 3): theta_identity(parse_cell("[0]"))}
        f = theta_morphism(cell(2), cell(3), coface(2, 1), comp)
        m = lambda_map(f)
        F = nu_functor(m, 1)
        K = lambda_cell(cell(2))
        edge = atom_cell(K, ("s", 1, ("o", 0)))
        img = F(edge)
        assert img.entry(1, 0) == {("s", 1, ("o", 0)): 1, ("s", 2, ("o", 0)): 1}

    def test_endpoint_inclusion_picks_object(self):
        from graycyl.theta import vertex
        m = lambda_map(vertex(cell(1), 0))
        F = nu_functor(m, 1)
        pt = atom_cell(lambda_cell(parse_cell("[0]")), ("o", 0))
        assert F(pt).entry(0, 0) == {("o", 0): 1}

    def test_hyperfaces_of_two_simplex_pass(self):
        for face in hyperfaces(cell(2)):
            F = nu_functor(lambda_map(face.map), 2)
            assert not check_functor(F, 2)

    def test_corrupted_map_detected(self):
        view = NuView(SQ, 2)

        def bad(c):
            if c.dim == 1 and not c.is_identity:
                return nu_identity(nu_boundary(c)[0])
            return c if c.dim == 0 else nu_identity(bad(nu_boundary(c)[0]))

        from graycyl.nu import OmegaFunctor
        F = OmegaFunctor(view, view, bad)
        assert check_functor(F, 1)


class TestProductView:
    def test_terminal(self):
        v = product_view([])
        assert len(v.cells(0)) == 1 and len(v.cells(3)) == 1

    def test_counts_multiply(self):
        a = NuView(IV, 2)
        b = NuView(lambda_globe(2), 2)
        p = product_view([a, b])
        for d in range(3):
            assert len(p.cells(d)) == len(a.cells(d)) * len(b.cells(d))

    def test_product_with_point(self):
        a = NuView(IV, 2)
        pt = NuView(lambda_globe(0), 2)
        p = product_view([a, pt])
        for d in range(3):
            assert len(p.cells(d)) == len(a.cells(d))

    def test_square_counts(self):
        a = NuView(IV, 2)
        p = product_view([a, a])
        assert [len(p.cells(d)) for d in range(3)] == [4, 9, 9]
