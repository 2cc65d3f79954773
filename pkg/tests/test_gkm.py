import json

import pytest

from hessgkm.classes import ClassSpec, build_class
from hessgkm.gkm import (
    Cochain, TooLarge, all_perms, build_graph, compose, cycle, dot_action, export_dot,
    export_json, first_gkm_failure, fixed_level_components, inverse, involution_vee,
    is_gkm_class, longest, phi_r_check,
)
from hessgkm.hessfn import enumerate_functions, lollipop, validate
from hessgkm.polyring import MultiPoly


def test_permutation_helpers():
    assert len(all_perms(4)) == 24
    assert all_perms(3)[0] == (1, 2, 3)
    w = (2, 3, 1)
    assert compose(w, inverse(w)) == (1, 2, 3)
    assert longest(3) == (3, 2, 1)
    assert cycle(4, 2) == (1, 3, 4, 2)


def test_graph_233_is_hexagon():
    g = build_graph(validate((2, 3, 3)))
    assert len(g.vertices) == 6 and len(g.edges) == 6
    assert set(g.degree_sequence().values()) == {2}
    assert len(g.components()) == 1


def test_graph_333_is_three_regular():
    g = build_graph(validate((3, 3, 3)))
    assert len(g.edges) == 9
    assert set(g.degree_sequence().values()) == {3}


def test_graph_gate():
    with pytest.raises(TooLarge):
        build_graph(validate([9] * 9))


def test_edge_count_is_dimension_times_vertices_over_two():
    for h in enumerate_functions(4):
        g = build_graph(h)
        assert 2 * len(g.edges) == 24 * sum(h[j] - j for j in range(1, 5))


@pytest.mark.parametrize("n", range(2, 5))
def test_constants_and_x1_are_classes(n):
    for h in enumerate_functions(n):
        assert is_gkm_class(h, Cochain.constant(n, MultiPoly.var(n, 1)))
        assert is_gkm_class(h, build_class(n, ClassSpec.x(1)))


def test_tau_fails_on_flag():
    h = validate((3, 3, 3))
    bad = first_gkm_failure(h, build_class(3, ClassSpec.tau([1])))
    assert bad is not None and {bad.i, bad.j} == {1, 3}


@pytest.mark.parametrize("n", range(2, 5))
def test_dot_action_fixes_x_and_moves_tau(n):
    for sigma in all_perms(n):
        for k in range(1, n + 1):
            x = build_class(n, ClassSpec.x(k))
            assert dot_action(sigma, x) == x
        for A in ([1], [1, 2], list(range(2, n + 1))):
            if len(A) >= n:
                continue
            moved = ClassSpec.tau([sigma[a - 1] for a in A])
            assert dot_action(sigma, build_class(n, ClassSpec.tau(A))) == build_class(n, moved)


def test_dot_action_is_an_action():
    f = build_class(3, ClassSpec.tau([1]))
    for s in all_perms(3):
        for u in all_perms(3):
            assert dot_action(compose(s, u), f) == dot_action(s, dot_action(u, f))


def test_involution_on_x():
    for n in range(2, 6):
        for k in range(1, n + 1):
            assert involution_vee(build_class(n, ClassSpec.x(k))) == build_class(n, ClassSpec.x(n - k + 1))


def test_fixed_level_component_counts():
    from math import comb
    for n in range(3, 6):
        for a in range(1, n - 1):
            for b in range(a + 1, n + 1):
                h = lollipop(n, a, b)
                for r in range(1, a + 1):
                    assert len(fixed_level_components(h, r)) == 1
                assert len(fixed_level_components(h, a + 1)) == comb(n - 1, a)


def _flood_fill_count(h, r):
    n = h.n
    verts = {w for w in all_perms(n) if w[r - 1] == n}
    g = build_graph(h)
    ps = all_perms(n)
    adj = {ps[k]: [] for k in g.vertices}
    for e in g.edges:
        adj[ps[e.u]].append(ps[e.v])
        adj[ps[e.v]].append(ps[e.u])
    seen, count = set(), 0
    for w in verts:
        if w in seen:
            continue
        count += 1
        stack = [w]
        while stack:
            u = stack.pop()
            if u in seen:
                continue
            seen.add(u)
            stack.extend(v for v in adj[u] if v in verts)
    return count


def test_fixed_level_matches_flood_fill():
    h = validate((2, 3, 4, 4))
    for r in range(1, 5):
        assert len(fixed_level_components(h, r)) == _flood_fill_count(h, r)


@pytest.mark.parametrize("n", range(2, 5))
def test_phi_r_all_components(n):
    for h in enumerate_functions(n, connected_only=True):
        for r in range(1, n + 1):
            for comp in fixed_level_components(h, r):
                assert phi_r_check(h, r, comp)


def test_phi_r_small_examples():
    h = validate((2, 3, 3))
    (comp,) = fixed_level_components(h, 3)
    assert phi_r_check(h, 3, comp)
    assert len(comp.vertices) == 2
    h = validate((3, 3, 3))
    assert all(phi_r_check(h, 1, c) for c in fixed_level_components(h, 1))


def test_exports_are_deterministic():
    g = build_graph(validate((2, 3, 3)))
    dot = export_dot(g)
    assert dot == export_dot(build_graph(validate((2, 3, 3))))
    assert dot.startswith("graph G {") and 'label="t' in dot
    data = json.loads(export_json(g))
    assert len(data["vertices"]) == 6 and len(data["edges"]) == 6


def test_cochain_arithmetic():
    n = 3
    x1 = build_class(n, ClassSpec.x(1))
    x2 = build_class(n, ClassSpec.x(2))
    assert (x1 - x1).is_zero()
    prod = x1 * x2
    assert prod.degree == 2
    assert prod((1, 2, 3)) == MultiPoly.var(3, 1) * MultiPoly.var(3, 2)
    with pytest.raises(ValueError):
        Cochain(n, 1, {(1, 2, 3): MultiPoly.var(3, 1) ** 2})
