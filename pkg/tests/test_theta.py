from math import comb

import pytest

from thetaconf import (BranchingConditionViolation, CapExceeded,
                       DeltaMorphism, GammaMorphism, LabelMismatch, LeafId,
                       NotActive, ThetaMorphism, UnhealthyTarget,
                       assemble_morphism, assemble_object,
                       branching_condition_holds, enumerate_gamma,
                       enumerate_hom_bruteforce, enumerate_trees,
                       gamma_compose, gamma_is_active, identity_morphism,
                       is_healthy, level_n_leaves, lift_active, parse_symbol,
                       theta_compose, theta_is_active)


def _delta(s, t, *values):
    return DeltaMorphism(s, t, tuple(values))


def test_level_one_morphisms_are_monotone_maps():
    f = ThetaMorphism(1, _delta(1, 2, 0, 2))
    assert f.parts == ()
    with pytest.raises(ValueError):
        ThetaMorphism(1, _delta(1, 2, 0, 2),
                      (((1, 1), ThetaMorphism(1, _delta(0, 0, 0))),))


def test_make_validates_part_keys():
    u = parse_symbol("[1]([2])", 2)
    t = parse_symbol("[2]([1],[1])", 2)
    delta = _delta(1, 2, 0, 2)
    good = {(1, 1): ThetaMorphism(1, _delta(2, 1, 0, 1, 1)),
            (1, 2): ThetaMorphism(1, _delta(2, 1, 0, 0, 1))}
    ThetaMorphism.make(2, delta, good)
    with pytest.raises(ValueError):
        ThetaMorphism.make(2, delta, {(1, 1): good[(1, 1)]})
    with pytest.raises(ValueError):
        bad = dict(good)
        bad[(2, 2)] = bad.pop((1, 2))
        ThetaMorphism.make(2, delta, bad)


def test_identity_morphism():
    t = parse_symbol("[2]([2],[1])", 2)
    ident = identity_morphism(t, 2)
    assert ident.delta == DeltaMorphism.identity(2)
    assert theta_compose(ident, ident) == ident
    shadow = assemble_morphism(ident, t, t, 2)
    assert shadow == GammaMorphism.identity(level_n_leaves(t, 2))


def test_assembly_is_functorial():
    n = 2
    trees = enumerate_trees(2, n)
    for a in trees:
        for b in trees:
            for f in enumerate_hom_bruteforce(a, b, n):
                gf = assemble_morphism(f, a, b, n)
                for c in trees:
                    for g in enumerate_hom_bruteforce(b, c, n):
                        left = assemble_morphism(theta_compose(g, f), a, c, n)
                        right = gamma_compose(
                            assemble_morphism(g, b, c, n), gf)
                        assert left == right


def test_compose_rejects_rank_mismatch():
    f = ThetaMorphism(1, _delta(1, 2, 0, 2))
    g = ThetaMorphism(1, _delta(1, 2, 0, 2))
    with pytest.raises(ValueError):
        theta_compose(g, f)


def test_associativity_small():
    n = 2
    u = parse_symbol("[1]([1])", n)
    homs = enumerate_hom_bruteforce(u, u, n)
    for f in homs:
        for g in homs:
            for h in homs:
                assert theta_compose(h, theta_compose(g, f)) == \
                    theta_compose(theta_compose(h, g), f)


def test_hom_count_by_hand():
    # [1]([1]) -> [1]([1]) at level 2: three deltas [1]->[1]; (0,1) carries
    # the three level-1 maps [1]->[1], (0,0) and (1,1) carry none
    u = parse_symbol("[1]([1])", 2)
    assert len(enumerate_hom_bruteforce(u, u, 2)) == 5


def test_hom_count_level_one_is_delta():
    for s in range(4):
        for t in range(4):
            src = parse_symbol(f"[{s}]", 1)
            tgt = parse_symbol(f"[{t}]", 1)
            assert len(enumerate_hom_bruteforce(src, tgt, 1)) == \
                comb(s + t + 1, s + 1)


def test_enumerate_hom_cap():
    t = parse_symbol("[3]([3],[3],[3])", 2)
    with pytest.raises(CapExceeded):
        enumerate_hom_bruteforce(t, t, 2, max_count=10)


def test_assemble_object_is_leaf_listing():
    t = parse_symbol("[2]([1],[2])", 2)
    assert assemble_object(t, 2) == (LeafId((0, 0)), LeafId((1, 0)),
                                     LeafId((1, 1)))


def test_assemble_at_level_one_is_the_interval_map():
    f = ThetaMorphism(1, _delta(2, 3, 0, 2, 3))
    src = parse_symbol("[2]", 1)
    tgt = parse_symbol("[3]", 1)
    shadow = assemble_morphism(f, src, tgt, 1)
    assert shadow.mapping == {
        LeafId((0,)): frozenset({LeafId((0,)), LeafId((1,))}),
        LeafId((1,)): frozenset({LeafId((2,))}),
    }


def test_json_roundtrip_keeps_codomain():
    u = parse_symbol("[1]([2])", 2)
    t = parse_symbol("[2]([1],[1])", 2)
    for f in enumerate_hom_bruteforce(u, t, 2):
        assert ThetaMorphism.from_json(f.to_json()) == f
    # codomain rank is not recoverable from a monotone map alone
    f = ThetaMorphism(1, _delta(1, 3, 0, 1))
    assert ThetaMorphism.from_json(f.to_json()).delta.target_rank == 3


def test_lift_worked_example():
    u = parse_symbol("[1]([2])", 2)
    t = parse_symbol("[2]([1],[1])", 2)
    gbar = GammaMorphism.from_map(
        level_n_leaves(u, 2), level_n_leaves(t, 2),
        {LeafId((0, 0)): {LeafId((0, 0))}, LeafId((0, 1)): {LeafId((1, 0))}})
    f = lift_active(u, t, 2, gbar)
    assert f.delta.values == (0, 2)
    parts = f.parts_map
    assert parts[(1, 1)].delta.values == (0, 1, 1)
    assert parts[(1, 2)].delta.values == (0, 0, 1)
    assert assemble_morphism(f, u, t, 2) == gbar
    assert theta_is_active(f, u, t, 2)


def test_lift_rejects_unhealthy_target():
    u = parse_symbol("[1]([1])", 2)
    t = parse_symbol("[2]([0],[1])", 2)
    gbar = GammaMorphism.from_map(
        level_n_leaves(u, 2), level_n_leaves(t, 2),
        {LeafId((0, 0)): {LeafId((1, 0))}})
    with pytest.raises(UnhealthyTarget):
        lift_active(u, t, 2, gbar)


def test_lift_rejects_inactive():
    s = parse_symbol("[1]([1])", 2)
    t = parse_symbol("[1]([2])", 2)
    gbar = GammaMorphism.from_map(
        level_n_leaves(s, 2), level_n_leaves(t, 2),
        {LeafId((0, 0)): {LeafId((0, 0))}})
    with pytest.raises(NotActive):
        lift_active(s, t, 2, gbar)


def test_lift_rejects_endpoint_mismatch():
    s = parse_symbol("[1]([1])", 2)
    t = parse_symbol("[2]([1],[1])", 2)
    gbar = GammaMorphism.from_map(
        level_n_leaves(s, 2), (LeafId((9, 9)),),
        {LeafId((0, 0)): {LeafId((9, 9))}})
    with pytest.raises(LabelMismatch):
        lift_active(s, t, 2, gbar)


def test_collapsing_both_leaves_to_one_owner_is_fine():
    u = parse_symbol("[1]([2])", 2)
    t = parse_symbol("[2]([1],[1])", 2)
    gbar = GammaMorphism.from_map(
        level_n_leaves(u, 2), level_n_leaves(t, 2),
        {LeafId((0, 0)): {LeafId((0, 0)), LeafId((1, 0))},
         LeafId((0, 1)): set()})
    assert gamma_is_active(gbar)
    assert branching_condition_holds(u, t, 2, gbar)
    f = lift_active(u, t, 2, gbar)
    assert assemble_morphism(f, u, t, 2) == gbar


def test_lift_rejects_branching_level_rise():
    # target leaves branch at level 1, their sources already at level 0
    s = parse_symbol("[2]([1],[1])", 2)
    u = parse_symbol("[1]([2])", 2)
    gbar = GammaMorphism.from_map(
        level_n_leaves(s, 2), level_n_leaves(u, 2),
        {LeafId((0, 0)): {LeafId((0, 0))}, LeafId((1, 0)): {LeafId((0, 1))}})
    assert gamma_is_active(gbar)
    assert not branching_condition_holds(s, u, 2, gbar)
    with pytest.raises(BranchingConditionViolation):
        lift_active(s, u, 2, gbar)


def test_lift_rejects_order_flip_on_equal_level():
    # equal branching level demands the planar order agree
    u = parse_symbol("[1]([2])", 2)
    gbar = GammaMorphism.from_map(
        level_n_leaves(u, 2), level_n_leaves(u, 2),
        {LeafId((0, 0)): {LeafId((0, 1))}, LeafId((0, 1)): {LeafId((0, 0))}})
    assert gamma_is_active(gbar)
    assert not branching_condition_holds(u, u, 2, gbar)
    with pytest.raises(BranchingConditionViolation):
        lift_active(u, u, 2, gbar)


def test_branching_condition_requires_healthy_target():
    u = parse_symbol("[1]([1])", 2)
    t = parse_symbol("[2]([0],[1])", 2)
    gbar = GammaMorphism.from_map(
        level_n_leaves(u, 2), level_n_leaves(t, 2),
        {LeafId((0, 0)): {LeafId((1, 0))}})
    with pytest.raises(UnhealthyTarget):
        branching_condition_holds(u, t, 2, gbar)


def test_bijection_small_sweep():
    """Active morphisms onto a healthy target correspond one-to-one to
    set maps satisfying the branching condition."""
    for n in (1, 2):
        trees = enumerate_trees(3, n)
        for source in trees:
            for target in trees:
                if not is_healthy(target, n):
                    continue
                active = enumerate_hom_bruteforce(source, target, n,
                                                  active_only=True)
                shadows = {assemble_morphism(f, source, target, n): f
                           for f in active}
                assert len(shadows) == len(active)
                good = [g for g in enumerate_gamma(
                            level_n_leaves(source, n),
                            level_n_leaves(target, n), active_only=True)
                        if branching_condition_holds(source, target, n, g)]
                assert set(shadows) == set(good)
                for g in good:
                    assert lift_active(source, target, n, g) == shadows[g]
