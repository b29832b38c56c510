import pytest

from abdkit.core import relations as rels
from abdkit.core.errors import PreconditionError
from abdkit.core.oracle import all_explanations, check_explanation, oracle_abduce
from abdkit.core.types import AbductionInstance, Constraint, ConstraintLanguage, KnowledgeBase, Variant
from abdkit.solvers import (
    abd_to_le,
    decompose,
    explainer_sets,
    explanation_size_range,
    extend_solution_monotone,
    preprocess_dualhorn,
    solve_2affine,
    solve_by_H_enumeration,
    solve_by_size_enumeration,
    solve_definite_horn_plain,
    solve_ess_negative_le,
    solve_ess_positive,
    solve_M_setcover,
)

L = ConstraintLanguage.of


def instance(relations, constraints, H=(), M=(), size=None):
    kb = KnowledgeBase(tuple(Constraint(rel, args) for rel, args in constraints))
    return AbductionInstance(L(*relations), kb, frozenset(H), frozenset(M), size)


def assert_matches_oracle(solver, inst, variant):
    found = solver(inst, variant)
    expected = oracle_abduce(inst, variant)
    assert (found is None) == (expected is None), (inst, variant, found, expected)
    if found is not None:
        assert check_explanation(inst, found, variant) == "ok", (inst, variant, found)


# the implication graph a -> m1, b -> m1, b -> m2
COVER = [(rels.IMP, ("a", "m1")), (rels.IMP, ("b", "m1")), (rels.IMP, ("b", "m2"))]


@pytest.mark.unit
class TestBridge:
    def test_size_becomes_hypothesis_count(self, train_instance):
        bridged = abd_to_le(train_instance.replace(size=None))
        assert bridged.size == 3
        assert oracle_abduce(bridged, Variant.AtMost) == oracle_abduce(train_instance, Variant.Plain)

    def test_empty_hypotheses(self):
        assert abd_to_le(instance([rels.IMP], [], M=["m"])).size == 0

    def test_extend(self):
        inst = instance([rels.IMP], [(rels.IMP, ("x", "m"))], H=["x", "z"], M=["m"])
        assert extend_solution_monotone(inst, {"x"}, 2) == frozenset({"x", "z"})
        assert extend_solution_monotone(inst, {"x"}, 1) == frozenset({"x"})

    def test_extend_skips_negated_hypotheses(self):
        inst = instance([rels.IMP, rels.F], [(rels.IMP, ("x", "m")), (rels.F, ("z",))], H=["x", "z"], M=["m"])
        assert extend_solution_monotone(inst, {"x"}, 2) is None

    def test_extend_needs_dual_horn(self):
        inst = instance([rels.NAND2], [], H=["x"])
        with pytest.raises(PreconditionError):
            extend_solution_monotone(inst, set(), 1)


@pytest.mark.unit
class TestEssPositive:
    def test_positive_unit_covers_manifestation(self):
        inst = instance([rels.T, rels.OR2], [(rels.T, ("m1",))], H=["m2"], M=["m1", "m2"], size=1)
        assert solve_ess_positive(inst, Variant.AtMost) == frozenset({"m2"})

    def test_negated_manifestation(self):
        inst = instance([rels.F, rels.OR2], [(rels.F, ("m",))], H=["m"], M=["m"], size=1)
        assert solve_ess_positive(inst, Variant.AtMost) is None

    def test_exact_padding(self):
        inst = instance([rels.OR2], [], H=["a"], size=1)
        assert solve_ess_positive(inst, Variant.Exact) == frozenset({"a"})
        assert solve_ess_positive(inst.replace(size=2), Variant.Exact) is None

    def test_region(self):
        with pytest.raises(PreconditionError):
            solve_ess_positive(instance([rels.IMP], []), Variant.Plain)


@pytest.mark.unit
class TestEssNegative:
    def test_core(self):
        constraints = [(rels.NAND2, ("h1", "h2")), (rels.T, ("m1",))]
        inst = instance([rels.NAND2, rels.T], constraints, H=["h1", "m2"], M=["m1", "m2"], size=1)
        assert solve_ess_negative_le(inst) == frozenset({"m2"})

    def test_inconsistent_manifestation(self):
        inst = instance([rels.NAND2, rels.F], [(rels.F, ("m",))], H=["m"], M=["m"], size=1)
        assert solve_ess_negative_le(inst) is None

    def test_size_below_core(self):
        inst = instance([rels.NAND2], [], H=["a", "b"], M=["a", "b"], size=1)
        assert solve_ess_negative_le(inst) is None
        assert solve_ess_negative_le(inst, Variant.Plain) == frozenset({"a", "b"})

    def test_exact_rejected(self):
        with pytest.raises(PreconditionError):
            solve_ess_negative_le(instance([rels.NAND2], [], size=0), Variant.Exact)


@pytest.mark.unit
class TestTwoAffine:
    def test_chain_of_equalities(self):
        constraints = [(rels.EQ, ("a", "b")), (rels.EQ, ("b", "m"))]
        inst = instance([rels.EQ], constraints, H=["a"], M=["m"], size=1)
        assert solve_2affine(inst, Variant.Exact) == frozenset({"a"})
        assert solve_2affine(inst.replace(size=2), Variant.Exact) is None
        both = inst.replace(hypotheses=frozenset({"a", "b"}), size=2)
        assert solve_2affine(both, Variant.Exact) == frozenset({"a", "b"})

    @pytest.mark.parametrize("variant", list(Variant))
    def test_class_without_hypothesis(self, variant):
        inst = instance([rels.EQ], [(rels.EQ, ("a", "m"))], H=["b"], M=["m"], size=1)
        assert solve_2affine(inst, variant) is None

    def test_clusters(self):
        constraints = [(rels.NEQ, ("a", "b")), (rels.EQ, ("b", "c")), (rels.T, ("d",)), (rels.NEQ, ("d", "e"))]
        inst = instance([rels.EQ, rels.NEQ, rels.T], constraints, H=["a", "b", "c", "d", "e"], size=0)
        decomposition = decompose(inst)
        assert decomposition.forced == {"d": 1, "e": 0}
        assert decomposition.pool == ["b", "c", "d"]
        assert explanation_size_range(inst) == (0, 3)

    def test_odd_cycle(self):
        constraints = [(rels.NEQ, ("a", "b")), (rels.NEQ, ("b", "c")), (rels.NEQ, ("c", "a"))]
        assert decompose(instance([rels.NEQ], constraints)) is None

    def test_region(self):
        with pytest.raises(PreconditionError):
            decompose(instance([rels.IMP], []))


@pytest.mark.unit
class TestDefiniteHorn:
    def test_implication(self):
        inst = instance([rels.IMP], [(rels.IMP, ("x", "m"))], H=["x"], M=["m"])
        assert solve_definite_horn_plain(inst) == frozenset({"x"})

    def test_conjunctive_body(self):
        inst = instance([rels.HORN3], [(rels.HORN3, ("a", "b", "m"))], H=["a"], M=["m"])
        assert solve_definite_horn_plain(inst) is None

    def test_empty_manifestations(self):
        inst = instance([rels.HORN3], [(rels.HORN3, ("a", "b", "m"))], H=["a", "b"])
        assert solve_definite_horn_plain(inst) == frozenset()

    def test_region(self):
        with pytest.raises(PreconditionError):
            solve_definite_horn_plain(instance([rels.NAND2], []))


@pytest.mark.unit
class TestEnumeration:
    def test_train_example(self, train_instance):
        assert solve_by_H_enumeration(train_instance, Variant.Exact) == frozenset({"doorOpen"})
        assert solve_by_size_enumeration(train_instance, Variant.Exact) == frozenset({"doorOpen"})
        two = train_instance.replace(size=2)
        assert solve_by_size_enumeration(two, Variant.Exact) == frozenset({"doorOpen", "time"})

    def test_affine(self):
        inst = instance([rels.EQ, rels.XOR3], [(rels.EQ, ("x", "m"))], H=["x"], M=["m"])
        assert solve_by_H_enumeration(inst, Variant.Plain) == frozenset({"x"})

    def test_nothing_to_select(self):
        inst = instance([rels.IMP], [(rels.IMP, ("a", "b"))], M=["m"])
        assert solve_by_H_enumeration(inst, Variant.Plain) is None

    def test_empty_explanation(self):
        inst = instance([rels.IMP], [(rels.IMP, ("a", "b"))], H=["a"], size=0)
        assert solve_by_size_enumeration(inst, Variant.AtMost) == frozenset()

    def test_size_enumeration_needs_bound(self, train_instance):
        with pytest.raises(PreconditionError):
            solve_by_size_enumeration(train_instance, Variant.Plain)

    def test_outside_schaefer(self):
        with pytest.raises(PreconditionError):
            solve_by_H_enumeration(instance([rels.NAE3], []), Variant.Plain)


@pytest.mark.unit
class TestImplicationSolvers:
    def test_explainer_sets(self):
        sets = explainer_sets([("a", "m1"), ("b", "m1"), ("b", "m2")], {"a", "b"}, {"m1", "m2"})
        assert sets["m1"] == {"a", "b"} and sets["m2"] == {"b"}
        assert sets.covers() == {"a": {"m1"}, "b": {"m1", "m2"}}

    def test_explainer_sets_trivial(self):
        assert explainer_sets([], {"m"}, {"m"})["m"] == {"m"}
        assert explainer_sets([], {"a"}, {"m"})["m"] == frozenset()

    def test_preprocess_units(self):
        inst = instance([rels.T, rels.IMP], [(rels.T, ("x",)), (rels.IMP, ("x", "y"))])
        reduction = preprocess_dualhorn(inst)
        assert reduction.forced_true == {"x", "y"} and reduction.implications == []

    def test_preprocess_resolves_intermediate(self):
        inst = instance([rels.IMP], [(rels.IMP, ("u", "m")), (rels.IMP, ("h", "u"))], H=["h"], M=["m"])
        assert preprocess_dualhorn(inst).implications == [("h", "m")]

    def test_preprocess_drops_positive_clauses(self):
        inst = instance([rels.OR2], [(rels.OR2, ("a", "b"))], H=["a"], M=["b"], size=1)
        assert preprocess_dualhorn(inst).implications == []
        assert solve_M_setcover(inst) is None

    def test_preprocess_keeps_forced_manifestation_out(self):
        # m | h and h -> m force m
        inst = instance([rels.OR2, rels.IMP], [(rels.OR2, ("m", "h")), (rels.IMP, ("h", "m"))], H=["h"], M=["m"])
        reduction = preprocess_dualhorn(inst)
        assert reduction.manifestations == frozenset()
        assert solve_M_setcover(inst.replace(size=0), Variant.Exact) == frozenset()

    def test_setcover(self):
        inst = instance([rels.IMP], COVER, H=["a", "b"], M=["m1", "m2"], size=1)
        assert solve_M_setcover(inst) == frozenset({"b"})
        assert solve_M_setcover(inst.replace(size=0)) is None
        assert solve_M_setcover(inst.replace(size=2)) == frozenset({"b"})
        assert solve_M_setcover(inst.replace(size=2), Variant.Exact) == frozenset({"a", "b"})

    def test_setcover_region(self):
        with pytest.raises(PreconditionError):
            solve_M_setcover(instance([rels.NAND2], [], size=0))


def _definite_horn(inst, variant):
    return solve_definite_horn_plain(inst)


SOLVER_REGIONS = [
    (solve_ess_positive, "ess_positive", list(Variant)),
    (solve_ess_negative_le, "ess_negative", [Variant.Plain, Variant.AtMost]),
    (solve_2affine, "affine2", list(Variant)),
    (_definite_horn, "definite_horn", [Variant.Plain]),
    (solve_M_setcover, "implicative", list(Variant)),
    (solve_M_setcover, "dual_horn", list(Variant)),
    (solve_by_H_enumeration, "horn", list(Variant)),
    (solve_by_H_enumeration, "dual_horn", list(Variant)),
    (solve_by_H_enumeration, "krom", list(Variant)),
    (solve_by_H_enumeration, "affine", list(Variant)),
    (solve_by_size_enumeration, "horn", [Variant.AtMost, Variant.Exact]),
    (solve_by_size_enumeration, "affine", [Variant.AtMost, Variant.Exact]),
]


@pytest.mark.acceptance
@pytest.mark.parametrize(
    "seed,solver,region,variants",
    [(i, *row) for i, row in enumerate(SOLVER_REGIONS)],
    ids=[f"{s.__name__}-{r}" for s, r, _ in SOLVER_REGIONS],
)
def test_solver_matches_oracle(make_instances, seed, solver, region, variants):
    for inst in make_instances(region, 500, seed=100 + seed):
        for variant in variants:
            assert_matches_oracle(solver, inst, variant)


@pytest.mark.acceptance
def test_size_enumeration_small_bounds(make_instances):
    for inst in make_instances("horn", 500, seed=21):
        bounded = inst.replace(size=min(inst.size, 2))
        for variant in (Variant.AtMost, Variant.Exact):
            assert_matches_oracle(solve_by_size_enumeration, bounded, variant)


@pytest.mark.acceptance
def test_ess_negative_witness_is_minimum(make_instances):
    for inst in make_instances("ess_negative", 500, seed=22):
        found = solve_ess_negative_le(inst, Variant.Plain)
        if found is not None:
            assert min(len(e) for e in all_explanations(inst)) == len(found)


@pytest.mark.acceptance
def test_monotone_region_law(make_instances):
    for inst in make_instances("monotone_dual_horn", 200, seed=23):
        for s in range(len(inst.hypotheses) + 1):
            sized = inst.replace(size=s)
            at_most = oracle_abduce(sized, Variant.AtMost)
            exact = oracle_abduce(sized, Variant.Exact)
            assert (at_most is None) == (exact is None), sized
            assert (solve_M_setcover(sized, Variant.AtMost) is None) == (at_most is None)
            assert (solve_M_setcover(sized, Variant.Exact) is None) == (exact is None)


@pytest.mark.acceptance
def test_two_affine_interval_law(make_instances):
    for inst in make_instances("affine2", 100, seed=24):
        sizes = sorted({len(e) for e in all_explanations(inst)})
        bounds = explanation_size_range(inst)
        if bounds is None:
            assert sizes == []
        else:
            assert sizes == list(range(bounds[0], bounds[1] + 1)), inst
