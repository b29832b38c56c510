import itertools
from typing import Dict, List

import pytest

from abdkit.core import relations as rels
from abdkit.core.errors import (
    AbdSyntaxError,
    ArityError,
    OracleLimitExceeded,
    PreconditionError,
    UnassignedVariableError,
    UnknownRelationError,
)
from abdkit.core.implicates import negative_width, positive_width, prime_implicates
from abdkit.core.instance_io import parse_instance, serialize_instance
from abdkit.core.oracle import (
    all_explanations,
    check_explanation,
    entails_bruteforce,
    eval_constraint,
    oracle_abduce,
    sat_bruteforce,
    weight,
)
from abdkit.core.types import (
    AbductionInstance,
    Constraint,
    ConstraintLanguage,
    KnowledgeBase,
    Param,
    Relation,
    Variant,
)


@pytest.mark.unit
class TestRelations:
    def test_tuples_are_normalised(self):
        a = Relation("R", 2, frozenset({"01", "10"}))
        b = Relation("R", 2, frozenset({(1, 0), (0, 1)}))
        assert a == b
        assert (0, 1) in a and (1, 1) not in a

    def test_bad_tuple_width(self):
        with pytest.raises(ArityError):
            Relation("R", 2, frozenset({"011"}))

    def test_constraint_arity(self):
        with pytest.raises(ArityError):
            Constraint(rels.IMP, ("x",))

    def test_language_rejects_name_clash(self):
        with pytest.raises(ValueError):
            ConstraintLanguage.of(rels.IMP, rels.NAND2.renamed("IMP"))

    def test_language_lookup(self):
        language = ConstraintLanguage.of(rels.OR2, rels.IMP)
        assert language.names == ["IMP", "OR2"]
        assert language["OR2"] is rels.OR2
        with pytest.raises(UnknownRelationError):
            language["NAND2"]

    def test_enums_parse(self):
        assert Variant.parse("eq") is Variant.Exact
        assert Variant.parse("le") is Variant.AtMost
        assert Param.parse("M") is Param.M


@pytest.mark.unit
class TestImplicates:
    def test_implication(self):
        assert prime_implicates(rels.IMP) == (frozenset({(0, False), (1, True)}),)

    def test_widths(self):
        assert negative_width(rels.NAND3) == 3
        assert positive_width(rels.NAND3) == 0
        assert positive_width(rels.OR2) == 2
        assert negative_width(rels.HORN3) == 0

    def test_empty_relation(self):
        assert prime_implicates(Relation("EMPTY", 2)) == (frozenset(),)


@pytest.mark.unit
class TestOracle:
    def test_eval_constraint(self):
        c = Constraint(rels.IMP, ("x", "y"))
        assert eval_constraint(c, {"x": 0, "y": 0})
        assert not eval_constraint(c, {"x": 1, "y": 0})

    def test_eval_ignores_tuple_order(self):
        permuted = Relation("IMP", 2, frozenset(reversed(rels.IMP.sorted_tuples())))
        c1, c2 = Constraint(rels.IMP, ("x", "y")), Constraint(permuted, ("x", "y"))
        for sigma in ({"x": a, "y": b} for a in (0, 1) for b in (0, 1)):
            assert eval_constraint(c1, sigma) == eval_constraint(c2, sigma)

    def test_unassigned(self):
        with pytest.raises(UnassignedVariableError):
            eval_constraint(Constraint(rels.IMP, ("x", "y")), {"x": 1})

    def test_sat_first_model_is_lexicographic(self):
        kb = KnowledgeBase((Constraint(rels.OR2, ("x", "y")),))
        assert sat_bruteforce(kb) == {"x": 0, "y": 1}
        assert weight(sat_bruteforce(kb)) == 1

    def test_unsat(self):
        kb = KnowledgeBase((Constraint(rels.T, ("x",)), Constraint(rels.F, ("x",))))
        assert sat_bruteforce(kb) is None

    def test_entailment_from_inconsistent_premises(self):
        kb = KnowledgeBase((Constraint(rels.F, ("x",)),))
        assert entails_bruteforce(kb, ["x"], ["y"], ["x", "y"])

    def test_size_bound_required(self, train_instance):
        with pytest.raises(PreconditionError):
            oracle_abduce(train_instance.replace(size=None), Variant.Exact)

    def test_limit(self, train_instance):
        with pytest.raises(OracleLimitExceeded):
            oracle_abduce(train_instance, Variant.Plain, limit=16)

    def test_all_explanations_order(self):
        inst = AbductionInstance(
            ConstraintLanguage.of(rels.IMP),
            KnowledgeBase((Constraint(rels.IMP, ("a", "m")), Constraint(rels.IMP, ("b", "m")))),
            frozenset({"a", "b"}),
            frozenset({"m"}),
        )
        assert all_explanations(inst) == [frozenset({"a"}), frozenset({"b"}), frozenset({"a", "b"})]


@pytest.mark.acceptance
class TestTrainExample:
    def test_kb_shape(self, train_instance):
        assert len(train_instance.kb) == 6
        assert train_instance.H == ["announcement", "doorOpen", "time"]
        assert train_instance.M == ["stop"]

    def test_exact_one(self, train_instance):
        assert oracle_abduce(train_instance, Variant.Exact) == frozenset({"doorOpen"})

    def test_exact_two(self, train_instance):
        found = oracle_abduce(train_instance.replace(size=2), Variant.Exact)
        assert found == frozenset({"doorOpen", "time"})

    def test_plain_and_bridge_agree(self, train_instance):
        assert oracle_abduce(train_instance, Variant.Plain) == frozenset({"doorOpen"})
        bridged = train_instance.replace(size=len(train_instance.hypotheses))
        assert bridged.size == 3
        assert oracle_abduce(bridged, Variant.AtMost) == frozenset({"doorOpen"})

    def test_rejections(self, train_instance):
        assert check_explanation(train_instance, ["announcement"]) == "inconsistent"
        assert check_explanation(train_instance, ["time"]) == "not_entailing"
        assert check_explanation(train_instance, ["doorOpen"], Variant.Exact) == "ok"
        assert check_explanation(train_instance, ["doorOpen", "time"], Variant.Exact) == "size"
        assert check_explanation(train_instance, ["stop"]) == "not_subset"

    def test_consistency_of_announcement(self, train_instance):
        kb = train_instance.kb.extend([Constraint(rels.T, ("announcement",))])
        assert sat_bruteforce(kb) is None

    def test_other_hypotheses(self, train_instance):
        inst = train_instance.replace(hypotheses=frozenset({"engineFailed", "doorOpen"}), size=1)
        assert all_explanations(inst, Variant.Exact) == [frozenset({"doorOpen"})]


def models_with(inst: AbductionInstance, selected) -> List[Dict[str, int]]:
    """Models of KB & E by plain enumeration over every assignment, independent of the bitmask oracle."""
    found = []
    for bits in itertools.product((0, 1), repeat=len(inst.variables)):
        sigma = dict(zip(inst.variables, bits))
        if all(sigma[h] for h in selected) and all(eval_constraint(c, sigma) for c in inst.kb):
            found.append(sigma)
    return found


@pytest.mark.acceptance
@pytest.mark.parametrize("variant", list(Variant))
def test_oracle_witnesses_explain(make_instances, variant):
    regions = ["horn", "dual_horn", "krom", "affine", "ess_positive", "ess_negative"]
    checked = 0
    for seed, region in enumerate(regions):
        for inst in make_instances(region, 85, seed=300 + seed, n_vars=8):
            found = oracle_abduce(inst, variant)
            if found is None:
                continue
            assert found <= inst.hypotheses
            if variant != Variant.Plain:
                assert len(found) <= inst.size if variant == Variant.AtMost else len(found) == inst.size
            witnesses = models_with(inst, found)
            assert witnesses, (inst, found)
            assert all(sigma[m] for sigma in witnesses for m in inst.manifestations), (inst, found)
            checked += 1
    assert checked > 0


@pytest.mark.unit
class TestInstanceFormat:
    def test_serialize_is_canonical(self, train_instance, train_text):
        text = serialize_instance(train_instance)
        assert parse_instance(text) == train_instance
        assert serialize_instance(parse_instance(text)) == text
        assert text.splitlines()[0].startswith("rel F 1 0")

    def test_unknown_relation(self):
        with pytest.raises(UnknownRelationError) as e:
            parse_instance("rel IMP 2 00 01 11\ncon NAND x y\n")
        assert e.value.lineno == 2

    def test_arity_mismatch(self):
        with pytest.raises(ArityError):
            parse_instance("rel IMP 2 00 01 11\ncon IMP x\n")

    @pytest.mark.parametrize(
        "text",
        [
            "rel IMP two 00\n",
            "rel IMP 2 00 012\n",
            "hyp 1x\n",
            "size -1\n",
            "bogus x\n",
            "rel R 1 0\nrel R 1 1\n",
        ],
    )
    def test_syntax_errors(self, text):
        with pytest.raises(AbdSyntaxError):
            parse_instance(text)

    def test_unused_relation_stays_in_language(self):
        inst = parse_instance("rel IMP 2 00 01 11\nrel NAND2 2 00 01 10\ncon IMP a b\nhyp a\nman b\n")
        assert inst.language.names == ["IMP", "NAND2"]
        assert inst.size is None
