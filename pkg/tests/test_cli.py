import json
import random

import jsonlines
import pytest

from abdkit.cli.engines import ENGINES, Engine, auto_order, get_engine, pick_engine, solve, verify
from abdkit.cli.main import EXIT_DISAGREEMENT, EXIT_OK, EXIT_USAGE, main
from abdkit.cli.verdicts import HARDNESS, classify
from abdkit.core import relations as rels
from abdkit.core.errors import NotMeaningfulError, PreconditionError
from abdkit.core.instance_io import load_instance, save_instance
from abdkit.core.oracle import check_explanation, oracle_abduce
from abdkit.core.types import (
    AbductionInstance,
    Constraint,
    ConstraintLanguage,
    KnowledgeBase,
    Param,
    Relation,
    Variant,
)
from abdkit.reductions import gen_indset_eq, parse_edges, parse_wsat

from .conftest import REGIONS, random_instance

L = ConstraintLanguage.of

GOLDEN = [
    ((rels.IMP,), "eq", "H", "FPT"),
    ((rels.IMP,), "le", "E", "W2_complete"),
    ((rels.IMP,), "eq", "E", "W2_complete"),
    ((rels.IMP,), "plain", "M", "FPT"),
    ((rels.IMP,), "le", "M", "FPT"),
    ((rels.NAND2,), "eq", "H", "FPT"),
    ((rels.NAND2,), "le", "E", "FPT"),
    ((rels.NAND2,), "eq", "E", "W1_complete"),
    ((rels.NAND2,), "plain", "M", "FPT"),
    ((rels.NAND2,), "le", "M", "FPT"),
    ((rels.NAND2,), "eq", "M", "paraNP_complete"),
    ((rels.HORN3,), "plain", "H", "FPT"),
    ((rels.HORN3,), "le", "E", "WP_complete"),
    ((rels.HORN3,), "eq", "E", "WP_complete"),
    ((rels.HORN3,), "plain", "M", "FPT"),
    ((rels.HORN3,), "le", "M", "paraNP_complete"),
    ((rels.HORN3,), "eq", "M", "paraNP_complete"),
    ((rels.HORN3, rels.F), "plain", "M", "W1_hard"),
    ((rels.HORN3, rels.F), "le", "M", "paraNP_complete"),
    ((rels.HORN3, rels.T, rels.F), "eq", "H", "FPT"),
    ((rels.HORN3, rels.T, rels.F), "eq", "E", "WP_complete"),
    ((rels.HORN3, rels.T, rels.F), "plain", "M", "paraNP_complete"),
    ((rels.DHORN3,), "le", "E", "W2_complete"),
    ((rels.DHORN3,), "eq", "M", "FPT"),
    ((rels.NEQ,), "eq", "E", "FPT"),
    ((rels.EQ, rels.T, rels.F), "eq", "E", "FPT"),
    ((rels.EQ, rels.T, rels.F), "le", "M", "FPT"),
    ((rels.NAE3,), "plain", "H", "paraDP_hard"),
    ((rels.NAE3,), "eq", "E", "paraDP_hard"),
    ((rels.NAE3,), "plain", "M", "paraSigma2P_hard"),
    ((rels.DUP3,), "le", "H", "paraCoNP_hard"),
    ((rels.DUP3,), "plain", "M", "paraCoNP_hard"),
    ((rels.II0_BASE,), "plain", "H", "paraDP_hard"),
    ((rels.II0_BASE,), "plain", "M", "paraSigma2P_hard"),
    ((rels.OR2,), "eq", "E", "FPT"),
    ((rels.OR2,), "eq", "M", "FPT"),
    ((rels.NAND2, rels.IMP), "le", "E", "W2_complete"),
    ((rels.NAND2, rels.IMP), "plain", "M", "W1_complete"),
    ((rels.NAND2, rels.IMP), "eq", "M", "paraNP_complete"),
    ((rels.NAND3, rels.IMP), "le", "E", "W2_hard"),
    ((rels.NAND3, rels.IMP), "eq", "E", "W2_complete"),
    ((rels.NAND3, rels.IMP), "le", "M", "W1_hard"),
    ((rels.NAND3, rels.IMP), "eq", "M", "paraNP_complete"),
    ((rels.XOR3,), "plain", "H", "FPT"),
    ((rels.XOR3,), "eq", "E", "unclassified"),
    ((rels.XOR3,), "plain", "M", "unclassified"),
    ((rels.EVEN4,), "eq", "H", "FPT"),
    ((rels.EVEN4,), "le", "E", "unclassified"),
    ((rels.OR2, rels.NAND2), "le", "E", "W2_complete"),
    ((rels.OR2, rels.NAND2), "plain", "M", "W1_complete"),
    ((rels.OR2, rels.NAND2), "eq", "M", "paraNP_complete"),
]

SAMPLE_LANGUAGES = [
    (rels.IMP,),
    (rels.NAND2,),
    (rels.HORN3,),
    (rels.HORN3, rels.F),
    (rels.DHORN3,),
    (rels.NEQ,),
    (rels.EQ, rels.T, rels.F),
    (rels.NAE3,),
    (rels.DUP3,),
    (rels.II0_BASE,),
    (rels.OR2,),
    (rels.NAND2, rels.IMP),
    (rels.NAND3, rels.IMP),
    (rels.OR2, rels.NAND2),
]


@pytest.mark.acceptance
@pytest.mark.parametrize("relations,variant,param,label", GOLDEN)
def test_golden_verdicts(relations, variant, param, label):
    verdict = classify(L(*relations), variant, param)
    assert verdict.label == label
    assert verdict.source


@pytest.mark.unit
class TestClassify:
    @pytest.mark.parametrize("relations", SAMPLE_LANGUAGES)
    def test_variables_parameter(self, relations):
        for variant in Variant:
            assert classify(L(*relations), variant, Param.V).label == "FPT"

    def test_size_parameter_needs_bound(self):
        with pytest.raises(NotMeaningfulError):
            classify(L(rels.IMP), "plain", "E")

    def test_coclone_reported(self):
        assert classify(L(rels.NAND2), "eq", "E").coclone == "IS1(2)"
        assert classify(L(rels.IMP), "eq", "E").coclone == "IM"

    def test_representation_invariance(self):
        shuffled = Relation("MYNAND", 2, frozenset(reversed(rels.NAND2.sorted_tuples())))
        imp = rels.IMP.renamed("ARROW")
        for variant in Variant:
            for param in (Param.H, Param.M):
                assert classify(L(shuffled, imp), variant, param) == classify(L(rels.NAND2, rels.IMP), variant, param)

    @pytest.mark.parametrize("relations", SAMPLE_LANGUAGES)
    def test_bounded_size_never_easier(self, relations):
        plain = classify(L(*relations), "plain", "M").label
        bounded = classify(L(*relations), "le", "M").label
        if "unclassified" not in (plain, bounded):
            assert HARDNESS[bounded] >= HARDNESS[plain]


def ess_negative_instance(size):
    kb = KnowledgeBase((Constraint(rels.NAND2, ("h1", "h2")), Constraint(rels.T, ("x",))))
    return AbductionInstance(L(rels.NAND2, rels.T), kb, frozenset({"h1", "h2", "m"}), frozenset({"m", "h2"}), size)


@pytest.mark.unit
class TestEngines:
    def test_train_auto(self, train_instance):
        result = solve(train_instance, "eq")
        assert result.engine == "solve_by_H_enumeration"
        assert result.witness == frozenset({"doorOpen"})
        assert result.to_dict()["answer"] == "yes" and result.to_dict()["verdict"] == "FPT"

    def test_ess_negative_picks_specialized(self):
        inst = ess_negative_instance(2)
        assert pick_engine(inst, Variant.AtMost).name == "solve_ess_negative_le"
        result = solve(inst, "le")
        assert result.witness == frozenset({"h2", "m"})
        assert pick_engine(inst, Variant.Exact).name == "solve_by_H_enumeration"

    def test_parameter_order(self):
        assert auto_order(Param.M).index("solve_M_setcover") < auto_order(Param.M).index("oracle")
        assert auto_order(Param.E)[-1] == "oracle"
        assert "solve_by_H_enumeration" not in auto_order(Param.V)

    def test_named_engine(self, train_instance):
        with pytest.raises(PreconditionError):
            solve(train_instance, "eq", engine="solve_2affine")
        with pytest.raises(ValueError):
            get_engine("simplex")
        assert solve(train_instance, "eq", engine="oracle").witness == frozenset({"doorOpen"})

    def test_no_answer(self, train_instance):
        result = solve(train_instance.replace(size=0), "eq")
        assert not result.answer and result.to_dict()["witness"] == []

    def test_verify_agrees(self, train_instance):
        report = verify(train_instance, "eq")
        assert report.oracle and report.agree
        engines = {o.engine for o in report.outcomes}
        assert {"solve_by_H_enumeration", "solve_by_size_enumeration", "wsat_reduction"} <= engines
        assert all(o.check == "ok" for o in report.outcomes)

    def test_verify_flags_broken_engine(self, monkeypatch, train_instance):
        broken = Engine("broken", lambda inst, v: frozenset(inst.hypotheses), lambda inst, v: True, "fpt")
        monkeypatch.setitem(ENGINES, "broken", broken)
        report = verify(train_instance, "eq")
        assert report.disagreements == ["broken"]
        assert report.to_dict()["engines"]["broken"]["check"] == "size"


@pytest.mark.acceptance
def test_auto_matches_oracle():
    rng = random.Random(7)
    regions = sorted(REGIONS)
    for i in range(300):
        region = regions[i % len(regions)]
        inst = random_instance(rng, REGIONS[region], n_vars=rng.randint(2, 6), n_hyps=rng.randint(0, 4))
        variant = rng.choice(list(Variant))
        param = Param.M if region == "dual_horn" and i % 2 else Param.H
        result = solve(inst, variant, param=param)
        assert result.answer == (oracle_abduce(inst, variant) is not None), (region, variant, inst)
        if result.answer:
            assert check_explanation(inst, result.witness, variant) == "ok", (result.engine, inst)


@pytest.fixture
def train_file(tmp_path, train_text):
    path = tmp_path / "train.abd"
    path.write_text(train_text)
    return str(path)


def last_json(capsys):
    return json.loads(capsys.readouterr().out.strip().splitlines()[-1])


@pytest.mark.integration
class TestMain:
    def test_classify(self, train_file, capsys):
        assert main(["classify", "-i", train_file, "--variant", "eq", "--param", "H"]) == EXIT_OK
        out = last_json(capsys)
        assert out["verdict"] == "FPT" and out["citation"]

    def test_solve(self, train_file, capsys):
        assert main(["solve", "-i", train_file, "--variant", "eq"]) == EXIT_OK
        out = last_json(capsys)
        assert out["answer"] == "yes" and out["witness"] == ["doorOpen"]
        assert out["engine"] == "solve_by_H_enumeration"
        assert main(["solve", "-i", train_file, "--variant", "eq", "--size", "2"]) == EXIT_OK
        assert last_json(capsys)["witness"] == ["doorOpen", "time"]

    def test_reduce(self, train_file, tmp_path, capsys):
        output = tmp_path / "train.wcnf"
        assert main(["reduce", "-i", train_file, "--variant", "eq", "-o", str(output)]) == EXIT_OK
        out = last_json(capsys)
        assert out["reduction"] == "reduce_is10_eq_to_wsat" and out["k"] == 1
        image = parse_wsat(output.read_text())
        assert image.k == 1 and len(image.clauses) == out["clauses"]

    def test_generate(self, tmp_path, capsys):
        output = tmp_path / "path.abd"
        assert main(["generate", "indset", "--edges", "a-b", "-k", "1", "-o", str(output)]) == EXIT_OK
        assert last_json(capsys)["manifestations"] == ["z"]
        inst = load_instance(str(output))
        assert inst.size == 2 and oracle_abduce(inst, Variant.Exact) is not None

    def test_generate_from_file(self, tmp_path, capsys):
        edges = tmp_path / "triangle.txt"
        edges.write_text("a b\nb c\na c\n")
        output = tmp_path / "triangle.abd"
        assert main(["generate", "vcover", "--edges_file", str(edges), "-k", "2", "-o", str(output)]) == EXIT_OK
        assert last_json(capsys)["hypotheses"] == ["a", "b", "c"]
        assert oracle_abduce(load_instance(str(output)), Variant.AtMost) is not None

    def test_verify_directory(self, tmp_path, train_text, capsys):
        (tmp_path / "train.abd").write_text(train_text)
        save_instance(gen_indset_eq(parse_edges("a-b,b-c"), 2), str(tmp_path / "path.abd"))
        report = tmp_path / "report.jsonl"
        assert main(["verify", "-i", str(tmp_path), "--variant", "eq", "--output_path", str(report)]) == EXIT_OK
        out = last_json(capsys)
        assert out["instances"] == 2 and out["disagreements"] == []
        with jsonlines.open(str(report)) as reader:
            records = list(reader)
        assert [r["agree"] for r in records] == [True, True]

    def test_verify_explanation(self, train_file, capsys):
        assert main(["verify", "-i", train_file, "--variant", "eq", "--explanation", "doorOpen"]) == EXIT_OK
        assert last_json(capsys)["explanation_check"] == "ok"
        assert main(["verify", "-i", train_file, "--variant", "eq", "--explanation", "time"]) == EXIT_OK
        assert last_json(capsys)["explanation_check"] == "not_entailing"

    def test_verify_disagreement(self, monkeypatch, train_file, capsys):
        broken = Engine("broken", lambda inst, v: None, lambda inst, v: True, "fpt")
        monkeypatch.setitem(ENGINES, "broken", broken)
        assert main(["verify", "-i", train_file, "--variant", "eq"]) == EXIT_DISAGREEMENT
        assert last_json(capsys)["status"] == "disagreement"

    def test_usage_errors(self, tmp_path, train_file, capsys):
        assert main(["classify", "-i", str(tmp_path / "missing.abd"), "--variant", "eq"]) == EXIT_USAGE
        bad = tmp_path / "bad.abd"
        bad.write_text("con NAND2 a b\n")
        assert main(["solve", "-i", str(bad), "--variant", "eq"]) == EXIT_USAGE
        assert main(["classify", "-i", train_file, "--variant", "plain", "--param", "E"]) == EXIT_USAGE
        assert main(["reduce", "-i", train_file, "--variant", "eq", "--size", "-1", "-o", str(tmp_path / "x")]) == EXIT_USAGE
        assert "abdkit: error" in capsys.readouterr().err
        with pytest.raises(SystemExit):
            main(["solve", "-i", train_file, "--variant", "between"])
