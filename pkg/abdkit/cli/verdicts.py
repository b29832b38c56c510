"""
The complexity verdict table.

Rows are checked top to bottom; each row is a region test on the co-clone of the language plus the label and a
citation string naming the classification result the row transcribes.
"""
from dataclasses import dataclass
from typing import Callable, List, Tuple

from ..core.errors import NotMeaningfulError
from ..core.types import ConstraintLanguage, Param, Variant
from ..lattice.coclone import identify_coclone, includes, within

LABELS = (
    "FPT",
    "W1_complete",
    "W1_hard",
    "W2_complete",
    "W2_hard",
    "WP_complete",
    "paraNP_complete",
    "paraCoNP_hard",
    "paraDP_hard",
    "paraSigma2P_hard",
    "unclassified",
)

# coarse hardness order used to compare verdicts of related problems
HARDNESS = {
    "FPT": 0,
    "W1_complete": 1,
    "W1_hard": 1,
    "W2_complete": 2,
    "W2_hard": 2,
    "WP_complete": 3,
    "paraNP_complete": 4,
    "paraCoNP_hard": 4,
    "paraDP_hard": 5,
    "paraSigma2P_hard": 6,
}

WHITE_REGION = "no classification result covers this region (white region of the complexity landscape)"


@dataclass(frozen=True)
class Verdict:
    label: str
    source: str
    coclone: str = ""

    def __post_init__(self):
        if self.label not in LABELS:
            raise ValueError(f"unknown verdict label {self.label}")

    def to_dict(self):
        return {"label": self.label, "source": self.source, "coclone": self.coclone}


Region = Callable[[ConstraintLanguage], bool]
Row = Tuple[Region, str, str]


def _sub(*coclones: str) -> Region:
    return lambda S: any(within(S, c) for c in coclones)


def _sup(coclone: str) -> Region:
    return lambda S: includes(S, coclone)


def _between(lower: str, *upper: str) -> Region:
    return lambda S: includes(S, lower) and any(within(S, c) for c in upper)


def _is(name: str) -> Region:
    return lambda S: str(identify_coclone(S)) == name


def _intractable(hard_label: str, source: str) -> List[Row]:
    """Rows shared by every variant and parameter: languages outside Schaefer's tractable classes."""
    return [
        (_sup("IN2"), hard_label, source),
        (_sup("II0"), hard_label, source),
        (_sup("IN"), "paraCoNP_hard", "implication is coNP-hard once IN is expressible, for any parameter"),
    ]


_H_ROWS: List[Row] = _intractable(
    "paraDP_hard", "IN2 or II0 expressible: DP-hard already for a constant number of hypotheses"
) + [
    (
        _sub("IE2", "IV2", "ID2", "IL2"),
        "FPT",
        "Schaefer-tractable languages: brute force over E within H with polynomial sat and implication checks",
    ),
]

_E_ROWS: List[Row] = _intractable(
    "paraDP_hard", "IN2 or II0 expressible: DP-hard already for explanations of constant size"
) + [
    (_sub("ID1", "IS02"), "FPT", "classical problem in P for 2-affine and essentially positive languages"),
]

_E_LE_ROWS: List[Row] = [
    (_sub("IS12"), "FPT", "essentially negative languages: E_MP is the cardinality-minimal explanation"),
]

_E_EQ_ROWS: List[Row] = [
    (
        _between("IS1(2)", "IS12"),
        "W1_complete",
        "negative 2-clauses express independent set; essentially negative Exact reduces to weighted 2-CNF",
    ),
]

_E_TAIL_ROWS: List[Row] = [
    (_between("IE", "IE2"), "WP_complete", "Horn languages containing IE: monotone circuit satisfiability"),
    (
        _between("IM", "ID2", "IV2"),
        "W2_complete",
        "implicative hitting set: reduction to and from weighted antimonotone/monotone CNF",
    ),
]

_E_IS10_EQ: Row = (
    _between("IM", "IS10"),
    "W2_complete",
    "implicative Horn with bounded negative clauses: clause copying into weighted CNF gives membership",
)
_E_IS10_LE: Row = (
    _between("IM", "IS10"),
    "W2_hard",
    "implicative Horn with bounded negative clauses: hardness from IM, membership open for AtMost",
)

_M_HARD = "IN2 or II0 expressible: Sigma2P-hard already for a constant number of manifestations"

_M_PLAIN_ROWS: List[Row] = _intractable("paraSigma2P_hard", _M_HARD) + [
    (_sub("ID1", "IS12", "IE1", "IV2"), "FPT", "classical abduction in P for this region"),
    (_is("IE2"), "paraNP_complete", "full Horn: NP-hard for a single manifestation"),
    (_between("IS11(2)", "ID2"), "W1_complete", "2-clauses with implications: independent set over manifestations"),
    (_sup("IS11(3)"), "W1_hard", "negative 3-clauses with implications express independent set"),
]

_M_LE_ROWS: List[Row] = _intractable("paraSigma2P_hard", _M_HARD) + [
    (_sub("ID1", "IS12", "IV2"), "FPT", "AtMost in P or set cover over the manifestations"),
    (_between("IE", "IE2"), "paraNP_complete", "Horn languages containing IE: vertex cover with one manifestation"),
    (_between("IS11(2)", "ID2"), "W1_complete", "2-clauses with implications: independent set over manifestations"),
    (_sup("IS11(3)"), "W1_hard", "negative 3-clauses with implications express independent set"),
]

_M_EQ_ROWS: List[Row] = _intractable("paraSigma2P_hard", _M_HARD) + [
    (_sub("ID1", "IV2"), "FPT", "Exact equals AtMost on dualHorn languages; set cover over the manifestations"),
    (
        _between("IS1(2)", "IE2", "ID2"),
        "paraNP_complete",
        "negative 2-clauses: independent set with a single manifestation",
    ),
    (_between("IE", "IE2"), "paraNP_complete", "Horn languages containing IE: vertex cover with one manifestation"),
]


def _rows(variant: Variant, param: Param) -> List[Row]:
    if param == Param.H:
        return _H_ROWS
    if param == Param.E:
        if variant == Variant.AtMost:
            return _E_ROWS + _E_LE_ROWS + _E_TAIL_ROWS + [_E_IS10_LE]
        return _E_ROWS + _E_EQ_ROWS + _E_TAIL_ROWS + [_E_IS10_EQ]
    if variant == Variant.Plain:
        return _M_PLAIN_ROWS
    if variant == Variant.AtMost:
        return _M_LE_ROWS
    return _M_EQ_ROWS


def classify(language: ConstraintLanguage, variant: Variant, param: Param) -> Verdict:
    variant, param = Variant.parse(variant), Param.parse(param)
    coclone = str(identify_coclone(language))
    if param == Param.E and variant == Variant.Plain:
        raise NotMeaningfulError("the explanation size is not a meaningful parameter without a size bound")
    if param == Param.V:
        return Verdict("FPT", "every language is FPT when parameterised by the number of variables", coclone)
    for region, label, source in _rows(variant, param):
        if region(language):
            return Verdict(label, source, coclone)
    return Verdict("unclassified", WHITE_REGION, coclone)
