from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple

from ..core import relations as rels
from ..core.implicates import negative_width, positive_width
from ..core.types import ConstraintLanguage, Relation
from .polymorphisms import (
    AND,
    C0,
    C1,
    ESS_NEG,
    ESS_POS,
    MAJ,
    NEG,
    OR,
    S0,
    S00,
    S1,
    S10,
    XNOR2,
    XOR2,
    XOR3,
    BoolFunction,
    negative_width_guard,
    positive_width_guard,
    preserves,
)


@dataclass(frozen=True)
class ClosureFlags:
    """
    Which generator functions preserve every relation of a language.

    neg_width / pos_width are the widest all-negative / all-positive prime implicates; they place a language
    inside the width-bounded clause families. The four *_clausal / implicative flags are the extra
    polymorphism tests that separate those families.
    """

    zero_valid: bool
    one_valid: bool
    complementive: bool
    horn: bool
    dual_horn: bool
    bijunctive: bool
    affine: bool
    ess_negative: bool
    ess_positive: bool
    neg_width: Optional[int] = None
    pos_width: Optional[int] = None
    implicative_horn: bool = False
    implicative_dual_horn: bool = False
    negative_clausal: bool = False
    positive_clausal: bool = False

    def __post_init__(self):
        if self.ess_negative and not self.horn:
            raise ValueError("essentially negative languages are Horn")
        if self.ess_positive and not self.dual_horn:
            raise ValueError("essentially positive languages are dualHorn")


def _all_preserve(f: BoolFunction, relations: Iterable[Relation]) -> bool:
    return all(preserves(f, r) for r in relations)


@lru_cache(maxsize=1024)
def closure_flags(language: ConstraintLanguage) -> ClosureFlags:
    rs = list(language)
    return ClosureFlags(
        zero_valid=_all_preserve(C0, rs),
        one_valid=_all_preserve(C1, rs),
        complementive=_all_preserve(NEG, rs),
        horn=_all_preserve(AND, rs),
        dual_horn=_all_preserve(OR, rs),
        bijunctive=_all_preserve(MAJ, rs),
        affine=_all_preserve(XOR3, rs),
        ess_negative=_all_preserve(ESS_NEG, rs),
        ess_positive=_all_preserve(ESS_POS, rs),
        neg_width=max((negative_width(r) for r in rs), default=0),
        pos_width=max((positive_width(r) for r in rs), default=0),
        implicative_horn=_all_preserve(S10, rs),
        implicative_dual_horn=_all_preserve(S00, rs),
        negative_clausal=_all_preserve(S1, rs),
        positive_clausal=_all_preserve(S0, rs),
    )


# Clone generators of each co-clone's polymorphisms. Width-bounded IS families add a threshold guard.
_GENERATORS: Dict[str, Tuple[BoolFunction, ...]] = {
    "BR": (),
    "II": (C0, C1),
    "II0": (C0,),
    "II1": (C1,),
    "IN2": (NEG,),
    "IN": (NEG, C0),
    "IE2": (AND,),
    "IE0": (AND, C0),
    "IE1": (AND, C1),
    "IE": (AND, C0, C1),
    "IV2": (OR,),
    "IV0": (OR, C0),
    "IV1": (OR, C1),
    "IV": (OR, C0, C1),
    "IM2": (AND, OR),
    "IM0": (AND, OR, C0),
    "IM1": (AND, OR, C1),
    "IM": (AND, OR, C0, C1),
    "ID2": (MAJ,),
    "ID1": (MAJ, XOR3),
    "ID": (MAJ, NEG),
    "IL2": (XOR3,),
    "IL0": (XOR2,),
    "IL1": (XNOR2,),
    "IL3": (XOR3, NEG),
    "IL": (XOR2, C1),
    "IR2": (AND, OR, XOR3),
    "IR0": (AND, OR, XOR3, C0),
    "IR1": (AND, OR, XOR3, C1),
    "IBF": (AND, OR, XOR3, C0, C1, NEG),
    "IS1": (S1,),
    "IS12": (ESS_NEG,),
    "IS11": (S10, C0),
    "IS10": (S10,),
    "IS0": (S0,),
    "IS02": (ESS_POS,),
    "IS01": (S00, C1),
    "IS00": (S00,),
}

_NEGATIVE_FAMILIES = ("IS1", "IS12", "IS11", "IS10")
_POSITIVE_FAMILIES = ("IS0", "IS02", "IS01", "IS00")

# Base relations for the co-clones that appear as lower bounds in the classification.
_BASES: Dict[str, Tuple[Relation, ...]] = {
    "IN2": (rels.NAE3,),
    "IN": (rels.DUP3,),
    "II0": (rels.II0_BASE,),
    "II1": (Relation("II1_BASE", 3, frozenset({(1, 1, 1), (0, 0, 1), (1, 0, 0)})),),
    "IE": (rels.HORN3,),
    "IE2": (rels.HORN3, rels.T, rels.F),
    "IV": (rels.DHORN3,),
    "IV2": (rels.DHORN3, rels.T, rels.F),
    "IM": (rels.IMP,),
    "IS1(2)": (rels.NAND2,),
    "IS11(2)": (rels.NAND2, rels.IMP),
    "IS11(3)": (rels.NAND3, rels.IMP),
    "IS0(2)": (rels.OR2,),
}


@dataclass(frozen=True)
class CoCloneLabel:
    """
    Position of a language in the co-clone lattice.

    For the width-bounded families "width" holds the clause width bound, otherwise it is None.
    """

    name: str
    flags: Optional[ClosureFlags] = None
    width: Optional[int] = None

    def __str__(self) -> str:
        return f"{self.name}({self.width})" if self.width is not None else self.name

    @property
    def family(self) -> str:
        return self.name

    def generators(self) -> Tuple[BoolFunction, ...]:
        return generators(str(self))


def parse_label(text: str) -> Tuple[str, Optional[int]]:
    if text.endswith(")") and "(" in text:
        name, width = text[:-1].split("(", 1)
        return name, int(width)
    return text, None


def generators(label: str) -> Tuple[BoolFunction, ...]:
    name, width = parse_label(label)
    if name not in _GENERATORS:
        raise ValueError(f"Co-clone {label} does not exist.")
    gens = _GENERATORS[name]
    if width is not None:
        if name in _NEGATIVE_FAMILIES:
            gens = gens + (negative_width_guard(width),)
        elif name in _POSITIVE_FAMILIES:
            gens = gens + (positive_width_guard(width),)
        else:
            raise ValueError(f"Co-clone {name} has no width parameter.")
    return gens


def base(label: str) -> Tuple[Relation, ...]:
    if label not in _BASES:
        raise ValueError(f"No base relations recorded for co-clone {label}.")
    return _BASES[label]


def _is_family(flags: ClosureFlags, negative: bool, width: int) -> CoCloneLabel:
    if negative:
        names = _NEGATIVE_FAMILIES
        clausal, ess, valid = flags.negative_clausal, flags.ess_negative, flags.zero_valid
    else:
        names = _POSITIVE_FAMILIES
        clausal, ess, valid = flags.positive_clausal, flags.ess_positive, flags.one_valid
    if clausal:
        name = names[0]
    elif ess:
        name = names[1]
    elif valid:
        name = names[2]
    else:
        name = names[3]
    return CoCloneLabel(name, flags, max(width, 2))


def label_from_flags(flags: ClosureFlags) -> CoCloneLabel:
    """The decision table: smallest co-clone whose polymorphism generators all preserve the language."""
    z, o, c = flags.zero_valid, flags.one_valid, flags.complementive

    def named(name: str) -> CoCloneLabel:
        return CoCloneLabel(name, flags)

    if flags.affine:
        if flags.bijunctive:
            if flags.horn:
                return named("IBF" if z and o else "IR0" if z else "IR1" if o else "IR2")
            return named("ID" if c else "ID1")
        if z and o:
            return named("IL")
        return named("IL3" if c else "IL0" if z else "IL1" if o else "IL2")
    if flags.bijunctive:
        if flags.horn and flags.dual_horn:
            return named("IM" if z and o else "IM0" if z else "IM1" if o else "IM2")
        if flags.horn:
            return _is_family(flags, negative=True, width=2)
        if flags.dual_horn:
            return _is_family(flags, negative=False, width=2)
        return named("ID2")
    if flags.horn:
        if flags.implicative_horn:
            return _is_family(flags, negative=True, width=flags.neg_width or 2)
        return named("IE" if z and o else "IE0" if z else "IE1" if o else "IE2")
    if flags.dual_horn:
        if flags.implicative_dual_horn:
            return _is_family(flags, negative=False, width=flags.pos_width or 2)
        return named("IV" if z and o else "IV0" if z else "IV1" if o else "IV2")
    if c:
        return named("IN" if z else "IN2")
    return named("II" if z and o else "II0" if z else "II1" if o else "BR")


def identify_coclone(language: ConstraintLanguage) -> CoCloneLabel:
    return label_from_flags(closure_flags(language))


def within(language: ConstraintLanguage, coclone: str) -> bool:
    """<S> is contained in the co-clone: all its polymorphism generators preserve S."""
    return all(_all_preserve(g, language) for g in generators(coclone))


def includes(language: ConstraintLanguage, coclone: str) -> bool:
    """<S> contains the co-clone: the polymorphisms of <S> preserve the co-clone's base relations."""
    label = identify_coclone(language)
    return all(preserves(g, r) for g in label.generators() for r in base(coclone))


def coclone_contains(outer: str, inner: str) -> bool:
    """Lattice order between two named co-clones (inner is a subset of outer)."""
    return all(preserves(g, r) for g in generators(outer) for r in base(inner))
