from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .errors import AbdSyntaxError, ArityError, UnknownRelationError
from .types import IDENTIFIER, AbductionInstance, Constraint, ConstraintLanguage, KnowledgeBase, Relation


@dataclass
class _Document:
    relations: Dict[str, Relation] = field(default_factory=dict)
    constraints: List[Tuple[int, str, List[str]]] = field(default_factory=list)
    hypotheses: set = field(default_factory=set)
    manifestations: set = field(default_factory=set)
    size: Optional[int] = None
    # (lineno, names) of `exists` lines, only meaningful for lookup caches
    exists: List[Tuple[int, List[str]]] = field(default_factory=list)


def _identifier(token: str, lineno: int) -> str:
    if not IDENTIFIER.match(token):
        raise AbdSyntaxError(f"invalid identifier {token!r}", lineno)
    return token


def _parse_relation(tokens: List[str], lineno: int) -> Relation:
    if len(tokens) < 2:
        raise AbdSyntaxError("expected `rel NAME ARITY TUPLE...`", lineno)
    name = _identifier(tokens[0], lineno)
    try:
        arity = int(tokens[1])
    except ValueError:
        raise AbdSyntaxError(f"arity {tokens[1]!r} is not an integer", lineno)
    if arity < 1:
        raise ArityError(f"relation {name} must have arity >= 1", lineno)
    rows = []
    for tup in tokens[2:]:
        if len(tup) != arity or set(tup) - {"0", "1"}:
            raise ArityError(f"tuple {tup!r} of relation {name} is not a bitstring of length {arity}", lineno)
        rows.append(tuple(int(c) for c in tup))
    return Relation(name, arity, frozenset(rows))


def parse_document(text: str, allow_exists: bool = False) -> _Document:
    doc = _Document()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, *tokens = line.split()
        if keyword == "rel":
            rel = _parse_relation(tokens, lineno)
            known = doc.relations.get(rel.name)
            if known is not None and not known.same_tuples(rel):
                raise AbdSyntaxError(f"relation {rel.name} redefined with different tuples", lineno)
            doc.relations[rel.name] = rel
        elif keyword == "con":
            if not tokens:
                raise AbdSyntaxError("expected `con NAME v1 ... vARITY`", lineno)
            args = [_identifier(t, lineno) for t in tokens[1:]]
            doc.constraints.append((lineno, _identifier(tokens[0], lineno), args))
        elif keyword == "hyp":
            doc.hypotheses.update(_identifier(t, lineno) for t in tokens)
        elif keyword == "man":
            doc.manifestations.update(_identifier(t, lineno) for t in tokens)
        elif keyword == "size":
            if len(tokens) != 1 or not tokens[0].isdigit():
                raise AbdSyntaxError("expected `size N` with N a non-negative integer", lineno)
            doc.size = int(tokens[0])
        elif keyword == "exists" and allow_exists:
            doc.exists.append((lineno, [_identifier(t, lineno) for t in tokens]))
        else:
            raise AbdSyntaxError(f"unknown keyword {keyword!r}", lineno)
    return doc


def resolve_constraints(doc: _Document) -> KnowledgeBase:
    constraints = []
    for lineno, name, args in doc.constraints:
        rel = doc.relations.get(name)
        if rel is None:
            raise UnknownRelationError(f"unknown relation {name}", lineno)
        if len(args) != rel.arity:
            raise ArityError(f"relation {name} has arity {rel.arity}, got {len(args)} arguments", lineno)
        constraints.append(Constraint(rel, tuple(args)))
    return KnowledgeBase(tuple(constraints))


def parse_instance(text: str) -> AbductionInstance:
    """Parse the line-oriented `.abd` format into an instance."""
    doc = parse_document(text)
    kb = resolve_constraints(doc)
    return AbductionInstance(
        language=ConstraintLanguage(tuple(doc.relations.values())),
        kb=kb,
        hypotheses=frozenset(doc.hypotheses),
        manifestations=frozenset(doc.manifestations),
        size=doc.size,
    )


def relation_line(rel: Relation) -> str:
    rows = " ".join("".join(map(str, t)) for t in rel.sorted_tuples())
    return f"rel {rel.name} {rel.arity} {rows}".rstrip()


def constraint_line(c: Constraint) -> str:
    return " ".join(["con", c.relation.name, *c.args])


def serialize_instance(inst: AbductionInstance) -> str:
    """Canonical form: relations by name, constraints in KB order, sorted hypotheses and manifestations."""
    lines = [relation_line(rel) for rel in inst.language]
    lines.extend(constraint_line(c) for c in inst.kb)
    if inst.hypotheses:
        lines.append("hyp " + " ".join(inst.H))
    if inst.manifestations:
        lines.append("man " + " ".join(inst.M))
    if inst.size is not None:
        lines.append(f"size {inst.size}")
    return "\n".join(lines) + "\n"


def load_instance(path: str) -> AbductionInstance:
    with open(path, "r", encoding="utf-8") as f:
        return parse_instance(f.read())


def save_instance(inst: AbductionInstance, path: str):
    with open(path, "w", encoding="utf-8") as f:
        f.write(serialize_instance(inst))
