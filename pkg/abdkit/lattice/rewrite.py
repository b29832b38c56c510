from typing import Dict, Iterable, List, Mapping, Optional

from ..core import relations as rels
from ..core.errors import AbdSyntaxError, MissingLookupError
from ..core.instance_io import constraint_line, parse_document, relation_line, resolve_constraints
from ..core.types import AbductionInstance, Constraint, ConstraintLanguage, KnowledgeBase, Relation
from .ppdef import PPDefinition, construct_equality

Lookup = Mapping[str, PPDefinition]


def _fresh_factory(taken: Iterable[str]):
    taken = set(taken)

    def make(index: int):
        def fresh(aux: str) -> str:
            name = f"_{aux}_{index}"
            while name in taken:
                name = "_" + name
            taken.add(name)
            return name

        return fresh

    return make


def rewrite_language(
    inst: AbductionInstance, lookup: Lookup, target_language: Optional[ConstraintLanguage] = None
) -> AbductionInstance:
    """
    Replace every constraint by the body of its pp-definition.

    Auxiliary variables are renamed per constraint occurrence, so no two occurrences share them. H, M and the size
    bound are untouched; explanations of the result are exactly those of the input.
    """
    make_fresh = _fresh_factory(inst.variables)
    constraints = []
    used: Dict[str, Relation] = {}
    for index, c in enumerate(inst.kb):
        definition = lookup.get(c.relation.name)
        if definition is None or not definition.target.same_tuples(c.relation):
            raise MissingLookupError(c.relation.name)
        for new in definition.instantiate(c.args, make_fresh(index)):
            constraints.append(new)
            used[new.relation.name] = new.relation
    language = target_language.union(*used.values()) if target_language else ConstraintLanguage(tuple(used.values()))
    return inst.replace(language=language, kb=KnowledgeBase(tuple(constraints)))


def dump_lookup(lookup: Lookup) -> str:
    """
    Serialise a lookup table in `.abd` syntax, one blank-line separated block per definition.

    A block declares the relations it uses, then a head `con` line binding the target to the free variables,
    then `exists` with the auxiliary variables, then the body.
    """
    blocks = []
    for name in sorted(lookup):
        d = lookup[name]
        declared = {d.target.name: d.target}
        declared.update({r.name: r for r in d.relations})
        lines = [relation_line(r) for r in declared.values()]
        lines.append(" ".join(["con", d.target.name, *d.free_vars]))
        lines.append(" ".join(["exists", *d.aux_vars]))
        lines.extend(constraint_line(c) for c in d.body)
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def load_lookup(text: str) -> Dict[str, PPDefinition]:
    lookup = {}
    for block in text.split("\n\n"):
        if not block.strip():
            continue
        doc = parse_document(block, allow_exists=True)
        if not doc.constraints:
            raise AbdSyntaxError("definition block without a head constraint")
        lineno, head, free = doc.constraints[0]
        if head not in doc.relations:
            raise AbdSyntaxError(f"head relation {head} is not declared", lineno)
        doc.constraints = doc.constraints[1:]
        aux = doc.exists[0][1] if doc.exists else []
        lookup[head] = PPDefinition(doc.relations[head], tuple(free), tuple(aux), resolve_constraints(doc))
    return lookup


def equality_lookup(language: ConstraintLanguage) -> Dict[str, PPDefinition]:
    """Identity definitions for every relation of ``language`` plus the given definition of EQ."""
    table: Dict[str, PPDefinition] = {}
    for rel in language:
        free = tuple(f"x{i + 1}" for i in range(rel.arity))
        table[rel.name] = PPDefinition(rel, free, (), KnowledgeBase((Constraint(rel, free),)))
    table[rels.EQ.name] = construct_equality(language)
    return table

