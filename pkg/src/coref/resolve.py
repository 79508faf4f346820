"""Antecedent selection: immediate syntactic patterns, candidate filtering,
and shortest-path choice.

Each mention, in document order, either matches an immediate pattern
(appositive, role appositive, predicate nominative), or its candidate pool is
filtered by kind-specific constraints and the surviving candidate closest by
tree path distance wins. Pre-filters only ever reject; they never force a
match.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, fields, replace
from typing import Optional, Sequence

from .lexicon import Gender, GrammaticalPerson, Lexicon, Number, Personhood
from .mention import Mention, MentionKind, TypeProfile, document_order_key
from .treebank import (CLAUSE_LABELS, DocumentTree, SyntaxNode, dominates,
                       head_leaf, path_distance)


class Rule(enum.Enum):
    """How a decision was made; values are the serialized tag strings."""
    APPOSITIVE = "Appositive"
    ROLE_APPOSITIVE = "RoleAppositive"
    PRED_NOM = "PredNom"
    PRONOUN = "PronounResolve"
    NOMINAL = "NominalResolve"
    NULL = "NullResolve"


@dataclass(frozen=True)
class Decision:
    """One antecedent choice; ``antecedent`` is a mention id or None."""
    mention_id: int
    antecedent: Optional[int]
    rule: Rule


@dataclass(frozen=True)
class ResolveConfig:
    """Ablation switches; the defaults are the full system."""
    use_word_lists: bool = True
    check_gender: bool = True
    check_personhood: bool = True
    check_number: bool = True
    resolve_pronouns: bool = True
    resolve_second_person: bool = True
    allow_pro_pro_match: bool = True
    strict_typecheck: bool = False
    check_grammatical_person: bool = False
    enable_role_appositive: bool = True
    pred_nom_exclude_modals: bool = False

    @classmethod
    def from_dict(cls, values: dict) -> "ResolveConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(values) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return replace(cls(), **values)


class MentionIndex:
    """Document-order positions and node/head lookup tables for one document."""

    def __init__(self, doc: DocumentTree, mentions: Sequence[Mention]):
        self.doc = doc
        self.mentions = list(mentions)
        self.position = {m.mention_id: i for i, m in enumerate(self.mentions)}
        self.by_node: dict[int, Mention] = {}
        self.by_head: dict[int, Mention] = {}
        for m in self.mentions:
            self.by_node.setdefault(m.node.node_id, m)
            self.by_head.setdefault(m.head.node_id, m)

    def precedes(self, a: Mention, b: Mention) -> bool:
        return self.position[a.mention_id] < self.position[b.mention_id]

    def mention_of(self, node: SyntaxNode) -> Optional[Mention]:
        m = self.by_node.get(node.node_id)
        if m is not None and m.node is node:
            return m
        m = self.by_head.get(head_leaf(node).node_id)
        return m


def _child_position(node: SyntaxNode) -> int:
    for i, child in enumerate(node.parent.children):
        if child is node:
            return i
    raise AssertionError("node missing from its parent")


def detect_appositive(m: Mention, index: MentionIndex) -> Optional[Mention]:
    """Right NP of (NP [NP] [,] [NP] ...) links to the mention headed by the
    left NP."""
    node, parent = m.node, m.node.parent
    if parent is None or parent.label != "NP" or node.label != "NP":
        return None
    i = _child_position(node)
    if i < 2:
        return None
    comma, left = parent.children[i - 1], parent.children[i - 2]
    if not (comma.is_leaf() and comma.label == ","):
        return None
    if left.label != "NP":
        return None
    antecedent = index.mention_of(left)
    if antecedent is None or not index.precedes(antecedent, m):
        return None
    return antecedent


def detect_role_appositive(m: Mention, index: MentionIndex,
                           cfg: ResolveConfig) -> Optional[Mention]:
    """Proper person mention directly preceded by a sibling nominal NP,
    no comma between, e.g. "[Republican candidate] [George Bush]"."""
    if not cfg.enable_role_appositive:
        return None
    if m.kind is not MentionKind.PROPER:
        return None
    if m.profile is None or m.profile.personhood is not Personhood.PERSON:
        return None
    node, parent = m.node, m.node.parent
    if parent is None or node.label != "NP":
        return None
    i = _child_position(node)
    if i < 1:
        return None
    left = parent.children[i - 1]
    if left.label != "NP":
        return None
    antecedent = index.mention_of(left)
    if antecedent is None or antecedent.kind is not MentionKind.NOMINAL:
        return None
    if antecedent.profile is not None and \
            antecedent.profile.personhood is Personhood.NOT_PERSON:
        return None
    if not index.precedes(antecedent, m):
        return None
    return antecedent


def _clause_and_subject(vp: SyntaxNode) -> tuple[Optional[SyntaxNode], Optional[SyntaxNode]]:
    """Climb a VP chain to its clause; return (clause, rightmost NP subject
    before the verb group)."""
    node = vp
    while node.parent is not None and node.parent.label == "VP":
        node = node.parent
    clause = node.parent
    if clause is None or clause.label not in CLAUSE_LABELS:
        return None, None
    subject = None
    for child in clause.children:
        if child is node:
            break
        if child.label == "NP":
            subject = child
    return clause, subject


def _verb_group_modal(vp: SyntaxNode) -> Optional[SyntaxNode]:
    """First MD leaf that is a direct child of the VP chain containing vp."""
    node: Optional[SyntaxNode] = vp
    while node is not None and node.label == "VP":
        for child in node.children:
            if child.is_leaf() and child.label == "MD":
                return child
        node = node.parent
    return None


def detect_pred_nom(m: Mention, index: MentionIndex, lex: Lexicon,
                    cfg: ResolveConfig) -> Optional[Mention]:
    """Copular complement links to the clause subject:
    "[Lameu] was the first NHL [player] ..."."""
    node, vp = m.node, m.node.parent
    if vp is None or vp.label != "VP" or node.label != "NP":
        return None
    verb = head_leaf(vp)
    if verb.token is None or verb.token.casefold() not in lex.copulas:
        return None
    if node.span[0] < verb.span[1]:
        return None  # complement must follow the copula
    _, subject = _clause_and_subject(vp)
    if subject is None:
        return None
    if cfg.pred_nom_exclude_modals:
        modal = _verb_group_modal(vp)
        if modal is not None and modal.span[0] < verb.span[0]:
            return None
    antecedent = index.mention_of(subject)
    if antecedent is None or not index.precedes(antecedent, m):
        return None
    return antecedent


def i_within_i_violation(pron: Mention, cand: Mention) -> bool:
    """A pronoun cannot refer to a mention whose node dominates it."""
    return dominates(cand.node, pron.node)


def reflexive_violation(pron: Mention, cand: Mention) -> bool:
    """A non-reflexive object cannot corefer with its clause subject
    ("The bank ruined it." -> it != bank)."""
    if pron.pronoun is not None and pron.pronoun.reflexive:
        return False
    vp = pron.node.parent
    if vp is None or vp.label != "VP":
        return False  # not a direct object
    _, subject = _clause_and_subject(vp)
    if subject is None:
        return False
    return head_leaf(subject) is cand.head


def _nonfinite_initial_adjuncts(clause: SyntaxNode,
                                subject: SyntaxNode) -> list[SyntaxNode]:
    adjuncts = []
    for child in clause.children:
        if child is subject:
            break
        if child.label in ("S", "VP") and head_leaf(child).label in ("TO", "VBG"):
            adjuncts.append(child)
    return adjuncts


def adjunct_violation(pron: Mention, cand: Mention) -> bool:
    """A clause subject cannot refer into a sentence-initial non-finite
    adjunct ("To call John, he ..."); finite SBAR adjuncts are exempt
    ("Because John likes cars, he ...")."""
    node, clause = pron.node, pron.node.parent
    if clause is None or clause.label not in CLAUSE_LABELS:
        return False
    if not any(sib.label == "VP" and sib.span[0] >= node.span[1]
               for sib in clause.children):
        return False  # not a subject
    return any(dominates(adjunct, cand.node)
               for adjunct in _nonfinite_initial_adjuncts(clause, node))


def _attribute_clash(a, b, unknown) -> bool:
    return a is not unknown and b is not unknown and a is not b


def type_compatible(p: TypeProfile, c: TypeProfile, cfg: ResolveConfig) -> bool:
    """Reject only on definite clashes; Unknown matches everything.

    With strict_typecheck, an Unknown candidate attribute also clashes with a
    definite pronoun attribute (for each enabled check).
    """
    checks = (
        (cfg.check_gender, p.gender, c.gender, Gender.UNKNOWN),
        (cfg.check_personhood, p.personhood, c.personhood, Personhood.UNKNOWN),
        (cfg.check_number, p.number, c.number, Number.UNKNOWN),
    )
    for enabled, mine, theirs, unknown in checks:
        if not enabled:
            continue
        if _attribute_clash(mine, theirs, unknown):
            return False
        if cfg.strict_typecheck and mine is not unknown and theirs is unknown:
            return False
    return True


def candidate_pool(m: Mention, mentions: Sequence[Mention]) -> list[Mention]:
    """All mentions strictly before ``m`` in document order."""
    pool = []
    for other in mentions:
        if other is m:
            return pool
        pool.append(other)
    raise ValueError(f"mention {m.mention_id} not in the mention sequence")


def is_second_person(m: Mention) -> bool:
    return (m.pronoun is not None
            and m.pronoun.grammatical_person is GrammaticalPerson.SECOND)


def filter_pronoun(m: Mention, pool: Sequence[Mention],
                   cfg: ResolveConfig) -> list[Mention]:
    """Reject candidates that violate a syntactic constraint, clash on type,
    or fall under the pro-pro policy. Never accepts anything outright."""
    kept = []
    for cand in pool:
        if not cfg.allow_pro_pro_match and cand.kind is MentionKind.PRONOUN:
            continue
        if (cfg.check_grammatical_person
                and cand.kind is MentionKind.PRONOUN
                and m.pronoun is not None and cand.pronoun is not None
                and m.pronoun.grammatical_person is not cand.pronoun.grammatical_person):
            continue
        if i_within_i_violation(m, cand):
            continue
        if reflexive_violation(m, cand):
            continue
        if adjunct_violation(m, cand):
            continue
        if m.profile and cand.profile and \
                not type_compatible(m.profile, cand.profile, cfg):
            continue
        kept.append(cand)
    return kept


def _substring_match(a: Mention, b: Mention) -> bool:
    # Both heads NNP, both at least 4 chars, same first 4 chars.
    if a.head_tag != "NNP" or b.head_tag != "NNP":
        return False
    x, y = a.head_word.casefold(), b.head_word.casefold()
    return len(x) >= 4 and len(y) >= 4 and x[:4] == y[:4]


def filter_nominal(m: Mention, pool: Sequence[Mention]) -> list[Mention]:
    """Exact head match (case-insensitive) or the 4-character proper-noun
    prefix rule, e.g. "Japan" / "the Japanese". No syntactic constraints."""
    head = m.head_word.casefold()
    return [cand for cand in pool
            if cand.head_word.casefold() == head or _substring_match(m, cand)]


def select_antecedent(m: Mention, candidates: Sequence[Mention],
                      doc: DocumentTree) -> Optional[Mention]:
    """The candidate closest by tree path distance; ties go to the most
    recent mention in document order. Empty candidate set resolves to None."""
    best = None
    best_distance = None
    for cand in candidates:
        distance = path_distance(m.node, cand.node, doc)
        if (best is None or distance < best_distance
                or (distance == best_distance
                    and document_order_key(cand) > document_order_key(best))):
            best, best_distance = cand, distance
    return best


def _resolve_one(m: Mention, index: MentionIndex, lex: Lexicon,
                 cfg: ResolveConfig,
                 candidate_log: Optional[dict[int, frozenset[int]]]) -> Decision:
    antecedent = detect_appositive(m, index)
    if antecedent is not None:
        return Decision(m.mention_id, antecedent.mention_id, Rule.APPOSITIVE)
    antecedent = detect_role_appositive(m, index, cfg)
    if antecedent is not None:
        return Decision(m.mention_id, antecedent.mention_id, Rule.ROLE_APPOSITIVE)
    antecedent = detect_pred_nom(m, index, lex, cfg)
    if antecedent is not None:
        return Decision(m.mention_id, antecedent.mention_id, Rule.PRED_NOM)

    pool = candidate_pool(m, index.mentions)
    if m.kind is MentionKind.PRONOUN:
        if not cfg.resolve_pronouns:
            return Decision(m.mention_id, None, Rule.NULL)
        if is_second_person(m) and not cfg.resolve_second_person:
            return Decision(m.mention_id, None, Rule.NULL)
        candidates = filter_pronoun(m, pool, cfg)
        rule = Rule.PRONOUN
    else:
        candidates = filter_nominal(m, pool)
        rule = Rule.NOMINAL
    if candidate_log is not None:
        candidate_log[m.mention_id] = frozenset(c.mention_id for c in candidates)
    chosen = select_antecedent(m, candidates, index.doc)
    if chosen is None:
        return Decision(m.mention_id, None, Rule.NULL)
    return Decision(m.mention_id, chosen.mention_id, rule)


def resolve_document(doc: DocumentTree, mentions: Sequence[Mention],
                     lex: Lexicon, cfg: Optional[ResolveConfig] = None,
                     candidate_log: Optional[dict[int, frozenset[int]]] = None
                     ) -> list[Decision]:
    """One decision per mention, in document order.

    Immediate patterns fire first (appositive, role appositive, predicate
    nominative, in that order); otherwise the kind-specific filter plus
    shortest-path selection applies. ``candidate_log``, when given, records
    the filtered candidate id set per mention that reached filtering.
    """
    cfg = cfg or ResolveConfig()
    index = MentionIndex(doc, mentions)
    return [_resolve_one(m, index, lex, cfg, candidate_log)
            for m in index.mentions]
