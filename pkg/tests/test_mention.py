import pytest

from coref import (Gender, MentionKind, Number, Personhood, TokenAnnotation,
                   annotation_index, attach_profiles, build_profile,
                   classify_kind, dominates, extract_mentions, head_leaf,
                   infer_gender, infer_number, infer_personhood,
                   map_gold_mentions)
from helpers import doc_with_mentions, mention_with_head, parse_doc

ACCOUNTING = ("(NP (NP (DT the) (JJ revised) (NN accounting))"
              " (PP (IN of) (NP (DT the) (NN incident))))")


def test_nested_np_same_head_is_one_mention():
    doc, mentions = doc_with_mentions(ACCOUNTING)
    assert [m.head_word for m in mentions] == ["accounting", "incident"]
    outer = mentions[0]
    assert outer.node is doc.root  # the largest NP for "accounting"
    assert outer.span == (0, 6)
    assert mentions[1].span == (4, 6)


def test_single_bare_np():
    _, mentions = doc_with_mentions("(NP (DT a) (NN dog))")
    assert len(mentions) == 1
    assert mentions[0].head_word == "dog"


def test_same_word_distinct_occurrences_are_two_mentions():
    _, mentions = doc_with_mentions(
        "(S (NP (NP (DT a) (NN report)) (CC and) (NP (DT a) (NN report))))")
    heads = [m.head_word for m in mentions]
    assert heads == ["report", "report"]
    assert mentions[0].head is not mentions[1].head
    assert mentions[0].span == (0, 5)  # coordination NP shares the left head
    assert mentions[1].span == (3, 5)


def test_no_nps_yields_no_mentions():
    _, mentions = doc_with_mentions("(S (VP (VBD rained)) (. .))")
    assert mentions == []


def test_empty_document():
    from coref import link_document
    assert extract_mentions(link_document([])) == []


def test_possessive_pronoun_leaf_becomes_mention():
    _, mentions = doc_with_mentions(
        "(S (NP (PRP$ its) (JJ top-selling) (NN brand)) (VP (VBD sank)) (. .))")
    heads = {m.head_word for m in mentions}
    assert heads == {"its", "brand"}
    its = mention_with_head(mentions, "its")
    assert its.kind is MentionKind.PRONOUN
    assert its.node.is_leaf()
    assert its.span == (0, 1)


def test_wrapped_pronoun_uses_the_np_node():
    _, mentions = doc_with_mentions("(S (NP (PRP he)) (VP (VBD ran)) (. .))")
    (he,) = mentions
    assert he.kind is MentionKind.PRONOUN
    assert he.node.label == "NP"


def test_mention_order_and_ids():
    _, mentions = doc_with_mentions(
        "(S (NP (NNP John)) (VP (VBD saw) (NP (DT the) (NN dog))) (. .))",
        "(S (NP (PRP He)) (VP (VBD left)) (. .))")
    assert [m.mention_id for m in mentions] == [0, 1, 2]
    assert [m.head_word for m in mentions] == ["John", "dog", "He"]


def test_maximality_and_completeness_brute_force():
    docs = [
        doc_with_mentions(ACCOUNTING),
        doc_with_mentions(
            "(S (NP (NP (NNP Lawrence) (NNP Tribe)) (, ,) (NP (DT the)"
            " (NN Professor)) (, ,)) (VP (VBD said)) (. .))"),
        doc_with_mentions(
            "(S (NP (NP (NNP Gore) (POS 's)) (JJ chief) (NN lawyer))"
            " (VP (VBD argued) (SBAR (IN that) (S (NP (PRP it))"
            " (VP (VBD mattered))))) (. .))"),
    ]
    for doc, mentions in docs:
        np_nodes = [n for n in doc.root.walk() if n.label == "NP"]
        mention_nodes = {m.node.node_id for m in mentions}
        for m in mentions:
            for np in np_nodes:
                if np is m.node:
                    continue
                if dominates(np, m.node):  # strictly dominating NP
                    assert head_leaf(np) is not m.head
        for np in np_nodes:
            covering = [m for m in mentions
                        if head_leaf(np) is m.head and dominates(m.node, np)]
            assert len(covering) == 1
        assert len(mention_nodes) == len(mentions)


def test_classify_kind(lex):
    _, mentions = doc_with_mentions(
        "(S (NP (NNP Japan)) (VP (VBD shipped) (NP (NNS cars))"
        " (PP (TO to) (NP (PRP them)))) (. .))")
    kinds = {m.head_word: classify_kind(m) for m in mentions}
    assert kinds["Japan"] is MentionKind.PROPER
    assert kinds["cars"] is MentionKind.NOMINAL
    assert kinds["them"] is MentionKind.PRONOUN


def test_infer_number(lex):
    _, mentions = doc_with_mentions(
        "(S (NP (NNS dogs)) (VP (VBD chased) (NP (NN cat)) (NP (CD 12))"
        " (NP (PRP they))) (. .))")
    numbers = {m.head_word: infer_number(m, lex) for m in mentions}
    assert numbers["dogs"] is Number.PLURAL
    assert numbers["cat"] is Number.SINGULAR
    assert numbers["12"] is Number.UNKNOWN
    assert numbers["they"] is Number.PLURAL


def test_infer_gender_titles_and_names(fixture_lex):
    _, mentions = doc_with_mentions(
        "(S (NP (NNP Mrs.) (NNP Stone)) (VP (VBD met) (NP (NNP Mr.) (NNP Reed))"
        " (NP (NNP Mary)) (NP (DT the) (NN door))) (. .))")
    genders = {m.head_word: infer_gender(m, fixture_lex) for m in mentions}
    assert genders["Stone"] is Gender.FEMALE
    assert genders["Reed"] is Gender.MALE
    assert genders["Mary"] is Gender.FEMALE
    assert genders["door"] is Gender.UNKNOWN


def test_gendered_title_beats_census_name(fixture_lex):
    _, mentions = doc_with_mentions("(S (NP (NNP Mr.) (NNP Mary) (NNP Smith)))")
    (m,) = mentions
    assert infer_gender(m, fixture_lex) is Gender.MALE


def test_infer_gender_without_word_lists(fixture_lex):
    _, mentions = doc_with_mentions("(S (NP (NNP Mary)))")
    (m,) = mentions
    assert infer_gender(m, fixture_lex, use_word_lists=False) is Gender.UNKNOWN


def test_pronoun_gender_from_table(lex):
    _, mentions = doc_with_mentions("(S (NP (PRP she)))")
    assert infer_gender(mentions[0], lex) is Gender.FEMALE


def test_infer_personhood_supersense(lex):
    _, mentions = doc_with_mentions("(S (NP (DT the) (NN teacher)))")
    (m,) = mentions
    anns = annotation_index([TokenAnnotation(0, 1, supersense="noun.person")])
    assert infer_personhood(m, anns, lex) is Personhood.PERSON


def test_infer_personhood_from_gender(fixture_lex):
    _, mentions = doc_with_mentions("(S (NP (NNP Mary)))")
    (m,) = mentions
    assert infer_personhood(m, {}, fixture_lex) is Personhood.PERSON


def test_infer_personhood_from_title(lex):
    _, mentions = doc_with_mentions("(S (NP (NNP Dr.) (NNP Quartz)))")
    (m,) = mentions
    assert infer_personhood(m, {}, lex) is Personhood.PERSON


def test_infer_personhood_location_annotation(lex):
    _, mentions = doc_with_mentions("(S (NP (NNP Gabon)))")
    (m,) = mentions
    anns = annotation_index([TokenAnnotation(0, 0, supersense="noun.location")])
    assert infer_personhood(m, anns, lex) is Personhood.NOT_PERSON


def test_infer_personhood_ner_labels(lex):
    _, mentions = doc_with_mentions("(S (NP (NNP Quon)))")
    (m,) = mentions
    person = annotation_index([TokenAnnotation(0, 0, ner="PERSON")])
    org = annotation_index([TokenAnnotation(0, 0, ner="ORGANIZATION")])
    assert infer_personhood(m, person, lex) is Personhood.PERSON
    assert infer_personhood(m, org, lex) is Personhood.NOT_PERSON


def test_personhood_defaults_to_unknown(lex):
    _, mentions = doc_with_mentions("(S (NP (DT the) (NN table)))")
    (m,) = mentions
    assert infer_personhood(m, {}, lex) is Personhood.UNKNOWN


def test_pronoun_profile_equals_table_entry(lex):
    doc, mentions = doc_with_mentions(
        "(S (NP (PRP it)) (VP (VBD worked)) (. .))")
    attach_profiles(mentions, {}, lex)
    (it,) = mentions
    assert it.profile.gender is Gender.UNKNOWN
    assert it.profile.personhood is Personhood.NOT_PERSON
    assert it.profile.number is Number.SINGULAR
    assert it.pronoun is not None and it.pronoun.surface == "it"


def test_build_profile_composes(fixture_lex):
    _, mentions = doc_with_mentions("(S (NP (NNP Mrs.) (NNP Stone)))")
    profile = build_profile(mentions[0], {}, fixture_lex)
    assert profile.gender is Gender.FEMALE
    assert profile.personhood is Personhood.PERSON
    assert profile.number is Number.SINGULAR


# ---------------------------------------------------------------------------
# Gold-mention mode
# ---------------------------------------------------------------------------

def test_gold_spans_map_to_smallest_covering_np():
    doc = parse_doc(ACCOUNTING)
    mentions = map_gold_mentions(doc, [(0, 0, 3), (0, 4, 6), (0, 0, 6)])
    by_id = {m.mention_id: m for m in mentions}
    assert by_id[0].node.span == (0, 3)   # inner "the revised accounting"
    assert by_id[1].node.span == (4, 6)
    assert by_id[2].node.span == (0, 6)
    # document order sorts the full NP before the embedded ones
    assert [m.mention_id for m in mentions] == [2, 0, 1]


def test_gold_span_with_no_covering_np_uses_smallest_node():
    doc = parse_doc("(S (NP (NN dog)) (VP (VBD ran) (ADVP (RB far))))")
    (m,) = map_gold_mentions(doc, [(0, 1, 3)])
    assert m.node.label == "VP"


def test_gold_span_on_pronoun_leaf():
    doc = parse_doc("(S (NP (PRP$ its) (NN brand)) (VP (VBD sank)))")
    (m,) = map_gold_mentions(doc, [(0, 0, 1)])
    assert m.node.is_leaf()
    assert m.kind is MentionKind.PRONOUN


def test_gold_span_out_of_range():
    doc = parse_doc("(S (NP (NN dog)))")
    with pytest.raises(ValueError, match="out of range"):
        map_gold_mentions(doc, [(0, 0, 9)])
    with pytest.raises(ValueError, match="no sentence"):
        map_gold_mentions(doc, [(3, 0, 1)])
