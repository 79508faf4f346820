"""Shared parse fixtures and small builders used across the test modules."""

from __future__ import annotations

from coref import (DocumentInput, Mention, PipelineResult, ResolveConfig,
                   extract_mentions, link_document, read_ptb, run_pipeline)

# Three-sentence worked document: "John bought himself a book. Fred found out
# that John had also bought himself a computer. Next, he found out that John
# had not bought him anything."
EXAMPLE1_SENTENCES = [
    "(S (NP (NNP John)) (VP (VBD bought) (NP (PRP himself)) (NP (DT a) (NN book))) (. .))",
    "(S (NP (NNP Fred)) (VP (VBD found) (PRT (RP out)) (SBAR (IN that)"
    " (S (NP (NNP John)) (VP (VBD had) (ADVP (RB also)) (VP (VBN bought)"
    " (NP (PRP himself)) (NP (DT a) (NN computer))))))) (. .))",
    "(S (ADVP (RB Next)) (, ,) (NP (PRP he)) (VP (VBD found) (PRT (RP out))"
    " (SBAR (IN that) (S (NP (NNP John)) (VP (VBD had) (RB not) (VP (VBN bought)"
    " (NP (PRP him)) (NP (NN anything))))))) (. .))",
]

# Gold entities over extraction order:
# John(0) himself(1) book(2) | Fred(3) John(4) himself(5) computer(6)
# | he(7) John(8) him(9) anything(10)
EXAMPLE1_GOLD = [[0, 1, 4, 5, 8], [2], [3, 7, 9], [6], [10]]


def parse_doc(*sentences):
    """Link one tree per bracketed sentence string into a DocumentTree."""
    trees = []
    for sentence in sentences:
        parsed = read_ptb(sentence)
        assert len(parsed) == 1
        trees.append(parsed[0])
    return link_document(trees)


def doc_with_mentions(*sentences):
    doc = parse_doc(*sentences)
    return doc, extract_mentions(doc)


def pipeline(sentences, annotations=None, gold_mentions=None, gold_clusters=None,
             cfg=None, lex=None, doc_id="test",
             candidate_log=None) -> PipelineResult:
    document = DocumentInput(doc_id=doc_id, sentences=list(sentences))
    if annotations:
        document.annotations = list(annotations)
    if gold_mentions is not None:
        document.gold_mentions = list(gold_mentions)
    if gold_clusters is not None:
        document.gold_clusters = [list(c) for c in gold_clusters]
    return run_pipeline(document, cfg or ResolveConfig(), lex,
                        candidate_log=candidate_log)


def mention_with_head(mentions, head_word, occurrence=0) -> Mention:
    """The nth mention (document order) whose head word matches."""
    found = [m for m in mentions if m.head_word == head_word]
    return found[occurrence]


def decision_for(result: PipelineResult, mention: Mention):
    return next(d for d in result.decisions if d.mention_id == mention.mention_id)


def ablation_corpus() -> list[DocumentInput]:
    """20 small documents whose gold links include pronouns.

    Four rotating shapes: male name + "he"; female name + "she" with a male
    distractor; inanimate + "it" with a plural distractor; male name + "he"
    with a location-annotated distractor. Gold clusters index extracted
    mentions in document order.
    """
    males = ["John", "David", "Victor", "Thomas", "Henry"]
    females = ["Mary", "Alice", "Susan", "Laura", "Nancy"]
    nouns = ["engine", "program", "table", "market", "statue"]
    docs = []
    for i in range(20):
        kind = i % 4
        male = males[i // 4]
        female = females[i // 4]
        noun = nouns[i // 4]
        if kind == 0:
            sentences = [
                f"(S (NP (NNP {male})) (VP (VBD arrived)) (. .))",
                "(S (NP (PRP He)) (VP (VBD smiled)) (. .))",
            ]
            gold = [[0, 1]]
            annotations = []
        elif kind == 1:
            sentences = [
                f"(S (NP (NNP {female})) (VP (VBD met) (NP (NNP {male}))) (. .))",
                "(S (NP (PRP She)) (VP (VBD left)) (. .))",
            ]
            gold = [[0, 2], [1]]
            annotations = []
        elif kind == 2:
            sentences = [
                f"(S (NP (DT The) (NN {noun})) (VP (VBD pushed) (NP (DT the) (NNS carts))) (. .))",
                "(S (NP (PRP It)) (VP (VBD failed)) (. .))",
            ]
            gold = [[0, 2], [1]]
            annotations = []
        else:
            sentences = [
                f"(S (NP (NNP Paris)) (VP (VBD hosted) (NP (NNP {male}))) (. .))",
                "(S (NP (PRP He)) (VP (VBD spoke)) (. .))",
            ]
            gold = [[1, 2], [0]]
            annotations = [{"s": 0, "t": 0, "supersense": "noun.location"}]
        docs.append(DocumentInput.from_dict({
            "id": f"synth-{i:02d}",
            "sentences": sentences,
            "annotations": annotations,
            "gold_clusters": gold,
        }))
    return docs
