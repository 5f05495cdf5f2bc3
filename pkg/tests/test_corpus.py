import json

import pytest

from topicsum.corpus import (
    IngestionError,
    bag_of_words,
    ingest_article,
    load_corpus,
    load_corpus_cache,
    normalized_body,
    save_corpus,
    split_sentences,
    tokenize_and_tag,
)
from topicsum.corpus import POS_TAGS


class TestSplitSentences:
    def test_unambiguous_terminators(self):
        assert split_sentences("A runs. B walks? C stops!") == [
            "A runs.",
            "B walks?",
            "C stops!",
        ]

    def test_abbreviation_exception(self):
        assert split_sentences("Dr. Smith arrived. He left.") == ["Dr. Smith arrived.", "He left."]

    def test_empty(self):
        assert split_sentences("") == []
        assert split_sentences("   \n  ") == []

    def test_initials_not_boundaries(self):
        assert split_sentences("J. K. Rowling wrote it. Many read it.") == [
            "J. K. Rowling wrote it.",
            "Many read it.",
        ]

    def test_no_capital_no_boundary(self):
        assert split_sentences("pH is 7.2 at rest. next token lacks a capital") == [
            "pH is 7.2 at rest. next token lacks a capital"
        ]

    def test_no_text_dropped(self):
        body = "First sentence here. Second one follows! Third asks? Done."
        assert " ".join(split_sentences(body)) == " ".join(body.split())


class TestTokenizeAndTag:
    def test_terminal_punct_is_separate(self):
        tokens = tokenize_and_tag("Radars are required.")
        assert [t.surface for t in tokens] == ["Radars", "are", "required", "."]
        assert tokens[-1].pos == "PUNCT"
        assert tokens[1].pos == "VERB"

    def test_empty(self):
        assert tokenize_and_tag("") == []

    def test_deterministic(self):
        text = "Millimeter wave radars are popularly used in defense systems."
        assert tokenize_and_tag(text) == tokenize_and_tag(text)

    def test_every_tag_in_fixed_set(self):
        text = "The 3 q-learning agents, trained on-line (quickly!), won't fail in 2024 ~ ever."
        for tok in tokenize_and_tag(text):
            assert tok.pos in POS_TAGS

    def test_lower_matches_casefold(self):
        for tok in tokenize_and_tag("Radars ARE Required."):
            assert tok.lower == tok.surface.lower()

    def test_hyphenated_word_is_one_token(self):
        tokens = tokenize_and_tag("high out-of-band emissions")
        assert "out-of-band" in [t.surface for t in tokens]


class TestBagOfWords:
    def test_counts_after_stopword_removal(self):
        article = ingest_article("x", "t", "data mining mines data")
        assert bag_of_words(article) == {"data": 2, "mines": 1, "mining": 1}

    def test_stopwords_only(self):
        article = ingest_article("x", "t", "the and of it")
        assert bag_of_words(article) == {}

    def test_empty_article(self):
        article = ingest_article("x", "t", "")
        assert bag_of_words(article) == {}


class TestLoadCorpus:
    def test_two_records(self, tmp_path):
        path = tmp_path / "c.jsonl"
        path.write_text(
            json.dumps({"id": "a", "title": "A", "body": "First body here."})
            + "\n"
            + json.dumps({"id": "b", "title": "B", "body": "Second body here."})
            + "\n"
        )
        corpus = load_corpus(path)
        assert [a.id for a in corpus.articles] == ["a", "b"]
        assert corpus.articles[0].sentences[0].tokens

    def test_duplicate_id(self, tmp_path):
        path = tmp_path / "c.jsonl"
        rec = json.dumps({"id": "dup", "title": "", "body": "Text here."})
        path.write_text(rec + "\n" + rec + "\n")
        with pytest.raises(IngestionError, match="dup"):
            load_corpus(path)

    def test_missing_id(self, tmp_path):
        path = tmp_path / "c.jsonl"
        path.write_text(json.dumps({"title": "", "body": "Text."}) + "\n")
        with pytest.raises(IngestionError, match="missing an id"):
            load_corpus(path)

    def test_empty_body_skipped_with_warning(self, tmp_path):
        path = tmp_path / "c.jsonl"
        path.write_text(
            "\n".join(
                json.dumps(r)
                for r in [
                    {"id": "a", "title": "", "body": "Kept text."},
                    {"id": "b", "title": "", "body": "   "},
                    {"id": "c", "title": "", "body": "Also kept."},
                ]
            )
        )
        corpus = load_corpus(path)
        assert [a.id for a in corpus.articles] == ["a", "c"]
        assert len(corpus.warnings) == 1 and "b" in corpus.warnings[0]

    def test_directory_format(self, tmp_path):
        (tmp_path / "doc1.txt").write_text("Title One\nBody sentence here.")
        corpus = load_corpus(tmp_path, format="directory-of-text")
        assert corpus.articles[0].id == "doc1"
        assert corpus.articles[0].title == "Title One"

    def test_missing_path(self, tmp_path):
        with pytest.raises(IngestionError):
            load_corpus(tmp_path / "nope.jsonl")


class TestInvariants:
    def test_sentence_roundtrip(self):
        body = (
            "Millimeter wave radars are used in defense systems.   Radars are required "
            "to limit emissions!  Dr. Smith evaluated the design. It worked well."
        )
        article = ingest_article("x", "t", body)
        assert " ".join(s.text for s in article.sentences) == normalized_body(article)

    def test_sentence_indices_gapless(self):
        article = ingest_article("x", "t", "One sentence. Two sentences. Three sentences.")
        assert [s.index for s in article.sentences] == list(range(len(article.sentences)))

    def test_cache_roundtrip_byte_identical(self, tmp_path):
        article = ingest_article("x", "Title", "Radars are required. They work well.")
        from topicsum.corpus import Corpus

        corpus = Corpus(articles=[article])
        p1, p2 = tmp_path / "c1.json", tmp_path / "c2.json"
        save_corpus(corpus, p1)
        save_corpus(load_corpus_cache(p1), p2)
        assert p1.read_bytes() == p2.read_bytes()
