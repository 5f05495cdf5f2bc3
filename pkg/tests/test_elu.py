from topicsum.corpus import ingest_article
from topicsum.elu import extract_elus, heuristic_coref


def article(body):
    return ingest_article("a1", "Title", body)


class TestHeuristicCoref:
    def test_pronoun_start_links(self):
        sents = article("A method is given. It improves recall.").sentences
        assert heuristic_coref(list(sents)) == {(0, 1)}

    def test_plain_start_does_not_link(self):
        sents = article("A method is given. A new method is given.").sentences
        assert heuristic_coref(list(sents)) == set()

    def test_five_sentence_fixture_matches_hand_application(self):
        body = (
            "Radars are widely used. They limit emissions. New pulses are proposed. "
            "This design reduces interference. Results are reported."
        )
        sents = article(body).sentences
        # Hand application: sentence 1 starts with "They", sentence 3 with "This".
        assert heuristic_coref(list(sents)) == {(0, 1), (2, 3)}

    def test_demonstrative_after_punctuation(self):
        sents = article('A method is given. "This helps a lot."').sentences
        assert heuristic_coref(list(sents)) == {(0, 1)}


class TestExtractElus:
    def test_no_links_one_unit_per_sentence(self):
        units = extract_elus(article("First here. Second there. Third everywhere."))
        assert [u.sentence_indices for u in units] == [(0,), (1,), (2,)]

    def test_linked_pair_forms_one_unit(self):
        units = extract_elus(article("A method is given. This approach improves recall."))
        assert len(units) == 1
        assert units[0].sentence_indices == (0, 1)
        assert units[0].text == "A method is given. This approach improves recall."

    def test_chain_merges_transitively(self):
        body = "A method is given. It improves recall. It also reduces errors."
        units = extract_elus(article(body))
        assert [u.sentence_indices for u in units] == [(0, 1, 2)]

    def test_partition_property(self):
        body = (
            "Radars are used. They limit emissions. Pulses are shaped. "
            "This reduces interference. Results are reported."
        )
        art = article(body)
        units = extract_elus(art)
        covered = [i for u in units for i in u.sentence_indices]
        assert covered == list(range(len(art.sentences)))
        for u in units:
            assert list(u.sentence_indices) == list(
                range(u.sentence_indices[0], u.sentence_indices[-1] + 1)
            )

    def test_link_monotonicity(self):
        art = article("One is here. Two is there. Three follows. Four ends.")

        def with_links(links):
            return extract_elus(art, coref=lambda s: links)

        base = with_links({(1, 2)})
        more = with_links({(1, 2), (2, 3)})
        fewer = with_links(set())
        # Adding a link never splits units; removing one never merges them.
        assert len(more) <= len(base) <= len(fewer)

    def test_long_range_link_collapses_run(self):
        art = article("One is here. Two is there. Three follows.")
        units = extract_elus(art, coref=lambda s: {(0, 2)})
        assert [u.sentence_indices for u in units] == [(0, 1, 2)]

    def test_empty_article(self):
        assert extract_elus(article("")) == []

    def test_unit_ids_unique_and_kind(self):
        units = extract_elus(article("First here. Second there."))
        assert len({u.unit_id for u in units}) == len(units)
        assert all(u.kind == "ELU" for u in units)
