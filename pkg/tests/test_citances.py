"""Sentence segmentation and citation-marker extraction."""

import re

from hypothesis import given
from hypothesis import strategies as st

from citeweave.citances import extract_citation_ids, parse_section, segment_sentences

from conftest import load_json

# a dense sentence citing five works through four grouped markers; its
# concurrence graph is the 5-clique
DENSE_GROUPED_SENTENCE = (
    "Progress has been reported in using PLMs to perform reasoning tasks, "
    "including arithmetic ([11]; [12]), commonsense ([13], [14]; [12]), "
    "logical ([15]) and symbolic reasoning ([12])."
)


def test_two_plain_sentences():
    assert segment_sentences("A. B.") == ["A.", "B."]


def test_abbreviation_does_not_split():
    got = segment_sentences("Smith et al. [3] show X. We differ.")
    assert got == ["Smith et al. [3] show X.", "We differ."]


def test_terminal_fragment_is_own_sentence():
    got = segment_sentences("One full sentence. and a trailing fragment")
    assert got == ["One full sentence. and a trailing fragment"]
    got = segment_sentences("One full sentence. And a trailing fragment")
    assert got == ["One full sentence.", "And a trailing fragment"]


def test_empty_input():
    assert segment_sentences("") == []
    assert segment_sentences("   \n ") == []


def test_golden_fixture_segmentation():
    doc = load_json("segmentation_fixture.json")
    assert segment_sentences(doc["text"]) == doc["sentences"]


def test_segmentation_prefix_stability():
    doc = load_json("segmentation_fixture.json")
    sentences = doc["sentences"]
    for k in range(1, len(sentences) + 1):
        prefix = " ".join(sentences[:k])
        assert segment_sentences(prefix) == sentences[:k]


def test_segments_reconstruct_input_modulo_whitespace():
    doc = load_json("segmentation_fixture.json")
    joined = " ".join(segment_sentences(doc["text"]))
    assert re.sub(r"\s+", " ", joined).strip() == re.sub(r"\s+", " ", doc["text"]).strip()


def test_extract_table_sentence():
    assert extract_citation_ids(DENSE_GROUPED_SENTENCE) == {11, 12, 13, 14, 15}


def test_extract_empty():
    assert extract_citation_ids("No citations.") == set()


def test_extract_set_semantics():
    assert extract_citation_ids("[2] extends [2].") == {2}


def test_extract_range_not_expanded():
    assert extract_citation_ids("see [1]-[3]") == {1, 3}


def test_extract_malformed_ignored():
    assert extract_citation_ids("broken [x] and [ 4 ] and [5") == set()


@given(st.sets(st.integers(min_value=1, max_value=99), min_size=0, max_size=8))
def test_extract_order_insensitive(ids):
    markers = [f"[{i}]" for i in sorted(ids)]
    forward = "Works " + ", ".join(markers) + " agree."
    backward = "Works " + ", ".join(reversed(markers)) + " agree."
    assert extract_citation_ids(forward) == ids
    assert extract_citation_ids(backward) == ids


def test_parse_section_routes_unknown_ids():
    section = parse_section("Known [1] here. Strange [99] there.", known_ids={1, 2})
    assert section.unknown_ids == {99}
    assert [c.citation_ids for c in section.citances] == [{1}, set()]
    assert section.cited_ids() == {1}


def test_parse_section_table_paragraph():
    known = set(range(11, 21))
    section = parse_section(DENSE_GROUPED_SENTENCE, known)
    assert len(section.citances) == 1
    assert section.citances[0].citation_ids == {11, 12, 13, 14, 15}
    assert section.unknown_ids == set()


def test_parse_section_empty():
    section = parse_section("", known_ids={1})
    assert section.citances == []
    assert section.unknown_ids == set()


def test_parse_section_ids_subset_of_known():
    section = parse_section("Cites [1], [7], [3]. And [8].", known_ids={1, 3})
    for citance in section.citances:
        assert citance.citation_ids <= {1, 3}
    assert section.unknown_ids == {7, 8}


def test_custom_abbreviation_file(tmp_path):
    from citeweave.citances import load_abbreviations

    path = tmp_path / "abbrev.txt"
    path.write_text("Zzz.\n# a comment\nqqq.\n", encoding="utf-8")
    abbreviations = load_abbreviations(path)
    assert abbreviations == frozenset({"zzz", "qqq"})
    text = "We cite Zzz. Works often. Fig. 1 is unprotected here."
    got = segment_sentences(text, abbreviations)
    # "Zzz." is protected by the custom list; "Fig." no longer is
    assert got == ["We cite Zzz. Works often.", "Fig.", "1 is unprotected here."]
