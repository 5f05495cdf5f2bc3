"""Walk through corpus ingestion: sentence splitting, tagging, bags of words.

Run from the repository root:  python3 demos/01_corpus_ingestion.py
"""

from pathlib import Path

from topicsum.corpus import bag_of_words, load_corpus, split_sentences, tokenize_and_tag

FIXTURE = Path(__file__).parent.parent / "src" / "topicsum" / "fixtures" / "mag12.jsonl"

# Sentence splitting is rule-based: terminators followed by a capital,
# with an abbreviation exception list.
print("-- sentence splitting")
for text in ("A runs. B walks? C stops!", "Dr. Smith arrived. He left."):
    print(f"  {text!r} -> {split_sentences(text)}")

# The tagger is a deterministic lexicon+suffix tagger over a fixed 12-tag
# set; punctuation becomes standalone PUNCT tokens.
print("\n-- tokenization and tagging")
for tok in tokenize_and_tag("Millimeter wave radars are popularly used in defense systems."):
    print(f"  {tok.surface:<12} {tok.pos:<6} stopword={tok.is_stopword}")

# Ingest the bundled 12-article corpus and look at one article.
print("\n-- corpus ingestion")
corpus = load_corpus(FIXTURE)
article = corpus.articles[0]
print(f"  {len(corpus.articles)} articles; first: {article.id!r} - {article.title}")
for sentence in article.sentences:
    print(f"    [{sentence.index}] {sentence.text}")

# Bags of words drop stopwords and punctuation; these feed topic modeling.
print("\n-- bag of words for", article.id)
print(" ", bag_of_words(article))
