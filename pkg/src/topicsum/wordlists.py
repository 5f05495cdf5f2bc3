"""Bundled English word lists: stopwords, abbreviations, a POS lexicon, and a
synonym table for the mock paraphrase generator.

These lists are pinned in-repo so that tokenization, tagging, graph
construction, and the mock generator are bit-reproducible. Do not edit
casually: changing a list changes every downstream artifact.
"""

STOPWORDS = frozenset("""
a about above after again against all am an and any are as at
be because been before being below between both but by
can cannot could did do does doing down during
each few for from further had has have having he her here hers herself him
himself his how i if in into is it its itself just me more most my myself
no nor not now of off on once only or other our ours ourselves out over own
same she should so some such than that the their theirs them themselves then
there these they this those through to too under until up upon very was we
were what when where which while who whom why will with within without would
you your yours yourself yourselves
""".split())

# Tokens ending a candidate sentence that do NOT terminate the sentence.
# Compared lowercase, without the trailing period.
ABBREVIATIONS = frozenset("""
dr mr mrs ms prof sr jr st mt etc vs al cf ca
fig figs eq eqs sec no nos vol pp dept univ inc ltd co corp
e.g i.e u.s u.k approx est
jan feb mar apr jun jul aug sep sept oct nov dec
""".split())

# Closed-class lexicon for the deterministic tagger. Open-class words fall
# through to suffix rules, then default to NOUN. Tagging is context-free,
# so a given lowercased surface always receives the same tag.
PRONOUNS = frozenset("""
i me we us you he him she it they them who whom what
himself herself itself themselves myself yourself ourselves
""".split())

DETERMINERS = frozenset("""
the a an this that these those some any no every each all both either
neither another such
""".split())

ADPOSITIONS = frozenset("""
of in on at for with from by about into through during before after
between under over against among within without upon toward towards
across behind beyond near via per around along despite off
""".split())

CONJUNCTIONS = frozenset("""
and or but nor so yet if because while although though since whereas
whether as when unless
""".split())

PARTICLES = frozenset(["to"])

ADVERBS = frozenset("""
not very also then now here there however thus often always never more
most less well still just only even again rather quite too almost
""".split())

VERBS = frozenset("""
be am is are was were been being do does did done doing have has had having
will would shall should can could may might must
use make show propose present provide describe introduce develop demonstrate
achieve improve require generate produce perform apply enable evaluate
compare consider reduce increase study address bring take give find work run
walk stop limit form build train learn predict detect help allow remain
become include contain support offer yield need want aim seek serve lead
follow create capture extract select combine fuse cluster rank score measure
say see get know think call keep let begin seem leave put mean set move play
turn start report obtain assess exceed outperform summarize
""".split())

# Suffix rules, checked in order. First match wins.
SUFFIX_TAGS = (
    ("ly", "ADV"),
    ("tion", "NOUN"),
    ("sion", "NOUN"),
    ("ment", "NOUN"),
    ("ness", "NOUN"),
    ("ity", "NOUN"),
    ("ence", "NOUN"),
    ("ance", "NOUN"),
    ("ship", "NOUN"),
    ("ism", "NOUN"),
    ("ology", "NOUN"),
    ("ing", "VERB"),
    ("ed", "VERB"),
    ("ize", "VERB"),
    ("ise", "VERB"),
    ("ify", "VERB"),
    ("ate", "VERB"),
    ("ous", "ADJ"),
    ("ful", "ADJ"),
    ("less", "ADJ"),
    ("ive", "ADJ"),
    ("able", "ADJ"),
    ("ible", "ADJ"),
    ("ical", "ADJ"),
    ("al", "ADJ"),
    ("ic", "ADJ"),
)

# Synonym table for the mock paraphrase generator. Replacement words are
# chosen to be unlikely in the bundled fixture corpora so that mock
# abstractive output measurably lowers the copy rate.
SYNONYMS = {
    "accurate": "precise",
    "achieve": "attain",
    "analysis": "examination",
    "applications": "uses",
    "approach": "strategy",
    "article": "write-up",
    "articles": "write-ups",
    "bands": "channels",
    "based": "grounded",
    "big": "sizable",
    "build": "construct",
    "builds": "constructs",
    "clusters": "groupings",
    "combine": "merge",
    "common": "widespread",
    "compare": "contrast",
    "data": "records",
    "defense": "protection",
    "demonstrate": "exhibit",
    "detect": "spot",
    "detection": "spotting",
    "develop": "devise",
    "documents": "texts",
    "emissions": "radiation",
    "enable": "permit",
    "energy": "power",
    "errors": "mistakes",
    "evaluate": "judge",
    "farms": "parks",
    "fast": "rapid",
    "forecasting": "projection",
    "forecasts": "projections",
    "framework": "scaffold",
    "fuse": "weld",
    "generate": "synthesize",
    "generation": "synthesis",
    "good": "favorable",
    "graph": "lattice",
    "graphs": "lattices",
    "high": "elevated",
    "important": "crucial",
    "improve": "strengthen",
    "improves": "strengthens",
    "increase": "amplify",
    "key": "pivotal",
    "large": "vast",
    "limit": "restrict",
    "many": "numerous",
    "method": "technique",
    "methods": "techniques",
    "model": "formulation",
    "models": "formulations",
    "new": "fresh",
    "noise": "interference",
    "novel": "unprecedented",
    "output": "yield",
    "paths": "routes",
    "performance": "effectiveness",
    "popular": "favored",
    "power": "wattage",
    "predict": "anticipate",
    "prediction": "anticipation",
    "produce": "deliver",
    "propose": "suggest",
    "pulses": "bursts",
    "quality": "caliber",
    "radar": "sensing",
    "radars": "sensors",
    "reduce": "diminish",
    "reduces": "diminishes",
    "require": "demand",
    "required": "needed",
    "results": "findings",
    "sentences": "utterances",
    "show": "reveal",
    "shows": "reveals",
    "signals": "waveforms",
    "small": "compact",
    "speed": "velocity",
    "strong": "sturdy",
    "summaries": "digests",
    "summarization": "condensation",
    "summary": "digest",
    "system": "apparatus",
    "systems": "apparatuses",
    "task": "undertaking",
    "topic": "theme",
    "topics": "themes",
    "traditional": "conventional",
    "training": "tuition",
    "turbines": "rotors",
    "useful": "handy",
    "wave": "ripple",
    "wind": "breeze",
    "word": "lexeme",
    "words": "lexemes",
    "storm": "tempest",
    "rain": "downpour",
    "roads": "roadways",
    "flooded": "inundated",
    "residents": "inhabitants",
    "region": "territory",
    "coastal": "shoreline",
    "crews": "squads",
    "rescued": "saved",
    "rescue": "recovery",
    "evacuations": "departures",
    "evacuated": "relocated",
    "weaken": "subside",
    "officials": "authorities",
    "election": "ballot",
    "parliament": "legislature",
    "coalition": "alliance",
    "leaders": "chiefs",
    "seats": "mandates",
    "stable": "steady",
    "expected": "anticipated",
    "heavy": "hefty",
    "talks": "negotiations",
    "parties": "factions",
    "promise": "pledge",
    "promised": "pledged",
    "voters": "electors",
    "working": "laboring",
    "stranded": "marooned",
    "winds": "gusts",
    "majority": "plurality",
    "compromise": "concession",
    "repair": "mend",
    "ability": "capacity",
}
