"""Topic-centric unsupervised multi-document summarization.

Clusters topically related documents, fuses their sentences through word
graphs (extractive phase), and rewrites language units through a generation
provider before fusing (abstractive phase). Deterministic offline providers
back the full test suite; remote neural providers plug in over a small HTTP
protocol.
"""

__version__ = "0.1.0"
