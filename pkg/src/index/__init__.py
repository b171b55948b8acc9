"""
Text analysis, fielded inverted index and BM25 scoring.
"""
