"""
Corpus ingestion, translation merging and topic expansion.
"""
