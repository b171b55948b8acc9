"""
Query generation from seed publications and batch precomputation of runs.
"""
