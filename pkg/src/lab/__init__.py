"""
Living-lab simulation: interleaving, click simulation and credit aggregation.
"""
