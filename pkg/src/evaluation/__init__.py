"""
Pseudo test collections and offline ranking metrics.
"""
