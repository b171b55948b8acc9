"""
Boost re-rankers for baseline recommendation runs.
"""

from .base_reranker import BaseReranker
from .click_reranker import ClickBoostReranker
from .embedding_reranker import EmbeddingBoostReranker

__all__ = ["BaseReranker", "ClickBoostReranker", "EmbeddingBoostReranker"]
