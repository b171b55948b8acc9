# Rerank tests package
