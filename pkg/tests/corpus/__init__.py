# Corpus tests package
