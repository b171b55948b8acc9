# Evaluation tests package
