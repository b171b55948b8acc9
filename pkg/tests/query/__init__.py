# Query tests package
