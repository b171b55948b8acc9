# Lab tests package
