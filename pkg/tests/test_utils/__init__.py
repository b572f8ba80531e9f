# ABOUTME: Utility function tests package
# ABOUTME: Contains tests for polynomials, linear algebra, root isolation, modular tests and parsing
