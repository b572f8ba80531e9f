# ABOUTME: Utility functions package
# ABOUTME: Exact polynomials, linear algebra, root isolation, modular tests and text parsing
