# ABOUTME: Test suite package
# ABOUTME: Contains all pytest tests for the algebraic volume engine
