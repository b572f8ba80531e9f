# ABOUTME: Computation services package
# ABOUTME: Number fields, algebraic numbers, catalog fields, volumes and numeric oracles
