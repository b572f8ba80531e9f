# ABOUTME: Algebraic volumes package
# ABOUTME: Exact engine realizing algebraic numbers as volumes of divisors, with numeric oracles
