# Polynomial ring package for pqsaddle.
# Exact rational coefficients, sparse terms, monomial orders and the expression parser.
