# Groebner package for pqsaddle.
# Buchberger engine, normal forms, elimination and ideal comparisons.
