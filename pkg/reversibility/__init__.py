# Reversibility package for pqsaddle.
# Reversibility test, conjugation, monoid M, Sibirsky generators, ideal H and theta.
