# First integral package for pqsaddle.
# v-recursion, saddle quantities, coefficient-level V(nu)/g(nu), sympy oracle.
