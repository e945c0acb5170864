# System model package for pqsaddle.
# Resonance, index set S, parameter ring layout, L map, hat and kappa.
