"""Reference values frozen from the 30-digit oracles in ``oracles.py``."""

import math

AR_MC = {
    1e-6: -12.566370614381784,
    0.5: -13.11806785516043,
    1.0: -13.957728399277759,
    4.0: -18.867657126601465,
    1e3: -238.3209997392646,
}

SWEEP_ANGLE = {
    1e-4: 1.5713108158920717,
    0.3: 1.9201845473339287,
    0.7: 2.124098984972678,
    1.0 - 1e-6: 2.221441191398869,
}

EPSILON = {
    (6.0 * math.pi, 2): 1.2995325730688758,
    (20.0, 1): 1.4510271814490625,
    (30.0, 3): 1.3452627761699216,
    (1e6, 2): 1.5707931851825037,
}

FIG2_RATIO_1E3 = 1.1976550798741452
Q_DELTA_1P3_4_K3_SPACE = 8.819526329166957
