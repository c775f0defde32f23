"""Published reference measurements for tries of random 20-byte keys.

These are the printed six-decimal reference tables this project
validates against: per-size path-length distributions (theoretical
versus observed columns), average path lengths, and the probability-
basis chi-square statistics computed from those columns. The observed
columns pooled 10 independent trials per size.
"""

from __future__ import annotations

# size -> list of (path_length, theoretical_prob, observed_prob)
REFERENCE_DISTRIBUTIONS: dict[int, list[tuple[int, float, float]]] = {
    100: [
        (1, 0.002386, 0.000000),
        (2, 0.690504, 0.684000),
        (3, 0.284479, 0.306000),
        (4, 0.021201, 0.010000),
        (5, 0.001340, 0.000000),
        (6, 0.000084, 0.000000),
    ],
    1_000: [
        (2, 0.025506, 0.020200),
        (3, 0.769895, 0.763500),
        (4, 0.190395, 0.214300),
        (5, 0.013310, 0.002000),
        (6, 0.000838, 0.000000),
        (7, 0.000052, 0.000000),
    ],
    10_000: [
        (3, 0.101360, 0.085860),
        (4, 0.765349, 0.786600),
        (5, 0.124390, 0.126340),
        (6, 0.008342, 0.001200),
        (7, 0.000524, 0.000000),
        (8, 0.000033, 0.000000),
    ],
    100_000: [
        (4, 0.239184, 0.217824),
        (5, 0.675289, 0.712484),
        (6, 0.079954, 0.069361),
        (7, 0.005223, 0.000331),
        (8, 0.000327, 0.000000),
        (9, 0.000020, 0.000000),
    ],
}

# size -> (theoretical average, observed average), two-decimal precision
REFERENCE_AVERAGES: dict[int, tuple[float, float]] = {
    100: (2.33, 2.33),
    1_000: (3.19, 3.20),
    10_000: (4.04, 4.04),
    100_000: (4.85, 4.85),
}

# size -> probability-basis chi-square statistic (p-value reported as 1.0);
# absent for 100,000, where the reference computation hit divide-by-zero.
REFERENCE_CHI_SQUARE: dict[int, float] = {
    100: 0.011423,
    1_000: 0.014662,
    10_000: 0.009664,
}

# analytic PMF values printed at six decimals for selected sizes
REFERENCE_PMF: dict[int, dict[int, float]] = {
    100: {1: 0.002386, 2: 0.690504, 3: 0.284479, 4: 0.021201,
          5: 0.001340, 6: 0.000084, 7: 0.000005},
    10_000: {3: 0.101360, 4: 0.765349, 5: 0.124390, 6: 0.008342,
             7: 0.000524, 8: 0.000033, 9: 0.000002},
    1_000_000: {4: 0.000001, 5: 0.408987, 6: 0.536665, 7: 0.050860,
                8: 0.003268, 9: 0.000205, 10: 0.000013, 11: 0.000001},
    300_000_000: {7: 0.350730, 8: 0.585884, 9: 0.059301, 10: 0.003829,
                  11: 0.000240, 12: 0.000015, 13: 0.000001},
}

# size -> expected path length at six decimals
REFERENCE_EXPECTED: dict[int, float] = {
    100: 2.328879,
    10_000: 4.041428,
    1_000_000: 5.649078,
    300_000_000: 7.717012,
}
