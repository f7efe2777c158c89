"""Published benchmark coordinates used by the validation tests.

Thresholds run over -5..19 dB in 3 dB steps unless stated otherwise.
Scenario keys are (cluster area km^2, mean BS spacing m) and, for the
limited-feedback curves, (area, spacing, fed-back channels L).
"""

THRESHOLDS_DB = [-5.0, -2.0, 1.0, 4.0, 7.0, 10.0, 13.0, 16.0, 19.0]

# analytic full-CSI coverage curves
FULL_CSI_REFERENCE = {
    (0.5, 200.0): [0.916143, 0.860017, 0.784771, 0.695227, 0.598151,
                   0.499965, 0.406278, 0.321577, 0.248691],
    (0.5, 400.0): [0.818357, 0.721495, 0.610874, 0.499807, 0.398132,
                   0.310441, 0.237774, 0.179361, 0.133569],
    (1.0, 200.0): [0.941403, 0.900167, 0.842180, 0.768705, 0.682858,
                   0.588852, 0.492173, 0.398962, 0.314507],
    (1.0, 400.0): [0.851752, 0.767501, 0.666337, 0.558962, 0.455159,
                   0.361243, 0.280388, 0.213522, 0.160045],
    (10.0, 200.0): [0.981727, 0.967850, 0.946569, 0.915749, 0.872377,
                    0.812924, 0.735608, 0.642859, 0.541520],
}

# no-cooperation and full-cooperation baselines
NOCLOUD_REFERENCE = [0.774519, 0.650059, 0.511849, 0.383225, 0.278284,
                     0.199064, 0.141486, 0.100311, 0.071053]
IDEAL_REFERENCE = [0.993711, 0.987676, 0.976229, 0.955386, 0.919783,
                   0.864126, 0.786060, 0.688679, 0.580302]

# Monte Carlo benchmark point sets
MC_DISC_REFERENCE = [0.961682, 0.927102, 0.874274, 0.802475, 0.710449,
                     0.606615, 0.493923, 0.386067, 0.292283]   # (1, 200)
MC_SQUARE_REFERENCE = [0.874826, 0.827668, 0.760821, 0.676865, 0.580081,
                       0.477657, 0.379215, 0.292804, 0.219046]  # (0.5, 200)

# limited-feedback analytic coverage curves
PCSI_REFERENCE = {
    (0.63, 200.0, 2): [0.830730, 0.729452, 0.608053, 0.483812, 0.371640,
                       0.278620, 0.205488, 0.149869, 0.108458],
    (0.63, 200.0, 4): [0.873791, 0.792939, 0.689578, 0.575006, 0.462259,
                       0.360746, 0.275020, 0.205909, 0.152051],
    (0.63, 200.0, 8): [0.901547, 0.835778, 0.748205, 0.645764, 0.538296,
                       0.434766, 0.341564, 0.262146, 0.197407],
    (1.0, 200.0, 8): [0.907090, 0.844056, 0.758847, 0.657419, 0.549339,
                      0.444093, 0.348802, 0.267443, 0.201134],
    (2.0, 200.0, 8): [0.915721, 0.856893, 0.775394, 0.675793, 0.567211,
                      0.459748, 0.361500, 0.277200, 0.208360],
    (1.0, 400.0, 4): [0.859834, 0.773096, 0.665463, 0.549961, 0.439494,
                      0.342036, 0.260697, 0.195459, 0.144665],
    (2.0, 400.0, 4): [0.871045, 0.789055, 0.684900, 0.570217, 0.457996,
                      0.357337, 0.272497, 0.204140, 0.150856],
    (1.0, 200.0, 2): [0.831056, 0.730083, 0.608971, 0.484820, 0.372514,
                      0.279247, 0.205870, 0.150063, 0.108528],
    (2.0, 200.0, 2): [0.833653, 0.733616, 0.613017, 0.488740, 0.375825,
                      0.281778, 0.207677, 0.151295, 0.109343],
}

# rate-profile tables: scenario -> (p5, p10, p50, mean) in b/s/Hz
RATE_TABLE_FULL_D400 = {
    "cell": (0.09, 0.15, 1.23, 2.14),
    0.5: (0.21, 0.40, 2.37, 3.41),
    1.0: (0.29, 0.54, 3.00, 3.86),
    2.0: (0.41, 0.72, 3.65, 4.43),
    10.0: (0.80, 1.49, 5.69, 6.17),
    "ideal": (2.48, 3.54, 7.74, 8.22),
}
RATE_TABLE_FULL_D200 = {
    "cell": (0.09, 0.15, 1.23, 2.14),
    0.125: (0.20, 0.39, 2.44, 3.43),
    0.25: (0.28, 0.51, 2.98, 3.87),
    0.5: (0.37, 0.70, 3.64, 4.41),
    2.5: (0.78, 1.46, 5.57, 6.05),
    "ideal": (2.48, 3.54, 7.74, 8.22),
}
# limited-feedback rate table for (D=200, A=0.5)
RATE_TABLE_PCSI_200_05 = {
    "cell": (0.12, 0.20, 1.30, 2.38),
    2: (0.16, 0.31, 1.91, 2.83),
    4: (0.27, 0.50, 2.64, 3.50),
    6: (0.32, 0.59, 3.03, 3.86),
    8: (0.35, 0.65, 3.27, 4.09),
    "full": (0.42, 0.76, 3.67, 4.49),
}
