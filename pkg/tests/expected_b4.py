"""Independently recorded expected values for the rank-4 example.

These literals were transcribed by hand and are deliberately kept apart
from the package's own reference module, so a test failure always means
the computation and the record disagree.  Polynomials are written as
tuples of (coefficient, v-exponent) pairs.
"""

GROUP_ORDER = 384

DOUBLE_COSET_REP_WORDS = (
    "", "3", "4", "34", "43", "343", "3243", "32123", "321234", "321243",
    "432123", "3212343", "3432123", "4321234", "34321234", "32123432123",
    "321234321234",
)

NORMALIZER_WORDS = {
    "1": "",
    "e": "4",
    "f": "32123",
    "fe": "321234",
    "ef": "432123",
    "efe": "4321234",
    "fef": "32123432123",
    "efef": "321234321234",
}

NORMALIZER_WEIGHTS = {
    "1": 0, "e": 1, "f": 3, "fe": 4, "ef": 4, "efe": 5, "fef": 7, "efef": 8,
}

NORMALIZER_SIGNS = {
    "1": 1, "e": 1, "f": -1, "fe": -1, "ef": -1, "efe": -1,
    "fef": 1, "efef": 1,
}

PIECE_DIMENSIONS = {"": 24, "4": 25}

# the eight decompositions of the induced classes into the six character
# classes: word in W_J -> {symbol: ((coeff, exp), ...)}
CS_ROWS = {
    "": {"1": ((1, 0),), "rho": ((2, 0),), "sigma": ((1, 0),),
         "sigma'": ((1, 0),), "S": ((1, 0),)},
    "1": {"1": ((1, 0), (1, 2)), "rho": ((1, 0), (1, 2)),
          "sigma": ((1, 0), (1, 2))},
    "2": {"1": ((1, 0), (1, 2)), "rho": ((1, 0), (1, 2)),
          "sigma'": ((1, 0), (1, 2))},
    "12": {"1": ((1, 0), (2, 2), (1, 4)), "rho": ((1, 2),),
           "sigma": ((1, 2),), "sigma'": ((1, 2),), "theta": ((1, 2),)},
    "21": {"1": ((1, 0), (2, 2), (1, 4)), "rho": ((1, 2),),
           "sigma": ((1, 2),), "sigma'": ((1, 2),), "theta": ((1, 2),)},
    "121": {"1": ((1, 0), (1, 2), (1, 4), (1, 6)),
            "sigma'": ((1, 2), (1, 4)), "theta": ((1, 2), (1, 4))},
    "212": {"1": ((1, 0), (1, 2), (1, 4), (1, 6)),
            "sigma": ((1, 2), (1, 4)), "theta": ((1, 2), (1, 4))},
    "1212": {"1": ((1, 0), (2, 2), (2, 4), (2, 6), (1, 8))},
}

# spot samples of the restriction expansions, one per behaviour family:
# (t, z, u) -> {target word: ((coeff, exp), ...)}
SPOT_EXPANSIONS = {
    ("1", "e", "121"): {"121": ((1, 0),)},
    ("1", "f", "212"): {"2": ((1, 4),), "1212": ((1, 0),)},
    ("1", "efe", "2"): {"212": ((1, 0), (1, 2))},
    ("e", "efef", "12"): {"12": ((1, 4),), "1212": ((1, 0), (1, 2))},
    ("1", "fef", "121"): {"1": ((1, 8),), "121": ((1, 4),),
                          "1212": ((1, 0), (2, 2), (1, 6))},
    ("f", "fef", "2"): {"212": ((1, 0), (1, 2))},
    ("e", "f", "121"): {},
}

# spot samples of the canonical-basis values p(t, z), including all four
# entries with a non-monomial factor
SPOT_P = {
    ("1", "efe"): ((1, -5), (1, -3)),
    ("e", "efe"): ((1, -4), (1, -2)),
    ("1", "fef"): ((1, -7), (-1, -5)),
    ("f", "fef"): ((1, -4), (-1, -2)),
    ("1", "e"): ((1, -1),),
    ("f", "efef"): ((1, -5),),
    ("efef", "efef"): ((1, 0),),
    ("e", "1"): (),
}

# the seven cuspidal-scalar shapes, relative to v^{-l(z)+l(t)}
X_RELATIVE = {
    "flat": ((1, 0),),
    "step": ((-1, 2),),
    "step-wide": ((-1, 2), (-1, 4)),
    "deep": ((1, 4),),
    "deep-defect": ((1, 4), (-1, 6)),
    "step-defect": ((-1, 2), (1, 4)),
    "null": (),
}

# spot samples of the transition patterns, one pair per family:
# (t, z) -> {source: {target: ((coeff, exp), ...)}} with exponents
# already including the v^{-l(z)+l(t)} prefactor
SPOT_CHI = {
    # flat: (f, ef), lengths 5 and 6
    ("f", "ef"): {"rho": {"rho": ((1, -1),)},
                  "sigma": {"sigma": ((1, -1),)},
                  "sigma'": {"sigma'": ((1, -1),)},
                  "theta": {"theta": ((1, -1),)}},
    # step: (e, fe), lengths 1 and 6
    ("e", "fe"): {"rho": {"sigma": ((1, -3),)},
                  "sigma": {"rho": ((1, -3),)},
                  "sigma'": {"theta": ((1, -3),)},
                  "theta": {"sigma'": ((1, -3),)}},
    # step-wide: (e, efe), lengths 1 and 7
    ("e", "efe"): {"rho": {"sigma": ((1, -4), (1, -2))},
                   "sigma": {"rho": ((1, -4), (1, -2))},
                   "sigma'": {"theta": ((1, -4), (1, -2))},
                   "theta": {"sigma'": ((1, -4), (1, -2))}},
    # deep: (e, fef), lengths 1 and 11
    ("e", "fef"): {"rho": {"rho": ((1, -6),)},
                   "sigma": {"sigma": ((1, -6),)},
                   "sigma'": {"sigma'": ((1, -6),)},
                   "theta": {"theta": ((1, -6),)}},
    # deep-defect: (1, fef), lengths 0 and 11
    ("1", "fef"): {"rho": {"rho": ((1, -7),), "sigma'": ((1, -5),)},
                   "sigma": {"sigma": ((1, -7),), "theta": ((1, -5),)},
                   "sigma'": {"sigma'": ((1, -7),), "rho": ((1, -5),)},
                   "theta": {"theta": ((1, -7),), "sigma": ((1, -5),)}},
    # step-defect: (f, fef), lengths 5 and 11
    ("f", "fef"): {"rho": {"sigma": ((1, -4),), "theta": ((1, -2),)},
                   "sigma": {"rho": ((1, -4),), "sigma'": ((1, -2),)},
                   "sigma'": {"theta": ((1, -4),), "sigma": ((1, -2),)},
                   "theta": {"sigma'": ((1, -4),), "rho": ((1, -2),)}},
    # null: (e, f)
    ("e", "f"): {"rho": {}, "sigma": {}, "sigma'": {}, "theta": {}},
}
