"""Frozen 4x4 witness parameters, one triple per family.

Keys are refined-inertia tuples (n_plus, n_minus, n_zero, two_n_p); values
are the arrowhead parameters (a_1..a_4, b_1, b_2) as exact rational strings.

Derived once and pinned here for reproducibility:

* the open-condition inertias (0,4,0,0) and (2,2,0,0) came from
  ``search_4x4_witness(i, target, seed=20240 + i, budget=200_000)``,
* the imaginary-pair inertia (0,2,0,2) came from
  ``construct_imaginary_pair_witness(i, seed=977 + i, budget=200_000)``,

and every consumer re-certifies the exact inertia and class membership on
load, so nothing depends on how the values were found.
"""

WITNESS_PARAMS = {
    1: {
        (0, 4, 0, 0): (("2/3", "-2", "-1", "-7"), ("3/2", "11/3")),
        (0, 2, 0, 2): (("55/12", "-9/8", "-1845/56", "-97/63"), ("6", "4/3")),
        (2, 2, 0, 0): (("11/4", "-10", "-6", "-1"), ("11/2", "5/2")),
    },
    2: {
        (0, 4, 0, 0): (("-9", "-11/3", "7/3", "4"), ("5/4", "2/3")),
        (0, 2, 0, 2): (("-4", "-60", "105/8", "333/8"), ("3/2", "1/2")),
        (2, 2, 0, 0): (("-5/2", "-1/2", "11/2", "9/4"), ("7/4", "8")),
    },
    3: {
        (0, 4, 0, 0): (("-10/3", "1/3", "2", "-12"), ("4", "-2")),
        (0, 2, 0, 2): (("-7", "11/16", "19/64", "-3071/64"), ("2", "-6")),
        (2, 2, 0, 0): (("-7/4", "2", "5", "-6"), ("4", "-10/3")),
    },
}
