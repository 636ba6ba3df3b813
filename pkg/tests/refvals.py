"""Shared regression fixtures: published component matrices of one worked
2-DoF example, rounded to one decimal place in the source.

Because the inputs are rounded, downstream comparisons use loose absolute
tolerances (0.15 for single recipe steps, 0.2-0.3 after longer chains);
machine-precision checks are done against independently computed values
instead.
"""

import numpy as np

# initial random beam (component form)
REFERENCE_BEAM = np.array([
    [4.4, 0.0, 0.0, 0.0],
    [0.0, -1.5, -1.6, 0.9],
    [0.0, -1.5, 0.7, -0.9],
    [0.0, 1.7, -1.6, -2.6],
])

# decoupling x,x' from y,y', step by step
XX_YY_STEP1 = np.array([
    [4.3, 0.0, 0.0, 0.0],
    [0.0, -1.3, -1.9, 0.7],
    [0.0, -1.6, 0.6, -0.8],
    [0.0, 1.8, -0.9, -2.7],
])
XX_YY_STEP2 = np.array([
    [3.5, 0.0, 0.0, 0.0],
    [0.0, -1.1, -1.6, -0.5],
    [0.0, -0.3, 0.5, -1.2],
    [0.0, 2.1, -0.7, -0.4],
])
XX_YY_STEP3 = np.array([
    [3.5, 0.0, 0.0, 0.0],
    [0.0, -2.3, 0.0, 0.0],
    [0.0, 0.0, 0.6, -1.1],
    [0.0, 0.0, -1.7, -0.7],
])

# decoupling x,y from x',y', steps 2 and 3 (step 1 equals XX_YY_STEP1)
XY_STEP2 = np.array([
    [4.3, 0.0, 0.0, 0.0],
    [0.0, -1.3, -1.8, 1.3],
    [0.0, -1.5, 0.2, -0.9],
    [0.0, 1.7, -1.1, -2.3],
])
XY_STEP3 = np.array([
    [4.3, 0.0, 0.0, 0.0],
    [0.0, -2.5, 0.0, 0.6],
    [0.0, 0.0, 2.2, 0.0],
    [0.0, 1.0, 0.0, -2.7],
])

# decoupling x,y' from x',y, step 1 only: the published step-2/3 values of
# this recipe are not reproducible from the rounded inputs (the boost
# parameter is too sensitive), so later steps are checked by their goal
# postconditions instead.
XYP_STEP1 = np.array([
    [3.6, 0.0, 0.0, 0.0],
    [0.0, -1.3, -1.2, -0.3],
    [0.0, -0.2, 0.4, -1.3],
    [0.0, 2.0, -1.5, -0.3],
])

# block-first diagonalization, steps 4 and 5 (after XX_YY_STEP3)
DIAG_BLOCK_STEP4 = np.array([
    [3.5, 0.0, 0.0, 0.0],
    [0.0, -2.4, 0.0, 0.0],
    [0.0, 0.0, 0.3, -1.3],
    [0.0, 0.0, -1.8, -0.2],
])
DIAG_BLOCK_STEP5 = np.array([
    [3.5, 0.0, 0.0, 0.0],
    [0.0, -2.4, 0.0, 0.0],
    [0.0, 0.0, 1.8, 0.0],
    [0.0, 0.0, 0.0, -1.3],
])

# direct diagonalization endpoint (the 2-axis entry carries a free sign)
DIAG_DIRECT_FINAL = np.array([
    [3.5, 0.0, 0.0, 0.0],
    [0.0, -2.4, 0.0, 0.0],
    [0.0, 0.0, -1.8, 0.0],
    [0.0, 0.0, 0.0, -1.3],
])

# normal form of the reference beam
NORMAL_FORM = np.array([
    [3.0, 0.0, 0.0, 0.0],
    [0.0, -2.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 0.0],
])

# single-coordinate decoupling of the reference beam
X_DECOUPLED = np.array([
    [4.4, 0.0, 0.0, 0.0],
    [0.0, 2.6, -0.2, -0.8],
    [0.0, -0.2, 2.3, 0.4],
    [0.0, -0.8, 0.4, 2.8],
])
XP_DECOUPLED = np.array([
    [4.4, 0.0, 0.0, 0.0],
    [0.0, 2.6, -0.2, -0.8],
    [0.0, 0.2, -2.3, -0.4],
    [0.0, 0.8, -0.4, -2.8],
])
Y_DECOUPLED = np.array([
    [4.4, 0.0, 0.0, 0.0],
    [0.0, -2.6, 0.2, 0.8],
    [0.0, -0.2, 2.3, 0.4],
    [0.0, 0.8, -0.4, -2.8],
])
YP_DECOUPLED = np.array([
    [4.4, 0.0, 0.0, 0.0],
    [0.0, -2.6, 0.2, 0.8],
    [0.0, 0.2, -2.3, -0.4],
    [0.0, -0.8, 0.4, 2.8],
])

#: emittances of the reference beam implied by its normal form
REFERENCE_EMITTANCES = (5.0, 1.0)
