"""Reference complexity values for the binary four-variable models.

Each row fixes dims (2,2,2) for variables 2..4 with the first dimension
varying; expected values are (markov_complexity, graver_complexity).
A ``None`` marks a value not reproduced at desk scale.
"""

from __future__ import annotations

# fast rows: each completes in well under a minute
CORE_SUITE: tuple[tuple[str, int, int], ...] = (
    ("[123][124][134][234]", 2, 2),
    ("[123][34]", 2, 2),
    ("[123][14]", 2, 2),
    ("[234][12]", 2, 4),
    ("[12][34]", 2, 4),
    ("[12][13][4]", 2, 3),
    ("[12][14][23]", 2, 4),
    ("[234][1]", 2, 8),
    ("[123][4]", 2, 2),
)

# slower rows: minutes to hours each
EXTENDED_SUITE: tuple[tuple[str, int, int], ...] = (
    ("[12][13][23][24][34]", 4, 16),
    ("[234][12][13]", 2, 10),
    ("[34][1][2]", 2, 12),
    ("[1][2][3][4]", 2, 10),
)

SUITES = {"core": CORE_SUITE, "extended": CORE_SUITE + EXTENDED_SUITE}
