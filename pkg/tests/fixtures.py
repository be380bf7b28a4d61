"""Shared regression data: two families of degree-18 gapped sequences with
published verdicts, used across solver, CLI and acceptance tests."""

from momentgaps.rational import QQ

# family A: gap at beta_17 (last odd moment), k = 9
LAST_GAP_A1 = [
    1, 0, 1, 0, 2, 0, 5, 0, 14, 0, 42, 0, 132, 0, 429, 0, 2000, None, 338881,
]

LAST_GAP_A2 = [
    14,
    QQ(7, 2),
    QQ(79, 4),
    QQ(-67, 8),
    QQ(1055, 16),
    QQ(-1935, 32),
    QQ(18195, 64),
    QQ(-43115, 128),
    QQ(336151, 256),
    QQ(-926695, 512),
    QQ(6407195, 1024),
    QQ(-19736547, 2048),
    QQ(124731423, 4096),
    QQ(-419176415, 8192),
    QQ(2469281827, 16384),
    QQ(-8894873563, 32768),
    QQ(49568350247, 65536),
    None,
    QQ(1006568996907, 262144),
]

LAST_GAP_A3 = [
    8, 0, 78, 0, 1446, 0, 32838, 0, 794886, 0, 19651398, 0, 489352326, 0,
    12216629958, 0, 305262005766, None, 7630169896518,
]

# expected: (exists, atom count); the third also certifies the rank chain 8
LAST_GAP_EXPECTED = [(True, 9), (False, None), (True, 8)]

# family B: gap at beta_1, k = 9
FIRST_GAP_B1 = [
    1, None, 11, 0, QQ(979, 5), 0, 4103, 0, QQ(462979, 5), 0, 2174855, 0,
    QQ(261453379, 5), 0, 1275350087, 0, QQ(156925970179, 5), 0, 776760884999,
]

FIRST_GAP_B2 = [
    1, None, QQ(15, 2), 0, QQ(177, 2), 0, QQ(2445, 2), 0, QQ(36177, 2), 0,
    QQ(554325, 2), 0, QQ(8656377, 2), 0, QQ(136617405, 2), 0,
    QQ(2169039777, 2), 0, QQ(138214318741, 8),
]

FIRST_GAP_B3 = [
    1, None, QQ(15, 2), 0, QQ(177, 2), 0, QQ(2445, 2), 0, QQ(36177, 2), 0,
    QQ(554325, 2), 0, QQ(8656377, 2), 0, QQ(136617405, 2), 0,
    QQ(2169039777, 2), 0, QQ(34553579685, 2),
]

FIRST_GAP_B4 = [
    QQ(v, 9)
    for v in [
        9, 0, 133, -235, 3157, -7987, 86893, -281995, 2598757, -10096867,
        82154653, -362972155, 2699153557, -13062280147, 91112865613,
        -470199300715, 3134918735557, -16926788453827, 109327177835773,
    ]
]
FIRST_GAP_B4[1] = None

FIRST_GAP_EXPECTED = [(True, 9), (False, None), (True, 8), (True, 9)]
