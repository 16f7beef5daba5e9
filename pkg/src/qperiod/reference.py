"""Frozen high-precision reference values used by the verification suite.

Exact rationals are stored as (numerator, denominator) pairs or
coefficient lists of "num/den" strings; decimal strings carry as many
digits as are known to be correct.  Everything here is cross-checked by
the test suite against independent computation inside this package.
"""

from fractions import Fraction

# 58 exact digits of the moments of x/(x+1), from the order-325 truncated solve
M2_DIGITS = "0.2909264764293087363806977627391202900804371021955943665492"
M3_DIGITS = "0.1863897146439631045710466441086804351206556532933915498238"
M4_DIGITS = "0.1269922584074431352028922278802116388411851457617257181016"

# Hausdorff dimension of the growth-point set (36 exact digits) and its
# published coarse brackets
ALPHA_DIGITS = "0.874716305108211142215152904219159757"
ALPHA_BRACKET_COARSE = ("0.8746", "0.8749")
ALPHA_BRACKET_FINE = ("0.874716", "0.874719")

# scale constant of the moment asymptotics (50 digits)
C0_DIGITS = "1.03019956338269462315600411256447867669415885918240"

# numerators of the resolvent-series terms, ascending coefficients
B_POLYS = {
    0: ["-1/1"],
    1: [],
    2: ["0/1", "-1/6"],
    3: ["0/1", "-2/9", "1/9"],
    4: ["0/1", "-53/270", "53/270", "-2/27"],
    5: ["0/1", "-224/2025", "112/675", "-104/675", "4/81"],
    6: ["0/1", "787/60750", "-787/30375", "-1384/14175", "47029/425250", "-8/243"],
    7: ["0/1", "477802/3189375", "-238901/637875", "5392444/22325625",
        "272869/22325625", "-1628392/22325625", "16/729"],
}

# first derivative of each series term at z = 0, exact
HPRIME0 = {
    0: Fraction(1, 4),
    1: Fraction(0),
    2: Fraction(1, 48),
    3: Fraction(-1, 72),
    4: Fraction(53, 8640),
    5: Fraction(-7, 2 * 3**4 * 5**2),
    6: Fraction(-787, 2**8 * 3**5 * 5**3),
    7: Fraction(238901, 2**7 * 3**6 * 5**4 * 7),
    8: Fraction(-181993843, 2**10 * 3**7 * 5**5 * 7**2),
    9: Fraction(12965510861, 2**6 * 3**8 * 5**6 * 7**3 * 17),
    10: Fraction(-8026531718888633, 2**12 * 3**9 * 5**7 * 7**4 * 11 * 17**2),
    11: Fraction(797209536976557079423,
                 2**11 * 3**10 * 5**8 * 7**5 * 11**2 * 17**3 * 31),
    12: Fraction(4198988799919158293319845971,
                 2**14 * 3**11 * 5**9 * 7**6 * 11**3 * 13 * 17**4 * 31**2),
    13: Fraction(-12702956822417247965298252330349561,
                 2**10 * 3**12 * 5**10 * 7**7 * 11**4 * 13**2 * 17**5 * 31**3),
    14: Fraction(7226191636013675292833514548603516395499899,
                 2**16 * 3**13 * 5**11 * 7**8 * 11**5 * 13**3 * 17**6 * 31**4),
    15: Fraction(-129337183009042141853748450730581369733226857443915617,
                 2**15 * 3**14 * 5**12 * 7**9 * 11**6 * 13**4 * 17**7 * 31**5 * 43 * 127),
    16: Fraction(31258186275777197041073243752715109842753785598306812028984213251,
                 2**18 * 3**15 * 5**13 * 7**10 * 11**7 * 13**5 * 17**8 * 31**6
                 * 43**2 * 127**2),
    17: Fraction(
        -3282520501229639755997762022707321704397776888948469860959830459774414444483,
        2**12 * 3**16 * 5**14 * 7**11 * 11**8 * 13**6 * 17**9 * 31**7
        * 43**3 * 127**3 * 257),
}

# alternating partial sums of the derivative column (10 printed digits each)
HPRIME0_PARTIAL_SUMS = {17: "0.2909255862", 40: "0.2909264880", 50: "0.2909264784"}

# palindromic cores of the parameter-0 terms, ascending coefficients
D_POLYS = {
    1: ["1/4"],
    2: ["1/4", "0/1", "1/4"],
    3: ["1/4", "-1/4", "1/4", "-1/4", "1/4"],
    4: ["1/4", "-3/8", "3/4", "-3/8", "3/4", "-3/8", "1/4"],
    5: ["1/4", "-1/2", "1/1", "-7/4", "1/1", "-7/4", "1/1", "-1/2", "1/4"],
    6: ["1/4", "-5/8", "3/2", "-5/2", "37/8", "-5/2", "37/8", "-5/2", "3/2",
        "-5/8", "1/4"],
}

# first derivative of each parameter-0 term at z = -1, exact
QPRIME_M1 = {
    0: Fraction(1, 2), 1: Fraction(-1, 2), 2: Fraction(1), 3: Fraction(-5, 2),
    4: Fraction(25, 4), 5: Fraction(-16), 6: Fraction(43), 7: Fraction(-971, 8),
    8: Fraction(1417, 4), 9: Fraction(-8431, 8), 10: Fraction(50899, 16),
    11: Fraction(-9751), 12: Fraction(30365), 13: Fraction(-3069719, 32),
    14: Fraction(1227099, 4), 15: Fraction(-31719165, 32),
    16: Fraction(206836175, 64), 17: Fraction(-339942899, 32),
    18: Fraction(1125752909, 32), 19: Fraction(-15014220659, 128),
    20: Fraction(25188552721, 64), 21: Fraction(-170016460947, 128),
    22: Fraction(1153784184807, 256), 23: Fraction(-983668214037, 64),
    24: Fraction(1685121707817, 32), 25: Fraction(-92779913448103, 512),
    26: Fraction(80142274019997, 128), 27: Fraction(-1111839248032133, 512),
    28: Fraction(7740056893342455, 1024), 29: Fraction(-13515970598654393, 512),
    30: Fraction(47354245650630005, 512), 31: Fraction(-665632101181145115, 2048),
}

# published slice sums of the Borel resummation (10 printed digits each).
# The last entry reflects the publication's own inner truncation (the
# identical digits reappear when the inner series is cut at ~110 terms);
# the fully converged slice value is BOREL_SLICE11_CONVERGED.
BOREL_THETAS = [
    "0.2327797875", "0.0471561089", "0.0085133626", "0.0005892453",
    "-0.0001872357", "0.0002058729", "0.0004701146", "0.0004980015",
    "0.0004005270", "0.0002722002", "0.0001607897", "0.0000812407",
]
BOREL_TOTAL_12 = "0.2909400155"
BOREL_SLICE11_CONVERGED = "0.0000810620896185766"
BOREL_TOTAL_12_CONVERGED = "0.290939836886"

# sup-constant table over the parameter disc: rows b = 1..15 then the
# b -> infinity limit row, columns a = 1..6
MU_TABLE_ROWS = {
    1: ["0.25000000", "0.01250000", "0.00780868", "0.03343231", "0.05778002", "0.07712952"],
    2: ["0.29846114", "0.03125000", "0.00159908", "0.01212467", "0.02539758", "0.03645721"],
    3: ["0.35999295", "0.05097235", "0.00647895", "0.00676996", "0.01624300", "0.02437494"],
    4: ["0.41433340", "0.07007201", "0.01316542", "0.00500146", "0.01287728", "0.01963810"],
    5: ["0.45590757", "0.08747624", "0.02069451", "0.00437252", "0.01163446", "0.01781467"],
    6: ["0.48390408", "0.10255189", "0.02845424", "0.00812804", "0.01125132", "0.01728395"],
    7: ["0.49985799", "0.11503743", "0.03601828", "0.01200557", "0.01120308", "0.01729854"],
    8: ["0.50642035", "0.12494927", "0.04309384", "0.01611126", "0.01125789", "0.01748823"],
    9: ["0.50681483", "0.13248892", "0.04949922", "0.02025219", "0.01132055", "0.01767914"],
    10: ["0.50452450", "0.13796512", "0.05514483", "0.02427779", "0.01136245", "0.01780892"],
    11: ["0.50218322", "0.14173414", "0.06001269", "0.02807992", "0.01138335", "0.01787452"],
    12: ["0.50070286", "0.14415527", "0.06413550", "0.03158969", "0.01139099", "0.01789618"],
    13: ["0.49999979", "0.14555794", "0.06757752", "0.03477145", "0.01139235", "0.01789583"],
    14: ["0.49977304", "0.14622041", "0.07041891", "0.03761547", "0.01139159", "0.01788837"],
    15: ["0.49977361", "0.14636154", "0.07274403", "0.04013040", "0.01139057", "0.01788111"],
    None: ["0.50000000", "0.12500000", "0.05479177", "0.03097495", "0.01138938", "0.01787406"],
}
MU_CHAIN_BOUND = "0.76"

# worked p-expansion examples
PCF_SQRT3_BASE_3_2 = (4, 2, 1, 10, 1, 1, 2, 1, 5, 1, 1, 2, 1, 2, 1, 1, 2, 1, 3, 7, 4)
PCF_TWO_BASE_SQRT2_PREFIX = (4, 1, 1)
PCF_TWO_BASE_SQRT2_PERIOD = (2, 1, 1)

# the resolvent at the cross-validation point 2/3 + 4i, per method
# (6 printed digits; the reduction-grade pair is exact to the digits shown)
GZ0_REDUCE = ("0.078083", "0.205424")
GZ0_SERIES_60 = ("0.078090", "0.205427")
GZ0_STIELTJES_3560 = ("0.078082", "0.205424")

# contraction constant of the uniqueness argument
CONTRACTION_CONSTANT = "0.20453"

# fourth generation of the rational tree, left to right
CW_GENERATION_4 = ["1/4", "4/3", "3/5", "5/2", "2/5", "5/3", "3/4", "4/1"]
