"""Integer codes shared by the pure-Python and C kernel twins."""

# model families
FAM_IDEAL = 0
FAM_QUASI_IDEAL = 1
FAM_VDW = 2
FAM_LINEAR_SV = 3
FAM_LINEAR_UV = 4

# path integrand kinds
KIND_CONST_S = 1
KIND_CONST_V = 2
KIND_CONST_P = 3
KIND_CONST_U = 4
KIND_CONST_V_ENTROPY = 5
KIND_ISOTHERM_ENERGY = 6
KIND_ISOTHERM_ENTROPY = 7
KIND_SEG_ENERGY = 8
KIND_SEG_ENTROPY = 9

# kernel status codes
ST_OK = 0
ST_NONPHYSICAL = 1
ST_NEGATIVE_FORM = 2
ST_DEPTH = 3

GAS_FAMILIES = (FAM_IDEAL, FAM_QUASI_IDEAL, FAM_VDW)
